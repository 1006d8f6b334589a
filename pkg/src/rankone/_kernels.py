"""Compiled inner loops: Jacobi recurrences and compensated block sums.

Every kernel is a pure function of its arguments.  Summation order inside a
block is fixed (ascending index), so results do not depend on thread count.
"""

import os

import numba
import numpy as np

if "NUMBA_THREADING_LAYER" not in os.environ:
    # skip the TBB probe (and its version warning); workqueue ships with numba
    numba.config.THREADING_LAYER = "workqueue"


def set_threads(count: int) -> int:
    """Cap the worker threads used by parallel kernels; returns the count in effect."""
    count = max(1, min(int(count), numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(count)
    return count


@numba.njit(cache=True)
def jacobi_p(n, a, b, x):
    """P_n^{(a,b)}(x) by the standard upward three-term recurrence."""
    if n == 0:
        return 1.0
    p0 = 1.0
    p1 = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0
    for k in range(1, n):
        s = 2.0 * k + a + b
        num = (s + 1.0) * ((s + 2.0) * s * x + a * a - b * b) * p1 - 2.0 * (k + a) * (k + b) * (s + 2.0) * p0
        p0 = p1
        p1 = num / (2.0 * (k + 1.0) * (k + a + b + 1.0) * s)
    return p1


@numba.njit(cache=True)
def _normalized_step(k, a, b, x, r1, r0):
    # R_{k+1} from R_k, R_{k-1} where R_k = P_k / P_k(1)
    s = 2.0 * k + a + b
    c1 = (s + 1.0) * ((s + 2.0) * x + (a * a - b * b) / s) / (2.0 * (k + a + b + 1.0) * (k + a + 1.0))
    c0 = k * (k + b) * (s + 2.0) / ((k + a + b + 1.0) * s * (k + a + 1.0))
    return c1 * r1 - c0 * r0


@numba.njit(cache=True)
def normalized_jacobi(n, a, b, x):
    """P_n^{(a,b)}(x) / P_n^{(a,b)}(1); bounded by 1 on [-1, 1] when a >= b >= -1/2."""
    if n == 0:
        return 1.0
    r0 = 1.0
    r1 = 1.0 + (a + b + 2.0) * (x - 1.0) / (2.0 * (a + 1.0))
    for k in range(1, n):
        r0, r1 = r1, _normalized_step(k, a, b, x, r1, r0)
    return r1


@numba.njit(cache=True)
def normalized_jacobi_sequence(nmax, a, b, x):
    out = np.empty(nmax + 1)
    out[0] = 1.0
    if nmax == 0:
        return out
    out[1] = 1.0 + (a + b + 2.0) * (x - 1.0) / (2.0 * (a + 1.0))
    for k in range(1, nmax):
        out[k + 1] = _normalized_step(k, a, b, x, out[k], out[k - 1])
    return out


@numba.njit(cache=True)
def jacobi_p_sequence(nmax, a, b, x):
    out = np.empty(nmax + 1)
    out[0] = 1.0
    if nmax == 0:
        return out
    out[1] = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0
    for k in range(1, nmax):
        s = 2.0 * k + a + b
        num = (s + 1.0) * ((s + 2.0) * s * x + a * a - b * b) * out[k] - 2.0 * (k + a) * (k + b) * (s + 2.0) * out[k - 1]
        out[k + 1] = num / (2.0 * (k + 1.0) * (k + a + b + 1.0) * s)
    return out


@numba.njit(cache=True, parallel=True)
def block_prefix_sums(terms, block):
    """Neumaier-compensated running sums within fixed-size blocks.

    Returns ``(local, totals, comps)``: ``local[i]`` is the compensated sum of
    ``terms[start(i):i+1]`` within i's block; ``totals``/``comps`` hold each
    block's running sum and compensation.  Blocks are independent, so the
    prange split cannot change any value.
    """
    n = terms.shape[0]
    nblocks = (n + block - 1) // block
    local = np.empty(n)
    totals = np.zeros(nblocks)
    comps = np.zeros(nblocks)
    for j in numba.prange(nblocks):
        s = 0.0
        c = 0.0
        for i in range(j * block, min(n, (j + 1) * block)):
            v = terms[i]
            t = s + v
            if abs(s) >= abs(v):
                c += (s - t) + v
            else:
                c += (v - t) + s
            s = t
            local[i] = s + c
        totals[j] = s
        comps[j] = c
    return local, totals, comps


@numba.njit(cache=True)
def normalized_jacobi_many(n, a, b, xs):
    out = np.empty(xs.shape[0])
    for i in range(xs.shape[0]):
        out[i] = normalized_jacobi(n, a, b, xs[i])
    return out
