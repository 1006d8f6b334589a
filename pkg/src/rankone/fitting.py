"""Small regression helpers shared by the exponent and divergence diagnostics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LineFit:
    slope: float
    intercept: float
    r_squared: float


def linear_fit(x, y) -> LineFit:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < 2:
        raise ValueError("need at least two points to fit a line")
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return LineFit(float(slope), float(intercept), r2)


def window_maxima(values: np.ndarray, lo: int, hi: int, windows: int = 40) -> tuple[np.ndarray, np.ndarray]:
    """Largest |value| (and where it occurs) in each of ``windows`` log-spaced index windows of [lo, hi].

    Taking window maxima strips the cos(N theta + gamma) oscillation and
    leaves the envelope.
    """
    edges = np.unique(np.round(np.geomspace(lo, hi, windows + 1)).astype(np.int64))
    mags = np.abs(values)
    where, peak = [], []
    for left, right in zip(edges[:-1], edges[1:]):
        seg = mags[left : right + 1]
        i = int(np.argmax(seg))
        where.append(left + i)
        peak.append(seg[i])
    return np.asarray(where), np.asarray(peak)


def envelope_exponent(values: np.ndarray, lo: int, hi: int, shift: float = 0.0, windows: int = 40) -> float:
    """s in envelope(values) ~ C (n + shift)^(-s), fitted on window maxima over [lo, hi]."""
    n, peak = window_maxima(values, lo, hi, windows)
    keep = peak > 0
    fit = linear_fit(np.log(n[keep] + shift), np.log(peak[keep]))
    return -fit.slope
