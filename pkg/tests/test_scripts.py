import csv
import io
import subprocess
import sys

import pytest

from conftest import ROOT


@pytest.mark.parametrize(
    "script, args, rows",
    [
        ("decay_exponents.py", ["--max-q", "3", "--n-hi", "4000"], 21),
        ("series_matrix.py", ["--n-max", "20000"], 21),
        ("growth_orders.py", ["--max-q", "3"], 8),
    ],
)
def test_script_runs(script, args, rows):
    res = subprocess.run([sys.executable, str(ROOT / "scripts" / script), *args], capture_output=True, text=True, timeout=300)
    assert res.returncode == 0, res.stderr
    table = list(csv.DictReader(io.StringIO(res.stdout)))
    assert len(table) == rows
