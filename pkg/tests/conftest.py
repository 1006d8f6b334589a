import json
import os
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

ROOT = Path(__file__).resolve().parents[1]
SCHEMAS = ROOT / "schemas"
GOLDEN = Path(__file__).resolve().parent / "golden"

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def run_cli(*args, timeout=600):
    """Run the installed entry point in a fresh interpreter."""
    return subprocess.run(
        [sys.executable, "-m", "rankone.cli", *args],
        capture_output=True,
        text=True,
        timeout=timeout,
        cwd=ROOT,
    )


@pytest.fixture(scope="session")
def schema():
    def load(name):
        return json.loads((SCHEMAS / f"{name}.schema.json").read_text(encoding="utf-8"))

    return load
