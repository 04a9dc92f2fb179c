"""The demo scripts run, and the stand-alone Z/4 certificate checker agrees with the library."""

import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from freetri import decide_exact, format_certificate, make_ring, verify_certificate_text
from freetri.generators import random_exact_triangle

DEMOS = Path(__file__).resolve().parent.parent / "demos"
CHECKER = DEMOS / "check_certificate_z4.py"


@pytest.mark.parametrize("script", sorted(p.name for p in DEMOS.glob("0*.py")))
def test_demo_runs(script):
    out = subprocess.run([sys.executable, str(DEMOS / script)], capture_output=True, text=True,
                         timeout=120)
    assert out.returncode == 0, out.stderr
    assert out.stdout


def _check(tmp_path, text) -> bool:
    path = tmp_path / "cert.txt"
    path.write_text(text)
    out = subprocess.run([sys.executable, str(CHECKER), str(path)], capture_output=True,
                         text=True, timeout=60)
    assert out.returncode in (0, 1), out.stderr
    return out.returncode == 0


def test_standalone_checker_agrees(tmp_path):
    R = make_ring("zmod4")
    rng = np.random.default_rng(77)
    for _ in range(6):
        T = random_exact_triangle(R, rng, 4)
        text = format_certificate(T, decide_exact(T))
        assert _check(tmp_path, text)
        lines = text.splitlines()
        k = lines.index("alpha:") + 1
        words = lines[k].split()
        if words[0] in ("rows", "cols"):
            continue
        words[0] = str((int(words[0]) + 1) % 4)
        lines[k] = " ".join(words)
        bad = "\n".join(lines) + "\n"
        assert _check(tmp_path, bad) == verify_certificate_text(bad)
