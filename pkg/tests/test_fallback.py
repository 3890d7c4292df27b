"""The numpy fallback must reproduce the compiled kernels."""
import json
import os
import subprocess
import sys

import pytest

from decaykit import backend

from .test_planar import ANCHORS

SCRIPT = r"""
import json, sys
from decaykit import backend, PlanarConfig, reflection_tensor_quadrature
from decaykit.cli import ScanSpec, run_scan
cases = json.loads(sys.argv[1])
out = []
for qz, er, ei in cases:
    r = reflection_tensor_quadrature(PlanarConfig(qz, complex(er, ei)), tol=1e-10)
    out.append([r.rxx.real, r.rxx.imag, r.rzz.real, r.rzz.imag])
rows = run_scan(ScanSpec(qz=0.1, points=5, gamma=0.05))
print(json.dumps({"backend": backend(), "tensor": out, "rates": [r["gamma_over_gamma0"] for r in rows]}))
"""


def run(disable):
    env = dict(os.environ)
    env.pop("DECAYKIT_DISABLE_JIT", None)
    if disable:
        env["DECAYKIT_DISABLE_JIT"] = "1"
    cases = [[qz, complex(eps).real, complex(eps).imag] for qz, eps, _, _ in ANCHORS]
    proc = subprocess.run([sys.executable, "-c", SCRIPT, json.dumps(cases)], env=env,
                          capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


@pytest.fixture(scope="module")
def numpy_run():
    return run(disable=True)


def test_default_backend_is_compiled():
    assert backend() == "numba"


def test_fallback_backend(numpy_run):
    assert numpy_run["backend"] == "numpy"


def test_fallback_anchors(numpy_run):
    for (qz, eps, rxx, rzz), got in zip(ANCHORS, numpy_run["tensor"]):
        scale = 1 + abs(rzz)
        assert abs(complex(*got[:2]) - rxx) <= 1e-9 * scale
        assert abs(complex(*got[2:]) - rzz) <= 1e-9 * scale


def test_fallback_matches_compiled(numpy_run):
    compiled = run(disable=False)
    assert compiled["backend"] == "numba"
    for a, b in zip(compiled["tensor"], numpy_run["tensor"]):
        assert a == pytest.approx(b, rel=1e-11, abs=1e-13)
    assert compiled["rates"] == pytest.approx(numpy_run["rates"], rel=1e-11)
