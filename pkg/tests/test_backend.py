import os
import subprocess
import sys

import numpy as np
import pytest

from mnconvex import _backend, _kernels_py
from mnconvex.means import CODE_A, CODE_E, CODE_J, CODE_M

compiled = pytest.importorskip("mnconvex._kernels")


def test_selected_backend():
    assert _backend.BACKEND in ("cython", "python")


def test_env_forces_fallback():
    env = dict(os.environ, MNCONVEX_BACKEND="python")
    out = subprocess.run(
        [sys.executable, "-c", "from mnconvex._backend import BACKEND; print(BACKEND)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"


@pytest.mark.parametrize("code", range(CODE_A, CODE_E + 1))
@pytest.mark.parametrize("param", [-5.0, -2.0, -1.0, -1e-12, 0.0, 0.5, 1.0, 3.0])
def test_batch_mean_bitwise(code, param):
    if code not in (CODE_J, CODE_M) and param != 0.0:
        return
    rng = np.random.default_rng(code * 100 + int(param * 10))
    x = np.exp(rng.uniform(-20, 20, 500))
    y = np.concatenate([np.exp(rng.uniform(-20, 20, 300)), x[300:] * (1 + 10.0 ** -rng.uniform(3, 15, 200))])
    a, b = np.empty(500), np.empty(500)
    compiled.batch_mean(code, param, x, y, a)
    _kernels_py.batch_mean(code, param, x, y, b)
    assert np.array_equal(a, b)


def test_monotone_scan_agrees():
    rng = np.random.default_rng(1)
    for v in (np.cumsum(rng.uniform(0, 1, 300)), rng.uniform(0, 1, 300), np.full(10, 3.0), np.array([1.0])):
        assert compiled.monotone_scan(v, 1e-9) == _kernels_py.monotone_scan(v, 1e-9)


def test_bad_code_rejected():
    out = np.empty(1)
    with pytest.raises(ValueError):
        _kernels_py.batch_mean(99, 0.0, np.ones(1), np.ones(1), out)
    with pytest.raises(ValueError):
        compiled.batch_mean(99, 0.0, np.ones(1), np.ones(1), out)


def test_cli_output_identical_across_backends():
    argv = [sys.executable, "-m", "mnconvex", "verify", "--suite", "all", "--trials", "40", "--seed", "3", "--format", "csv"]
    outs = []
    for backend in ("python", "cython"):
        env = dict(os.environ, MNCONVEX_BACKEND=backend)
        outs.append(subprocess.run(argv, env=env, capture_output=True, text=True).stdout)
    assert outs[0] and outs[0] == outs[1]
