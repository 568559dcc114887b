import os
import subprocess
import sys

import pytest

from padicgerm._accel import NUMBA_AVAILABLE
from padicgerm._lattice import lattice_census


def test_env_flag_selects_numpy():
    code = "from padicgerm._accel import default_backend; print(default_backend())"
    env = {**os.environ, "PADICGERM_DISABLE_NUMBA": "1"}
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
    assert out.stdout.strip() == "numpy"


@pytest.mark.skipif(not NUMBA_AVAILABLE, reason="numba not installed")
def test_default_is_numba_when_available():
    code = "from padicgerm._accel import default_backend; print(default_backend())"
    env = {k: v for k, v in os.environ.items() if k != "PADICGERM_DISABLE_NUMBA"}
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
    assert out.stdout.strip() == "numba"


@pytest.mark.parametrize("n,p,emax", [(1, 7, 3), (2, 2, 3), (2, 5, 2), (3, 2, 3), (3, 3, 2)])
def test_kernels_agree(n, p, emax):
    a = lattice_census(n, p, emax, backend="numba")
    b = lattice_census(n, p, emax, backend="numpy")
    assert a == b


def test_unknown_backend():
    with pytest.raises(ValueError):
        lattice_census(2, 2, 1, backend="cuda")
