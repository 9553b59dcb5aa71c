"""Both kernel backends must be drop-in equivalents; the env flag picks one."""
import os
import subprocess
import sys

import numpy as np
import pytest
from scipy.special import jv

from magicwalk.kernels import numpy_backend

try:
    from magicwalk.kernels import numba_backend
except ImportError:  # pragma: no cover - numba is a hard dependency here
    numba_backend = None

needs_numba = pytest.mark.skipif(numba_backend is None, reason="numba unavailable")


@needs_numba
@pytest.mark.parametrize("L", [1, 2, 4, 6])
def test_pauli_transform_backends_agree(L):
    rng = np.random.default_rng(1000 + L)
    buf = rng.normal(size=4**L) + 1j * rng.normal(size=4**L)
    a = numpy_backend.pauli_transform(buf.copy(), L)
    b = numba_backend.pauli_transform(buf.copy(), L)
    np.testing.assert_allclose(a, b, atol=1e-13)


@needs_numba
@pytest.mark.parametrize("z", [0.0, 0.7, 19.0, 250.0])
def test_bessel_backends_agree(z):
    order = int(z) + 50
    a = numpy_backend.bessel_downward(order, z)
    b = numba_backend.bessel_downward(order, z)
    np.testing.assert_allclose(a, b, rtol=1e-13, atol=1e-300)


@pytest.mark.parametrize("backend", [numpy_backend, numba_backend])
def test_bessel_kernel_accuracy(backend):
    if backend is None:
        pytest.skip("numba unavailable")
    out = backend.bessel_downward(80, 55.5)
    ref = jv(np.arange(81), 55.5)
    assert np.max(np.abs(out - ref)) < 1e-13


@needs_numba
@pytest.mark.parametrize("n", [3, 8, 17])
def test_bruteforce_backends_agree(n):
    rng = np.random.default_rng(2000 + n)
    psi = rng.normal(size=n) + 1j * rng.normal(size=n)
    psi /= np.linalg.norm(psi)
    a = numpy_backend.bruteforce_total(psi)
    b = numba_backend.bruteforce_total(psi)
    assert abs(a - b) < 1e-12


def test_env_flag_selects_numpy():
    env = dict(os.environ, MAGICWALK_NO_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "import magicwalk.kernels as k; print(k.BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.strip() == "numpy"


def test_default_backend_reported():
    from magicwalk.kernels import BACKEND
    assert BACKEND in ("numba", "numpy")
