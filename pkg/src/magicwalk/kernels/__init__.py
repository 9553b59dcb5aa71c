"""Hot numerical kernels with two interchangeable backends.

The numba backend is used when importable; set MAGICWALK_NO_NUMBA=1 to force
the pure-numpy fallback. Both expose the same three functions and are checked
against each other in the test suite:

    pauli_transform(buf, L)   in-place-ish ping-pong transform, returns result
    bessel_downward(order_max, z)
    bruteforce_total(psi)
"""
import os

_want_numba = os.environ.get("MAGICWALK_NO_NUMBA", "").strip() not in ("1", "true", "yes")

if _want_numba:
    try:
        from .numba_backend import bessel_downward, bruteforce_total, pauli_transform
        BACKEND = "numba"
    except ImportError:
        from .numpy_backend import bessel_downward, bruteforce_total, pauli_transform
        BACKEND = "numpy"
else:
    from .numpy_backend import bessel_downward, bruteforce_total, pauli_transform
    BACKEND = "numpy"

__all__ = ["BACKEND", "bessel_downward", "bruteforce_total", "pauli_transform"]
