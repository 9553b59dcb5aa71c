"""Stabilizer Renyi entropy M2 by four routes.

Routes: full Pauli spectrum (any state, small L), closed-form coefficient
formula for one-particle amplitudes, literal quadruple-sum contraction as an
oracle, and the Bessel exact / asymptotic forms for the infinite chain.

All routes share the normalization M2 = -log2(2^-L sum_P c_P^4), which sends
every stabilizer basis state to exactly zero.
"""
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InvalidSpecError, NumericalError, ResourceLimitError

SPECTRUM_MAX_L = 12
BRUTEFORCE_MAX_L = 24
FILTER_TAU = 1e-10


@dataclass(eq=False)
class PauliSpectrum:
    """All 4^L real coefficients c_P = <psi|P|psi>.

    Index = sum_s digit_s 4^s with site 0 the least significant digit and
    digit values I=0, X=1, Y=2, Z=3.
    """

    L: int
    coeffs: np.ndarray

    def purity(self) -> float:
        return float(np.sum(self.coeffs**2))


@dataclass(eq=False)
class FilteredSpectrum:
    L: int
    indices: np.ndarray  # uint64 string indices
    values: np.ndarray


def pauli_spectrum_full(psi: np.ndarray) -> PauliSpectrum:
    """Pauli coefficients via the vectorized density matrix, O(L 4^L)."""
    psi = np.asarray(psi, dtype=complex)  # the transform needs complex scratch
    dim = psi.shape[0]
    L = int(round(np.log2(dim)))
    if (1 << L) != dim:
        raise InvalidSpecError(f"state length {dim} is not a power of two")
    if L > SPECTRUM_MAX_L:
        raise ResourceLimitError(f"spectrum needs L <= {SPECTRUM_MAX_L}, got {L}")
    rho = np.outer(psi, psi.conj())
    # interleave row/col bits per site: digit s encodes (row_s, col_s)
    tens = rho.reshape((2,) * (2 * L))
    perm = []
    for s in range(L):
        perm += [s, L + s]
    buf = np.ascontiguousarray(tens.transpose(perm)).reshape(4**L)
    del rho, tens
    out = kernels.pauli_transform(buf, L)
    worst_imag = float(np.max(np.abs(out.imag)))
    if worst_imag > 1e-10:
        raise NumericalError(f"Pauli coefficients not real: max imag {worst_imag:.3e}")
    return PauliSpectrum(L, np.ascontiguousarray(out.real))


def m2_from_spectrum(spectrum: PauliSpectrum) -> float:
    total = np.sum(spectrum.coeffs**4) / (1 << spectrum.L)
    # + 0.0 canonicalizes the -0.0 that -log2 produces on stabilizer states
    return float(-np.log2(total)) + 0.0


def filter_spectrum(spectrum: PauliSpectrum, tau: float = FILTER_TAU) -> FilteredSpectrum:
    keep = np.abs(spectrum.coeffs) > tau
    return FilteredSpectrum(
        spectrum.L,
        np.nonzero(keep)[0].astype(np.uint64),
        spectrum.coeffs[keep].copy(),
    )


def write_filtered_spectrum(filtered: FilteredSpectrum, path) -> None:
    """Two-column text: string index, coefficient (17 significant digits)."""
    with open(path, "w", newline="\n") as fh:
        for idx, val in zip(filtered.indices, filtered.values):
            fh.write(f"{int(idx)} {val:.17g}\n")


def read_filtered_spectrum(path, L: int) -> FilteredSpectrum:
    data = np.loadtxt(path, ndmin=2)
    if data.size == 0:
        return FilteredSpectrum(L, np.empty(0, dtype=np.uint64), np.empty(0))
    return FilteredSpectrum(L, data[:, 0].astype(np.uint64), data[:, 1].copy())


def stabilizer_counts(spectrum: PauliSpectrum, atol: float = 1e-10) -> dict:
    """Counts of coefficients at +1, -1, and 0 (within atol)."""
    c = spectrum.coeffs
    return {
        "plus_one": int(np.sum(np.abs(c - 1.0) < atol)),
        "minus_one": int(np.sum(np.abs(c + 1.0) < atol)),
        "zero": int(np.sum(np.abs(c) < atol)),
    }


def _check_normalized(psi: np.ndarray) -> None:
    err = abs(np.linalg.norm(psi) - 1.0)
    if err > 1e-6:
        raise InvalidSpecError(f"amplitudes not normalized: |norm - 1| = {err:.3e}")


def m2_coeff(psi: np.ndarray) -> float:
    """Closed-form M2 for one-particle amplitudes, O(L).

    The quadruple sum collapses to -6 sum|psi|^8 + 6 (sum|psi|^4)^2
    + |sum psi^4|^2.
    """
    psi = np.asarray(psi, dtype=complex)
    _check_normalized(psi)
    p4 = np.sum(np.abs(psi) ** 4)
    p8 = np.sum(np.abs(psi) ** 8)
    q4 = np.sum(psi**4)
    total = -6.0 * p8 + 6.0 * p4**2 + abs(q4) ** 2
    if not total > 0.0:
        raise NumericalError(f"nonpositive 2^-M2 total {total!r}")
    return float(-np.log2(total)) + 0.0


def m2_bruteforce(psi: np.ndarray) -> float:
    """Literal quadruple contraction, O(L^4); oracle for m2_coeff."""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape[0] > BRUTEFORCE_MAX_L:
        raise ResourceLimitError(
            f"bruteforce route needs L <= {BRUTEFORCE_MAX_L}, got {psi.shape[0]}"
        )
    _check_normalized(psi)
    total = kernels.bruteforce_total(psi)
    if abs(total.imag) > 1e-12:
        raise NumericalError(f"contraction imaginary residue {total.imag:.3e}")
    if not total.real > 0.0:
        raise NumericalError(f"nonpositive 2^-M2 total {total.real!r}")
    return float(-np.log2(total.real)) + 0.0


def m2_bessel(t: float, v: float, L_sum: int = 600) -> float:
    """Exact infinite-chain M2 at time t, truncated to |k| <= L_sum/2.

    M2 = -log2[ 7 (sum_j J_j^4)^2 - 6 sum_j J_j^8 ], j over all integers.
    """
    if t < 0:
        raise InvalidSpecError(f"t must be >= 0, got {t}")
    kmax = L_sum // 2
    Jk = kernels.bessel_downward(int(kmax), float(v * t))
    norm = Jk[0] ** 2 + 2.0 * np.sum(Jk[1:] ** 2)
    if abs(1.0 - norm) > 1e-12:
        raise InvalidSpecError(
            f"L_sum = {L_sum} truncates tail mass {abs(1.0 - norm):.3e} > 1e-12"
        )
    a4 = Jk[0] ** 4 + 2.0 * np.sum(Jk[1:] ** 4)
    b8 = Jk[0] ** 8 + 2.0 * np.sum(Jk[1:] ** 8)
    total = 7.0 * a4**2 - 6.0 * b8
    return float(-np.log2(total)) + 0.0


def m2_asymptotic(t: float, v: float) -> float:
    """Large-t closed form; valid only for v t > 1."""
    vt = v * t
    if vt <= 1.0:
        raise InvalidSpecError(f"asymptotic form needs v*t > 1, got {vt}")
    val = 7.0 / (np.pi**4 * vt**2) * (np.log(vt) + 5.0 * np.log(2.0) + np.euler_gamma) ** 2
    return float(-np.log2(val)) + 0.0
