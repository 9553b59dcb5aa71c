"""Chain specifications, sector bases, Hamiltonian matrices, initial states.

Conventions used everywhere downstream:
  - internal sites 0..L-1, site 0 leftmost; observable coordinate
    k = j - L//2 so the walker starts at k = 0;
  - computational basis indexed little-endian: site j is bit j of the
    state index, bit value 1 marks a flipped (down) spin on the
    all-up background;
  - two-magnon basis labels are ordered pairs (j, k), j < k, enumerated
    lexicographically;
  - doublon basis labels are bond indices b in [0, L-2], bond b sitting
    between sites b and b+1.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidSpecError, ResourceLimitError

FULL_SPACE_MAX_L = 14
TWO_MAGNON_MAX_L = 4096


@dataclass(frozen=True)
class ChainSpec:
    """Open XX/XXZ(+NNN) chain parameters.

    H = -(J/4) sum_j (X_j X_{j+1} + Y_j Y_{j+1})
        -(delta*J/4) sum_j Z_j Z_{j+1}
        -(jprime/4) sum_j (X_j X_{j+2} + Y_j Y_{j+2})

    jprime = 0 gives plain XXZ; delta = 0 on top of that gives the XX chain.
    """

    L: int
    J: float = 1.0
    delta: float = 0.0
    jprime: float = 0.0
    particles: int = 1
    boundary: str = field(default="open")

    def __post_init__(self):
        # L >= 2 so the two-site worked cases remain constructible; walk-level
        # entry points (CLI) additionally require L >= 4.
        if not isinstance(self.L, (int, np.integer)) or self.L < 2:
            raise InvalidSpecError(f"L must be an integer >= 2, got {self.L!r}")
        if self.J <= 0:
            raise InvalidSpecError(f"J must be positive, got {self.J!r}")
        if self.delta < 0:
            raise InvalidSpecError(f"delta must be >= 0, got {self.delta!r}")
        if self.particles not in (1, 2):
            raise InvalidSpecError(f"particles must be 1 or 2, got {self.particles!r}")
        if self.boundary != "open":
            raise InvalidSpecError("only open boundaries are supported")

    @property
    def center(self) -> int:
        return self.L // 2


@dataclass(frozen=True)
class SectorBasis:
    """Ordered enumeration of a conserved-magnon sector."""

    kind: str  # "single-magnon" | "two-magnon" | "doublon"
    L: int
    labels: tuple

    def __post_init__(self):
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(self.labels)})

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index_of(self, label) -> int:
        return self._index[label]


def single_magnon_basis(L: int) -> SectorBasis:
    return SectorBasis("single-magnon", L, tuple(range(L)))


def two_magnon_basis(L: int) -> SectorBasis:
    labels = tuple((j, k) for j in range(L - 1) for k in range(j + 1, L))
    return SectorBasis("two-magnon", L, labels)


def doublon_basis(L: int) -> SectorBasis:
    return SectorBasis("doublon", L, tuple(range(L - 1)))


@dataclass(frozen=True, eq=False)
class HamiltonianMatrix:
    basis: SectorBasis | None  # None tags the full 2^L space
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def build_full_hamiltonian(spec: ChainSpec) -> HamiltonianMatrix:
    """Dense 2^L x 2^L matrix of the open-chain Hamiltonian."""
    L = spec.L
    if L > FULL_SPACE_MAX_L:
        raise ResourceLimitError(f"full space needs L <= {FULL_SPACE_MAX_L}, got {L}")
    dim = 1 << L
    H = np.zeros((dim, dim))
    states = np.arange(dim, dtype=np.int64)
    bits = (states[:, None] >> np.arange(L)[None, :]) & 1  # (dim, L)
    zvals = 1 - 2 * bits  # Z eigenvalue per site

    # diagonal: -(delta J / 4) sum Z_j Z_{j+1}
    if spec.delta != 0.0:
        diag = np.sum(zvals[:, :-1] * zvals[:, 1:], axis=1)
        H[states, states] = -(spec.delta * spec.J / 4.0) * diag

    # -(J/4)(XX+YY) on (j, j+1) flips an antiparallel pair: matrix element -J/2
    for j in range(L - 1):
        mask = bits[:, j] != bits[:, j + 1]
        src = states[mask]
        dst = src ^ ((1 << j) | (1 << (j + 1)))
        H[dst, src] += -spec.J / 2.0

    # same structure for the next-nearest pair (j, j+2)
    if spec.jprime != 0.0:
        for j in range(L - 2):
            mask = bits[:, j] != bits[:, j + 2]
            src = states[mask]
            dst = src ^ ((1 << j) | (1 << (j + 2)))
            H[dst, src] += -spec.jprime / 2.0

    return HamiltonianMatrix(None, H)


def build_sector_hamiltonian(spec: ChainSpec, basis: SectorBasis) -> HamiltonianMatrix:
    if basis.L != spec.L:
        raise InvalidSpecError(f"basis is for L={basis.L}, spec has L={spec.L}")
    if basis.kind == "single-magnon":
        return HamiltonianMatrix(basis, _single_magnon_matrix(spec))
    if basis.kind == "two-magnon":
        if spec.L > TWO_MAGNON_MAX_L:
            raise ResourceLimitError(
                f"two-magnon sector needs L <= {TWO_MAGNON_MAX_L}, got {spec.L}"
            )
        return HamiltonianMatrix(basis, _two_magnon_matrix(spec, basis))
    if basis.kind == "doublon":
        if spec.delta <= 0:
            raise InvalidSpecError("doublon basis requires delta > 0")
        return HamiltonianMatrix(basis, _doublon_matrix(spec))
    raise InvalidSpecError(f"unknown basis kind {basis.kind!r}")


def _single_magnon_matrix(spec: ChainSpec) -> np.ndarray:
    L, J = spec.L, spec.J
    H = np.zeros((L, L))
    for j in range(L - 1):
        H[j, j + 1] = H[j + 1, j] = -J / 2.0
    if spec.jprime != 0.0:
        for j in range(L - 2):
            H[j, j + 2] = H[j + 2, j] = -spec.jprime / 2.0
    if spec.delta != 0.0:
        # one flipped site: L-1 bonds total, anti-aligned where the bond
        # touches the flip (1 bond at the edges, 2 in the bulk)
        for j in range(L):
            n_anti = 1 if j in (0, L - 1) else 2
            n_aligned = (L - 1) - n_anti
            H[j, j] = -(spec.delta * J / 4.0) * (n_aligned - n_anti)
    return H


def _two_magnon_matrix(spec: ChainSpec, basis: SectorBasis) -> np.ndarray:
    L, J = spec.L, spec.J
    dim = basis.dim
    H = np.zeros((dim, dim))

    for idx, (j, k) in enumerate(basis.labels):
        # diagonal: aligned minus anti-aligned nearest-neighbor bonds
        n_anti = 0
        for b in range(L - 1):
            left = b == j or b == k
            right = b + 1 == j or b + 1 == k
            if left != right:
                n_anti += 1
        n_aligned = (L - 1) - n_anti
        H[idx, idx] = -(spec.delta * J / 4.0) * (n_aligned - n_anti)

    def hop(idx, other, a, b, amp):
        # move the magnon at site a to site b; forbidden if b is occupied
        if b == other or not (0 <= b < L):
            return
        tgt = (min(b, other), max(b, other))
        H[basis.index_of(tgt), idx] += amp

    for idx, (j, k) in enumerate(basis.labels):
        for a, other in ((j, k), (k, j)):
            for step in (1, -1):
                hop(idx, other, a, a + step, -J / 2.0)
            if spec.jprime != 0.0:
                # NNN hop skips over the intermediate site, so a hop across
                # the other magnon is allowed; only the landing site must be
                # empty (this matches the full-space restriction exactly)
                for step in (2, -2):
                    hop(idx, other, a, a + step, -spec.jprime / 2.0)
    return H


def _doublon_matrix(spec: ChainSpec) -> np.ndarray:
    # nearest-neighbor pair hopping on the bond lattice; the uniform
    # effective field only contributes a global phase and is dropped
    L = spec.L
    j_eff = spec.J / (2.0 * spec.delta)
    nb = L - 1
    H = np.zeros((nb, nb))
    for b in range(nb - 1):
        H[b, b + 1] = H[b + 1, b] = -j_eff / 2.0
    return H


def initial_state_vector(spec: ChainSpec, basis: SectorBasis | None) -> np.ndarray:
    """Unit amplitude on the centered excitation, as a complex vector.

    particles=1: flip at site c = L//2. particles=2: flips at (c-1, c).
    Doublon basis: bond c-1. basis=None gives the full-space basis vector.
    """
    c = spec.center
    if basis is None:
        vec = np.zeros(1 << spec.L, dtype=complex)
        if spec.particles == 1:
            vec[1 << c] = 1.0
        else:
            vec[(1 << (c - 1)) | (1 << c)] = 1.0
        return vec
    vec = np.zeros(basis.dim, dtype=complex)
    if basis.kind == "single-magnon":
        vec[basis.index_of(c)] = 1.0
    elif basis.kind == "two-magnon":
        vec[basis.index_of((c - 1, c))] = 1.0
    elif basis.kind == "doublon":
        vec[basis.index_of(c - 1)] = 1.0
    else:
        raise InvalidSpecError(f"unknown basis kind {basis.kind!r}")
    return vec


def embed_sector_state(vec: np.ndarray, basis: SectorBasis) -> np.ndarray:
    """Lift a sector amplitude vector into the full 2^L space."""
    full = np.zeros(1 << basis.L, dtype=complex)
    if basis.kind == "single-magnon":
        for j, a in zip(basis.labels, vec):
            full[1 << j] = a
    elif basis.kind == "two-magnon":
        for (j, k), a in zip(basis.labels, vec):
            full[(1 << j) | (1 << k)] = a
    else:
        raise InvalidSpecError(f"cannot embed basis kind {basis.kind!r}")
    return full
