"""Post-processing: spacing-ratio statistics, cumulative magic, front fits."""
from dataclasses import dataclass

import numpy as np

from .errors import EmptyWindowError, InsufficientDataError, InvalidSpecError, NoFrontError

MERGE_TOL = 1e-12
DEFAULT_BINS = 25
DEFAULT_FRONT_EPS = 0.01
BRIGHT_FRONT_EPS = 0.2


@dataclass(eq=False)
class SpacingStats:
    values: np.ndarray      # sorted distinct values after merging
    spacings: np.ndarray
    ratios: np.ndarray      # r-tilde, one per interior spacing pair
    bin_edges: np.ndarray
    densities: np.ndarray
    mean_ratio: float

    @property
    def count(self) -> int:
        return self.ratios.shape[0]


def _merge_close(values: np.ndarray, tol: float) -> np.ndarray:
    """Collapse runs of values closer than tol into their mean."""
    v = np.sort(np.asarray(values, dtype=float))
    if v.size == 0:
        return v
    starts = np.concatenate(([0], np.nonzero(np.diff(v) > tol)[0] + 1))
    sums = np.add.reduceat(v, starts)
    counts = np.diff(np.concatenate((starts, [v.size])))
    return sums / counts


def spacing_ratios(values, bins: int = DEFAULT_BINS) -> SpacingStats:
    """Adjacent-gap ratios r = min(s_n, s_{n-1}) / max(s_n, s_{n-1}).

    Near-duplicates (within 1e-12) are merged first; exact ties would
    otherwise inject artificial zero spacings.
    """
    merged = _merge_close(values, MERGE_TOL)
    if merged.size < 3:
        raise InsufficientDataError(
            f"need >= 3 distinct values for spacing ratios, got {merged.size}"
        )
    s = np.diff(merged)
    ratios = np.minimum(s[1:], s[:-1]) / np.maximum(s[1:], s[:-1])
    edges = np.linspace(0.0, 1.0, bins + 1)
    densities, _ = np.histogram(ratios, bins=edges, density=True)
    return SpacingStats(
        values=merged,
        spacings=s,
        ratios=ratios,
        bin_edges=edges,
        densities=densities,
        mean_ratio=float(np.mean(ratios)),
    )


def poisson_reference(rtilde):
    """Poisson gap-ratio density 2/(1+r)^2 on [0, 1]."""
    r = np.asarray(rtilde, dtype=float)
    if np.any(r < 0.0) or np.any(r > 1.0):
        raise InvalidSpecError("gap ratio outside [0, 1]")
    out = 2.0 / (1.0 + r) ** 2
    return float(out) if np.isscalar(rtilde) else out


def snapshot_times(L: int, J: float = 1.0, count: int = 8) -> np.ndarray:
    """Long-time sampling protocol: count snapshots, tJ uniform in [100L, 200L]."""
    return np.linspace(100.0 * L, 200.0 * L, count) / J


def cumulative_average(times, values) -> np.ndarray:
    """Trapezoidal running integral of the series divided by t; value at
    t = 0 is the series value there."""
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if times.size == 0 or times[0] != 0.0 or np.any(np.diff(times) <= 0.0):
        raise InvalidSpecError("need a strictly increasing time grid starting at 0")
    out = np.empty_like(values)
    out[0] = values[0]
    integral = np.concatenate(
        ([0.0], np.cumsum(0.5 * (values[1:] + values[:-1]) * np.diff(times)))
    )
    out[1:] = integral[1:] / times[1:]
    return out


@dataclass(eq=False)
class FrontFit:
    times: np.ndarray
    left: np.ndarray
    right: np.ndarray
    velocity: float   # slope of the right front
    residual: float   # rms of the right-front fit


def light_cone_front(times, profiles, eps: float = DEFAULT_FRONT_EPS, window=None) -> FrontFit:
    """Outermost sites deviating from the <Z> = +1 background by more than eps.

    The velocity is the least-squares slope of the right front over the
    window (defaults to the whole grid).
    """
    if not 0.0 < eps < 1.0:
        raise InvalidSpecError(f"front threshold must be in (0, 1), got {eps}")
    times = np.asarray(times, dtype=float)
    profiles = np.asarray(profiles, dtype=float)
    if window is None:
        mask = np.ones(times.shape, dtype=bool)
    else:
        mask = (times >= window[0]) & (times <= window[1])
        if not np.any(mask):
            raise EmptyWindowError(f"window {window} selects no samples")
    tsel = times[mask]
    left = np.empty(tsel.shape[0], dtype=float)
    right = np.empty(tsel.shape[0], dtype=float)
    for i, row in enumerate(profiles[mask]):
        hit = np.nonzero(np.abs(row - 1.0) > eps)[0]
        if hit.size == 0:
            raise NoFrontError(f"no site beyond threshold {eps} at t = {tsel[i]}")
        left[i] = hit[0]
        right[i] = hit[-1]
    A = np.vstack([tsel, np.ones_like(tsel)]).T
    coef, *_ = np.linalg.lstsq(A, right, rcond=None)
    fitted = A @ coef
    residual = float(np.sqrt(np.mean((right - fitted) ** 2)))
    return FrontFit(times=tsel, left=left, right=right,
                    velocity=float(coef[0]), residual=residual)


def log_growth_fit(times, values, window) -> tuple[float, float, float]:
    """Least squares of the series against log2 t over the window.

    Returns (slope, intercept, rms residual).
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    lo, hi = window
    mask = (times >= lo) & (times <= hi)
    if not np.any(mask):
        raise EmptyWindowError(f"window [{lo}, {hi}] selects no samples")
    if np.any(times[mask] <= 0.0):
        raise InvalidSpecError("log fit needs strictly positive times")
    x = np.log2(times[mask])
    y = values[mask]
    A = np.vstack([x, np.ones_like(x)]).T
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    residual = float(np.sqrt(np.mean((y - A @ coef) ** 2)))
    return float(coef[0]), float(coef[1]), residual
