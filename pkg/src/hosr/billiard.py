"""Circular-billiard spectrum from Bessel-function zeros.

The Dirichlet eigenmodes of the unit disk are J_n(j_{n,k} rho) e^{i n phi}
with energies E = j_{n,k}^2, where j_{n,k} is the k-th positive zero of the
Bessel function J_n.  The billiard is integrable, so its levels are the
standard uncorrelated reference for the ratio statistics.

Zeros are found row by row in the angular order n: row 0 starts from the
McMahon large-argument expansion, every later row is bracketed by the
interlacing property j_{n,k} < j_{n+1,k} < j_{n,k+1} and polished with a
bracket-safeguarded Newton iteration.  Angular orders n > 0 are doubly
degenerate (sin/cos); the default policy keeps each distinct level once,
since exact duplicates only produce zero spacings that every ratio
statistic has to discard anyway.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import NumericError, SizeError, ValidationError
from .spectra import Spectrum

__all__ = [
    "BilliardLevels",
    "KEEP_ONCE",
    "KEEP_BOTH",
    "bessel_j_zeros",
    "circular_billiard_levels",
]

KEEP_ONCE = "keep-once"
KEEP_BOTH = "keep-both"

_REL_TOL = 1e-12
_MAX_NEWTON = 200


@dataclass(frozen=True)
class BilliardLevels:
    """Truncation and degeneracy choices for the disk spectrum."""

    n_max: int
    zeros_per_order: int
    policy: str = KEEP_ONCE

    def __post_init__(self):
        if self.n_max < 0:
            raise SizeError(f"max angular order must be >= 0, got {self.n_max}")
        if self.zeros_per_order < 1:
            raise SizeError(
                f"zeros per order must be >= 1, got {self.zeros_per_order}"
            )
        if self.policy not in (KEEP_ONCE, KEEP_BOTH):
            raise ValidationError(
                f"degeneracy policy must be {KEEP_ONCE!r} or {KEEP_BOTH!r}, "
                f"got {self.policy!r}"
            )


def _bessel(order: int, x: np.ndarray) -> np.ndarray:
    return special.jv(order, x)


def _bessel_deriv(order: int, x: np.ndarray) -> np.ndarray:
    if order == 0:
        return -special.jv(1, x)
    return special.jv(order - 1, x) - (order / x) * special.jv(order, x)


def _mcmahon_j0(count: int) -> np.ndarray:
    """McMahon expansion of the J_0 zeros; error < 1e-3 already at k=1."""
    b = (np.arange(1, count + 1) - 0.25) * np.pi
    return b + 1.0 / (8.0 * b) - 31.0 / (384.0 * b**3) + 3779.0 / (15360.0 * b**5)


def _refine(order: int, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Newton within brackets, falling back to bisection when it strays.

    Every bracket must contain exactly one simple zero of J_order; the sign
    change is verified up front.
    """
    lo = lo.copy()
    hi = hi.copy()
    flo = _bessel(order, lo)
    fhi = _bessel(order, hi)
    bad = np.sign(flo) * np.sign(fhi) >= 0
    if np.any(bad):
        k_bad = int(np.flatnonzero(bad)[0]) + 1
        raise NumericError(
            f"no sign change while bracketing zero (n={order}, k={k_bad})"
        )
    x = 0.5 * (lo + hi)
    for _ in range(_MAX_NEWTON):
        f = _bessel(order, x)
        # shrink brackets with the fresh sign information
        on_lo_side = np.sign(f) == np.sign(flo)
        lo = np.where(on_lo_side, x, lo)
        flo = np.where(on_lo_side, f, flo)
        hi = np.where(on_lo_side, hi, x)
        step = f / _bessel_deriv(order, x)
        cand = x - step
        inside = (cand > lo) & (cand < hi)
        x_new = np.where(inside, cand, 0.5 * (lo + hi))
        done = np.abs(x_new - x) <= _REL_TOL * x_new
        x = x_new
        if np.all(done):
            return x
    worst = int(np.argmax(np.abs(_bessel(order, x))))
    raise NumericError(
        f"zero refinement did not converge (n={order}, k={worst + 1})"
    )


def bessel_j_zeros(order: int, count: int) -> np.ndarray:
    """First ``count`` positive zeros of J_order to 1e-12 relative accuracy.

    Orders above 0 are reached by marching the interlacing ladder up from
    order 0, so asking for a high order recomputes the lower rows; use
    :func:`circular_billiard_levels` when many orders are needed at once.
    """
    if order < 0:
        raise SizeError(f"Bessel order must be >= 0, got {order}")
    if count < 1:
        raise SizeError(f"zero count must be >= 1, got {count}")
    rows = _zero_table(order, count + order)
    return rows[order][:count]


def _zero_table(n_max: int, count_row0: int) -> list[np.ndarray]:
    """Zeros of J_0..J_n_max; row n holds count_row0 - n entries."""
    guesses = _mcmahon_j0(count_row0)
    rows = [_refine(0, guesses - 0.3, guesses + 0.3)]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        if len(prev) < 2:
            raise SizeError(
                f"zeros-per-order budget exhausted before order {n}; "
                f"raise the requested count"
            )
        rows.append(_refine(n, prev[:-1], prev[1:]))
    return rows


def circular_billiard_levels(b: BilliardLevels) -> Spectrum:
    """Disk levels E = j_{n,k}^2, truncated below E = j_{0,zeros_per_order}^2.

    The strict truncation keeps the level sequence complete: above that
    energy ever more angular orders are missing their high-k zeros, which
    would thin the spectrum artificially and bias the spacing statistics.
    """
    # row n needs its zeros up to index zeros_per_order plus enough spare
    # entries to bracket all the rows above it
    rows = _zero_table(b.n_max, b.zeros_per_order + b.n_max)
    cutoff = rows[0][b.zeros_per_order - 1] ** 2
    levels = []
    for n, zeros in enumerate(rows):
        e = zeros[: b.zeros_per_order] ** 2
        e = e[e < cutoff]
        weight = 2 if (n > 0 and b.policy == KEEP_BOTH) else 1
        for _ in range(weight):
            levels.append(e)
    merged = np.sort(np.concatenate(levels))
    merged.setflags(write=False)
    return Spectrum(
        levels=merged,
        label=(
            f"circular-billiard n_max={b.n_max} "
            f"zeros_per_order={b.zeros_per_order} policy={b.policy}"
        ),
    )
