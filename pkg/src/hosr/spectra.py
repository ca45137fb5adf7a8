"""Spectrum container and spacing-ratio extraction.

A :class:`Spectrum` is a validated, nondecreasing sequence of energy levels.
From it we extract k-th order spacings ``s_i = E[i+k] - E[i]`` and the
non-overlapping k-th order spacing ratios

    r_i = (E[i+2k] - E[i+k]) / (E[i+k] - E[i]),

using a sliding window over i so every admissible index contributes one
ratio.  Ratios are invariant under affine rescaling of the levels, which is
why none of this requires spectral unfolding.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SizeError, ValidationError

__all__ = [
    "Spectrum",
    "RatioSeries",
    "EmpiricalCdf",
    "RatioHistogram",
    "make_spectrum",
    "collapse_degeneracies",
    "spacings",
    "spacing_ratios",
    "empirical_cdf",
    "histogram",
]


def _frozen_array(values, dtype=np.float64) -> np.ndarray:
    arr = np.asarray(values, dtype=dtype).copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Spectrum:
    """Sorted sequence of energy levels (arbitrary units) with a provenance tag."""

    levels: np.ndarray
    label: str = ""

    def __len__(self) -> int:
        return len(self.levels)


@dataclass(frozen=True)
class RatioSeries:
    """k-th order spacing ratios extracted from one spectrum.

    ``dropped_count`` counts ratios discarded because their denominator
    spacing was exactly zero (degenerate levels); the identity
    ``len(values) + dropped_count == source_length - 2k`` always holds.
    """

    k: int
    values: np.ndarray
    dropped_count: int
    source_length: int

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class EmpiricalCdf:
    """Right-continuous step CDF: F(x) = (#points <= x) / n."""

    points: np.ndarray  # sorted

    def __call__(self, x) -> np.ndarray | float:
        idx = np.searchsorted(self.points, x, side="right")
        out = idx / len(self.points)
        return float(out) if np.isscalar(x) else out


@dataclass(frozen=True)
class RatioHistogram:
    """Density histogram of a ratio sample on [0, cut].

    Densities integrate to 1 over the in-range sample; ratios beyond the
    cut are excluded and tallied in ``overflow``.
    """

    bin_centers: np.ndarray
    densities: np.ndarray
    bin_width: float
    n_in_range: int
    overflow: int

    def pairs(self) -> list[tuple[float, float]]:
        return list(zip(self.bin_centers.tolist(), self.densities.tolist()))


def make_spectrum(raw, label: str = "") -> Spectrum:
    """Build a validated Spectrum from raw levels (any order, any sequence).

    Raises SizeError for fewer than 3 entries and ValidationError (with the
    offending index) for NaN or infinite entries.
    """
    arr = np.asarray(raw, dtype=np.float64)
    if arr.ndim != 1:
        arr = arr.reshape(-1)
    if arr.size < 3:
        raise SizeError(f"need at least 3 levels, got {arr.size}")
    bad = np.flatnonzero(~np.isfinite(arr))
    if bad.size:
        raise ValidationError(f"non-finite level at index {bad[0]}: {arr[bad[0]]!r}")
    return Spectrum(levels=_frozen_array(np.sort(arr)), label=label)


def collapse_degeneracies(s: Spectrum, rel_tol: float = 1e-10) -> Spectrum:
    """Keep one level per cluster of exactly (or near-exactly) equal levels.

    Symmetry multiplets recorded at full multiplicity flood the ratio series
    with zero spacings and swamp every ratio statistic; the distinct-level
    sequence is what carries the fluctuation information.  Two levels belong
    to the same cluster when they differ by less than rel_tol times the
    spectral width, so this is a no-op for any spectrum without true
    degeneracies (chaotic spectra repel; their minimum gap sits many orders
    above 1e-10 of the width).
    """
    if not rel_tol >= 0.0:
        raise ValidationError(f"rel_tol must be >= 0, got {rel_tol}")
    e = s.levels
    tol = rel_tol * (e[-1] - e[0])
    # greedy left-to-right clustering: a new cluster starts at the first
    # level more than tol above the previous kept one
    kept = [e[0]]
    for x in e[1:]:
        if x - kept[-1] > tol:
            kept.append(x)
    return Spectrum(
        levels=_frozen_array(kept),
        label=(s.label or "levels") + f" [distinct, rel_tol={rel_tol:g}]",
    )


def spacings(s: Spectrum, k: int) -> np.ndarray:
    """k-th order spacings E[i+k] - E[i], i = 0..N-k-1 (all nonnegative)."""
    if k < 1:
        raise SizeError(f"spacing order must be >= 1, got {k}")
    n = len(s)
    if k > n - 1:
        raise SizeError(f"order k={k} needs at least {k + 1} levels, spectrum has {n}")
    e = s.levels
    return e[k:] - e[:-k]


def spacing_ratios(s: Spectrum, k: int) -> RatioSeries:
    """Non-overlapping k-th order spacing ratios with a sliding index.

    Each ratio divides two adjacent k-th order spacings,
    (E[i+2k]-E[i+k]) / (E[i+k]-E[i]).  Ratios whose denominator is exactly
    zero are dropped and counted; a zero numerator yields the ratio 0.
    """
    if k < 1:
        raise SizeError(f"ratio order must be >= 1, got {k}")
    n = len(s)
    if n < 2 * k + 1:
        raise SizeError(f"order k={k} needs at least {2 * k + 1} levels, spectrum has {n}")
    gap = spacings(s, k)
    num = gap[k:]
    den = gap[:-k]
    keep = den > 0.0
    values = num[keep] / den[keep]
    return RatioSeries(
        k=k,
        values=_frozen_array(values),
        dropped_count=int(np.count_nonzero(~keep)),
        source_length=n,
    )


def empirical_cdf(r: RatioSeries) -> EmpiricalCdf:
    """Step CDF over the sorted ratio values."""
    if len(r.values) == 0:
        raise SizeError("cannot build an empirical CDF from an empty ratio series")
    return EmpiricalCdf(points=_frozen_array(np.sort(r.values)))


def histogram(r: RatioSeries, bin_count: int, upper_cut: float) -> RatioHistogram:
    """Equal-width density histogram of the ratios on [0, upper_cut].

    Samples above the cut are excluded from the density normalization but
    reported via ``overflow``; the in-range densities integrate to 1.
    """
    if bin_count < 2:
        raise SizeError(f"need at least 2 bins, got {bin_count}")
    if not upper_cut > 0.0:
        raise SizeError(f"upper cut must be positive, got {upper_cut}")
    vals = r.values
    in_range = vals[vals <= upper_cut]
    overflow = len(vals) - len(in_range)
    edges = np.linspace(0.0, upper_cut, bin_count + 1)
    counts, _ = np.histogram(in_range, bins=edges)
    width = upper_cut / bin_count
    if len(in_range):
        dens = counts / (len(in_range) * width)
    else:
        dens = np.zeros(bin_count)
    centers = 0.5 * (edges[:-1] + edges[1:])
    return RatioHistogram(
        bin_centers=_frozen_array(centers),
        densities=_frozen_array(dens),
        bin_width=float(width),
        n_in_range=int(len(in_range)),
        overflow=int(overflow),
    )
