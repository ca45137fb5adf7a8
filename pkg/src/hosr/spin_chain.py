"""Spin-1/2 chain with nearest and next-nearest neighbour couplings.

Open-boundary XXZ chain plus a next-nearest-neighbour perturbation of
strength eta; conserved total magnetization makes the Hamiltonian block
diagonal in the number of up spins, and each block is assembled directly in
the fixed-n_up occupation basis.  With eta well inside the chaotic regime
the block still hides its discrete symmetries: site reflection always, and
additionally the global spin flip when the chain is at half filling.  Those
unresolved symmetries are exactly what the ratio-based sector estimator is
supposed to count (two irreps for odd length, four for even length at half
filling), so no desymmetrization is performed here on purpose.

Spin operators are spin-1/2 (S = sigma/2): each aligned bond contributes
+Jz/4 on the diagonal, each anti-aligned bond -Jz/4 and a flip-flop matrix
element Jxy/2 to the partner configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import NumericError, SizeError, ValidationError
from .spectra import Spectrum

__all__ = [
    "SpinChainParams",
    "basis_states",
    "build_spin_chain_block",
    "spin_chain_spectrum",
    "reflection_permutation",
    "spin_flip_permutation",
]

_MAX_SITES = 24  # lookup table is 2^sites entries; 24 keeps it at 128 MB


@dataclass(frozen=True)
class SpinChainParams:
    """Couplings and sector choice; defaults sit in the chaotic regime."""

    sites: int
    n_up: int | None = None
    jxy: float = 1.0
    jz: float = 0.5
    jxy2: float = 1.0
    jz2: float = 0.5
    eta: float = 0.5

    def __post_init__(self):
        if self.sites < 2:
            raise SizeError(f"chain needs at least 2 sites, got {self.sites}")
        if self.sites > _MAX_SITES:
            raise SizeError(f"chain limited to {_MAX_SITES} sites, got {self.sites}")
        if self.n_up is None:
            object.__setattr__(self, "n_up", self.sites // 2)
        if not 0 <= self.n_up <= self.sites:
            raise ValidationError(
                f"n_up must be in [0, {self.sites}], got {self.n_up}"
            )
        if self.eta < 0:
            raise ValidationError(f"eta must be >= 0, got {self.eta}")

    @property
    def dim(self) -> int:
        return math.comb(self.sites, self.n_up)

    def describe(self) -> str:
        return (
            f"spin-chain sites={self.sites} n_up={self.n_up} "
            f"jxy={self.jxy:g} jz={self.jz:g} jxy2={self.jxy2:g} "
            f"jz2={self.jz2:g} eta={self.eta:g}"
        )


def basis_states(sites: int, n_up: int) -> np.ndarray:
    """Ascending bitmasks of all configurations with exactly n_up set bits."""
    all_states = np.arange(1 << sites, dtype=np.int64)
    pop = np.zeros(1 << sites, dtype=np.int64)
    for i in range(sites):
        pop += (all_states >> i) & 1
    return all_states[pop == n_up]


def _index_lookup(states: np.ndarray, sites: int) -> np.ndarray:
    lookup = np.full(1 << sites, -1, dtype=np.int64)
    lookup[states] = np.arange(len(states), dtype=np.int64)
    return lookup


def build_spin_chain_block(p: SpinChainParams) -> np.ndarray:
    """Dense symmetric Hamiltonian of the fixed-n_up sector, open boundaries."""
    if p.dim < 2:
        raise SizeError(
            f"sector dimension {p.dim} is trivial; nothing to diagonalize"
        )
    states = basis_states(p.sites, p.n_up)
    lookup = _index_lookup(states, p.sites)
    return kernels.spin_chain_fill(
        states,
        lookup,
        p.sites,
        p.jz,
        p.jxy,
        p.eta * p.jz2,
        p.eta * p.jxy2,
    )


def spin_chain_spectrum(p: SpinChainParams) -> Spectrum:
    """All eigenvalues of the sector block, sorted, labelled with the params."""
    if p.dim < 3:
        raise SizeError(
            f"sector dimension must be >= 3 for a spectrum, got {p.dim}"
        )
    h = build_spin_chain_block(p)
    try:
        levels = np.linalg.eigvalsh(h)
    except np.linalg.LinAlgError as exc:
        raise NumericError(
            f"eigensolver failed for {p.describe()}: {exc}"
        ) from exc
    levels = np.ascontiguousarray(levels)
    levels.setflags(write=False)
    return Spectrum(levels=levels, label=p.describe())


def reflection_permutation(p: SpinChainParams) -> np.ndarray:
    """Basis permutation of the site-reversal symmetry (always present).

    Entry a gives the basis index of configuration a with its site order
    reversed.  The returned permutation satisfies H[perm][:, perm] == H.
    """
    states = basis_states(p.sites, p.n_up)
    lookup = _index_lookup(states, p.sites)
    reversed_states = np.zeros_like(states)
    for i in range(p.sites):
        reversed_states |= ((states >> i) & 1) << (p.sites - 1 - i)
    return lookup[reversed_states]


def spin_flip_permutation(p: SpinChainParams) -> np.ndarray:
    """Basis permutation of the global spin flip (half filling only).

    Flipping every spin maps the n_up sector onto the (sites - n_up) sector,
    so the operation stays inside the block only at half filling.
    """
    if 2 * p.n_up != p.sites:
        raise ValidationError(
            f"spin flip leaves the sector unless n_up = sites/2; "
            f"got sites={p.sites}, n_up={p.n_up}"
        )
    states = basis_states(p.sites, p.n_up)
    lookup = _index_lookup(states, p.sites)
    full = np.int64((1 << p.sites) - 1)
    return lookup[states ^ full]
