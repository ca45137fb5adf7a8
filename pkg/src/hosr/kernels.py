"""Hot numeric kernels with numba-jitted and pure-numpy implementations.

Two inner loops dominate runtime in this package: evaluating the cached
Wigner-ratio CDF on large ratio samples (inside the Dyson-index scans) and
assembling spin-chain Hamiltonian blocks in the occupation basis.  Both are
provided here in two functionally identical variants:

* a ``numba.njit`` version, used by default when numba imports cleanly;
* a vectorized pure-numpy version, selected by setting the environment
  variable ``HOSR_NO_NUMBA=1`` (or automatically when numba is missing).

``benchmarks/bench_kernels.py`` compares the two paths.

The CDF kernel works on a graded node grid ``r_j = (j/nseg)**2`` covering
[0, 1], with node CDF values and node pdf values (the exact derivative of
the CDF) supplied by the caller.  Between nodes it uses cubic Hermite
interpolation; below the first interior node it uses the local power law
``I(r) ~ r**(1+beta)``; for r > 1 it uses the reflection
``I(r) = 1 - I(1/r)`` that both ratio-distribution families satisfy.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "using_numba",
    "wigner_cdf_eval",
    "wigner_cdf_eval_numpy",
    "spin_chain_fill",
    "spin_chain_fill_numpy",
]

_ENV_FLAG = "HOSR_NO_NUMBA"


def _numba_requested() -> bool:
    if os.environ.get(_ENV_FLAG, "").strip().lower() in ("1", "true", "yes", "on"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


_USE_NUMBA = _numba_requested()


def using_numba() -> bool:
    """True when the jitted kernel path is active."""
    return _USE_NUMBA


# ---------------------------------------------------------------------------
# Wigner-ratio CDF evaluation on the graded Hermite grid
# ---------------------------------------------------------------------------

def _hermite_piece(u, j, nseg, cdf_vals, pdf_vals):
    """Cubic Hermite evaluation on segment j of the graded grid (array form)."""
    a = (j / nseg) ** 2
    b = ((j + 1) / nseg) ** 2
    h = b - a
    t = (u - a) / h
    t2 = t * t
    t3 = t2 * t
    ya = cdf_vals[j]
    yb = cdf_vals[j + 1]
    da = pdf_vals[j]
    db = pdf_vals[j + 1]
    return (
        ya * (2.0 * t3 - 3.0 * t2 + 1.0)
        + h * da * (t3 - 2.0 * t2 + t)
        + yb * (3.0 * t2 - 2.0 * t3)
        + h * db * (t3 - t2)
    )


def wigner_cdf_eval_numpy(x, cdf_vals, pdf_vals, beta):
    """Pure-numpy evaluation of the cached CDF at the points ``x``."""
    x = np.asarray(x, dtype=np.float64)
    nseg = len(cdf_vals) - 1
    out = np.zeros_like(x)
    pos = x > 0.0
    xv = x[pos]
    refl = xv > 1.0
    u = np.where(refl, 1.0 / xv, xv)
    j = np.minimum((nseg * np.sqrt(u)).astype(np.int64), nseg - 1)
    val = np.empty_like(u)
    first = j == 0
    if np.any(first):
        r1 = 1.0 / (nseg * nseg)
        val[first] = cdf_vals[1] * (u[first] / r1) ** (1.0 + beta)
    rest = ~first
    if np.any(rest):
        val[rest] = _hermite_piece(u[rest], j[rest], float(nseg), cdf_vals, pdf_vals)
    out[pos] = np.where(refl, 1.0 - val, val)
    return out


if _USE_NUMBA:
    from numba import njit

    @njit(cache=True)
    def _wigner_cdf_eval_jit(x, cdf_vals, pdf_vals, beta, out):  # pragma: no cover
        nseg = cdf_vals.shape[0] - 1
        r1 = 1.0 / (nseg * nseg)
        for i in range(x.shape[0]):
            xi = x[i]
            if xi <= 0.0:
                out[i] = 0.0
                continue
            refl = xi > 1.0
            u = 1.0 / xi if refl else xi
            j = int(nseg * np.sqrt(u))
            if j >= nseg:
                j = nseg - 1
            if j == 0:
                val = cdf_vals[1] * (u / r1) ** (1.0 + beta)
            else:
                a = (j / nseg) ** 2
                b = ((j + 1) / nseg) ** 2
                h = b - a
                t = (u - a) / h
                t2 = t * t
                t3 = t2 * t
                val = (
                    cdf_vals[j] * (2.0 * t3 - 3.0 * t2 + 1.0)
                    + h * pdf_vals[j] * (t3 - 2.0 * t2 + t)
                    + cdf_vals[j + 1] * (3.0 * t2 - 2.0 * t3)
                    + h * pdf_vals[j + 1] * (t3 - t2)
                )
            out[i] = 1.0 - val if refl else val

    def wigner_cdf_eval_numba(x, cdf_vals, pdf_vals, beta):
        x = np.ascontiguousarray(x, dtype=np.float64)
        out = np.empty_like(x)
        _wigner_cdf_eval_jit(x, cdf_vals, pdf_vals, float(beta), out)
        return out


def wigner_cdf_eval(x, cdf_vals, pdf_vals, beta):
    """Evaluate the cached ratio CDF at ``x`` (active kernel path)."""
    if _USE_NUMBA:
        return wigner_cdf_eval_numba(x, cdf_vals, pdf_vals, beta)
    return wigner_cdf_eval_numpy(x, cdf_vals, pdf_vals, beta)


# ---------------------------------------------------------------------------
# Spin-chain Hamiltonian assembly in the fixed-magnetization basis
# ---------------------------------------------------------------------------

def spin_chain_fill_numpy(states, lookup, sites, jz_nn, jxy_nn, jz_nnn, jxy_nnn):
    """Pure-numpy assembly of the sector Hamiltonian.

    ``states`` are the basis bitmasks (ascending), ``lookup`` maps a bitmask
    to its basis index.  Couplings are the effective ones (next-NN couplings
    already multiplied by the perturbation strength).
    """
    dim = len(states)
    h = np.zeros((dim, dim))
    diag = np.zeros(dim)
    idx = np.arange(dim)
    for span, jz_c, jxy_c in ((1, jz_nn, jxy_nn), (2, jz_nnn, jxy_nnn)):
        if jz_c == 0.0 and jxy_c == 0.0:
            continue
        for i in range(sites - span):
            bi = (states >> i) & 1
            bj = (states >> (i + span)) & 1
            aligned = bi == bj
            diag += np.where(aligned, 0.25 * jz_c, -0.25 * jz_c)
            flip = ~aligned
            if np.any(flip):
                mask = (np.int64(1) << i) | (np.int64(1) << (i + span))
                partners = lookup[states[flip] ^ mask]
                h[idx[flip], partners] += 0.5 * jxy_c
    h[idx, idx] += diag
    return h


if _USE_NUMBA:

    @njit(cache=True)
    def _spin_chain_fill_jit(states, lookup, sites, jz_nn, jxy_nn, jz_nnn, jxy_nnn, h):  # pragma: no cover
        dim = states.shape[0]
        for a in range(dim):
            s = states[a]
            diag = 0.0
            for i in range(sites - 1):
                if ((s >> i) & 1) == ((s >> (i + 1)) & 1):
                    diag += 0.25 * jz_nn
                else:
                    diag -= 0.25 * jz_nn
                    partner = s ^ (np.int64(3) << i)
                    h[a, lookup[partner]] += 0.5 * jxy_nn
            for i in range(sites - 2):
                if ((s >> i) & 1) == ((s >> (i + 2)) & 1):
                    diag += 0.25 * jz_nnn
                else:
                    diag -= 0.25 * jz_nnn
                    partner = s ^ (np.int64(5) << i)
                    h[a, lookup[partner]] += 0.5 * jxy_nnn
            h[a, a] += diag

    def spin_chain_fill_numba(states, lookup, sites, jz_nn, jxy_nn, jz_nnn, jxy_nnn):
        dim = len(states)
        h = np.zeros((dim, dim))
        _spin_chain_fill_jit(
            states, lookup, sites,
            float(jz_nn), float(jxy_nn), float(jz_nnn), float(jxy_nnn), h,
        )
        return h


def spin_chain_fill(states, lookup, sites, jz_nn, jxy_nn, jz_nnn, jxy_nnn):
    """Assemble the sector Hamiltonian (active kernel path)."""
    if _USE_NUMBA:
        return spin_chain_fill_numba(states, lookup, sites, jz_nn, jxy_nn, jz_nnn, jxy_nnn)
    return spin_chain_fill_numpy(states, lookup, sites, jz_nn, jxy_nn, jz_nnn, jxy_nnn)
