"""Timing comparison of the jit kernels against their numpy fallbacks.

Run as a script (needs the package importable and numba installed):

    python benchmarks/bench_kernels.py

The numba path is what ``HOSR_NO_NUMBA`` unset gives you; the numpy numbers
are what the fallback path would deliver on the same inputs.
"""

import time

import numpy as np

from hosr import kernels, theory
from hosr.spin_chain import SpinChainParams, basis_states, _index_lookup


def _timeit(fn, *args, repeats=5):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_cdf_eval():
    dist = theory.wigner_ratio(3.0)
    rng = np.random.default_rng(0)
    x = rng.exponential(1.0, 1_000_000)
    args = (x, dist._cdf_grid, dist._pdf_grid, dist.beta)
    if not kernels.using_numba():
        print("cdf eval: numba path inactive (HOSR_NO_NUMBA set?), skipping")
        return
    kernels.wigner_cdf_eval_numba(*args)  # jit warmup
    t_nb = _timeit(kernels.wigner_cdf_eval_numba, *args)
    t_np = _timeit(kernels.wigner_cdf_eval_numpy, *args)
    check = np.max(np.abs(kernels.wigner_cdf_eval_numba(*args)
                          - kernels.wigner_cdf_eval_numpy(*args)))
    print(f"wigner cdf eval, 1e6 points: numba {t_nb*1e3:7.1f} ms  "
          f"numpy {t_np*1e3:7.1f} ms  speedup {t_np/t_nb:4.1f}x  "
          f"max |diff| {check:.1e}")


def bench_spin_fill(sites=16):
    p = SpinChainParams(sites=sites)
    states = basis_states(p.sites, p.n_up)
    lookup = _index_lookup(states, p.sites)
    couplings = (p.jz, p.jxy, p.eta * p.jz2, p.eta * p.jxy2)
    if not kernels.using_numba():
        print("spin fill: numba path inactive (HOSR_NO_NUMBA set?), skipping")
        return
    kernels.spin_chain_fill_numba(states, lookup, p.sites, *couplings)  # warmup
    t_nb = _timeit(kernels.spin_chain_fill_numba, states, lookup, p.sites,
                   *couplings, repeats=3)
    t_np = _timeit(kernels.spin_chain_fill_numpy, states, lookup, p.sites,
                   *couplings, repeats=3)
    a = kernels.spin_chain_fill_numba(states, lookup, p.sites, *couplings)
    b = kernels.spin_chain_fill_numpy(states, lookup, p.sites, *couplings)
    check = np.max(np.abs(a - b))
    print(f"spin-chain fill, {sites} sites (dim {len(states)}): "
          f"numba {t_nb*1e3:7.1f} ms  numpy {t_np*1e3:7.1f} ms  "
          f"speedup {t_np/t_nb:4.1f}x  max |diff| {check:.1e}")


if __name__ == "__main__":
    print(f"numba kernels active: {kernels.using_numba()}")
    bench_cdf_eval()
    bench_spin_fill()
