"""Shared fixtures.

The expensive artifacts (billiard level table, spin-chain spectra, the
reference GOE composites) are computed once per session and shared between
the module tests and the acceptance suite.
"""

import os

import pytest

from hosr.billiard import BilliardLevels, circular_billiard_levels
from hosr.ensembles import EnsembleSpec, sample_composite
from hosr.spin_chain import SpinChainParams, spin_chain_spectrum

# Reference seed and size for the composite-GOE checks.  The estimator's
# sector readout is a statistical statement; the seed pins one concrete
# realization so the suite is deterministic.
REFERENCE_SEED = 18
REFERENCE_DIM = 5000


def pytest_collection_modifyitems(config, items):
    if os.environ.get("HOSR_RUN_SLOW"):
        return
    skip = pytest.mark.skip(reason="slow; set HOSR_RUN_SLOW=1 to enable")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def goe_composite():
    """Factory returning the m-block tridiagonal-GOE composite, cached."""
    cache = {}

    def get(m, dim=REFERENCE_DIM, seed=REFERENCE_SEED):
        key = (m, dim, seed)
        if key not in cache:
            spec = EnsembleSpec(kind="goe-tridiagonal", dim=dim, blocks=m, seed=seed)
            cache[key] = sample_composite(spec)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def disk_levels():
    """Circular-billiard levels, truncated to a complete set of 5000+."""
    return circular_billiard_levels(BilliardLevels(n_max=200, zeros_per_order=66))


@pytest.fixture(scope="session")
def chain_spectrum_for():
    """Factory returning spin-chain spectra keyed by (sites, eta), cached."""
    cache = {}

    def get(sites, eta):
        key = (sites, eta)
        if key not in cache:
            cache[key] = spin_chain_spectrum(SpinChainParams(sites=sites, eta=eta))
        return cache[key]

    return get
