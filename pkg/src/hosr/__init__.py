"""Higher-order spacing-ratio statistics and symmetry-sector inference.

The package turns a raw list of energy levels into k-th order spacing
ratios, compares them against the Wigner-surmise ratio family and its
Poisson counterpart, and infers how many independent symmetry sectors the
spectrum superposes.  Samplers for GOE matrices, uncorrelated levels, a
spin-1/2 chain, and the circular billiard provide reference spectra; the
``hosr`` CLI wires everything into a file-based pipeline.
"""

__version__ = "0.1.0"

from .billiard import (
    KEEP_BOTH,
    KEEP_ONCE,
    BilliardLevels,
    bessel_j_zeros,
    circular_billiard_levels,
)
from .ensembles import (
    ENSEMBLE_KINDS,
    EnsembleSpec,
    RngStream,
    sample_composite,
    sample_goe_dense,
    sample_goe_tridiagonal,
    sample_poisson_levels,
    superpose,
)
from .errors import (
    ConfigError,
    DomainError,
    HosrError,
    IoError,
    NumericError,
    ParseError,
    SizeError,
    ValidationError,
)
from .estimator import (
    EstimateReport,
    MissingLevelPoint,
    ScanGrid,
    SectorInference,
    Verdict,
    d_statistic,
    infer_sectors,
    kolmogorov_sf,
    ks_test,
    missing_levels_experiment,
    scan_beta,
)
from .levelio import LevelFile, parse_level_file, write_level_file
from .spectra import (
    EmpiricalCdf,
    RatioHistogram,
    RatioSeries,
    Spectrum,
    collapse_degeneracies,
    empirical_cdf,
    histogram,
    make_spectrum,
    spacing_ratios,
    spacings,
)
from .spin_chain import (
    SpinChainParams,
    basis_states,
    build_spin_chain_block,
    reflection_permutation,
    spin_chain_spectrum,
    spin_flip_permutation,
)
from .theory import (
    PoissonHosrDistribution,
    WignerRatioDistribution,
    gamma_spacing_pdf,
    normalization_constant,
    poisson_hosr,
    poisson_hosr_pdf,
    wigner_ratio,
    wigner_ratio_pdf,
)

__all__ = [
    "__version__",
    # errors
    "HosrError", "SizeError", "ValidationError", "DomainError",
    "NumericError", "ParseError", "IoError", "ConfigError",
    # spectra
    "Spectrum", "RatioSeries", "EmpiricalCdf", "RatioHistogram",
    "make_spectrum", "collapse_degeneracies", "spacings", "spacing_ratios",
    "empirical_cdf", "histogram",
    # theory
    "WignerRatioDistribution", "PoissonHosrDistribution",
    "normalization_constant", "wigner_ratio_pdf", "poisson_hosr_pdf",
    "gamma_spacing_pdf", "wigner_ratio", "poisson_hosr",
    # ensembles
    "RngStream", "EnsembleSpec", "ENSEMBLE_KINDS", "sample_goe_dense",
    "sample_goe_tridiagonal", "sample_poisson_levels", "superpose",
    "sample_composite",
    # estimator
    "ScanGrid", "Verdict", "EstimateReport", "SectorInference",
    "MissingLevelPoint", "d_statistic", "scan_beta", "ks_test",
    "kolmogorov_sf", "infer_sectors", "missing_levels_experiment",
    # spin chain
    "SpinChainParams", "basis_states", "build_spin_chain_block",
    "spin_chain_spectrum", "reflection_permutation", "spin_flip_permutation",
    # billiard
    "BilliardLevels", "KEEP_ONCE", "KEEP_BOTH", "bessel_j_zeros",
    "circular_billiard_levels",
    # io
    "LevelFile", "parse_level_file", "write_level_file",
]
