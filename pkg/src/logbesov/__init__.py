"""Numerical laboratory for Besov spaces with logarithmic smoothness.

Littlewood-Paley decompositions, logarithmic Besov / Triebel-Lizorkin norms,
pointwise-multiplier criterion functionals, paraproducts, and the
constructive test-function gallery, all on a periodic grid over
[-pi, pi)^dim.
"""

from .criteria import (
    CriterionReport,
    nece_mixed,
    nece_term2,
    nece_term3,
    netrusov,
    pi3_log_bound,
    pinf_term2,
    pinf_term3,
    suff_term2,
    suff_term3,
    verdict,
)
from .cubes import DyadicCube, cube_mean_power, sup_over_cubes
from .errors import (
    AliasingError,
    CalibrationError,
    CapabilityError,
    DegenerateInputError,
    DomainError,
    InvalidInputError,
    LevelOverflowError,
    LogBesovError,
    ResolutionError,
)
from .experiments import (
    ExperimentConfig,
    Table,
    fit_slope,
    run_charfun,
    run_exp_growth,
    run_partition_check,
    run_sandwich,
)
from .fileio import load_dpu, load_sfn, save_dpu, save_sfn
from .gallery import (
    BumpSpec,
    KernelCalibration,
    NecessityPacketSpec,
    PacketSpec,
    StackSpec,
    calibrate_kernel,
    expo7_family,
    gallery_from_spec,
    make_bump,
    make_envelope,
    make_exp_stack,
    make_exponential,
    make_indicator,
    make_lacunary,
    make_modulated_packet,
    make_necessity_packet,
    make_stack,
)
from .grid import (
    INF,
    FrequencyField,
    GridSpec,
    SampledFunction,
    conjugate_exponent,
    lp_norm,
    make_constant,
    random_band_limited,
    spectrum,
    synthesize,
)
from .norms import (
    BesovParams,
    DiffParams,
    NormResult,
    besov_norm,
    diffspace_norm,
    dini_norm,
    log_sum_bounds,
    modulus,
    seq_norm,
    tl_norm_inf,
)
from .paraproducts import (
    ProductReport,
    multiplier_lower_bound,
    paraproduct,
    product_report,
    truncated_product,
)
from .partition import (
    DyadicPartition,
    PartitionKind,
    SpectralDecomposition,
    build_partition,
    decompose,
    partial_sum,
    peetre_maximal,
    project,
)

__version__ = "0.1.0"
