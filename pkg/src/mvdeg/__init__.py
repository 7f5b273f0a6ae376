"""Multivariate multiscale dispersion entropy for graph-structured signals."""

from .bench import (
    EnsembleReport,
    TimingCell,
    TimingReport,
    aggregate_curves,
    block_correlation,
    compare_graph_policies,
    environment_info,
    run_noise_experiment,
    run_timing_sweep,
    structured_correlation_sets,
    uniform_correlation,
)
from .entropy import (
    DispersionHistogram,
    EmbeddingConfig,
    EntropyCurve,
    PATTERN_CAP,
    ScaleRecord,
    classical_mvde,
    coarse_grain,
    mvdeg_curve,
    mvdeg_single_scale,
    ncdf_map,
    normalized_entropy,
    pattern_counts,
    univariate_mde,
    univariate_single_scale,
)
from .errors import (
    BaselineError,
    CapacityError,
    DegenerateChannelError,
    DimensionError,
    EmptyPatternError,
    FactorizationError,
    MvdegError,
    ParseError,
    ScaleUndefinedError,
    SizeCapError,
)
from .generators import (
    GENERATOR_VERSION,
    GeneratorSpec,
    ert_features,
    gen_correlated,
    gen_mixture_F,
    gen_one_over_f,
    gen_wgn,
    generate,
    realization_seed,
)
from .graphs import (
    StationLayout,
    WeightedGraph,
    build_complete_graph,
    build_gaussian_kernel_graph,
    build_zero_graph,
    estimate_correlation_graph,
)
from .io import (
    CURVE_CSV_HEADER,
    curve_to_json,
    graph_from_json,
    graph_to_json,
    read_correlation_json,
    read_graph_json,
    read_signal_csv,
    read_station_csv,
    write_curves_csv,
    write_curves_json,
    write_ensemble_report,
    write_graph_json,
    write_signal_csv,
    write_station_csv,
    write_timing_report,
)
from .kron import (
    DENSE_CAP,
    HopBasis,
    PathShift,
    ProductPower,
    apply_hop,
    build_hop_basis,
    naive_power,
    path_power,
    product_adjacency,
    product_power_terms,
)
from .signal import MultivariateSignal

__all__ = [
    "BaselineError",
    "CURVE_CSV_HEADER",
    "CapacityError",
    "DENSE_CAP",
    "DegenerateChannelError",
    "DimensionError",
    "DispersionHistogram",
    "EmbeddingConfig",
    "EmptyPatternError",
    "EnsembleReport",
    "EntropyCurve",
    "FactorizationError",
    "GENERATOR_VERSION",
    "GeneratorSpec",
    "HopBasis",
    "MultivariateSignal",
    "MvdegError",
    "ParseError",
    "PathShift",
    "PATTERN_CAP",
    "ProductPower",
    "ScaleRecord",
    "ScaleUndefinedError",
    "SizeCapError",
    "StationLayout",
    "TimingCell",
    "TimingReport",
    "WeightedGraph",
    "aggregate_curves",
    "apply_hop",
    "block_correlation",
    "build_complete_graph",
    "build_gaussian_kernel_graph",
    "build_hop_basis",
    "build_zero_graph",
    "classical_mvde",
    "coarse_grain",
    "compare_graph_policies",
    "curve_to_json",
    "environment_info",
    "ert_features",
    "estimate_correlation_graph",
    "gen_correlated",
    "gen_mixture_F",
    "gen_one_over_f",
    "gen_wgn",
    "generate",
    "graph_from_json",
    "graph_to_json",
    "mvdeg_curve",
    "mvdeg_single_scale",
    "naive_power",
    "ncdf_map",
    "normalized_entropy",
    "path_power",
    "pattern_counts",
    "product_adjacency",
    "product_power_terms",
    "read_correlation_json",
    "read_graph_json",
    "read_signal_csv",
    "read_station_csv",
    "realization_seed",
    "run_noise_experiment",
    "run_timing_sweep",
    "structured_correlation_sets",
    "uniform_correlation",
    "univariate_mde",
    "univariate_single_scale",
    "write_curves_csv",
    "write_curves_json",
    "write_ensemble_report",
    "write_graph_json",
    "write_signal_csv",
    "write_station_csv",
    "write_timing_report",
]
