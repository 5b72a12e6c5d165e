"""Sample-complexity lower bounds for structured and one-bit compressed sensing.

The package builds the hard signal families used in Fano-type arguments over
weighted-graph sparsity models, evaluates the resulting mutual-information and
error bounds in closed form, and checks them against exhaustive decoders by
Monte Carlo at small scale.
"""
from .bounds import (
    BoundReport,
    bound_report,
    count_noiseless_outputs,
    fano_lower_bound,
    mi_bound_onebit,
    mi_bound_std_noiseless,
    mi_bound_std_noisy,
    noise_concentration_bound,
    sample_threshold,
)
from .decoders import DecodeResult, ml_decode_linear, ml_decode_onebit, model_iht, model_project
from .ensembles import F1, F2, F3, Ensemble, RecoveryConstants, Signal, build_ensemble, min_pairwise_distance, sample_uniform
from .errors import DivergenceError, ParameterError, TooLargeError
from .graph_model import (
    BlockModel,
    Forest,
    RegularModel,
    TreeModel,
    WeightedGraph,
    WgmModel,
    WgmParams,
    build_construction_graph,
    enumerate_supports,
    feasible_parameters,
    log_cardinality_lower_bound,
    min_weight_forest,
    validate_requirements,
    weight_degree,
)
from .sensing import MeasurementSet, make_design, measure, rip_expectation_check

__version__ = "0.1.0"
