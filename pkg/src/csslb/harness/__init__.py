from .config import Experiment, load_config, model_from_mapping, parse_config, parse_grid
from .experiment import (
    CSV_COLUMNS,
    CurveRow,
    CurveTable,
    ErrorEstimate,
    Scenario,
    analytic_bound,
    ensemble_for,
    estimate_error_probability,
    phase_curve,
    trial_rng,
)
from .lemmas import CheckResult, LemmaBundle, LemmaReport, check_separation, verify_lemmas
from .mi_oracles import empirical_mi_noiseless_std, empirical_mi_onebit
from .stats import wilson_interval
