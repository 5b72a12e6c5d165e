"""Monte Carlo estimation of decoder error against the Fano lower bounds."""
from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from ..bounds import (
    fano_lower_bound,
    mi_per_sample,
    noise_concentration_bound,
    sample_threshold,
)
from ..decoders import ml_decode_linear, ml_decode_onebit
from ..ensembles import DEFAULT_EPS_F1, F1, F2, F3, Ensemble
from ..errors import ParameterError
from ..graph_model import SupportModel
from ..sensing import make_design, measure
from .stats import wilson_interval

DEFAULT_TRIALS = 4000
DEFAULT_EPS_F3 = 0.1
PROOF_DESIGN = {
    "std_noisy": "gaussian",
    "std_noiseless": "bernoulli",
    "onebit_exact": "gaussian",
    "onebit_approx": "gaussian",
}
CSV_COLUMNS = ("n", "trials", "failures", "err_rate", "wilson_lo", "wilson_hi", "mi_bound", "fano_bound", "threshold_n")


@dataclass(frozen=True)
class Scenario:
    """One experimental configuration.

    ``eps`` is the F1 concentration parameter for ``std_noisy`` and the F3
    offset for the one-bit settings; ``C`` is the constant of the noisy
    failure event ||b_hat - b*|| >= C ||e|| (defaults to ``C0``).
    """

    setting: str
    model: SupportModel
    n: int
    sigma: float = 0.0
    eps: float | None = None
    C0: float = 1.0
    C: float | None = None
    design: str | None = None
    override_design: bool = False
    decoder: str = "ml"
    seed: int = 0

    def __post_init__(self):
        if self.setting not in PROOF_DESIGN:
            raise ParameterError(f"unknown setting {self.setting!r}")
        if self.n < 1:
            raise ParameterError("n must be at least 1")
        if self.design is not None and self.design != PROOF_DESIGN[self.setting] and not self.override_design:
            raise ParameterError(
                f"setting {self.setting} uses a {PROOF_DESIGN[self.setting]} design; "
                f"set override_design to use {self.design}"
            )
        if self.setting == "std_noiseless" and self.sigma != 0:
            raise ParameterError("std_noiseless requires sigma = 0")
        if self.setting == "std_noisy" and self.sigma <= 0:
            raise ParameterError("std_noisy requires sigma > 0")
        if self.decoder not in ("ml", "agreement"):
            raise ParameterError(f"unknown decoder {self.decoder!r}")
        if self.decoder == "agreement" and not self.setting.startswith("onebit"):
            raise ParameterError("agreement decoding applies to one-bit settings only")

    @property
    def design_kind(self) -> str:
        return self.design or PROOF_DESIGN[self.setting]

    @property
    def channel(self) -> str:
        return "onebit" if self.setting.startswith("onebit") else "linear"

    @property
    def eps_value(self) -> float:
        if self.eps is not None:
            return self.eps
        return DEFAULT_EPS_F1 if self.setting == "std_noisy" else DEFAULT_EPS_F3

    def family(self):
        if self.setting == "std_noisy":
            return F1(self.n, self.sigma, self.C0, self.eps_value)
        if self.setting == "std_noiseless":
            return F2()
        return F3(self.eps_value)


@lru_cache(maxsize=32)
def _ensemble(family, model) -> Ensemble:
    return Ensemble(family, model)


def ensemble_for(sc: Scenario) -> Ensemble:
    return _ensemble(sc.family(), sc.model)


def trial_rng(seed: int, n: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(n, trial)))


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("CSSLB_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class ErrorEstimate:
    trials: int
    failures: int
    err_rate: float
    wilson_lo: float
    wilson_hi: float
    outcomes: np.ndarray = field(repr=False)
    identity_mismatches: int | None = None

    @property
    def half_width(self) -> float:
        return (self.wilson_hi - self.wilson_lo) / 2


def _run_trials(sc: Scenario, ens: Ensemble, indices) -> tuple[np.ndarray, np.ndarray]:
    M = ens.members()
    fail = np.zeros(len(indices), dtype=bool)
    wrong = np.zeros(len(indices), dtype=bool)
    C = sc.C0 if sc.C is None else sc.C
    for k, t in enumerate(indices):
        rng = trial_rng(sc.seed, sc.n, t)
        i_true = ens.sample_index(rng)
        beta = M[i_true]
        X = make_design(sc.design_kind, sc.n, ens.d, rng)
        m = measure(X, beta, sc.sigma, sc.channel, rng)
        if sc.channel == "linear":
            res = ml_decode_linear(X, m.y, M)
        else:
            method = "agreement" if sc.decoder == "agreement" else "likelihood"
            res = ml_decode_onebit(X, m.y, M, sc.sigma, method)
        wrong[k] = res.index != i_true
        if sc.setting == "std_noisy":
            fail[k] = np.linalg.norm(res.estimate - beta) >= C * np.linalg.norm(m.noise)
        elif sc.setting == "onebit_approx":
            nb = np.linalg.norm(beta)
            gap = np.linalg.norm(res.estimate / np.linalg.norm(res.estimate) - beta / nb)
            fail[k] = gap >= sc.eps_value / nb
        else:
            fail[k] = wrong[k]
    return fail, wrong


def estimate_error_probability(sc: Scenario, trials: int = DEFAULT_TRIALS, workers: int | None = None) -> ErrorEstimate:
    """Empirical failure rate of the setting's ML decoder with a 95% Wilson interval.

    Trial t draws everything from a stream seeded by (seed, n, t), so the
    outcome vector does not depend on ``workers``.
    """
    if trials < 100:
        raise ParameterError("need at least 100 trials")
    ens = ensemble_for(sc)
    ens.members()  # materialise once before threads share it
    workers = worker_count() if workers is None else max(1, workers)
    chunks = np.array_split(np.arange(trials), workers)
    if workers == 1:
        parts = [_run_trials(sc, ens, chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda c: _run_trials(sc, ens, c), chunks))
    fail = np.concatenate([p[0] for p in parts])
    wrong = np.concatenate([p[1] for p in parts])
    k = int(fail.sum())
    lo, hi = wilson_interval(k, trials)
    mismatches = int(np.sum(fail != wrong)) if sc.setting == "onebit_approx" else None
    return ErrorEstimate(trials, k, k / trials, lo, hi, fail, mismatches)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CurveRow:
    n: int
    trials: int
    failures: int
    err_rate: float
    wilson_lo: float
    wilson_hi: float
    mi_bound: float
    fano_bound: float
    threshold_n: float

    @property
    def half_width(self) -> float:
        return (self.wilson_hi - self.wilson_lo) / 2

    def consistent(self, slack: float = 3.0) -> bool:
        return self.err_rate + slack * self.half_width >= self.fano_bound


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


@dataclass
class CurveTable:
    rows: list

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow([_fmt(getattr(r, c)) for c in CSV_COLUMNS])
        return buf.getvalue()

    def violations(self, slack: float = 3.0) -> list:
        return [r for r in self.rows if not r.consistent(slack)]


def analytic_bound(sc: Scenario, log_card: float) -> tuple[float, float, float]:
    """(MI bound, failure-probability lower bound, threshold n) for the scenario.

    For ``std_noisy`` the lower bound is the Fano bound times the noise
    concentration factor, matching the ||b_hat - b*|| >= C ||e|| failure event.
    """
    eps = sc.eps_value if sc.setting == "std_noisy" else DEFAULT_EPS_F1
    mi = sc.n * mi_per_sample(sc.setting, sc.model.s, sc.model.d, sc.C0, eps)
    fano = fano_lower_bound(mi, log_card)
    if sc.setting == "std_noisy":
        fano *= noise_concentration_bound(sc.n, eps)
    th = sample_threshold(sc.setting, sc.model, log_card, sc.C0, eps)
    return mi, fano, th.n


def phase_curve(sc: Scenario, n_grid, trials: int = DEFAULT_TRIALS, workers: int | None = None) -> CurveTable:
    rows = []
    for n in sorted(set(int(v) for v in n_grid)):
        scn = replace(sc, n=n)
        est = estimate_error_probability(scn, trials, workers)
        log_card = math.log(ensemble_for(scn).size)
        mi, fano, th = analytic_bound(scn, log_card)
        rows.append(CurveRow(n, trials, est.failures, est.err_rate, est.wilson_lo, est.wilson_hi, mi, fano, th))
    return CurveTable(rows)
