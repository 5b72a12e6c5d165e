"""Executable checks of the counting, separation, concentration and covariance facts."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.spatial.distance import pdist

from ..bounds import averaged_covariance, joint_covariance, mi_bound_std_noisy, mi_bound_via_covariance, noise_concentration_bound
from ..ensembles import F1, F2, F3, Ensemble, min_pairwise_distance
from ..graph_model import RegularModel, WgmModel, WgmParams, enumerate_supports, log_cardinality_lower_bound
from ..sensing import rip_expectation_check


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        self.passed = bool(self.passed)


@dataclass
class LemmaReport:
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": [asdict(c) for c in self.checks]}


@dataclass(frozen=True)
class LemmaBundle:
    wgm: WgmParams = WgmParams(d=6, s=4, g=2, B=2, rho=2)
    f1_n: int = 4
    f1_sigma: float = 1.0
    f1_C0: float = 1.0
    f1_eps: float = 0.9448
    f3_eps: float = 0.1
    conc_eps: float = 0.9448
    conc_ns: tuple = (1, 4, 16)
    conc_draws: int = 10**5
    rip_n: int = 8
    rip_trials: int = 10**4
    cov_d: int = 5
    seed: int = 0


# --- individual checks, usable on arbitrary member arrays --------------------


def check_cardinality(model, f2: Ensemble, f3: Ensemble) -> CheckResult:
    n_supp = len(enumerate_supports(model))
    lb_std = log_cardinality_lower_bound(model, "standard")
    lb_one = log_cardinality_lower_bound(model, "onebit")
    supp_floor = math.exp(lb_std - model.s * math.log(2))
    ok = (
        f2.size == n_supp * 2**model.s
        and f3.size == n_supp * math.comb(model.s, model.s // 2)
        and n_supp >= supp_floor * (1 - 1e-12)
        and math.log(f2.size) >= lb_std - 1e-12
        and math.log(f3.size) >= lb_one - 1e-12
    )
    return CheckResult("cardinality", ok, {
        "supports": n_supp, "support_floor": supp_floor,
        "F2": f2.size, "F2_floor": math.exp(lb_std),
        "F3": f3.size, "F3_floor": math.exp(lb_one),
    })


def check_separation(members: np.ndarray, sep: float, rel: float = 1e-9, name: str = "F1 separation") -> CheckResult:
    """Minimum pairwise distance must equal ``sep`` (to ``rel``)."""
    dmin = float(pdist(np.asarray(members)).min())
    return CheckResult(name, abs(dmin - sep) <= rel * sep, {"min_distance": dmin, "sep": sep})


def check_f3(f3: Ensemble) -> list[CheckResult]:
    eps, s = f3.family.eps, f3.s
    dmin = min_pairwise_distance(f3)
    sq = np.sum(f3.members() ** 2, axis=1)
    expected = 1 + eps * math.sqrt(2 * s) + s * eps**2
    spread = float(sq.max() - sq.min())
    return [
        CheckResult("F3 separation", dmin >= eps, {"min_distance": dmin, "eps": eps}),
        CheckResult("F3 norm constancy", spread <= 1e-12 and abs(sq[0] - expected) <= 1e-12 * expected,
                    {"squared_norm": float(sq[0]), "expected": expected, "spread": spread}),
    ]


def check_noise_concentration(ns, eps, draws, rng, sigma: float = 1.0) -> CheckResult:
    cells = []
    ok = True
    for n in ns:
        e = sigma * rng.standard_normal((draws, n))
        frac = float(np.mean(np.sum(e**2, axis=1) <= sigma**2 * n / (1 - eps)))
        bound = noise_concentration_bound(n, eps)
        cells.append({"n": n, "empirical": frac, "bound": bound})
        ok &= frac >= bound
    return CheckResult("noise concentration", bool(ok), {"cells": cells})


def check_rip(n, trials, rng, d: int = 6) -> CheckResult:
    cells = []
    ok = True
    for kind in ("gaussian", "bernoulli"):
        for _ in range(3):
            beta = rng.standard_normal(d)
            mean, se = rip_expectation_check(kind, beta, n, trials, rng)
            target = float(beta @ beta)
            good = abs(mean - target) <= 4 * se
            ok &= good
            cells.append({"design": kind, "mean": mean, "target": target, "se": se, "ok": bool(good)})
    e1 = np.zeros(d)
    e1[0] = 1.0
    mean, se = rip_expectation_check("bernoulli", e1, n, 100, rng)
    exact = abs(mean - 1.0) <= 1e-12 and se <= 1e-12  # every draw gives exactly n * (1/n), up to rounding
    cells.append({"design": "bernoulli", "unit_coordinate_mean": mean, "unit_coordinate_se": se})
    return CheckResult("RIP expectation", bool(ok and exact), {"cells": cells})


def check_covariance(f1: Ensemble, cov_d: int, rng, draws: int = 20) -> list[CheckResult]:
    fam = f1.family
    n, sigma = fam.n, fam.sigma
    small = Ensemble(F1(n, sigma, fam.C0, fam.eps), RegularModel(cov_d, min(2, cov_d - 1)))
    worst = 0.0
    target = sigma**2 / n**cov_d
    for _ in range(draws):
        b = small.member(small.sample_index(rng))
        det = float(np.linalg.det(joint_covariance(b, n, sigma)))
        worst = max(worst, abs(det - target) / target)
    c = fam.constants
    via_cov = mi_bound_via_covariance(f1.members(), n, sigma)
    closed = mi_bound_std_noisy(n, f1.s, f1.d, c.k1, c.k2)
    det_avg = float(np.linalg.det(averaged_covariance(f1.members(), n, sigma)))
    return [
        CheckResult("det joint covariance", worst <= 1e-9, {"max_rel_error": worst, "target": target, "d": cov_d}),
        CheckResult("averaged covariance route", abs(via_cov - closed) <= 1e-9 * max(1.0, abs(closed)),
                    {"via_covariance": via_cov, "closed_form": closed, "det_average": det_avg}),
    ]


def verify_lemmas(bundle: LemmaBundle = LemmaBundle()) -> LemmaReport:
    rng = np.random.default_rng(bundle.seed)
    model = WgmModel.from_params(bundle.wgm)
    f1 = Ensemble(F1(bundle.f1_n, bundle.f1_sigma, bundle.f1_C0, bundle.f1_eps), model)
    f2 = Ensemble(F2(), model)
    f3 = Ensemble(F3(bundle.f3_eps), model)
    checks = [check_cardinality(model, f2, f3)]
    checks.append(check_separation(f1.members(), f1.family.constants.sep))
    checks.extend(check_f3(f3))
    checks.append(check_noise_concentration(bundle.conc_ns, bundle.conc_eps, bundle.conc_draws, rng))
    checks.append(check_rip(bundle.rip_n, bundle.rip_trials, rng))
    checks.extend(check_covariance(f1, bundle.cov_d, rng))
    return LemmaReport(checks)
