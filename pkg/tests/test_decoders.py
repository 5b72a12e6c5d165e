import itertools
import math

import numpy as np
import pytest

from csslb.decoders import ml_decode_linear, ml_decode_onebit, model_iht, model_project
from csslb.ensembles import F2, F3, Ensemble
from csslb.errors import DivergenceError, ParameterError
from csslb.graph_model import RegularModel, WgmModel, WgmParams
from csslb.sensing import make_design, measure, sign

SMALL = WgmModel.from_params(WgmParams(d=6, s=4, g=2, B=2, rho=2))


def test_linear_ml_recovers_in_identifiable_regime():
    e = Ensemble(F2(), SMALL)
    rng = np.random.default_rng(0)
    checked = 0
    while checked < 50:
        i = e.sample_index(rng)
        X = make_design("bernoulli", 8, 6, rng)
        if np.linalg.matrix_rank(X) < 6:
            continue
        checked += 1
        res = ml_decode_linear(X, X @ e.member(i), e)
        assert res.index == i and res.score == pytest.approx(0, abs=1e-12)


def test_linear_ml_first_index_wins_ties():
    M = np.array([[1.0, 0], [0, 1.0], [1.0, 0]])
    X = np.array([[1.0, 1.0]])
    res = ml_decode_linear(X, np.array([1.0]), M)
    assert res.index == 0 and res.ties == 3


def test_onebit_agreement_ties():
    M = np.array([[1.0, 0.0], [2.0, 0.0], [-1.0, 0.0]])
    X = np.array([[1.0, 5.0]])
    res = ml_decode_onebit(X, np.array([1]), M, 0.0)
    assert res.index == 0 and res.ties == 2
    assert list(res.scores) == [1.0, 1.0, 0.0]
    # an explicit agreement request ignores sigma
    res = ml_decode_onebit(X, np.array([1]), M, 0.5, method="agreement")
    assert res.ties == 2


def test_onebit_sign_zero_counts_as_plus():
    M = np.array([[0.0, 0.0], [-1.0, 0.0]])
    X = np.eye(2)
    assert ml_decode_onebit(X, np.array([1, 1]), M, 0.0).index == 0


def _loglik_erfc(X, y, b, sigma):
    z = X @ b
    return sum(math.log(0.5 * math.erfc(-yi * zi / (sigma * math.sqrt(2)))) for yi, zi in zip(y, z))


def test_onebit_likelihood_matches_erfc():
    e = Ensemble(F3(0.1), SMALL)
    rng = np.random.default_rng(1)
    for sigma in (0.2, 1.0, 3.0):
        X = make_design("gaussian", 5, 6, rng)
        y = measure(X, e.member(7), sigma, "onebit", rng).y
        res = ml_decode_onebit(X, y, e, sigma)
        ref = np.array([_loglik_erfc(X, y, b, sigma) for b in e.members()])
        assert np.allclose(res.scores, ref, rtol=1e-12, atol=0)
        assert res.index == int(np.argmax(ref))


def test_onebit_likelihood_deep_tail_is_finite():
    M = np.array([[50.0], [-50.0]])
    res = ml_decode_onebit(np.array([[1.0]]), np.array([1]), M, 0.01)
    assert np.isfinite(res.scores).all() and res.index == 0


def test_unknown_method():
    with pytest.raises(ParameterError):
        ml_decode_onebit(np.eye(1), np.array([1]), np.ones((1, 1)), 1.0, method="vote")


def _project_brute(v, model):
    best, arg = -1.0, None
    for S in itertools.combinations(range(1, model.d + 1), model.s):
        if not model.contains(S):
            continue
        energy = sum(v[i - 1] ** 2 for i in S)
        if energy > best:
            best, arg = energy, S
    out = np.zeros_like(v)
    out[[i - 1 for i in arg]] = v[[i - 1 for i in arg]]
    return out


def test_model_project_wgm_regression():
    v = np.array([5.0, 4, 3, 0, 0, 1])
    p = model_project(v, SMALL)
    # the plain top-4 set (1,2,3,6) is not in the model
    assert list(p) == [5, 4, 0, 0, 0, 1]
    assert np.array_equal(p, _project_brute(v, SMALL))


def test_model_project_matches_brute_force():
    rng = np.random.default_rng(2)
    for _ in range(100):
        v = rng.standard_normal(6)
        assert np.array_equal(model_project(v, SMALL), _project_brute(v, SMALL))


def test_model_project_regular_example():
    v = np.array([3.0, 1, -2, 0])
    assert list(model_project(v, RegularModel(4, 2))) == [3, 0, -2, 0]


def test_model_project_regular_is_top_s():
    rng = np.random.default_rng(5)
    model = RegularModel(9, 3)
    for _ in range(1000):
        v = rng.standard_normal(9)
        top = np.zeros(9)
        keep = np.argsort(-np.abs(v))[:3]
        top[keep] = v[keep]
        assert np.array_equal(model_project(v, model), top)


def test_model_project_fixed_point():
    v = np.array([0.0, 2, 0, -1, 0, 0])
    e = Ensemble(F2(), SMALL)
    for i in (0, 50, 143):
        assert np.array_equal(model_project(e.member(i), SMALL), e.member(i))
    assert np.array_equal(model_project(v, RegularModel(6, 2)), v)


def test_iht_recovers_support():
    # Bernoulli columns have exactly unit norm, which is what step=1 assumes
    d, s = 16, 2
    n = math.ceil(4 * s * math.log(d))  # 23
    model = RegularModel(d, s)
    rng = np.random.default_rng(3)
    trials, hits = 100, 0
    for _ in range(trials):
        beta = np.zeros(d)
        beta[rng.choice(d, s, replace=False)] = rng.choice([-1.0, 1.0], s) * rng.uniform(0.5, 2, s)
        X = make_design("bernoulli", n, d, rng)
        est = model_iht(X, X @ beta, model, iterations=50, step=1.0)
        hits += set(np.flatnonzero(est)) == set(np.flatnonzero(beta))
    assert hits >= 0.9 * trials


def test_iht_gaussian_design_with_more_rows():
    model = RegularModel(16, 2)
    rng = np.random.default_rng(3)
    hits = 0
    for _ in range(100):
        beta = np.zeros(16)
        beta[rng.choice(16, 2, replace=False)] = rng.choice([-1.0, 1.0], 2)
        X = make_design("gaussian", 40, 16, rng)
        hits += np.allclose(model_iht(X, X @ beta, model, iterations=100), beta, atol=1e-6)
    assert hits >= 90


def test_iht_zero_is_fixed_point():
    X = make_design("gaussian", 5, 8, np.random.default_rng(0))
    assert not model_iht(X, np.zeros(5), RegularModel(8, 2)).any()


def test_iht_single_iteration_is_projection():
    rng = np.random.default_rng(1)
    X = make_design("gaussian", 5, 6, rng)
    y = rng.standard_normal(5)
    one = model_iht(X, y, SMALL, iterations=1, step=0.7)
    assert np.array_equal(one, model_project(0.7 * X.T @ y, SMALL))


def test_iht_divergence_is_reported():
    rng = np.random.default_rng(0)
    X = make_design("gaussian", 4, 8, rng)
    with pytest.raises(DivergenceError):
        model_iht(X, X @ np.eye(8)[0], RegularModel(8, 2), iterations=200, step=50.0)
    with pytest.raises(ParameterError):
        model_iht(X, np.zeros(4), RegularModel(8, 2), step=0)


def test_decoders_accept_ensemble_or_array():
    e = Ensemble(F2(), RegularModel(4, 2))
    X = make_design("bernoulli", 3, 4, np.random.default_rng(9))
    y = sign(X @ e.member(5))
    assert ml_decode_onebit(X, y, e, 0.0).index == ml_decode_onebit(X, y, e.members(), 0.0).index


def test_onebit_indistinguishable_members_all_tie():
    e = Ensemble(F2(), RegularModel(4, 2))
    X = np.zeros((2, 4))  # every member gives X b = 0, so sign +1 everywhere
    res = ml_decode_onebit(X, np.array([1, 1]), e, 0.0)
    assert res.ties == e.size and res.index == 0


def test_linear_ml_n1_matches_full_scan():
    e = Ensemble(F2(), SMALL)
    rng = np.random.default_rng(4)
    for _ in range(20):
        X = make_design("gaussian", 1, 6, rng)
        y = X @ e.member(e.sample_index(rng))
        scan = [abs(float(y[0] - X[0] @ b)) for b in e.members()]
        res = ml_decode_linear(X, y, e)
        assert res.score == pytest.approx(min(scan), abs=1e-15)
        assert res.index == scan.index(min(scan)) or res.ties > 1
