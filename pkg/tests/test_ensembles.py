import math

import numpy as np
import pytest
from scipy import stats
from scipy.spatial.distance import pdist

from csslb.ensembles import (
    F1,
    F2,
    F3,
    Ensemble,
    RecoveryConstants,
    Signal,
    min_pairwise_distance,
    sample_uniform,
)
from csslb.errors import ParameterError, TooLargeError
from csslb.graph_model import RegularModel, TreeModel, WgmModel, WgmParams, enumerate_supports

SMALL = WgmModel.from_params(WgmParams(d=6, s=4, g=2, B=2, rho=2))


def test_sizes_on_small_wgm():
    assert Ensemble(F2(), SMALL).size == 144
    assert Ensemble(F3(0.1), SMALL).size == 54
    assert Ensemble(F1(4, 1.0), SMALL).size == 144


def test_canonical_order():
    e = Ensemble(F2(), SMALL)
    M = e.members()
    assert e.supports == enumerate_supports(SMALL)
    # first block: support (1,2,4,5), patterns in product order
    assert list(M[0]) == [-1, -1, 0, -1, -1, 0]
    assert list(M[15]) == [1, 1, 0, 1, 1, 0]
    assert list(M[16]) == [-1, -1, 0, -1, 0, -1]
    for i in (0, 17, 143):
        assert np.array_equal(e.member(i), M[i])


def test_members_are_read_only():
    M = Ensemble(F2(), SMALL).members()
    with pytest.raises(ValueError):
        M[0, 0] = 5.0


def test_recovery_constants():
    c = RecoveryConstants.from_params(C0=1.0, eps=0.9448, sigma=2.0, n=3)
    k1 = 1 / math.sqrt(2 * 0.0552)
    k2 = k1 + 1 / math.sqrt(0.0552)
    assert c.k1 == pytest.approx(k1) and c.k2 == pytest.approx(k2)
    assert c.v1 == pytest.approx(k1 * 2 * math.sqrt(3))
    assert c.sep == pytest.approx(2 * math.sqrt(3) / math.sqrt(0.0552))


@pytest.mark.parametrize("n,sigma,C0", [(1, 1.0, 1.0), (4, 1.0, 1.0), (9, 0.3, 2.5)])
def test_f1_separation(n, sigma, C0):
    e = Ensemble(F1(n, sigma, C0, 0.9448), SMALL)
    expect = C0 * sigma * math.sqrt(n) / math.sqrt(1 - 0.9448)
    assert min_pairwise_distance(e) == pytest.approx(expect, rel=1e-9)


def test_f3_structure():
    eps, s = 0.1, 4
    e = Ensemble(F3(eps), SMALL)
    for row in e.patterns:
        assert np.sum(row == -eps) == s // 2
        assert np.sum(np.isclose(row, math.sqrt(2 / s) + eps)) == s // 2
    sq = np.sum(e.members() ** 2, axis=1)
    expected = 1 + eps * math.sqrt(2 * s) + s * eps**2
    assert np.ptp(sq) <= 1e-12
    assert sq[0] == pytest.approx(expected, rel=1e-12)


def test_f3_distances():
    e = Ensemble(F3(0.1), SMALL)
    dmin = min_pairwise_distance(e)
    assert dmin >= 0.1
    # closest pair moves one -eps entry to a neighbouring coordinate
    assert dmin == pytest.approx(math.sqrt(2) * 0.1, rel=1e-12)
    # same support, splits differing by one swap
    within = pdist(e.patterns).min()
    assert within == pytest.approx(math.sqrt(2) * (math.sqrt(0.5) + 0.2), rel=1e-12)


def test_f3_rejects_odd_s_and_bad_eps():
    with pytest.raises(ParameterError):
        Ensemble(F3(0.1), RegularModel(5, 3))
    with pytest.raises(ParameterError):
        Ensemble(F3(0.0), RegularModel(4, 2))


def test_block_scan_matches_brute_force():
    e = Ensemble(F2(), RegularModel(8, 4))  # 1120 members, past the brute-force limit
    assert e.size > 1000
    assert min_pairwise_distance(e) == pytest.approx(pdist(e.members()).min(), rel=1e-12)
    e = Ensemble(F3(0.05), TreeModel(31, 6))
    assert e.size > 1000
    assert min_pairwise_distance(e) == pytest.approx(pdist(e.members()).min(), rel=1e-12)


def test_pairwise_cap():
    with pytest.raises(TooLargeError):
        min_pairwise_distance(Ensemble(F2(), RegularModel(8, 4)), cap=1000)
    with pytest.raises(ParameterError):
        min_pairwise_distance(Ensemble(F2(), RegularModel(1, 0)))


def test_sampling_is_uniform():
    e = Ensemble(F3(0.1), SMALL)
    rng = np.random.default_rng(3)
    counts = np.bincount([e.sample_index(rng) for _ in range(54 * 200)], minlength=54)
    assert stats.chisquare(counts).pvalue > 1e-4


def test_sample_uniform_signal():
    e = Ensemble(F2(), SMALL)
    sig = sample_uniform(e, np.random.default_rng(0))
    assert isinstance(sig, Signal)
    assert sig.support in e.supports
    assert Signal.from_values(sig.values).support == sig.support


def test_norms():
    e = Ensemble(F2(), SMALL)
    assert np.allclose(e.norms(), 2.0)
