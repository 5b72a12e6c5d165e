"""
Restricted signal ensembles
===========================

The three hard families over the small WGM, their sizes and their
minimum pairwise distances.
"""

import math

import numpy as np

from csslb import F1, F2, F3, Ensemble, WgmModel, WgmParams, min_pairwise_distance

model = WgmModel.from_params(WgmParams(d=6, s=4, g=2, B=2, rho=2))

f1 = Ensemble(F1(n=4, sigma=1.0, C0=1.0, eps=0.9448), model)
f2 = Ensemble(F2(), model)
f3 = Ensemble(F3(eps=0.1), model)
print("sizes", f1.size, f2.size, f3.size)

# F1 separation grows like sigma*sqrt(n)/sqrt(1-eps)
c = f1.family.constants
print("F1 levels", c.v1, c.v2, "min distance", min_pairwise_distance(f1), "sep", c.sep)

# F3 members all share one norm, so one-bit measurements carry no scale information
sq = np.sum(f3.members() ** 2, axis=1)
print("F3 squared norm", sq[0], "spread", np.ptp(sq), "formula", 1 + 0.1 * math.sqrt(8) + 4 * 0.01)
print("F3 min distance", min_pairwise_distance(f3))

rng = np.random.default_rng(0)
print("a random F2 member:", f2.member(f2.sample_index(rng)))
