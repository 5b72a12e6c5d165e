"""
Exact mutual information on tiny ensembles
==========================================

Enumerate every output to get I(b; (X, y)) exactly (given X), and set it
against the analytic upper bounds.
"""

import math

import numpy as np

from csslb import F2, F3, Ensemble, RegularModel, WgmModel, WgmParams
from csslb.bounds import count_noiseless_outputs, mi_bound_onebit, mi_bound_std_noiseless
from csslb.harness import empirical_mi_noiseless_std, empirical_mi_onebit

rng = np.random.default_rng(1)
model = WgmModel.from_params(WgmParams(d=6, s=4, g=2, B=2, rho=2))
f3 = Ensemble(F3(0.1), model)
for sigma in (0.0, 0.5, 2.0):
    for n in (1, 2, 4):
        mi = empirical_mi_onebit(f3, n, sigma, x_samples=100, rng=rng)
        print(f"one-bit sigma={sigma} n={n}: I = {mi:.4f}  bound {mi_bound_onebit(n):.4f}  ln|F| {math.log(f3.size):.4f}")

# all 2^(n d) sign matrices are enumerated here
for m, n in ((RegularModel(4, 2), 2), (model, 2)):
    f2 = Ensemble(F2(), m)
    mi = empirical_mi_noiseless_std(f2, n)
    print(f"noiseless s={m.s} n={n}: I = {mi:.4f}  count cap {n * math.log(count_noiseless_outputs(m.s)):.4f}"
          f"  cubic {mi_bound_std_noiseless(n, m.s):.4f}")
