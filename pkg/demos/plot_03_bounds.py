"""
Mutual information and Fano thresholds
======================================

Per-sample information budgets for the four measurement settings and the
number of samples below which every decoder errs at least half the time.
"""

from csslb import WgmModel, WgmParams, bound_report, sample_threshold
from csslb.bounds import SETTINGS

model = WgmModel.from_params(WgmParams(d=15, s=10, g=5, B=5, rho=2))

for setting in SETTINGS:
    th = sample_threshold(setting, model)
    print(f"{setting:14s} threshold n* = {th.n:8.4f}  vacuous={th.vacuous}")

print()
for n in range(1, 6):
    r = bound_report("onebit_exact", model, n)
    print(f"n={n}: I <= {r.mi:.3f} nats, P(error) >= {r.fano:.4f}")
