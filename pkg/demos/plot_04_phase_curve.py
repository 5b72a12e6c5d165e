"""
Empirical error against the Fano floor
======================================

Run the exact-likelihood one-bit decoder on F3 over the small WGM and
compare its error rate with the analytic lower bound at each n.
Set CSSLB_THREADS to spread trials over threads; the numbers do not change.
"""

from csslb import WgmModel, WgmParams
from csslb.harness import Scenario, phase_curve

model = WgmModel.from_params(WgmParams(d=6, s=4, g=2, B=2, rho=2))
sc = Scenario("onebit_exact", model, n=1, sigma=0.5, seed=7)
table = phase_curve(sc, range(1, 7), trials=2000)
print(table.to_csv())

for r in table.rows:
    print(f"n={r.n}: error {r.err_rate:.3f} in [{r.wilson_lo:.3f}, {r.wilson_hi:.3f}], floor {r.fano_bound:.3f}")
print("violations:", table.violations())

# with exact linear data and n >= d the ensemble becomes identifiable
noiseless = phase_curve(Scenario("std_noiseless", model, n=1, seed=7), [1, 3, 6, 12], trials=2000)
print(noiseless.to_csv())
