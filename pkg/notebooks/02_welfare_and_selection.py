"""
Voter welfare, the benchmark, and who gets re-elected
======================================================
"""
import numpy as np

from agencygame import certifier as C, welfare as W
from agencygame.model_core import EquilibriumClass as EC, make_params

# With no bureaucrat influence the voter gets 1 + pi*rho; with a fully
# aligned dictator they get 2.  Which extreme is better depends on beta.
p = make_params(pi=0.5, rho=0.5)
bench = W.benchmark(p)
print("toothless:", bench.eu_toothless, " dictator:", bench.eu_dictatorial,
      " indifferent at beta =", bench.beta_tilde)

for beta in (0.1, 0.25, 0.4):
    print(f"  beta={beta:.2f}  delta_eu={W.delta_eu(p, beta=beta):+.4f}")

# Intermediate influence can beat both extremes.
p = make_params(beta=0.25, pi=0.5, rho=0.5, E=1.0)
lams = np.linspace(0.01, 0.99, 99)
eu = [W.voter_welfare(EC.PECB, p.replace(lam=lam)).eu_total for lam in lams]
print("best lambda on the grid:", lams[int(np.argmax(eu))], "welfare", round(max(eu), 5))

# Crossing ell switches the equilibrium and welfare jumps up.
q = make_params(E=0.85, pi=0.7, rho=0.85, beta=0.9, lam=0.5)
print("ell =", round(C.ell(q), 5), " jump (pandering minus stand-firm):",
      round(W.welfare_jump_at_ell(q), 5))

# Selection: zeta is the chance a good politician serves the second term.
for lam in (0.1, 0.25, 0.5, 0.75, 0.9):
    s = W.selection(make_params(pi=0.5, beta=0.5, rho=0.5, E=1.0, lam=lam))
    print(f"  lam={lam:.2f}  zeta={s.zeta:.6f}  eta={s.eta:.6f}")
