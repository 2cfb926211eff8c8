"""
Certifying an equilibrium and checking it by brute force
=========================================================

A certificate is a list of inequalities.  The audit ignores them and asks
every player whether some other action would pay more.
"""
from agencygame import certifier as C, simulator as S
from agencygame.model_core import EquilibriumClass as EC, make_params

# the stand-firm configuration of figure 4, at moderate bureaucratic influence
p = make_params(E=0.85, pi=0.7, rho=0.85, beta=0.9, lam=0.6)

print("influence threshold ell:", round(C.ell(p), 5))
print("classes certified here:", [ec.value for ec in C.certified_classes(p)])

cert = C.certify(EC.NPE_SF, p)
for cond in cert.conditions:
    print(f"  {cond.name:18s} satisfied={cond.satisfied!s:5s} slack={cond.slack:+.4f}")

# Build the strategy profile the certificate describes and audit it exactly.
profile = S.build_profile(EC.NPE_SF, p)
report = S.best_response_audit(profile, p)
print("audit passes:", report.passes, " largest gain from deviating:", report.max_gain)

# Below ell the pandering incentive wins; the audit finds who wants to deviate
low = p.replace(lam=0.3)
broken = S.build_profile(EC.NPE_SF, low, strict=False)
print("failed conditions at lam=0.3:", broken.certificate.failed)
for dev in S.best_response_audit(broken, low).failing():
    print("  deviation at", dev.info_set, "gain", round(dev.gain, 4))

# Monte Carlo should agree with the exact evaluator within a few standard errors
exact = S.exact_expected_utilities(profile, p)
sim = S.simulate(profile, p, 200_000, seed=7)
print(f"voter welfare exact={exact.voter:.4f} simulated={sim.means['voter']:.4f}"
      f" (se {sim.std_errors['voter']:.4f})")
