"""
Mixing probabilities of bad policymakers and the Bayesian posteriors they induce.

Bad types use rent cutoffs: a bad bureaucrat gives up its rent to keep a bad
politician in office when its rent is below ``bad_bureaucrat_cutoff``; a bad
politician forgoes its rent for re-election when its rent is below the
class-specific cutoff. The probabilities are the rent CDF at those cutoffs,
so nothing here is solved iteratively.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional

from .model_core import (
    BAD, GOOD, X, Y,
    EquilibriumClass, ModelParams, StructuralError,
    require_interior,
)

EC = EquilibriumClass


# -- cutoffs -----------------------------------------------------------------

def bad_bureaucrat_cutoff(params: ModelParams) -> float:
    """Rent below which a bad bureaucrat tries to keep a surely-bad politician."""
    p = params
    return p.delta * p.pi * p.rho * (1 - p.lam) * p.mu_b2


def xi(params: ModelParams) -> float:
    """P(bad bureaucrat proposes x after the politician proposed y) in pandering equilibria."""
    require_interior(params)
    return params.rent_b1.cdf(bad_bureaucrat_cutoff(params))


def psi(params: ModelParams) -> float:
    """P(bad bureaucrat proposes x after a state-mismatched proposal) in non-pandering equilibria.

    Same value as ``xi``; it governs a different event.
    """
    require_interior(params)
    return params.rent_b1.cdf(bad_bureaucrat_cutoff(params))


def _mixing_bound(params: ModelParams) -> float:
    # (1-lambda)/(lambda(1-beta)): the largest bad-bureaucrat rate keeping x informative
    return (1 - params.lam) / (params.lam * (1 - params.beta))


def _best_reply(params: ModelParams, slope: float, correction: float) -> tuple[str, float]:
    """Bad politician proposes x iff slope * r <= slope * delta(mu + E) - correction.

    Returns (kind, cutoff): "threshold" (x iff r <= cutoff), "inverse"
    (x iff r >= cutoff), or "always_x"/"always_y" when the slope vanishes.
    """
    if slope == 0:
        return ("always_x", math.nan) if correction <= 0 else ("always_y", math.nan)
    cutoff = params.delta * (params.mu_p2 + params.office_rent) - correction / slope
    return ("threshold", cutoff) if slope > 0 else ("inverse", cutoff)


def _rule_prob(params: ModelParams, kind: str, cutoff: float) -> float:
    F = params.rent_p1.cdf
    if kind == "threshold":
        return F(cutoff)
    if kind == "inverse":
        return 1.0 - F(cutoff)
    return 1.0 if kind == "always_x" else 0.0


def pecb_rule(params: ModelParams, xi_value: float) -> tuple[str, float]:
    """Bad politician in state x (PE and NPE alike; in PECB also state y)."""
    p = params
    slope = 1 - p.lam * (1 + xi_value * (1 - p.beta))
    return _best_reply(p, slope, p.delta * p.beta * p.rho * p.lam * (1 - p.lam) * p.mu_p2)


def pepb_y_rule(params: ModelParams, xi_value: float) -> tuple[str, float]:
    p = params
    slope = 1 - p.lam * (1 + xi_value) * (1 - p.beta)
    return _best_reply(p, slope, p.delta * p.beta * p.rho * p.lam * p.mu_p2)


def stand_firm_y_rule(params: ModelParams, psi_value: float) -> tuple[str, float]:
    p = params
    slope = 1 - p.lam * (1 - psi_value * (1 - p.beta))
    return _best_reply(p, slope, p.delta * p.beta * p.rho * p.lam * (1 - p.lam) * p.mu_p2)


def subversive_k(params: ModelParams, psi_value: float) -> float:
    """1 - lambda[1 + beta - psi(1-beta)]; its sign decides threshold vs inverse threshold."""
    p = params
    return 1 - p.lam * (1 + p.beta - psi_value * (1 - p.beta))


def subversive_rule(params: ModelParams, psi_value: float) -> tuple[str, float]:
    """Bad politician in state y facing a bureaucracy that contests y."""
    p = params
    return _best_reply(p, subversive_k(p, psi_value),
                       p.delta * p.beta * p.rho * p.lam * (1 - 2 * p.lam) * p.mu_p2)


def _checked_cutoff(rule: tuple[str, float], what: str) -> float:
    kind, cutoff = rule
    if kind != "threshold":
        raise StructuralError(f"{what}: cutoff denominator is not positive")
    return cutoff


def pecb_gamma_cutoff(params: ModelParams, xi_value: float) -> float:
    return _checked_cutoff(pecb_rule(params, xi_value), "pandering cutoff")


def pepb_gamma_y_cutoff(params: ModelParams, xi_value: float) -> float:
    return _checked_cutoff(pepb_y_rule(params, xi_value), "PEPB state-y cutoff")


def stand_firm_gamma_y_cutoff(params: ModelParams, psi_value: float) -> float:
    return _checked_cutoff(stand_firm_y_rule(params, psi_value), "stand-firm cutoff")


def subversive_gamma_y_cutoff(params: ModelParams, psi_value: float) -> float:
    kind, cutoff = subversive_rule(params, psi_value)
    if kind not in ("threshold", "inverse"):
        raise StructuralError("subversive cutoff undefined at K = 0")
    return cutoff


def gamma_pecb(params: ModelParams, xi_value: Optional[float] = None) -> float:
    if xi_value is None:
        xi_value = xi(params)
    require_interior(params)
    return params.rent_p1.cdf(pecb_gamma_cutoff(params, xi_value))


def gamma_pepb_y(params: ModelParams, xi_value: Optional[float] = None) -> float:
    if xi_value is None:
        xi_value = xi(params)
    require_interior(params)
    return params.rent_p1.cdf(pepb_gamma_y_cutoff(params, xi_value))


def gamma_npe(params: ModelParams, psi_value: Optional[float] = None,
              variant: str = "SF") -> tuple[float, float]:
    """(gamma_x, gamma_y) for a non-pandering equilibrium.

    variant is "SF", "FSV" or "ASV". FSV needs K > 0 and ASV needs K < 0.
    """
    if psi_value is None:
        psi_value = psi(params)
    require_interior(params)
    gamma_x = params.rent_p1.cdf(pecb_gamma_cutoff(params, psi_value))
    if variant == "SF":
        gamma_y = params.rent_p1.cdf(stand_firm_gamma_y_cutoff(params, psi_value))
    elif variant in ("FSV", "ASV"):
        k = subversive_k(params, psi_value)
        if variant == "FSV" and k <= 0:
            raise StructuralError("FSV requires psi above the subversion threshold (K > 0)")
        if variant == "ASV" and k >= 0:
            raise StructuralError("ASV requires psi below the subversion threshold (K < 0)")
        gamma_y = _rule_prob(params, *subversive_rule(params, psi_value))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return gamma_x, gamma_y


def bad_politician_rules(eq_class, params: ModelParams,
                         mix: Optional[float] = None) -> dict[str, tuple[str, float]]:
    """Best-reply rent rules of a bad politician by state, given the class's conjecture."""
    ec = EC(eq_class)
    if mix is None:
        mix = xi(params) if ec.pandering else psi(params)
    rule_x = pecb_rule(params, mix)
    if ec is EC.PECB:
        rule_y = rule_x
    elif ec is EC.PEPB:
        rule_y = pepb_y_rule(params, mix)
    elif ec is EC.NPE_SF:
        rule_y = stand_firm_y_rule(params, mix)
    else:
        rule_y = subversive_rule(params, mix)
    return {X: rule_x, Y: rule_y}


# -- profiles ----------------------------------------------------------------

def good_politician_proposal(eq_class: EquilibriumClass, state: str) -> str:
    return X if EC(eq_class).pandering else state


@dataclass(frozen=True)
class BeliefProfile:
    """Class-specific mixing probabilities and posteriors at one parameter point.

    ``implement_x_good``/``implement_x_bad`` are the voter's probabilities that
    a good/bad incumbent's play ends in p1 = x (X_V and its bad-type analogue
    in pandering classes, the script-X probabilities otherwise).
    """

    eq_class: EquilibriumClass
    xi_or_psi: float
    gamma_x: float
    gamma_y: float
    pi_v_x: float
    pi_v_y: float
    pi_b: dict = field(default_factory=dict)
    implement_x_good: float = math.nan
    implement_x_bad: float = math.nan
    x_v: Optional[float] = None
    y_v: Optional[float] = None

    @property
    def xi(self) -> float:
        return self.xi_or_psi

    @property
    def psi(self) -> float:
        return self.xi_or_psi

    @property
    def gamma(self) -> float:
        return self.gamma_x

    def proposal_prob_x(self, politician: str, state: str) -> float:
        if politician == GOOD:
            return 1.0 if good_politician_proposal(self.eq_class, state) == X else 0.0
        return self.gamma_x if state == X else self.gamma_y

    def to_dict(self) -> dict:
        d = asdict(self)
        d["eq_class"] = EC(self.eq_class).value
        d["pi_b"] = {f"{q},{s}": v for (q, s), v in self.pi_b.items()}
        return d


def _bayes(prior: float, like_good: float, like_bad: float) -> float:
    den = prior * like_good + (1 - prior) * like_bad
    if den <= 0:
        raise StructuralError("degenerate posterior: event has zero probability")
    return prior * like_good / den


def _bureaucrat_posteriors(params: ModelParams, eq_class, gamma_x, gamma_y) -> dict:
    out = {}
    for s in (X, Y):
        good_q = good_politician_proposal(eq_class, s)
        g_bad = gamma_x if s == X else gamma_y
        for q in (X, Y):
            like_good = 1.0 if q == good_q else 0.0
            like_bad = g_bad if q == X else 1 - g_bad
            # unreached or good-free proposals mean the politician is surely bad
            out[(q, s)] = 0.0 if like_good == 0 else _bayes(params.pi, like_good, like_bad)
    return out


def _implementation_probs(params: ModelParams, eq_class, mix, gamma_x, gamma_y):
    """P(p1 = x | good incumbent), P(p1 = x | bad incumbent), plus X_V, Y_V for PE."""
    p = params
    rho, beta, lam = p.rho, p.beta, p.lam
    ec = EC(eq_class)
    x_v = y_v = None
    if ec is EC.PECB:
        x_v = beta * rho * lam + (1 - lam)
        y_v = beta * (1 - rho * lam) + (1 - beta) * (1 - mix * lam)
        good = x_v
        bad = gamma_x * x_v + (1 - gamma_x) * (1 - y_v)
    elif ec is EC.PEPB:
        x_v = beta * lam + (1 - lam)
        y_v = beta * (1 - rho * lam) + (1 - beta) * (1 - mix * lam)
        good = x_v
        bad = (rho * (gamma_x * x_v + (1 - gamma_x) * (beta * lam + (1 - beta) * mix * lam))
               + (1 - rho) * (gamma_y * x_v + (1 - gamma_y) * (1 - beta) * mix * lam))
    else:
        good = rho * (1 - lam * (1 - beta))
        bad = (gamma_x * good
               + (1 - gamma_x) * rho * lam * (beta + (1 - beta) * mix)
               + gamma_y * (1 - rho) * (beta * (1 - lam)
                                        + (1 - beta) * (mix + (1 - mix) * (1 - lam))))
        if ec in (EC.NPE_FSV, EC.NPE_ASV):
            good += (1 - rho) * beta * lam
            bad += (1 - rho) * (1 - gamma_y) * beta * lam
    return good, bad, x_v, y_v


def mixing_probabilities(eq_class, params: ModelParams) -> tuple[float, float, float]:
    """(xi_or_psi, gamma_x, gamma_y) for the class, from the best-reply rent rules."""
    ec = EC(eq_class)
    require_interior(params)
    mix = xi(params) if ec.pandering else psi(params)
    rules = bad_politician_rules(ec, params, mix)
    return mix, _rule_prob(params, *rules[X]), _rule_prob(params, *rules[Y])


def belief_profile(eq_class, params: ModelParams) -> BeliefProfile:
    ec = EC(eq_class)
    require_interior(params)
    mix, gamma_x, gamma_y = mixing_probabilities(ec, params)
    good, bad, x_v, y_v = _implementation_probs(params, ec, mix, gamma_x, gamma_y)
    pi_v_x = _bayes(params.pi, good, bad)
    pi_v_y = _bayes(params.pi, 1 - good, 1 - bad)
    return BeliefProfile(
        eq_class=ec, xi_or_psi=mix, gamma_x=gamma_x, gamma_y=gamma_y,
        pi_v_x=pi_v_x, pi_v_y=pi_v_y,
        pi_b=_bureaucrat_posteriors(params, ec, gamma_x, gamma_y),
        implement_x_good=good, implement_x_bad=bad, x_v=x_v, y_v=y_v,
    )


def pe_profile_from(eq_class, params: ModelParams, xi_value: float,
                    gamma_x: float, gamma_y: Optional[float] = None) -> BeliefProfile:
    """Profile from externally supplied mixing probabilities (any class)."""
    ec = EC(eq_class)
    gamma_y = gamma_x if gamma_y is None else gamma_y
    good, bad, x_v, y_v = _implementation_probs(params, ec, xi_value, gamma_x, gamma_y)
    return BeliefProfile(
        eq_class=ec, xi_or_psi=xi_value, gamma_x=gamma_x, gamma_y=gamma_y,
        pi_v_x=_bayes(params.pi, good, bad), pi_v_y=_bayes(params.pi, 1 - good, 1 - bad),
        pi_b=_bureaucrat_posteriors(params, ec, gamma_x, gamma_y),
        implement_x_good=good, implement_x_bad=bad, x_v=x_v, y_v=y_v,
    )


def voter_posterior(params: ModelParams, beliefs: BeliefProfile, policy: str = X) -> float:
    """P(incumbent good | p1 = policy)."""
    g, b = beliefs.implement_x_good, beliefs.implement_x_bad
    if policy == Y:
        g, b = 1 - g, 1 - b
    return _bayes(params.pi, g, b)


def bureaucrat_posterior(params: ModelParams, beliefs: BeliefProfile,
                         proposal: str, state: str) -> float:
    return beliefs.pi_b[(proposal, state)]


# -- informativeness -----------------------------------------------------------

@dataclass(frozen=True)
class InformativenessReport:
    holds: bool
    big_gamma: float = math.nan
    big_lambda: float = math.nan
    gamma_hat: float = math.nan
    lambda_tilde: float = math.nan
    rho_hat: float = math.nan
    binding_bound_on_mixing: float = math.nan
    bound_binds: bool = False
    standalone_bound: Optional[float] = None

    def to_dict(self) -> dict:
        return asdict(self)


def _ratio(num: float, den: float) -> float:
    return num / den if den != 0 else math.nan


def npe_ratios(params: ModelParams, gamma_x: float, gamma_y: float) -> dict[str, float]:
    """Gamma, Lambda, Gamma-hat, Lambda-tilde and rho-hat of the non-pandering belief conditions."""
    rho, beta = params.rho, params.beta
    a = rho * (1 - gamma_x)
    b = (1 - rho) * gamma_y
    return {
        "big_gamma": _ratio(a - b, a + b),
        "big_lambda": _ratio(a - b, rho * (2 * (1 - gamma_x) - beta * (1 - gamma_x - gamma_y))
                             - beta * gamma_y),
        "gamma_hat": _ratio(b, a + b),
        "lambda_tilde": _ratio(a - b, a - (1 + beta) * b),
        "rho_hat": _ratio(gamma_y, 1 - gamma_x + gamma_y),
    }


def psi_hat(params: ModelParams, ratios: dict[str, float]) -> float:
    beta = params.beta
    return (_mixing_bound(params) * ratios["big_gamma"]
            + beta / (1 - beta) * ratios["gamma_hat"])


def informativeness(params: ModelParams, beliefs: BeliefProfile) -> InformativenessReport:
    ec = EC(beliefs.eq_class)
    lam, beta, rho = params.lam, params.beta, params.rho
    mix = beliefs.xi_or_psi
    if ec.pandering:
        bound = _mixing_bound(params)
        standalone = None
        if ec is EC.PECB:
            holds = beliefs.gamma_x < 1 and mix < bound
        else:
            # the exact posterior condition; the standalone bound is reported, not used
            standalone = bound + (1 - rho) * beta / (1 - beta)
            holds = beliefs.pi_v_x > params.pi
        return InformativenessReport(
            holds=bool(holds), binding_bound_on_mixing=bound,
            bound_binds=lam >= 1 / (2 - beta), standalone_bound=standalone)

    r = npe_ratios(params, beliefs.gamma_x, beliefs.gamma_y)
    if ec is EC.NPE_SF:
        bound = _mixing_bound(params) * r["big_gamma"]
        holds = beliefs.gamma_x < 1 and rho > r["rho_hat"] and mix < bound
        binds = lam > r["big_lambda"]
    else:
        bound = psi_hat(params, r)
        feasible = rho >= r["rho_hat"] or lam > r["lambda_tilde"]
        holds = feasible and mix < bound
        binds = bound < 1
    return InformativenessReport(holds=bool(holds), binding_bound_on_mixing=bound,
                                 bound_binds=bool(binds), **r)
