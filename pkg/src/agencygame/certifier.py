"""
Existence conditions for the five informative equilibrium classes.

``certify`` evaluates a class's full condition list at one parameter point and
returns each condition's truth value with a signed slack (positive means
satisfied with room to spare, in the natural unit of the inequality).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import optimize

from . import beliefs as bl
from .continuation import policymaker_continuations
from .model_core import (
    X, Y, EndpointError, EquilibriumClass, ModelParams, StructuralError,
    mismatch_ratio, require_interior,
)

EC = EquilibriumClass

# Completeness of the classification is only established for small lambda; above this
# the five classes are reported without a completeness guarantee.
COMPLETENESS_NOTE = ("the five classes are complete among informative equilibria "
                     "only for sufficiently small lambda")


@dataclass(frozen=True)
class Condition:
    name: str
    anchor: str
    satisfied: bool
    slack: float

    def to_dict(self) -> dict:
        slack = self.slack if math.isfinite(self.slack) else None
        return {"name": self.name, "anchor": self.anchor,
                "satisfied": bool(self.satisfied), "slack": slack}


@dataclass(frozen=True)
class EquilibriumCertificate:
    eq_class: EquilibriumClass
    conditions: tuple[Condition, ...]
    beliefs: Optional[bl.BeliefProfile] = None

    @property
    def verdict(self) -> bool:
        return all(c.satisfied for c in self.conditions)

    @property
    def failed(self) -> list[str]:
        return [c.name for c in self.conditions if not c.satisfied]

    def condition(self, name: str) -> Condition:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"class": EC(self.eq_class).value, "verdict": self.verdict,
                "conditions": [c.to_dict() for c in self.conditions]}


@dataclass(frozen=True)
class ThresholdSet:
    delta_cb: float
    delta_pb: float
    mu_bar_pe: float
    ell: float
    pandering_rhs: float
    p_value: float
    g_value: float
    h_value: float
    psi_tilde: float
    psi_hat: float
    psi_star: float
    lambda_star: float
    lambda_prime: float
    e_script: float
    g_fun: float
    f_fun: float
    mu_hat: float
    extra: dict = field(default_factory=dict)


# -- individual thresholds -------------------------------------------------------

def pandering_rhs(params: ModelParams) -> float:
    """v(y,y) - v(x,y) - delta rho (1-pi)(1-lambda)[v(x,x) - v(y,x)]; compared with delta E."""
    p = params
    return p.payoffs.cost_y - p.delta * p.rho * (1 - p.pi) * (1 - p.lam) * p.payoffs.cost_x


def pandering_payoff(params: ModelParams) -> float:
    """P: positive when office rents are too low to make a good politician pander."""
    return pandering_rhs(params) - params.delta * params.office_rent


def ell(params: ModelParams) -> float:
    """Influence level at which the office-rent condition switches (1 - (1-E)/(rho(1-pi)) for unit payoffs)."""
    p = params
    return 1 - (p.payoffs.cost_y - p.delta * p.office_rent) / (
        p.delta * p.rho * (1 - p.pi) * p.payoffs.cost_x)


def g_value(params: ModelParams, psi_value: float) -> float:
    b, lam = params.beta, params.lam
    return b * (2 * lam - 1) - (1 - b) * (1 - lam * (1 - psi_value))


def h_value(params: ModelParams, psi_value: float) -> float:
    b, lam = params.beta, params.lam
    return 1 - b * lam / (1 - lam * (1 - psi_value * (1 - b)))


def mixing_bound(params: ModelParams) -> float:
    return (1 - params.lam) / (params.lam * (1 - params.beta))


def psi_tilde(params: ModelParams) -> float:
    b, lam = params.beta, params.lam
    return b / (1 - b) - (1 - lam) / (lam * (1 - b))


def psi_star(params: ModelParams) -> float:
    p = params
    mu = p.mu_p2
    return psi_tilde(p) + p.beta * p.rho * p.lam * (1 - 2 * p.lam) * mu / (
        p.lam * (1 - p.beta) * (mu + p.office_rent))


def _lambda_root(params: ModelParams, lead: float, cross: float) -> float:
    p = params
    mu, m = p.mu_p2, p.mu_p2 + p.office_rent
    brm = p.beta * p.rho * mu
    if brm == 0:
        return math.nan
    radicand = 1 + m * (lead ** 2 * m - 2 * cross * brm) / brm ** 2
    if radicand < 0:
        return math.nan
    return (lead * m + brm * (1 - math.sqrt(radicand))) / (4 * brm)


def lambda_star(params: ModelParams) -> float:
    """Lower root of the influence range where the ASV mixing ceiling is positive."""
    return _lambda_root(params, 1 + params.beta, 3 - params.beta)


def lambda_prime(params: ModelParams) -> float:
    return _lambda_root(params, 2 + params.beta, 6 - params.beta)


def _bureaucrat_quantile(params: ModelParams, level: float) -> float:
    """Generalized inverse of the period-1 bureaucrat rent CDF (+inf above level 1)."""
    if level > 1:
        return math.inf
    if level < 0:
        return -math.inf
    return params.rent_b1.quantile(level)


def mu_bar_pe(params: ModelParams) -> float:
    p = params
    return _bureaucrat_quantile(p, mixing_bound(p)) / (p.delta * p.pi * p.rho * (1 - p.lam))


def mu_hat(params: ModelParams, big_gamma: float) -> float:
    """Ceiling on mu_2^B in NPE-SF, with the uniform quantile extended linearly.

    Under U[0, R] this is R * bound * Gamma / (delta pi rho (1-lambda)),
    i.e. 2 Gamma / (pi rho lambda (1-beta)) for U[0, 2] and delta = 1.
    """
    p = params
    level = mixing_bound(p) * big_gamma
    return p.rent_b1.upper * level / (p.delta * p.pi * p.rho * (1 - p.lam))


def f_fun(params: ModelParams, xi_value: float) -> float:
    """Largest office rent keeping gamma < 1 in PECB."""
    p = params
    return (p.rent_p1.upper / p.delta - p.mu_p2
            + p.beta * p.rho * p.lam * (1 - p.lam) * p.mu_p2
            / (1 - p.lam * (1 + xi_value * (1 - p.beta))))


def npe_sf_bound_curve(params: ModelParams, lams) -> dict[str, np.ndarray]:
    """rho_hat, Gamma and mu_hat of NPE-SF along an array of interior lambdas.

    Vectorized version of the scalar path (``thresholds``), for dense scans.
    """
    p = params
    lam = np.asarray(lams, dtype=float)
    if np.any((lam <= 0) | (lam >= 1)):
        raise EndpointError(float(lam[(lam <= 0) | (lam >= 1)][0]))
    psi = p.rent_b1.cdf(p.delta * p.pi * p.rho * (1 - lam) * p.mu_b2)
    base = p.delta * (p.mu_p2 + p.office_rent)
    corr = p.delta * p.beta * p.rho * lam * (1 - lam) * p.mu_p2
    slope_x = 1 - lam * (1 + psi * (1 - p.beta))
    slope_y = 1 - lam * (1 - psi * (1 - p.beta))
    if np.any(slope_x <= 0) or np.any(slope_y <= 0):
        raise StructuralError("NPE-SF cutoff denominator is not positive on the grid")
    gamma_x = p.rent_p1.cdf(base - corr / slope_x)
    gamma_y = p.rent_p1.cdf(base - corr / slope_y)
    a = p.rho * (1 - gamma_x)
    b = (1 - p.rho) * gamma_y
    big_gamma = (a - b) / (a + b)
    bound = (1 - lam) / (lam * (1 - p.beta))
    mu = p.rent_b1.upper * bound * big_gamma / (p.delta * p.pi * p.rho * (1 - lam))
    return {"lambda": lam, "rho_hat": gamma_y / (1 - gamma_x + gamma_y),
            "big_gamma": big_gamma, "mu_hat": mu, "gamma_x": gamma_x, "gamma_y": gamma_y}


def _rule_cutoff(rule: tuple[str, float]) -> float:
    return rule[1]


def thresholds(eq_class, params: ModelParams) -> ThresholdSet:
    require_interior(params)
    p = params
    mix = bl.xi(p)
    pecb = bl.belief_profile(EC.PECB, p)
    pepb = bl.belief_profile(EC.PEPB, p)
    ec = EC(eq_class)
    npe_class = ec if not ec.pandering else EC.NPE_SF
    npe = bl.belief_profile(npe_class, p)
    sv = bl.belief_profile(EC.NPE_FSV, p)
    ratios_npe = bl.npe_ratios(p, npe.gamma_x, npe.gamma_y)
    ratios_sv = bl.npe_ratios(p, sv.gamma_x, sv.gamma_y)
    rhs = pandering_rhs(p)
    return ThresholdSet(
        delta_cb=p.delta * p.rho * (1 - p.lam) * (pecb.pi_b[(X, X)] - p.pi),
        delta_pb=p.delta * p.rho * (1 - p.lam) * (pepb.pi_b[(X, Y)] - p.pi),
        mu_bar_pe=mu_bar_pe(p),
        ell=ell(p),
        pandering_rhs=rhs,
        p_value=pandering_payoff(p),
        g_value=g_value(p, mix),
        h_value=h_value(p, mix),
        psi_tilde=psi_tilde(p),
        psi_hat=bl.psi_hat(p, ratios_sv),
        psi_star=psi_star(p),
        lambda_star=lambda_star(p),
        lambda_prime=lambda_prime(p),
        e_script=rhs / p.delta,
        g_fun=rhs / p.delta,
        f_fun=f_fun(p, mix),
        mu_hat=mu_hat(p, ratios_npe["big_gamma"]),
        extra={"rho_hat": ratios_npe["rho_hat"], "big_gamma": ratios_npe["big_gamma"],
               "big_lambda": ratios_npe["big_lambda"], "mixing_bound": mixing_bound(p)},
    )


# -- certificates ---------------------------------------------------------------

def _weak(name, anchor, slack) -> Condition:
    return Condition(name, anchor, bool(slack >= 0), float(slack))


def _strict(name, anchor, slack) -> Condition:
    return Condition(name, anchor, bool(slack > 0), float(slack))


def reelection_gain(params: ModelParams) -> float:
    """What a good politician in state x gains from x-and-re-election over y-and-replacement.

    Equal to v(x,x) - v(y,x) + delta(V - U) for either bureaucrat type; the
    non-pandering steps divide by it assuming it is positive, which fails for
    sufficiently negative office rents.
    """
    t = policymaker_continuations(params)
    return params.payoffs.cost_x + params.delta * (t.v_gp_gb - t.u_gp_gb)


def _state_x_condition(params: ModelParams, mix: float) -> Condition:
    lam, beta = params.lam, params.beta
    slack = reelection_gain(params) * ((1 - lam) - (1 - beta) * mix * lam)
    return _weak("state_x_proposal", "npe.state_x_good_politician", slack)


def _class_cutoff(ec: EC, params: ModelParams, mix: float) -> float:
    rules = bl.bad_politician_rules(ec, params, mix)
    if ec in (EC.PECB, EC.NPE_SF):
        return _rule_cutoff(rules[X])
    return _rule_cutoff(rules[Y])


def _y_state_delta_bound(params: ModelParams, belief: bl.BeliefProfile) -> float:
    p = params
    return p.delta * p.rho * (1 - p.lam) * (belief.pi_b[(Y, Y)] - p.pi)


def certify(eq_class, params: ModelParams) -> EquilibriumCertificate:
    """Evaluate every existence condition of ``eq_class`` at ``params``."""
    require_interior(params)
    ec = EC(eq_class)
    p = params
    belief = bl.belief_profile(ec, p)
    mix = belief.xi_or_psi
    delta_ratio = mismatch_ratio(p.payoffs)
    office = p.delta * p.office_rent
    rhs = pandering_rhs(p)
    upper = p.rent_p1.upper
    cutoff = _class_cutoff(ec, p, mix)
    tag = ec.value.lower()
    conds: list[Condition]

    if ec.pandering:
        mu_bar = mu_bar_pe(p)
        if ec is EC.PECB:
            bound = p.delta * p.rho * (1 - p.lam) * (belief.pi_b[(X, X)] - p.pi)
            # at equality the good bureaucrat challenges, so the weak form is right
            mismatch = _weak("mismatch_ratio", f"{tag}.ii", delta_ratio - bound)
        else:
            bound = p.delta * p.rho * (1 - p.lam) * (belief.pi_b[(X, Y)] - p.pi)
            mismatch = _weak("mismatch_ratio", f"{tag}.ii", bound - delta_ratio)
        conds = [
            _weak("office_rent", f"{tag}.i", office - rhs),
            mismatch,
            _strict("rent_support", f"{tag}.iii", upper - cutoff),
            _strict("bureaucrat_rent_ceiling", f"{tag}.iv", mu_bar - p.mu_b2),
        ]
    elif ec is EC.NPE_SF:
        r = bl.npe_ratios(p, belief.gamma_x, belief.gamma_y)
        conds = [
            _strict("office_rent", f"{tag}.i", rhs - office),
            _weak("mismatch_ratio", f"{tag}.ii", delta_ratio - _y_state_delta_bound(p, belief)),
            _strict("rent_support", f"{tag}.iii", upper - cutoff),
            _strict("state_likelihood", f"{tag}.iv", p.rho - r["rho_hat"]),
            _strict("mixing_ceiling", f"{tag}.v", mixing_bound(p) * r["big_gamma"] - mix),
            _state_x_condition(p, mix),
        ]
    elif ec is EC.NPE_FSV:
        r = bl.npe_ratios(p, belief.gamma_x, belief.gamma_y)
        lo, hi = psi_tilde(p), bl.psi_hat(p, r)
        window = min(mix - lo, hi - mix)
        lam_cap = min(1 / (2 * p.beta), 2 / (2 + p.beta))
        conds = [
            _strict("office_rent", f"{tag}.i", pandering_payoff(p)),
            _weak("mismatch_ratio", f"{tag}.ii", _y_state_delta_bound(p, belief) - delta_ratio),
            _strict("rent_support", f"{tag}.iii", upper - cutoff),
            _weak("state_likelihood", f"{tag}.iv", p.rho - r["rho_hat"]),
            _strict("influence_cap", f"{tag}.v", lam_cap - p.lam),
            Condition("mixing_window", f"{tag}.vi", bool(mix >= lo and mix < hi), float(window)),
            _state_x_condition(p, mix),
        ]
    else:
        ceiling = min(psi_star(p), mixing_bound(p))
        conds = [
            _weak("office_rent", f"{tag}.i", -pandering_payoff(p)),
            _weak("mismatch_ratio", f"{tag}.ii", _y_state_delta_bound(p, belief) - delta_ratio),
            _strict("influence_floor", f"{tag}.iii", p.lam - lambda_star(p)),
            _strict("rent_support", f"{tag}.iv", upper - cutoff),
            _strict("mixing_ceiling", f"{tag}.v", ceiling - mix),
            _state_x_condition(p, mix),
            # the unreduced good-politician condition in state y; the reduction to
            # psi < psi_star assumes mu_2^P + E > 0
            _weak("state_y_proposal", "npe_asv.state_y_good_politician",
                  -g_value(p, mix) * pandering_payoff(p)),
        ]
    return EquilibriumCertificate(ec, tuple(conds), belief)


def classify_all(params: ModelParams) -> list[EquilibriumCertificate]:
    """Certificates for all five classes; several verdicts may be true at once."""
    return [certify(ec, params) for ec in EC]


def certified_classes(params: ModelParams) -> list[EquilibriumClass]:
    return [c.eq_class for c in classify_all(params) if c.verdict]


def find_boundary(slack: Callable[[float], float], lo: float, hi: float,
                  tol: float = 1e-10) -> float:
    """Bisect a continuous slack function for its sign change in [lo, hi]."""
    return optimize.bisect(slack, lo, hi, xtol=tol)


def condition_boundary(eq_class, condition: str, params: ModelParams,
                       lo: float, hi: float, key: str = "lam", tol: float = 1e-10) -> float:
    """Parameter value in [lo, hi] where ``condition``'s slack crosses zero."""
    def slack(value: float) -> float:
        return certify(eq_class, params.replace(**{key: value})).condition(condition).slack
    return find_boundary(slack, lo, hi, tol)
