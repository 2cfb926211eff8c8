"""
Voter welfare, the toothless/dictatorial benchmarks, the welfare jump at the
pandering threshold, and the political-selection probabilities.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

from . import beliefs as bl
from .certifier import ell
from .continuation import voter_continuations
from .model_core import (
    EquilibriumClass, ModelParams, ValidationError, require_interior,
)

EC = EquilibriumClass

CLOSED_FORM = "closed-form"
GAME_TREE = "game-tree"
BENCHMARK = "benchmark"


@dataclass(frozen=True)
class WelfareReport:
    eq_class: Optional[EquilibriumClass]
    eu_total: float
    eu_given_good: float
    eu_given_bad: float
    source: str

    def to_dict(self) -> dict:
        d = asdict(self)
        d["eq_class"] = None if self.eq_class is None else EC(self.eq_class).value
        return d


# -- closed forms ------------------------------------------------------------------

def _pecb_terms(params: ModelParams, xi: float, gamma: float) -> tuple[float, float]:
    p = params
    rho, beta, lam, d = p.rho, p.beta, p.lam, p.delta
    v = p.payoffs.v
    W = voter_continuations(p)
    gg, gpi, gb = W.w_gb_gp, W.w_gb_pi, W.w_gb_bp
    bg, bpi, bb = W.w_bb_gp, W.w_bb_pi, W.w_bb_bp

    good = (beta * (rho * (v("x", "x") + d * gg)
                    + (1 - rho) * (lam * (v("y", "y") + d * gpi)
                                   + (1 - lam) * (v("x", "y") + d * gg)))
            + (1 - beta) * (rho * (lam * (v("y", "x") + d * bpi)
                                   + (1 - lam) * (v("x", "x") + d * bg))
                            + (1 - rho) * (lam * (v("y", "y") + d * bpi)
                                           + (1 - lam) * (v("x", "y") + d * bg))))

    with_good_b = (
        rho * (gamma * (v("x", "x") + d * gb)
               + (1 - gamma) * (lam * (v("x", "x") + d * gb)
                                + (1 - lam) * (v("y", "x") + d * gpi)))
        + (1 - rho) * (gamma * (lam * (v("y", "y") + d * gpi)
                                + (1 - lam) * (v("x", "y") + d * gb))
                       + (1 - gamma) * (v("y", "y") + d * gpi)))
    with_bad_b = (
        rho * (gamma * (lam * (v("y", "x") + d * bpi) + (1 - lam) * (v("x", "x") + d * bb))
               + (1 - gamma) * (xi * (lam * (v("x", "x") + d * bb)
                                      + (1 - lam) * (v("y", "x") + d * bpi))
                                + (1 - xi) * (v("y", "x") + d * bpi)))
        + (1 - rho) * (gamma * (lam * (v("y", "y") + d * bpi)
                                + (1 - lam) * (v("x", "y") + d * bb))
                       + (1 - gamma) * (xi * (lam * (v("x", "y") + d * bb)
                                              + (1 - lam) * (v("y", "y") + d * bpi))
                                        + (1 - xi) * (v("y", "y") + d * bpi))))
    return good, beta * with_good_b + (1 - beta) * with_bad_b


def _npe_sf_terms(params: ModelParams, psi: float, gamma_x: float,
                  gamma_y: float) -> tuple[float, float]:
    p = params
    rho, beta, lam, d = p.rho, p.beta, p.lam, p.delta
    v = p.payoffs.v
    W = voter_continuations(p)
    gg, gpi, gb = W.w_gb_gp, W.w_gb_pi, W.w_gb_bp
    bg, bpi, bb = W.w_bb_gp, W.w_bb_pi, W.w_bb_bp

    good = (beta * (rho * (v("x", "x") + d * gg) + (1 - rho) * (v("y", "y") + d * gpi))
            + (1 - beta) * (rho * (lam * (v("y", "x") + d * bpi)
                                   + (1 - lam) * (v("x", "x") + d * bg))
                            + (1 - rho) * (v("y", "y") + d * bpi)))

    with_good_b = (
        rho * (gamma_x * (v("x", "x") + d * gb)
               + (1 - gamma_x) * (lam * (v("x", "x") + d * gb)
                                  + (1 - lam) * (v("y", "x") + d * gpi)))
        + (1 - rho) * (gamma_y * (lam * (v("y", "y") + d * gpi)
                                  + (1 - lam) * (v("x", "y") + d * gb))
                       + (1 - gamma_y) * (v("y", "y") + d * gpi)))
    with_bad_b = (
        rho * (gamma_x * (lam * (v("y", "x") + d * bpi) + (1 - lam) * (v("x", "x") + d * bb))
               + (1 - gamma_x) * (psi * (lam * (v("x", "x") + d * bb)
                                         + (1 - lam) * (v("y", "x") + d * bpi))
                                  + (1 - psi) * (v("y", "x") + d * bpi)))
        + (1 - rho) * (gamma_y * (psi * (v("x", "y") + d * bb)
                                  + (1 - psi) * (lam * (v("y", "y") + d * bpi)
                                                 + (1 - lam) * (v("x", "y") + d * bb)))
                       + (1 - gamma_y) * (v("y", "y") + d * bpi)))
    return good, beta * with_good_b + (1 - beta) * with_bad_b


def _report(ec, params, good, bad, source) -> WelfareReport:
    return WelfareReport(ec, params.pi * good + (1 - params.pi) * bad, good, bad, source)


def welfare_closed_form(eq_class, params: ModelParams,
                        beliefs: Optional[bl.BeliefProfile] = None) -> WelfareReport:
    """Voter welfare in PECB or NPE-SF from the explicit expressions.

    Other classes have no printed closed form; use ``voter_welfare``.
    """
    ec = EC(eq_class)
    if ec not in (EC.PECB, EC.NPE_SF):
        raise ValueError(f"no closed form for {ec.value}; use voter_welfare (game tree)")
    if beliefs is None:
        require_interior(params)
        beliefs = bl.belief_profile(ec, params)
    if ec is EC.PECB:
        good, bad = _pecb_terms(params, beliefs.xi_or_psi, beliefs.gamma_x)
    else:
        good, bad = _npe_sf_terms(params, beliefs.xi_or_psi, beliefs.gamma_x, beliefs.gamma_y)
    return _report(ec, params, good, bad, CLOSED_FORM)


def game_tree_welfare(eq_class, params: ModelParams) -> WelfareReport:
    """Welfare of the class's strategy profile from the exact evaluator (no certification check)."""
    from .simulator import build_profile, exact_expected_utilities

    ec = EC(eq_class)
    res = exact_expected_utilities(build_profile(ec, params, strict=False), params)
    return WelfareReport(ec, res.voter, res.voter_given_good, res.voter_given_bad, GAME_TREE)


def voter_welfare(eq_class, params: ModelParams) -> WelfareReport:
    """Welfare for any class: benchmarks at lambda in {0, 1}, closed forms where
    printed, the exact game tree otherwise."""
    ec = EC(eq_class)
    if params.lam == 0.0:
        b = benchmark(params)
        return WelfareReport(ec, b.eu_toothless, b.eu_toothless_good, b.eu_toothless_bad, BENCHMARK)
    if params.lam == 1.0:
        b = benchmark(params)
        return WelfareReport(ec, b.eu_dictatorial, b.eu_dictatorial, b.eu_dictatorial, BENCHMARK)
    if ec in (EC.PECB, EC.NPE_SF):
        return welfare_closed_form(ec, params)
    return game_tree_welfare(ec, params)


# -- benchmarks -------------------------------------------------------------------

@dataclass(frozen=True)
class BenchmarkReport:
    eu_toothless: float
    eu_dictatorial: float
    delta_eu: float
    beta_tilde: float
    rho_pi: float
    rho_gamma: float
    rho_tilde_beta: float
    gamma_toothless: float
    eu_toothless_good: float
    eu_toothless_bad: float

    def to_dict(self) -> dict:
        return asdict(self)


def toothless_gamma(params: ModelParams) -> float:
    """Bad politician's x-rate with no bureaucratic influence, F(delta(mu + E))."""
    p = params
    return p.rent_p1.cdf(p.delta * (p.mu_p2 + p.office_rent))


def _toothless(params: ModelParams, gamma: float) -> tuple[float, float]:
    p = params
    rho, pi, d = p.rho, p.pi, p.delta
    v = p.payoffs.v
    w_good = rho * v("x", "x") + (1 - rho) * v("y", "y")
    w_bad = rho * v("y", "x") + (1 - rho) * v("y", "y")
    w_pi = pi * w_good + (1 - pi) * w_bad
    good = rho * (v("x", "x") + d * w_good) + (1 - rho) * (v("x", "y") + d * w_good)
    bad = (rho * (gamma * (v("x", "x") + d * w_bad) + (1 - gamma) * (v("y", "x") + d * w_pi))
           + (1 - rho) * (gamma * (v("x", "y") + d * w_bad)
                          + (1 - gamma) * (v("y", "y") + d * w_pi)))
    return good, bad


def dictatorial_welfare(params: ModelParams, beta: Optional[float] = None) -> float:
    p = params
    b = p.beta if beta is None else beta
    v = p.payoffs.v
    return (1 + p.delta) * (p.rho * (b * v("x", "x") + (1 - b) * v("y", "x"))
                            + (1 - p.rho) * v("y", "y"))


def delta_eu(params: ModelParams, beta: Optional[float] = None) -> float:
    """Toothless minus dictatorial welfare; ``beta`` overrides the bureaucrat prior."""
    if beta is not None:
        params = params.replace(beta=beta)
    good, bad = _toothless(params, toothless_gamma(params))
    return params.pi * good + (1 - params.pi) * bad - dictatorial_welfare(params)


def delta_eu_explicit(params: ModelParams, beta: Optional[float] = None) -> float:
    """The expanded form of the benchmark difference, kept as a cross-check."""
    p = params
    b = p.beta if beta is None else beta
    g = toothless_gamma(p)
    rho, pi, d = p.rho, p.pi, p.delta
    cx, cy = p.payoffs.cost_x, p.payoffs.cost_y
    return (rho * (1 - g) * pi * ((1 - pi * d) * cx + cy)
            - rho * (((g - 2) * d * pi + (1 + d) * b - g) * cx - g * cy)
            - ((1 - g) * pi + g) * cy)


def beta_tilde(params: ModelParams) -> float:
    p = params
    g = toothless_gamma(p)
    rho, pi, d = p.rho, p.pi, p.delta
    cx, cy = p.payoffs.cost_x, p.payoffs.cost_y
    mix = (1 - g) * pi + g
    return ((1 - d * pi) * mix + 2 * d * pi) / (1 + d) - (1 - rho) * mix * cy / (
        (1 + d) * rho * cx)


def benchmark(params: ModelParams) -> BenchmarkReport:
    p = params
    g = toothless_gamma(p)
    rho, pi, d = p.rho, p.pi, p.delta
    cx, cy = p.payoffs.cost_x, p.payoffs.cost_y
    good, bad = _toothless(p, g)
    eu0 = pi * good + (1 - pi) * bad
    eu1 = dictatorial_welfare(p)
    mix = (1 - g) * pi + g
    bracket = 1 - g + d * (2 - g - 2 * pi * (1 - g))
    return BenchmarkReport(
        eu_toothless=eu0,
        eu_dictatorial=eu1,
        delta_eu=eu0 - eu1,
        beta_tilde=beta_tilde(p),
        rho_pi=(1 - g) * cy / (bracket * cx + (1 - g) * cy),
        rho_gamma=cy / (cy + (1 - d * pi) * cx),
        rho_tilde_beta=mix * cy / (((1 - d * pi) * mix + 2 * d * pi) * cx + mix * cy),
        gamma_toothless=g,
        eu_toothless_good=good,
        eu_toothless_bad=bad,
    )


# -- the jump at ell -------------------------------------------------------------

def uniform_beliefs_unclamped(params: ModelParams) -> tuple[float, float, float]:
    """(xi, gamma_x, gamma_y of NPE-SF) with the uniform CDFs extended linearly.

    Lets the welfare expressions be evaluated formally at any lambda, including
    an ell outside (0, 1).
    """
    p = params
    xi = p.delta * p.pi * p.rho * (1 - p.lam) * p.mu_b2 / p.rent_b1.upper
    base = p.delta * (p.mu_p2 + p.office_rent)
    corr = p.delta * p.beta * p.rho * p.lam * (1 - p.lam) * p.mu_p2
    gamma_x = (base - corr / (1 - p.lam * (1 + xi * (1 - p.beta)))) / p.rent_p1.upper
    gamma_y = (base - corr / (1 - p.lam * (1 - xi * (1 - p.beta)))) / p.rent_p1.upper
    return xi, gamma_x, gamma_y


def welfare_jump_at_ell(params: ModelParams) -> float:
    """PECB minus NPE-SF welfare at lambda = ell (negative means switching helps the voter).

    When ell is outside (0, 1) the expressions are evaluated formally there.
    """
    E = params.office_rent
    if not (0.0 < E < 1.0):
        raise ValidationError("office rent range", f"E={E!r} not in (0,1)")
    at = params.replace(lam=ell(params))
    xi, gx, gy = uniform_beliefs_unclamped(at)
    if at.interior and all(0.0 <= q <= 1.0 for q in (xi, gx, gy)):
        pecb = welfare_closed_form(EC.PECB, at)
        npe = welfare_closed_form(EC.NPE_SF, at)
    else:
        pecb = _report(EC.PECB, at, *_pecb_terms(at, xi, gx), CLOSED_FORM)
        npe = _report(EC.NPE_SF, at, *_npe_sf_terms(at, xi, gx, gy), CLOSED_FORM)
    return pecb.eu_total - npe.eu_total


def welfare_gap_formula(params: ModelParams, lam: Optional[float] = None) -> tuple[float, float, float]:
    """Factored PECB-minus-NPE-SF gap (total, given good, given bad) for unit payoffs,
    delta = 1 and U[0, 2] rents."""
    p = params
    lam = p.lam if lam is None else lam
    rho, pi, beta, E = p.rho, p.pi, p.beta, p.office_rent
    good = (1 - lam) * (1 - rho) * ((1 - lam) * (1 - pi) * rho - 1)
    bad = 0.5 * (1 - beta) * (1 - lam) * (1 - rho) * lam * pi * rho * (1 + pi * rho * (1 - lam)) * E
    return pi * good + (1 - pi) * bad, good, bad


# -- selection ------------------------------------------------------------------

@dataclass(frozen=True)
class SelectionReport:
    eta: float
    zeta: float
    e_zeta: float
    zeta_compact: float
    zeta_polynomial: float

    def to_dict(self) -> dict:
        return asdict(self)


def eta(params: ModelParams, xi: float, gamma: float) -> float:
    """Probability that a bad politician is re-elected in PECB."""
    p = params
    rho, pi, beta, lam = p.rho, p.pi, p.beta, p.lam
    return (1 - pi) * (
        gamma * (rho * (beta + (1 - beta) * (1 - lam)) + (1 - rho) * (1 - lam))
        + (1 - gamma) * (rho * (beta * lam + (1 - beta) * xi * lam)
                         + (1 - rho) * (1 - beta) * xi * lam))


def zeta(params: ModelParams, xi: float, gamma: float) -> float:
    """Probability of a good politician in office in period 2 (explicit sum)."""
    p = params
    rho, pi, beta, lam = p.rho, p.pi, p.beta, p.lam
    replaced_or_kept = lam * pi + (1 - lam)
    from_good = pi * (rho * (beta + (1 - beta) * replaced_or_kept) + (1 - rho) * replaced_or_kept)
    after_bad_b = xi * (1 - lam) * pi + (1 - xi) * pi
    from_bad = (1 - pi) * (
        gamma * (rho * (1 - beta) * lam * pi + (1 - rho) * lam * pi)
        + (1 - gamma) * (rho * (beta * (1 - lam) * pi + (1 - beta) * after_bad_b)
                         + (1 - rho) * (beta * pi + (1 - beta) * after_bad_b)))
    return from_good + from_bad


def zeta_compact(params: ModelParams, xi: float, gamma: float) -> float:
    """The simplified expression printed alongside the explicit sum (diagnostic only)."""
    p = params
    pi, beta, lam = p.pi, p.beta, p.lam
    return pi * (2 - lam - gamma * (1 - lam)
                 - pi * (1 - gamma) * ((1 - lam) + (1 - pi) * (1 - beta) * lam * xi))


def zeta_polynomial(params: ModelParams) -> float:
    """The printed polynomial in lambda for delta = 1 and U[0, 2] rents (diagnostic only)."""
    p = params
    pi, beta, rho, lam, E = p.pi, p.beta, p.rho, p.lam, p.office_rent
    return pi / 4 * ((1 - lam) * lam * (1 - pi) * rho * ((1 - beta) * (E - 1) * pi - 2 * beta)
                     - 2 * (E * (1 - lam) * (1 - pi) + pi * (1 - lam) + lam - 3))


def e_zeta(params: ModelParams) -> float:
    """Office-rent level above which zeta increases in lambda."""
    p = params
    rho, pi, beta, lam = p.rho, p.pi, p.beta, p.lam
    return ((2 + (1 - 2 * lam) * rho * ((1 - beta) * pi - 2 * beta))
            / (2 + (1 - beta) * (1 - 2 * lam) * pi * rho))


def selection(params: ModelParams) -> SelectionReport:
    """eta and zeta in PECB; at lambda = 0 the toothless gamma is used."""
    p = params
    if p.lam == 0.0:
        xi_v, gamma = bl.bad_bureaucrat_cutoff(p), toothless_gamma(p)
        xi_v = p.rent_b1.cdf(xi_v)
    else:
        # posteriors are not needed, and may be undefined when gamma pools at 1
        xi_v, gamma, _ = bl.mixing_probabilities(EC.PECB, p)
    return SelectionReport(
        eta=eta(p, xi_v, gamma),
        zeta=zeta(p, xi_v, gamma),
        e_zeta=e_zeta(p),
        zeta_compact=zeta_compact(p, xi_v, gamma),
        zeta_polynomial=zeta_polynomial(p),
    )
