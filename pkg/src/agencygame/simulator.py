"""
Executable strategies, an exact game-tree evaluator, a Monte Carlo runner and a
best-response audit.

The evaluator never touches the closed forms in ``continuation``, ``beliefs``
or ``welfare``: period-2 play is re-derived here by enumerating states, types
and the disagreement lottery, and rent terms are integrated branch by branch
(branch weight F(tau) and rent mass E[r; branch]). That makes it usable as an
oracle for everything else in the package.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from . import beliefs as bl
from .certifier import EquilibriumCertificate, certify
from .model_core import (
    BAD, GOOD, POLICIES, TYPES, X, Y,
    EquilibriumClass, ModelParams, RentSpec,
)

EC = EquilibriumClass

ALWAYS_X = "always_x"
ALWAYS_Y = "always_y"
THRESHOLD = "threshold"
INVERSE = "inverse"


# -- action rules --------------------------------------------------------------

@dataclass(frozen=True)
class ActionRule:
    """Maps a private rent draw to a proposal.

    threshold(tau): x iff r <= tau; inverse(tau): x iff r >= tau.
    """

    kind: str
    tau: float = math.nan

    def __post_init__(self):
        if self.kind not in (ALWAYS_X, ALWAYS_Y, THRESHOLD, INVERSE):
            raise ValueError(f"unknown rule kind {self.kind!r}")

    @classmethod
    def constant(cls, policy: str) -> "ActionRule":
        return cls(ALWAYS_X if policy == X else ALWAYS_Y)

    @classmethod
    def from_cutoff(cls, kind: str, cutoff: float, spec: RentSpec) -> "ActionRule":
        """Normalize a best-reply rule so that tau lies inside the rent support."""
        if kind in (ALWAYS_X, ALWAYS_Y):
            return cls(kind)
        if cutoff >= spec.upper:
            return cls(ALWAYS_X if kind == THRESHOLD else ALWAYS_Y)
        if cutoff <= 0:
            return cls(ALWAYS_Y if kind == THRESHOLD else ALWAYS_X)
        return cls(kind, float(cutoff))

    def act(self, r):
        """Vectorized proposal: boolean array, True means x."""
        r = np.asarray(r, dtype=float)
        if self.kind == ALWAYS_X:
            return np.ones(r.shape, dtype=bool)
        if self.kind == ALWAYS_Y:
            return np.zeros(r.shape, dtype=bool)
        if self.kind == THRESHOLD:
            return r <= self.tau
        return r >= self.tau

    def prob_x(self, spec: RentSpec) -> float:
        return sum(prob for action, prob, _ in self.branches(spec) if action == X)

    def branches(self, spec: RentSpec) -> list[tuple[str, float, float]]:
        """[(action, probability, E[r; action region])] with zero-probability branches dropped."""
        if self.kind == ALWAYS_X:
            return [(X, 1.0, spec.mean)]
        if self.kind == ALWAYS_Y:
            return [(Y, 1.0, spec.mean)]
        below, above = spec.cdf(self.tau), 1.0 - spec.cdf(self.tau)
        m_below = spec.partial_mean(0.0, self.tau)
        m_above = spec.partial_mean(self.tau, spec.upper)
        if self.kind == THRESHOLD:
            out = [(X, below, m_below), (Y, above, m_above)]
        else:
            out = [(X, above, m_above), (Y, below, m_below)]
        return [b for b in out if b[1] > 0]

    def to_dict(self) -> dict:
        return {"kind": self.kind, "tau": None if math.isnan(self.tau) else self.tau}


@dataclass(frozen=True)
class StrategyProfile:
    """Period-1 strategies; period-2 play is fixed (good types match, bad types pick y).

    ``politician[(type, state)]`` and ``bureaucrat[(type, state, proposal)]``
    are ``ActionRule`` objects over the mover's own period-1 rent.
    """

    politician: dict
    bureaucrat: dict
    reelect_on: frozenset = frozenset({X})
    eq_class: Optional[EquilibriumClass] = None
    certificate: Optional[EquilibriumCertificate] = field(default=None, compare=False)

    def reelects(self, policy: str) -> bool:
        return policy in self.reelect_on

    def to_dict(self) -> dict:
        return {
            "class": None if self.eq_class is None else EC(self.eq_class).value,
            "politician": {f"{t},{s}": r.to_dict() for (t, s), r in self.politician.items()},
            "bureaucrat": {f"{t},{s},{q}": r.to_dict()
                           for (t, s, q), r in self.bureaucrat.items()},
            "reelect_on": sorted(self.reelect_on),
        }


class UncertifiedProfileError(ValueError):
    def __init__(self, certificate: EquilibriumCertificate):
        self.certificate = certificate
        super().__init__(f"{EC(certificate.eq_class).value} not certified; "
                         f"failing: {', '.join(certificate.failed)}")


def _good_bureaucrat_action(ec: EC, state: str, proposal: str) -> str:
    if state == X:
        return X
    if proposal == X:
        return X if ec is EC.PEPB else Y
    # state y after a y proposal: subversive bureaucracies contest it
    return X if ec in (EC.NPE_FSV, EC.NPE_ASV) else Y


def _bad_bureaucrat_contests(ec: EC, state: str, proposal: str) -> bool:
    """Whether a bad bureaucrat is at its mixing node (it may push x to save a bad politician)."""
    if ec.pandering:
        return proposal == Y
    return proposal != state


def build_profile(eq_class, params: ModelParams, strict: bool = True) -> StrategyProfile:
    """Strategy profile of ``eq_class`` at ``params``.

    With ``strict`` the class must be certified; otherwise the profile is
    built from the class's conjectured play regardless (used to construct
    counterexamples).
    """
    ec = EC(eq_class)
    cert = certify(ec, params)
    if strict and not cert.verdict:
        raise UncertifiedProfileError(cert)
    mix = bl.xi(params) if ec.pandering else bl.psi(params)
    rules = bl.bad_politician_rules(ec, params, mix)
    politician = {}
    for s in POLICIES:
        politician[(GOOD, s)] = ActionRule.constant(bl.good_politician_proposal(ec, s))
        politician[(BAD, s)] = ActionRule.from_cutoff(*rules[s], params.rent_p1)
    cutoff = bl.bad_bureaucrat_cutoff(params)
    contest = ActionRule.from_cutoff(THRESHOLD, cutoff, params.rent_b1)
    bureaucrat = {}
    for s in POLICIES:
        for q in POLICIES:
            bureaucrat[(GOOD, s, q)] = ActionRule.constant(_good_bureaucrat_action(ec, s, q))
            bureaucrat[(BAD, s, q)] = (contest if _bad_bureaucrat_contests(ec, s, q)
                                       else ActionRule(ALWAYS_Y))
    return StrategyProfile(politician, bureaucrat, frozenset({X}), ec, cert)


# -- exact evaluation ------------------------------------------------------------

def _prob_x_implemented(lam: float, proposal: str, counter: str) -> float:
    if proposal == counter:
        return 1.0 if proposal == X else 0.0
    return lam if counter == X else 1 - lam


def _period2(params: ModelParams, bureaucrat: str, politician: str) -> tuple[float, float]:
    """(voter payoff, P(policy y)) in period 2 by direct enumeration.

    ``politician`` is a type or "pi" for a fresh challenger.
    """
    if politician == "pi":
        g = _period2(params, bureaucrat, GOOD)
        b = _period2(params, bureaucrat, BAD)
        return (params.pi * g[0] + (1 - params.pi) * b[0],
                params.pi * g[1] + (1 - params.pi) * b[1])
    value = prob_y = 0.0
    for s, ps in ((X, params.rho), (Y, 1 - params.rho)):
        qp = s if politician == GOOD else Y
        qb = s if bureaucrat == GOOD else Y
        px = _prob_x_implemented(params.lam, qp, qb)
        value += ps * (px * params.payoffs.v(X, s) + (1 - px) * params.payoffs.v(Y, s))
        prob_y += ps * (1 - px)
    return value, prob_y


def _successor(tp: str, reelected: bool) -> str:
    return tp if reelected else "pi"


def _nonrent_payoffs(params: ModelParams, profile: StrategyProfile, s: str,
                     tp: str, tb: str, p1: str) -> dict:
    """Period-1 policy and office terms plus discounted period-2 value, rents excluded."""
    d, E = params.delta, params.office_rent
    re = profile.reelects(p1)
    w2, y2 = _period2(params, tb, _successor(tp, re))
    voter = params.payoffs.v(p1, s) + d * w2
    if tp == GOOD:
        pol = voter + E + (d * E if re else 0.0)
    else:
        pol = E + (d * (params.mu_p2 * _period2(params, tb, BAD)[1] + E) if re else 0.0)
    if tb == GOOD:
        bur = voter
    else:
        bur = d * params.mu_b2 * y2
    return {"voter": voter, "politician": pol, "bureaucrat": bur}


def _cell_prob(params: ModelParams, s: str, tp: str, tb: str) -> float:
    return ((params.rho if s == X else 1 - params.rho)
            * (params.pi if tp == GOOD else 1 - params.pi)
            * (params.beta if tb == GOOD else 1 - params.beta))


def _cells(params: ModelParams):
    for s in POLICIES:
        for tp in TYPES:
            for tb in TYPES:
                yield s, tp, tb, _cell_prob(params, s, tp, tb)


@dataclass(frozen=True)
class ExactResult:
    voter: float
    voter_given_good: float
    voter_given_bad: float
    politician: dict
    bureaucrat: dict
    prob_x: float
    prob_x_given_good: float
    prob_x_given_bad: float
    posterior_x: float
    posterior_y: float

    def to_dict(self) -> dict:
        return asdict(self)


def exact_expected_utilities(profile: StrategyProfile, params: ModelParams) -> ExactResult:
    """Deterministic expectation over the full two-period tree."""
    lam = params.lam
    voter_by_type = {GOOD: 0.0, BAD: 0.0}
    px_by_type = {GOOD: 0.0, BAD: 0.0}
    pol = {GOOD: 0.0, BAD: 0.0}
    bur = {GOOD: 0.0, BAD: 0.0}
    for s, tp, tb, w in _cells(params):
        for qp, prob_p, mass_p in profile.politician[(tp, s)].branches(params.rent_p1):
            for qb, prob_b, mass_b in profile.bureaucrat[(tb, s, qp)].branches(params.rent_b1):
                px = _prob_x_implemented(lam, qp, qb)
                for p1, pr in ((X, px), (Y, 1 - px)):
                    if pr == 0:
                        continue
                    pay = _nonrent_payoffs(params, profile, s, tp, tb, p1)
                    weight = w * prob_p * prob_b * pr
                    voter_by_type[tp] += weight * pay["voter"]
                    pol[tp] += weight * pay["politician"]
                    bur[tb] += weight * pay["bureaucrat"]
                    if p1 == X:
                        px_by_type[tp] += weight
                    else:
                        # period-1 rents accrue to bad movers when y is implemented
                        if tp == BAD:
                            pol[BAD] += w * mass_p * prob_b * pr
                        if tb == BAD:
                            bur[BAD] += w * prob_p * mass_b * pr
    pi, beta = params.pi, params.beta
    prob_x = px_by_type[GOOD] + px_by_type[BAD]
    post_x = px_by_type[GOOD] / prob_x if prob_x > 0 else math.nan
    prob_y = 1 - prob_x
    post_y = (pi - px_by_type[GOOD]) / prob_y if prob_y > 0 else math.nan
    return ExactResult(
        voter=voter_by_type[GOOD] + voter_by_type[BAD],
        voter_given_good=voter_by_type[GOOD] / pi,
        voter_given_bad=voter_by_type[BAD] / (1 - pi),
        politician={GOOD: pol[GOOD] / pi, BAD: pol[BAD] / (1 - pi)},
        bureaucrat={GOOD: bur[GOOD] / beta, BAD: bur[BAD] / (1 - beta)},
        prob_x=prob_x,
        prob_x_given_good=px_by_type[GOOD] / pi,
        prob_x_given_bad=px_by_type[BAD] / (1 - pi),
        posterior_x=post_x,
        posterior_y=post_y,
    )


# -- best-response audit ----------------------------------------------------------

@dataclass(frozen=True)
class Deviation:
    player: str
    info_set: tuple
    prescribed: str
    prescribed_payoff: float
    best_alternative_payoff: float
    gain: float

    def to_dict(self) -> dict:
        d = asdict(self)
        d["info_set"] = list(self.info_set)
        return d


@dataclass(frozen=True)
class DeviationReport:
    deviations: tuple[Deviation, ...]
    max_gain: float
    tolerance: float
    voter_posterior_x: float
    voter_uninformative: bool

    @property
    def passes(self) -> bool:
        return self.max_gain <= self.tolerance and not self.voter_uninformative

    @property
    def worst(self) -> Optional[Deviation]:
        if not self.deviations:
            return None
        return max(self.deviations, key=lambda d: d.gain)

    def failing(self, tol: Optional[float] = None) -> list[Deviation]:
        tol = self.tolerance if tol is None else tol
        return [d for d in self.deviations if d.gain > tol]

    def failing_info_sets(self) -> set[tuple]:
        """Distinct (player, type, state[, proposal]) sets with a profitable deviation."""
        out = {(d.player, *d.info_set[:-1]) if d.player != "voter" else ("voter", *d.info_set)
               for d in self.failing()}
        if self.voter_uninformative:
            out.add(("voter", "uninformative"))
        return out

    def to_dict(self) -> dict:
        return {"passes": self.passes, "max_gain": self.max_gain, "tolerance": self.tolerance,
                "voter_posterior_x": self.voter_posterior_x,
                "voter_uninformative": self.voter_uninformative,
                "deviations": [d.to_dict() for d in self.failing()]}


def _politician_value(params, profile, tp, s, action) -> tuple[float, float]:
    """Payoff of proposing ``action`` as (coefficient on own rent, constant)."""
    coef = const = 0.0
    for tb in TYPES:
        wb = params.beta if tb == GOOD else 1 - params.beta
        for qb, prob_b, _ in profile.bureaucrat[(tb, s, action)].branches(params.rent_b1):
            px = _prob_x_implemented(params.lam, action, qb)
            for p1, pr in ((X, px), (Y, 1 - px)):
                if pr == 0:
                    continue
                pay = _nonrent_payoffs(params, profile, s, tp, tb, p1)
                const += wb * prob_b * pr * pay["politician"]
                if p1 == Y and tp == BAD:
                    coef += wb * prob_b * pr
    return coef, const


def _politician_posterior(params, profile, s, proposal) -> float:
    """P(politician good | state, proposal); an unreached proposal implies a bad politician."""
    like_good = profile.politician[(GOOD, s)].prob_x(params.rent_p1)
    like_bad = profile.politician[(BAD, s)].prob_x(params.rent_p1)
    if proposal == Y:
        like_good, like_bad = 1 - like_good, 1 - like_bad
    den = params.pi * like_good + (1 - params.pi) * like_bad
    return 0.0 if den <= 0 else params.pi * like_good / den


def _bureaucrat_value(params, profile, tb, s, proposal, action) -> tuple[float, float]:
    post = _politician_posterior(params, profile, s, proposal)
    px = _prob_x_implemented(params.lam, proposal, action)
    coef = (1 - px) if tb == BAD else 0.0
    const = 0.0
    for tp, wp in ((GOOD, post), (BAD, 1 - post)):
        if wp == 0:
            continue
        for p1, pr in ((X, px), (Y, 1 - px)):
            if pr == 0:
                continue
            const += wp * pr * _nonrent_payoffs(params, profile, s, tp, tb, p1)["bureaucrat"]
    return coef, const


def _audit_rents(spec: RentSpec, grid: int, has_rent: bool) -> np.ndarray:
    if not has_rent:
        return np.array([0.0])
    return spec.quantile(np.linspace(0.0, 1.0, grid))


def _audit_node(player, info, rule, values, rents, deviations):
    for k, r in enumerate(rents):
        payoff = {a: c * r + k0 for a, (c, k0) in values.items()}
        prescribed = X if bool(rule.act(r)) else Y
        other = Y if prescribed == X else X
        gain = payoff[other] - payoff[prescribed]
        deviations.append(Deviation(player, (*info, float(r)), prescribed,
                                    payoff[prescribed], payoff[other], float(gain)))


def _voter_gains(params, profile) -> list[Deviation]:
    """Exact payoff gain from flipping the re-election decision after each policy."""
    lam = params.lam
    joint = {(p1, tp, tb): 0.0 for p1 in POLICIES for tp in TYPES for tb in TYPES}
    for s, tp, tb, w in _cells(params):
        for qp, prob_p, _ in profile.politician[(tp, s)].branches(params.rent_p1):
            for qb, prob_b, _ in profile.bureaucrat[(tb, s, qp)].branches(params.rent_b1):
                px = _prob_x_implemented(lam, qp, qb)
                joint[(X, tp, tb)] += w * prob_p * prob_b * px
                joint[(Y, tp, tb)] += w * prob_p * prob_b * (1 - px)
    out = []
    for p1 in POLICIES:
        keep = replace = 0.0
        for tp in TYPES:
            for tb in TYPES:
                m = joint[(p1, tp, tb)]
                keep += m * _period2(params, tb, tp)[0]
                replace += m * _period2(params, tb, "pi")[0]
        mass = sum(joint[(p1, tp, tb)] for tp in TYPES for tb in TYPES)
        if mass <= 0:
            continue
        keep, replace = params.delta * keep / mass, params.delta * replace / mass
        if profile.reelects(p1):
            out.append(Deviation("voter", (p1,), "reelect", keep, replace, replace - keep))
        else:
            out.append(Deviation("voter", (p1,), "replace", replace, keep, keep - replace))
    return out


def best_response_audit(profile: StrategyProfile, params: ModelParams,
                        rent_grid: int = 101, tolerance: float = 1e-9,
                        posterior_tol: float = 1e-12) -> DeviationReport:
    """Check every information set for a profitable one-shot deviation.

    Own-rent payoffs are affine on each branch, so evaluating both actions on a
    quantile grid of the rent finds any threshold misplaced by more than a grid cell.
    The voter rule needs Pi_V(x) > pi; a posterior within ``posterior_tol`` of
    the prior counts as a tie, and a tie fails (pooling gives pi only up to rounding).
    """
    deviations: list[Deviation] = []
    for tp in TYPES:
        rents = _audit_rents(params.rent_p1, rent_grid, tp == BAD)
        for s in POLICIES:
            values = {a: _politician_value(params, profile, tp, s, a) for a in POLICIES}
            _audit_node("politician", (tp, s), profile.politician[(tp, s)], values,
                        rents, deviations)
    for tb in TYPES:
        rents = _audit_rents(params.rent_b1, rent_grid, tb == BAD)
        for s in POLICIES:
            for q in POLICIES:
                values = {a: _bureaucrat_value(params, profile, tb, s, q, a) for a in POLICIES}
                _audit_node("bureaucrat", (tb, s, q), profile.bureaucrat[(tb, s, q)], values,
                            rents, deviations)
    deviations.extend(_voter_gains(params, profile))
    exact = exact_expected_utilities(profile, params)
    post = exact.posterior_x
    uninformative = not (post - params.pi > posterior_tol) if X in profile.reelect_on else False
    max_gain = max(d.gain for d in deviations)
    return DeviationReport(tuple(deviations), float(max_gain), tolerance, post, bool(uninformative))


# -- Monte Carlo -----------------------------------------------------------------

CHUNK = 1 << 16

_METRICS = ("voter", "politician_good", "politician_bad", "bureaucrat_good",
            "bureaucrat_bad", "implement_x", "reelect_good", "reelect_bad", "good_given_x",
            "good_given_y")


def _apply_rules(rules: dict, key_arrays: dict, rents: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros(n, dtype=bool)
    for key, mask in key_arrays.items():
        if mask.any():
            out[mask] = rules[key].act(rents[mask])
    return out


def _play_chunk(profile: StrategyProfile, params: ModelParams, seed: int, index: int,
                n: int) -> dict:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))
    p = params
    u = rng.random((10, n))
    s_x = u[0] < p.rho
    good_p = u[1] < p.pi
    good_b = u[2] < p.beta
    r_p1 = u[3] * p.rent_p1.upper
    r_b1 = u[4] * p.rent_b1.upper
    lottery1 = u[5] < p.lam
    s2_x = u[6] < p.rho
    challenger_good = u[7] < p.pi
    lottery2 = u[8] < p.lam
    r2 = u[9]

    state = np.where(s_x, X, Y)
    ptype = np.where(good_p, GOOD, BAD)
    btype = np.where(good_b, GOOD, BAD)
    pol_keys = {(t, s): (ptype == t) & (state == s) for t in TYPES for s in POLICIES}
    qp_x = _apply_rules(profile.politician, pol_keys, r_p1, n)
    qp = np.where(qp_x, X, Y)
    bur_keys = {(t, s, q): (btype == t) & (state == s) & (qp == q)
                for t in TYPES for s in POLICIES for q in POLICIES}
    qb_x = _apply_rules(profile.bureaucrat, bur_keys, r_b1, n)
    p1_x = np.where(qp_x == qb_x, qp_x, np.where(lottery1, qb_x, qp_x))
    reelected = p1_x if profile.reelect_on == frozenset({X}) else np.isin(
        np.where(p1_x, X, Y), list(profile.reelect_on))

    good_p2 = np.where(reelected, good_p, challenger_good)
    qp2_x = good_p2 & s2_x
    qb2_x = good_b & s2_x
    p2_x = np.where(qp2_x == qb2_x, qp2_x, np.where(lottery2, qb2_x, qp2_x))

    pay = p.payoffs
    v1 = np.where(p1_x, np.where(s_x, pay.v_xx, pay.v_xy), np.where(s_x, pay.v_yx, pay.v_yy))
    v2 = np.where(p2_x, np.where(s2_x, pay.v_xx, pay.v_xy), np.where(s2_x, pay.v_yx, pay.v_yy))
    d, E = p.delta, p.office_rent
    voter = v1 + d * v2
    pol_good = voter + E + d * E * reelected
    rp2 = r2 * p.rent_p2.upper
    rb2 = r2 * p.rent_b2.upper
    pol_bad = r_p1 * ~p1_x + E + d * reelected * (rp2 * ~p2_x + E)
    bur_bad = r_b1 * ~p1_x + d * rb2 * ~p2_x

    sums = {}

    def acc(name, values, mask=None):
        vals = values if mask is None else values[mask]
        sums[name] = (vals.size, float(vals.sum()), float(np.square(vals).sum()))

    acc("voter", voter)
    acc("politician_good", pol_good, good_p)
    acc("politician_bad", pol_bad, ~good_p)
    acc("bureaucrat_good", voter, good_b)
    acc("bureaucrat_bad", bur_bad, ~good_b)
    acc("implement_x", p1_x.astype(float))
    acc("reelect_good", reelected.astype(float), good_p)
    acc("reelect_bad", reelected.astype(float), ~good_p)
    acc("good_given_x", good_p.astype(float), p1_x)
    acc("good_given_y", good_p.astype(float), ~p1_x)
    return sums


@dataclass(frozen=True)
class SimulationResult:
    n: int
    seed: int
    means: dict
    std_errors: dict
    counts: dict
    degenerate_se: bool

    def to_dict(self) -> dict:
        return asdict(self)


def simulate(profile: StrategyProfile, params: ModelParams, n: int, seed: int = 0,
             workers: int = 1) -> SimulationResult:
    """Play the game ``n`` times with counter-based streams keyed by (seed, chunk index).

    Chunks are reduced in index order, so the result does not depend on ``workers``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    sizes = [min(CHUNK, n - start) for start in range(0, n, CHUNK)]
    jobs = [(profile, params, seed, i, size) for i, size in enumerate(sizes)]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda a: _play_chunk(*a), jobs))
    else:
        parts = [_play_chunk(*a) for a in jobs]
    means, ses, counts = {}, {}, {}
    for name in _METRICS:
        cnt = sum(part[name][0] for part in parts)
        tot = sum(part[name][1] for part in parts)
        sq = sum(part[name][2] for part in parts)
        counts[name] = cnt
        if cnt == 0:
            means[name] = ses[name] = math.nan
            continue
        mean = tot / cnt
        means[name] = mean
        if cnt < 2:
            ses[name] = math.nan
        else:
            var = max(sq - cnt * mean * mean, 0.0) / (cnt - 1)
            ses[name] = math.sqrt(var / cnt)
    return SimulationResult(n, seed, means, ses, counts, degenerate_se=n < 2)


def simulate_period2(params: ModelParams, bureaucrat: str, politician: str, n: int,
                     seed: int = 0) -> dict:
    """Monte Carlo of the period-2 subgame alone: mean and standard error of
    the voter payoff and of each bad mover's rent payoff."""
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, 2])))
    p = params
    u = rng.random((4, n))
    s_x = u[0] < p.rho
    if politician == "pi":
        good_p = u[1] < p.pi
    else:
        good_p = np.full(n, politician == GOOD)
    good_b = bureaucrat == GOOD
    qp_x = good_p & s_x
    qb_x = np.full(n, good_b) & s_x
    p_x = np.where(qp_x == qb_x, qp_x, np.where(u[2] < p.lam, qb_x, qp_x))
    pay = p.payoffs
    voter = np.where(p_x, np.where(s_x, pay.v_xx, pay.v_xy), np.where(s_x, pay.v_yx, pay.v_yy))
    rent_b = u[3] * p.rent_b2.upper * ~p_x
    rent_p = u[3] * p.rent_p2.upper * ~p_x
    out = {}
    for name, vals in (("voter", voter), ("bureaucrat_rent", rent_b), ("politician_rent", rent_p)):
        out[name] = (float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(n)))
    return out
