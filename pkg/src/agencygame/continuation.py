"""
Period-2 play and the continuation values it induces.

In the last period a good policymaker proposes the state-matching policy and
a bad one proposes y. All values are undiscounted; callers multiply by delta.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .model_core import BAD, GOOD, X, Y, ModelParams


def period2_action(actor_type: str, state: str) -> str:
    if actor_type == GOOD:
        return state
    if actor_type == BAD:
        return Y
    raise ValueError(f"unknown type {actor_type!r}")


@dataclass(frozen=True)
class ContinuationTable:
    """Policymakers' period-2 values.

    ``v_gb_*``/``v_bb_*`` are the good/bad bureaucrat's values under a
    good/bad/unknown politician; ``v_gp_*``/``u_gp_*`` are the good
    politician's values when re-elected / replaced, by bureaucrat type.
    """

    v_gb_gp: float
    v_gb_bp: float
    v_gb_pi: float
    v_bb_gp: float
    v_bb_bp: float
    v_bb_pi: float
    v_gp_gb: float
    v_gp_bb: float
    u_gp_gb: float
    u_gp_bb: float
    v_bp_gb: float
    v_bp_bb: float
    u_bp: float = 0.0

    def to_dict(self) -> dict[str, float]:
        return asdict(self)


@dataclass(frozen=True)
class VoterContinuationTable:
    w_gb_gp: float
    w_gb_bp: float
    w_gb_pi: float
    w_bb_gp: float
    w_bb_bp: float
    w_bb_pi: float

    def to_dict(self) -> dict[str, float]:
        return asdict(self)

    def w(self, bureaucrat: str, politician: str) -> float:
        """Lookup by type names; ``politician`` may be ``"pi"`` for a fresh draw."""
        b = "gb" if bureaucrat == GOOD else "bb"
        p = {GOOD: "gp", BAD: "bp", "pi": "pi"}[politician]
        return getattr(self, f"w_{b}_{p}")


def policymaker_continuations(params: ModelParams) -> ContinuationTable:
    rho, pi, lam = params.rho, params.pi, params.lam
    v = params.payoffs
    E = params.office_rent
    mu_b, mu_p = params.mu_b2, params.mu_p2

    # both policymakers good: policy always matches the state
    matched = rho * v.v_xx + (1 - rho) * v.v_yy
    v_gb_gp = matched
    v_gb_bp = rho * (lam * v.v_xx + (1 - lam) * v.v_yx) + (1 - rho) * v.v_yy
    v_gb_pi = pi * v_gb_gp + (1 - pi) * v_gb_bp

    # bad bureaucrat collects its rent whenever y is implemented
    v_bb_gp = mu_b * (1 - rho * (1 - lam))
    v_bb_bp = mu_b
    v_bb_pi = mu_b * (1 - pi * rho * (1 - lam))

    v_gp_gb = matched + E
    v_gp_bb = rho * (lam * v.v_yx + (1 - lam) * v.v_xx) + (1 - rho) * v.v_yy + E
    u_gp_gb = (rho * (pi + (1 - pi) * lam) * v.v_xx + (1 - rho) * v.v_yy
               + (1 - pi) * (1 - lam) * rho * v.v_yx)
    u_gp_bb = (pi * rho * (1 - lam) * v.v_xx + (1 - rho) * v.v_yy
               + rho * ((1 - pi) + pi * lam) * v.v_yx)

    v_bp_gb = (1 - rho * lam) * mu_p + E
    v_bp_bb = mu_p + E

    return ContinuationTable(
        v_gb_gp=v_gb_gp, v_gb_bp=v_gb_bp, v_gb_pi=v_gb_pi,
        v_bb_gp=v_bb_gp, v_bb_bp=v_bb_bp, v_bb_pi=v_bb_pi,
        v_gp_gb=v_gp_gb, v_gp_bb=v_gp_bb, u_gp_gb=u_gp_gb, u_gp_bb=u_gp_bb,
        v_bp_gb=v_bp_gb, v_bp_bb=v_bp_bb, u_bp=0.0,
    )


def voter_continuations(params: ModelParams) -> VoterContinuationTable:
    rho, pi, lam = params.rho, params.pi, params.lam
    v = params.payoffs
    w_gb_gp = rho * v.v_xx + (1 - rho) * v.v_yy
    w_gb_bp = rho * (lam * v.v_xx + (1 - lam) * v.v_yx) + (1 - rho) * v.v_yy
    w_bb_gp = rho * (lam * v.v_yx + (1 - lam) * v.v_xx) + (1 - rho) * v.v_yy
    w_bb_bp = rho * v.v_yx + (1 - rho) * v.v_yy
    return VoterContinuationTable(
        w_gb_gp=w_gb_gp, w_gb_bp=w_gb_bp, w_gb_pi=pi * w_gb_gp + (1 - pi) * w_gb_bp,
        w_bb_gp=w_bb_gp, w_bb_bp=w_bb_bp, w_bb_pi=pi * w_bb_gp + (1 - pi) * w_bb_bp,
    )


__all__ = ["period2_action", "ContinuationTable", "VoterContinuationTable",
           "policymaker_continuations", "voter_continuations", "X", "Y"]
