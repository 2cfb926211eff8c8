"""
Model primitives: parameters, payoffs, rent distributions and validation.

Everything downstream consumes a validated ``ModelParams``. Probabilities
produced by closed forms are clamped through ``clamp_probability`` so every
module saturates the same way.
"""

from __future__ import annotations

import dataclasses
import enum
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

import numpy as np

X = "x"
Y = "y"
POLICIES = (X, Y)
GOOD = "good"
BAD = "bad"
TYPES = (GOOD, BAD)


class EquilibriumClass(str, enum.Enum):
    PECB = "PECB"
    PEPB = "PEPB"
    NPE_SF = "NPE_SF"
    NPE_FSV = "NPE_FSV"
    NPE_ASV = "NPE_ASV"

    @property
    def pandering(self) -> bool:
        return self in (EquilibriumClass.PECB, EquilibriumClass.PEPB)


class ValidationError(ValueError):
    """Raised when a parameter bundle breaks an invariant.

    ``invariant`` names the first violated rule, e.g. "probability range".
    """

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        self.detail = detail
        msg = invariant if not detail else f"{invariant}: {detail}"
        super().__init__(msg)


class EndpointError(ValidationError):
    """An operation that needs 0 < lambda < 1 received an endpoint."""

    def __init__(self, lam: float):
        super().__init__("interior lambda required", f"lambda={lam!r}")


class StructuralError(ArithmeticError):
    """A closed form hit a regime where it is undefined (e.g. a zero denominator)."""


def clamp_probability(value):
    """min{1, max{0, value}} for scalars or arrays."""
    if np.ndim(value) == 0:
        return float(min(1.0, max(0.0, float(value))))
    return np.clip(value, 0.0, 1.0)


@dataclass(frozen=True)
class PayoffMatrix:
    """Voter (and good-type) payoff of policy p in state s, v(p, s)."""

    v_xx: float = 1.0
    v_xy: float = 0.0
    v_yx: float = 0.0
    v_yy: float = 1.0

    def v(self, policy: str, state: str) -> float:
        return getattr(self, f"v_{policy}{state}")

    @property
    def cost_x(self) -> float:
        # loss from implementing y when the state is x
        return self.v_xx - self.v_yx

    @property
    def cost_y(self) -> float:
        return self.v_yy - self.v_xy


@dataclass(frozen=True)
class RentSpec:
    """Distribution of a bad policymaker's private rent.

    Only the uniform family on [0, upper] is implemented; other families
    plug in by providing cdf, quantile, mean and partial_mean.
    """

    upper: float = 2.0
    family: str = "uniform"

    @property
    def mean(self) -> float:
        return self.upper / 2.0

    def cdf(self, r):
        r = np.asarray(r, dtype=float)
        if self.upper == 0:
            out = (r >= 0).astype(float)
        else:
            out = np.clip(r / self.upper, 0.0, 1.0)
        return float(out) if out.ndim == 0 else out

    def quantile(self, p):
        p_arr = np.asarray(p, dtype=float)
        if np.any((p_arr < 0) | (p_arr > 1)) or np.any(np.isnan(p_arr)):
            raise ValueError(f"quantile level outside [0, 1]: {p!r}")
        if np.ndim(p) == 0:
            return float(p) * self.upper
        return p_arr * self.upper

    def partial_mean(self, a: float, b: float) -> float:
        """E[r; a < r <= b], the rent mass between a and b (clamped to the support)."""
        lo = min(max(a, 0.0), self.upper)
        hi = min(max(b, 0.0), self.upper)
        if hi <= lo or self.upper == 0:
            return 0.0
        return (hi * hi - lo * lo) / (2.0 * self.upper)


@dataclass(frozen=True)
class ModelParams:
    rho: float = 0.5
    pi: float = 0.5
    beta: float = 0.5
    lam: float = 0.5
    delta: float = 1.0
    office_rent: float = 1.0
    payoffs: PayoffMatrix = field(default_factory=PayoffMatrix)
    rent_p1: RentSpec = field(default_factory=RentSpec)
    rent_p2: RentSpec = field(default_factory=RentSpec)
    rent_b1: RentSpec = field(default_factory=RentSpec)
    rent_b2: RentSpec = field(default_factory=RentSpec)

    @property
    def mu_p2(self) -> float:
        return self.rent_p2.mean

    @property
    def mu_b2(self) -> float:
        return self.rent_b2.mean

    @property
    def interior(self) -> bool:
        return 0.0 < self.lam < 1.0

    def replace(self, **changes) -> "ModelParams":
        """Unvalidated copy; accepts either field names or config keys."""
        if all(k in _FIELD_NAMES for k in changes):
            return dataclasses.replace(self, **changes)
        return params_from_config(changes, base=self, check=False)


_FIELD_NAMES = {f.name for f in dataclasses.fields(ModelParams)}


def validate(params: ModelParams) -> ModelParams:
    """Return ``params`` unchanged if every invariant holds, else raise."""
    for name in ("rho", "pi", "beta"):
        value = getattr(params, name)
        if not (0.0 < value < 1.0):
            raise ValidationError("probability range", f"{name}={value!r} not in (0,1)")
    if not (0.0 <= params.lam <= 1.0):
        raise ValidationError("probability range", f"lambda={params.lam!r} not in [0,1]")
    if not (0.0 < params.delta <= 1.0):
        raise ValidationError("discount range", f"delta={params.delta!r} not in (0,1]")
    values = [params.office_rent, *dataclasses.astuple(params.payoffs)]
    if not all(np.isfinite(values)):
        raise ValidationError("finite values", "office rent and payoffs must be finite")
    pay = params.payoffs
    if not (pay.v_xx > pay.v_yx and pay.v_yy > pay.v_xy):
        raise ValidationError("payoff monotonicity",
                              "need v_xx > v_yx and v_yy > v_xy")
    for name in ("rent_p1", "rent_p2", "rent_b1", "rent_b2"):
        spec = getattr(params, name)
        if spec.family != "uniform":
            raise ValidationError("rent family", f"{name}: unsupported {spec.family!r}")
        if not (np.isfinite(spec.upper) and spec.upper >= 0):
            raise ValidationError("negative rent bound", f"{name} upper={spec.upper!r}")
    return params


def require_interior(params: ModelParams) -> None:
    if not params.interior:
        raise EndpointError(params.lam)


def make_params(**kwargs) -> ModelParams:
    """Build and validate. Accepts field names or config keys."""
    if any(k not in _FIELD_NAMES for k in kwargs):
        return params_from_config(kwargs)
    return validate(ModelParams(**kwargs))


def mismatch_ratio(payoffs: PayoffMatrix) -> float:
    """Voter loss from a wrong policy in state y relative to state x."""
    return payoffs.cost_y / payoffs.cost_x


def rent_cdf(spec: RentSpec, r):
    return spec.cdf(r)


def rent_quantile(spec: RentSpec, p):
    return spec.quantile(p)


# -- flat key-value configuration --------------------------------------------

CONFIG_KEYS = (
    "rho", "pi", "beta", "lambda", "delta", "E",
    "v_xx", "v_xy", "v_yx", "v_yy",
    "rent_p1_upper", "rent_p2_upper", "rent_b1_upper", "rent_b2_upper",
)

_SCALAR_FIELDS = {"rho": "rho", "pi": "pi", "beta": "beta", "lambda": "lam",
                  "delta": "delta", "E": "office_rent"}
_ALIASES = {"lam": "lambda", "office_rent": "E"}
_RENT_FIELDS = {"rent_p1_upper": "rent_p1", "rent_p2_upper": "rent_p2",
                "rent_b1_upper": "rent_b1", "rent_b2_upper": "rent_b2"}


def params_to_config(params: ModelParams) -> dict[str, float]:
    cfg: dict[str, float] = {key: getattr(params, attr)
                             for key, attr in _SCALAR_FIELDS.items()}
    cfg.update(dataclasses.asdict(params.payoffs))
    cfg.update({key: getattr(params, attr).upper for key, attr in _RENT_FIELDS.items()})
    return cfg


def _to_float(key: str, value: Any) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ValidationError("config value", f"{key}={value!r} is not a number") from None


def params_from_config(cfg: Mapping[str, Any], base: ModelParams | None = None,
                       check: bool = True) -> ModelParams:
    """Overlay ``cfg`` on ``base`` (defaults if None) and validate."""
    cfg = {_ALIASES.get(k, k): v for k, v in cfg.items()}
    unknown = sorted(set(cfg) - set(CONFIG_KEYS))
    if unknown:
        raise ValidationError("unknown config key", ", ".join(unknown))
    merged = params_to_config(base or ModelParams())
    merged.update({k: _to_float(k, v) for k, v in cfg.items()})
    params = ModelParams(
        payoffs=PayoffMatrix(*(merged[k] for k in ("v_xx", "v_xy", "v_yx", "v_yy"))),
        **{attr: merged[key] for key, attr in _SCALAR_FIELDS.items()},
        **{attr: RentSpec(merged[key]) for key, attr in _RENT_FIELDS.items()},
    )
    return validate(params) if check else params


def load_config(path: str | Path) -> dict[str, float]:
    """Read a flat JSON object of config keys."""
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or any(isinstance(v, (dict, list)) for v in data.values()):
        raise ValidationError("config shape", "expected a flat JSON object")
    return data


def dump_config(params: ModelParams, path: str | Path | None = None) -> str:
    # json writes floats with repr, which round-trips exactly
    text = json.dumps(params_to_config(params), indent=2)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text
