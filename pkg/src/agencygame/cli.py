"""
Command-line front end: configuration, sweeps, figure presets and emission.

    python -m agencygame certify --set lambda=0.6 --set E=0.85
    python -m agencygame sweep --dim lambda=0.01:0.99:99 --outputs certificates,welfare --out runs/
    python -m agencygame figure fig4 --out runs/

Results go to stdout unless ``--out`` names a directory. Sweeps and figures
write a CSV (or JSON) file plus a ``.json`` sidecar holding the resolved
configuration and the artifact version. Nothing time-dependent is written, so
reruns are byte-identical.

Exit codes: 0 success, 1 usage error, 2 validation error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from . import __version__
from . import certifier as cf
from . import welfare as wf
from .model_core import (
    CONFIG_KEYS, EquilibriumClass, ModelParams, StructuralError, ValidationError,
    params_from_config, params_to_config,
)
from .simulator import UncertifiedProfileError, best_response_audit, build_profile, simulate

EC = EquilibriumClass
SCHEMA_VERSION = "1"

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_IO = 0, 1, 2, 3

OUTPUTS = ("certificates", "welfare", "selection", "benchmark", "audit")

SWEEP_COLUMNS = (
    "grid_index", "output", *CONFIG_KEYS, "class", "verdict",
    "eu_total", "eu_good", "eu_bad", "eta", "zeta",
    "delta_eu", "beta_tilde", "max_gain", "audit_passes", "mc_voter", "mc_voter_se",
)
WELFARE_FIGURE_COLUMNS = ("curve", "lambda", "class", "region", "eu_total", "eu_good", "eu_bad")
SELECTION_FIGURE_COLUMNS = ("curve", "lambda", "class", "verdict", "eta", "zeta")

_KEY_ALIASES = {"lam": "lambda", "office_rent": "E"}


class UsageError(Exception):
    pass


# -- configuration ----------------------------------------------------------------

def _canonical_key(key: str) -> str:
    return _KEY_ALIASES.get(key, key)


def parse_assignment(text: str) -> tuple[str, float]:
    """``key=value`` from ``--set``; the value must parse as a float."""
    key, sep, value = text.partition("=")
    key = _canonical_key(key.strip())
    if not sep or not key:
        raise UsageError(f"--set expects key=value, got {text!r}")
    if key not in CONFIG_KEYS:
        raise ValidationError("unknown config key", key)
    try:
        return key, float(value)
    except ValueError:
        raise ValidationError("config value", f"{key}={value!r} is not a number") from None


def read_config(path: Optional[str]) -> dict:
    """A JSON config: either a flat object of parameter keys, or an object with
    a ``params`` block plus optional ``sweep``, ``outputs``, ``seed`` and ``reps``."""
    if path is None:
        return {}
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValidationError("config shape", "expected a JSON object")
    if "params" not in data:
        data = {"params": data}
    params = data["params"]
    if not isinstance(params, dict) or any(isinstance(v, (dict, list)) for v in params.values()):
        raise ValidationError("config shape", "params must be a flat JSON object")
    return data


def resolve_params(config: dict, overrides: Sequence[str] = (),
                   base: Optional[dict] = None) -> ModelParams:
    merged = dict(base or {})
    merged.update({_canonical_key(k): v for k, v in config.get("params", {}).items()})
    merged.update(dict(parse_assignment(s) for s in overrides))
    return params_from_config(merged)


# -- sweeps -------------------------------------------------------------------------

@dataclass(frozen=True)
class SweepDim:
    name: str
    lo: float
    hi: float
    steps: int

    def values(self) -> list[float]:
        return [float(v) for v in np.linspace(self.lo, self.hi, self.steps)]

    @classmethod
    def parse(cls, text: str) -> "SweepDim":
        """``name=min:max:steps``."""
        name, _, rng = text.partition("=")
        parts = rng.split(":")
        if len(parts) != 3:
            raise UsageError(f"--dim expects name=min:max:steps, got {text!r}")
        try:
            return cls(_canonical_key(name.strip()), float(parts[0]), float(parts[1]), int(parts[2]))
        except ValueError:
            raise UsageError(f"--dim expects name=min:max:steps, got {text!r}") from None


@dataclass
class SweepConfig:
    base: ModelParams
    dims: list[SweepDim] = field(default_factory=list)
    outputs: tuple[str, ...] = ("certificates", "welfare")
    out: Optional[Path] = None
    seed: int = 0
    reps: int = 0
    fmt: str = "csv"
    workers: int = 1

    def check(self) -> None:
        for d in self.dims:
            if d.name not in CONFIG_KEYS:
                raise ValidationError("sweep dimension", f"unknown parameter {d.name!r}")
            if d.steps < 2:
                raise ValidationError("sweep dimension", f"{d.name}: steps must be at least 2")
        bad = [o for o in self.outputs if o not in OUTPUTS]
        if bad:
            raise ValidationError("sweep output", ", ".join(bad))
        if self.reps < 0:
            raise ValidationError("replication count", "reps must be non-negative")

    def grid(self) -> list[dict[str, float]]:
        """Grid points in index order; the first dimension varies slowest."""
        names = [d.name for d in self.dims]
        return [dict(zip(names, combo))
                for combo in itertools.product(*(d.values() for d in self.dims))]

    def resolved(self) -> dict:
        return {"params": params_to_config(self.base),
                "sweep": [{"name": d.name, "min": d.lo, "max": d.hi, "steps": d.steps}
                          for d in self.dims],
                "outputs": list(self.outputs), "seed": self.seed, "reps": self.reps}


def _point_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence([seed, index]).generate_state(1, np.uint64)[0])


def _sweep_point(job: tuple) -> list[dict]:
    index, params, outputs, seed, reps = job
    base = {"grid_index": index, **params_to_config(params)}
    rows: list[dict] = []
    endpoint = not params.interior
    certs = [] if endpoint else cf.classify_all(params)
    certified = [c.eq_class for c in certs if c.verdict]

    def row(output: str, **values) -> None:
        rows.append({**base, "output": output, **values})

    for output in outputs:
        if output == "certificates":
            if endpoint:
                row(output, **{"class": "BENCHMARK"})
            for c in certs:
                row(output, **{"class": EC(c.eq_class).value, "verdict": c.verdict})
        elif output == "welfare":
            if endpoint:
                w = wf.voter_welfare(EC.PECB, params)
                tag = "TOOTHLESS" if params.lam == 0 else "DICTATORIAL"
                row(output, **{"class": tag, "eu_total": w.eu_total,
                               "eu_good": w.eu_given_good, "eu_bad": w.eu_given_bad})
            elif not certified:
                row(output, **{"class": "none"})
            for ec in certified:
                w = wf.voter_welfare(ec, params)
                row(output, **{"class": ec.value, "verdict": True, "eu_total": w.eu_total,
                               "eu_good": w.eu_given_good, "eu_bad": w.eu_given_bad})
        elif output == "selection":
            if params.lam == 1.0:
                row(output, **{"class": EC.PECB.value})
                continue
            s = wf.selection(params)
            verdict = "" if endpoint else cf.certify(EC.PECB, params).verdict
            row(output, **{"class": EC.PECB.value, "verdict": verdict,
                           "eta": s.eta, "zeta": s.zeta})
        elif output == "benchmark":
            b = wf.benchmark(params)
            row(output, **{"class": "BENCHMARK", "delta_eu": b.delta_eu,
                           "beta_tilde": b.beta_tilde})
        elif output == "audit":
            for n, ec in enumerate(certified):
                profile = build_profile(ec, params)
                rep = best_response_audit(profile, params)
                values = {"class": ec.value, "verdict": True, "max_gain": rep.max_gain,
                          "audit_passes": rep.passes}
                if reps > 0:
                    sim = simulate(profile, params, reps, seed=_point_seed(seed, index * 8 + n))
                    values.update(mc_voter=sim.means["voter"], mc_voter_se=sim.std_errors["voter"],
                                  eu_total=wf.game_tree_welfare(ec, params).eu_total)
                row(output, **values)
    return rows


def run_sweep(config: SweepConfig) -> tuple[list[dict], dict]:
    """Evaluate every grid point; returns (rows in grid order, sidecar)."""
    config.check()
    points = config.grid() or [{}]
    jobs = [(i, config.base.replace(**pt) if pt else config.base, config.outputs,
             config.seed, config.reps) for i, pt in enumerate(points)]
    for _, params, *_ in jobs:
        params_from_config(params_to_config(params))  # validate each point up front
    if config.workers > 1:
        with ProcessPoolExecutor(config.workers) as pool:
            chunks = list(pool.map(_sweep_point, jobs))
    else:
        chunks = [_sweep_point(j) for j in jobs]
    rows = [r for chunk in chunks for r in chunk]
    return rows, sidecar("sweep", config.resolved(), len(rows))


# -- figure presets ------------------------------------------------------------------

@dataclass(frozen=True)
class Curve:
    label: str
    params: dict


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    base: dict
    curves: tuple[Curve, ...]
    classes: tuple[EquilibriumClass, ...]
    points: int = 99
    selection: bool = False


_UNIT = {"E": 1.0, "v_xx": 1.0, "v_xy": 0.0, "v_yx": 0.0, "v_yy": 1.0, "delta": 1.0}

# Panel parameters that are not given in the source figures are documented defaults chosen to
# reproduce each caption's qualitative claim; all are overridable with --set.
PRESETS = {
    "fig1": Preset(
        "fig1", "PECB welfare: interior maximum near beta-tilde (left), local maximum and "
        "interior global minimum (right)",
        _UNIT,
        (Curve("left beta=0.24", {"beta": 0.24, "pi": 0.5, "rho": 0.5}),
         Curve("left beta=0.25", {"beta": 0.25, "pi": 0.5, "rho": 0.5}),
         Curve("left beta=0.26", {"beta": 0.26, "pi": 0.5, "rho": 0.5}),
         Curve("right", {"beta": 0.71, "pi": 0.67, "rho": 0.79})),
        (EC.PECB,)),
    "fig2": Preset(
        "fig2", "PECB welfare: monotone curves (left), convex curves (right)",
        _UNIT,
        (Curve("left beta=0.2", {"beta": 0.2, "pi": 0.5, "rho": 0.5}),
         Curve("left beta=0.5", {"beta": 0.5, "pi": 0.5, "rho": 0.5}),
         Curve("left beta=0.8", {"beta": 0.8, "pi": 0.5, "rho": 0.5}),
         Curve("right beta=0.2", {"beta": 0.2, "pi": 0.2, "rho": 0.8}),
         Curve("right beta=0.5", {"beta": 0.5, "pi": 0.2, "rho": 0.8}),
         Curve("right beta=0.8", {"beta": 0.8, "pi": 0.2, "rho": 0.8})),
        (EC.PECB,)),
    "fig3": Preset(
        "fig3", "PECB and PEPB welfare with v(x,x)=500; coexistence rows carry both classes",
        {**_UNIT, "v_xx": 500.0},
        (Curve("left rho=0.3", {"beta": 0.5, "pi": 0.5, "rho": 0.3}),
         Curve("right rho=0.5", {"beta": 0.5, "pi": 0.5, "rho": 0.5})),
        (EC.PECB, EC.PEPB), points=999),
    "fig4": Preset(
        "fig4", "PECB to NPE-SF transition at lambda = ell with E=0.85",
        {**_UNIT, "E": 0.85, "pi": 0.7, "rho": 0.85},
        (Curve("beta=0.9", {"beta": 0.9}), Curve("beta=0.75", {"beta": 0.75})),
        (EC.PECB, EC.NPE_SF)),
    "fig5": Preset(
        "fig5", "PECB selection: bad-incumbent re-election (eta) and good period-2 "
        "politician (zeta)",
        _UNIT,
        (Curve("beta=0.25", {"beta": 0.25, "pi": 0.5, "rho": 0.5}),
         Curve("beta=0.5", {"beta": 0.5, "pi": 0.5, "rho": 0.5}),
         Curve("beta=0.75", {"beta": 0.75, "pi": 0.5, "rho": 0.5})),
        (EC.PECB,), selection=True),
}


def lambda_grid(points: int, endpoints: bool) -> list[float]:
    """``points`` interior values k/(points+1), optionally with 0 and 1 added."""
    inner = [k / (points + 1) for k in range(1, points + 1)]
    return [0.0, *inner, 1.0] if endpoints else inner


def _region(classes: Iterable[EquilibriumClass], params: ModelParams) -> tuple[str, list]:
    held = [ec for ec in classes if cf.certify(ec, params).verdict]
    if not held:
        return "none", held
    if len(held) > 1:
        return "coexist", held
    return held[0].value, held


def _welfare_rows(label: str, preset: Preset, params: ModelParams,
                  lams: list[float]) -> list[dict]:
    rows = []
    for lam in lams:
        at = params.replace(lam=lam)
        if not at.interior:
            w = wf.voter_welfare(EC.PECB, at)
            rows.append({"curve": label, "lambda": lam,
                         "class": "TOOTHLESS" if lam == 0 else "DICTATORIAL",
                         "region": "benchmark", "eu_total": w.eu_total,
                         "eu_good": w.eu_given_good, "eu_bad": w.eu_given_bad})
            continue
        region, held = _region(preset.classes, at)
        if not held:
            rows.append({"curve": label, "lambda": lam, "class": "none", "region": region})
        for ec in held:
            w = wf.voter_welfare(ec, at)
            rows.append({"curve": label, "lambda": lam, "class": ec.value, "region": region,
                         "eu_total": w.eu_total, "eu_good": w.eu_given_good,
                         "eu_bad": w.eu_given_bad})
    return rows


def _transitions(label: str, preset: Preset, params: ModelParams,
                 lams: list[float]) -> list[dict]:
    """Bisect every change of certified region between adjacent interior grid points."""
    inner = [lam for lam in lams if 0 < lam < 1]
    regions = [_region(preset.classes, params.replace(lam=lam))[0] for lam in inner]
    out = []
    for (a, ra), (b, rb) in zip(zip(inner, regions), zip(inner[1:], regions[1:])):
        if ra == rb:
            continue

        def side(lam: float, start=ra) -> float:
            return 1.0 if _region(preset.classes, params.replace(lam=lam))[0] == start else -1.0

        at = cf.find_boundary(side, a, b, tol=1e-12)
        lo, hi = at - 1e-12, at + 1e-12
        entry = {"curve": label, "from": ra, "to": rb, "lambda": at,
                 "welfare_before": None, "welfare_after": None, "step": None}
        singles = {c.value for c in preset.classes}
        if ra in singles and rb in singles:
            before = wf.voter_welfare(ra, params.replace(lam=min(lo, at))).eu_total
            after = wf.voter_welfare(rb, params.replace(lam=max(hi, at))).eu_total
            entry.update(welfare_before=before, welfare_after=after, step=after - before)
        out.append(entry)
    return out


def run_figure(name: str, overrides: Sequence[str] = (), points: Optional[int] = None,
               config: Optional[dict] = None) -> tuple[list[dict], dict, tuple[str, ...]]:
    """Rows, sidecar and CSV columns for a preset. ``overrides`` apply to every curve."""
    if name not in PRESETS:
        raise UsageError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    preset = PRESETS[name]
    n = preset.points if points is None else points
    if n < 2:
        raise ValidationError("grid size", "points must be at least 2")
    rows: list[dict] = []
    curves, transitions, extrema = [], [], []
    for curve in preset.curves:
        params = resolve_params(config or {}, overrides, base={**preset.base, **curve.params})
        curves.append({"label": curve.label, "params": params_to_config(params)})
        if preset.selection:
            for lam in lambda_grid(n, endpoints=False):
                at = params.replace(lam=lam)
                s = wf.selection(at)
                rows.append({"curve": curve.label, "lambda": lam, "class": EC.PECB.value,
                             "verdict": cf.certify(EC.PECB, at).verdict,
                             "eta": s.eta, "zeta": s.zeta})
            continue
        lams = lambda_grid(n, endpoints=True)
        curve_rows = _welfare_rows(curve.label, preset, params, lams)
        rows.extend(curve_rows)
        transitions.extend(_transitions(curve.label, preset, params, lams))
        extrema.append(_extremum(curve.label, curve_rows))
    side = sidecar(name, {"description": preset.description, "points": n, "curves": curves,
                          "classes": [c.value for c in preset.classes]}, len(rows))
    if not preset.selection:
        side["transitions"] = transitions
        side["argmax"] = extrema
    columns = SELECTION_FIGURE_COLUMNS if preset.selection else WELFARE_FIGURE_COLUMNS
    return rows, side, columns


def _extremum(label: str, rows: list[dict]) -> dict:
    """Grid argmax of equilibrium welfare, when the curve has one value per lambda."""
    by_lam: dict[float, list[float]] = {}
    for r in rows:
        if "eu_total" in r:
            by_lam.setdefault(r["lambda"], []).append(r["eu_total"])
    if not by_lam or any(len(v) > 1 for v in by_lam.values()):
        return {"curve": label, "lambda": None, "eu_total": None, "interior": None}
    lam, eu = max(((k, v[0]) for k, v in by_lam.items()), key=lambda kv: kv[1])
    return {"curve": label, "lambda": lam, "eu_total": eu, "interior": 0 < lam < 1}


# -- emission ----------------------------------------------------------------------

def jsonable(value: Any) -> Any:
    """Recursively replace non-finite floats with None and numpy scalars with Python ones."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def sidecar(command: str, resolved: dict, n_rows: int) -> dict:
    return {"artifact": "agencygame", "version": __version__, "schema_version": SCHEMA_VERSION,
            "command": command, "config": resolved, "rows": n_rows}


def _cell(value: Any) -> Any:
    if value is None:
        return ""
    if isinstance(value, float) and not math.isfinite(value):
        return ""
    return value


def to_csv(rows: list[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n",
                            extrasaction="ignore")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: _cell(r.get(k)) for k in columns})
    return buf.getvalue()


def to_json(data: Any) -> str:
    return json.dumps(jsonable(data), indent=2, allow_nan=False) + "\n"


def emit(stem: str, rows: list[dict], columns: Sequence[str], fmt: str,
         out: Optional[str], side: Optional[dict] = None) -> None:
    body = to_csv(rows, columns) if fmt == "csv" else to_json(rows)
    if out is None:
        sys.stdout.write(body)
        return
    directory = Path(out)
    directory.mkdir(parents=True, exist_ok=True)
    (directory / f"{stem}.{fmt}").write_text(body)
    if side is not None:
        (directory / f"{stem}.json" if fmt == "csv" else directory / f"{stem}.meta.json"
         ).write_text(to_json(side))


def emit_document(stem: str, doc: Any, fmt: str, out: Optional[str],
                  rows: Optional[list[dict]] = None, columns: Sequence[str] = ()) -> None:
    """Single-point commands: JSON prints ``doc``; CSV prints ``rows``."""
    if fmt == "csv":
        emit(stem, rows or [], columns, "csv", out)
        return
    body = to_json(doc)
    if out is None:
        sys.stdout.write(body)
        return
    directory = Path(out)
    directory.mkdir(parents=True, exist_ok=True)
    (directory / f"{stem}.json").write_text(body)


# -- subcommands ------------------------------------------------------------------

def _classes(arg: Optional[str], params: ModelParams, certified_only: bool) -> list[EC]:
    if arg:
        try:
            return [EC(arg.upper().replace("-", "_"))]
        except ValueError:
            raise UsageError(f"unknown class {arg!r}") from None
    if certified_only:
        return cf.certified_classes(params)
    return list(EC)


def cmd_validate(args, params: ModelParams) -> None:
    cfg = params_to_config(params)
    emit_document("validate", {"valid": True, "params": cfg}, args.format, args.out,
                  [{"key": k, "value": v} for k, v in cfg.items()], ("key", "value"))


def cmd_certify(args, params: ModelParams) -> None:
    certs = [cf.certify(ec, params) for ec in _classes(args.eq_class, params, False)]
    doc = {"params": params_to_config(params), "completeness_note": cf.COMPLETENESS_NOTE,
           "certificates": [c.to_dict() for c in certs]}
    rows = [{"class": EC(c.eq_class).value, "verdict": c.verdict, **cond.to_dict()}
            for c in certs for cond in c.conditions]
    emit_document("certify", doc, args.format, args.out, rows,
                  ("class", "verdict", "name", "anchor", "satisfied", "slack"))


def cmd_welfare(args, params: ModelParams) -> None:
    classes = _classes(args.eq_class, params, certified_only=params.interior)
    if not params.interior:
        classes = [EC.PECB]
    reports = [wf.voter_welfare(ec, params).to_dict() for ec in classes]
    doc = {"params": params_to_config(params), "welfare": reports}
    emit_document("welfare", doc, args.format, args.out, reports,
                  ("eq_class", "source", "eu_total", "eu_given_good", "eu_given_bad"))


def cmd_benchmark(args, params: ModelParams) -> None:
    rep = wf.benchmark(params).to_dict()
    emit_document("benchmark", {"params": params_to_config(params), "benchmark": rep},
                  args.format, args.out, [rep], tuple(rep))


def cmd_selection(args, params: ModelParams) -> None:
    rep = wf.selection(params).to_dict()
    emit_document("selection", {"params": params_to_config(params), "selection": rep},
                  args.format, args.out, [rep], tuple(rep))


def cmd_audit(args, params: ModelParams) -> None:
    classes = _classes(args.eq_class, params, certified_only=True)
    results, rows = [], []
    for ec in classes:
        profile = build_profile(ec, params, strict=not args.force)
        rep = best_response_audit(profile, params, rent_grid=args.rent_grid)
        entry = {"class": ec.value, "certified": profile.certificate.verdict,
                 "audit": rep.to_dict()}
        if args.reps > 0:
            entry["simulation"] = simulate(profile, params, args.reps, seed=args.seed).to_dict()
        results.append(entry)
        rows.append({"class": ec.value, "certified": profile.certificate.verdict,
                     "passes": rep.passes, "max_gain": rep.max_gain,
                     "voter_posterior_x": rep.voter_posterior_x})
    doc = {"params": params_to_config(params), "seed": args.seed, "reps": args.reps,
           "results": results}
    emit_document("audit", doc, args.format, args.out, rows,
                  ("class", "certified", "passes", "max_gain", "voter_posterior_x"))


def cmd_sweep(args, config: dict) -> None:
    dims = [SweepDim.parse(d) for d in args.dim] if args.dim else [
        SweepDim(_canonical_key(d["name"]), float(d["min"]), float(d["max"]), int(d["steps"]))
        for d in config.get("sweep", [])]
    outputs = (tuple(o.strip() for o in args.outputs.split(",")) if args.outputs
               else tuple(config.get("outputs", ("certificates", "welfare"))))
    seed = args.seed if args.seed is not None else int(config.get("seed", 0))
    reps = args.reps if args.reps is not None else int(config.get("reps", 0))
    sweep = SweepConfig(resolve_params(config, args.set), dims, outputs, None, seed, reps,
                        args.format, args.workers)
    rows, side = run_sweep(sweep)
    emit("sweep", rows, SWEEP_COLUMNS, args.format, args.out, side)


def cmd_figure(args, config: dict) -> None:
    rows, side, columns = run_figure(args.preset, args.set, args.points, config)
    emit(args.preset, rows, columns, args.format, args.out, side)


# -- parser -----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override a parameter (repeatable)")
    common.add_argument("--out", help="output directory (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--seed", type=int, default=None, help="Monte Carlo seed")
    common.add_argument("--reps", type=int, default=None,
                        help="Monte Carlo replications (0 disables)")

    parser = _Parser(prog="agencygame", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    sub.add_parser("validate", parents=[common], help="validate and print the resolved parameters")
    for name, text in (("certify", "existence conditions with slacks"),
                       ("welfare", "voter welfare of certified classes")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--class", dest="eq_class", help="restrict to one class")
    sub.add_parser("benchmark", parents=[common], help="toothless vs dictatorial bureaucracy")
    sub.add_parser("selection", parents=[common], help="eta and zeta in PECB")
    p = sub.add_parser("audit", parents=[common], help="best-response audit (and Monte Carlo)")
    p.add_argument("--class", dest="eq_class", help="class to audit (default: all certified)")
    p.add_argument("--force", action="store_true", help="audit even if the class is not certified")
    p.add_argument("--rent-grid", type=int, default=101)
    p = sub.add_parser("sweep", parents=[common], help="grid sweep to CSV")
    p.add_argument("--dim", action="append", default=[], metavar="NAME=MIN:MAX:STEPS")
    p.add_argument("--outputs", help=f"comma list from {', '.join(OUTPUTS)}")
    p.add_argument("--workers", type=int, default=1)
    p = sub.add_parser("figure", parents=[common], help="figure reproduction preset")
    p.add_argument("preset", choices=sorted(PRESETS))
    p.add_argument("--points", type=int, default=None, help="interior lambda grid size")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits on --help, --version and usage errors; report the code instead
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    args.format = args.format or ("csv" if args.command in ("sweep", "figure") else "json")
    try:
        config = read_config(args.config)
        if args.command == "sweep":
            cmd_sweep(args, config)
        elif args.command == "figure":
            cmd_figure(args, config)
        else:
            args.seed = args.seed if args.seed is not None else int(config.get("seed", 0))
            args.reps = args.reps if args.reps is not None else int(config.get("reps", 0))
            params = resolve_params(config, args.set)
            handler = {"validate": cmd_validate, "certify": cmd_certify,
                       "welfare": cmd_welfare, "benchmark": cmd_benchmark,
                       "selection": cmd_selection, "audit": cmd_audit}[args.command]
            handler(args, params)
    except UsageError as exc:
        print(f"agencygame: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, StructuralError, UncertifiedProfileError) as exc:
        print(f"agencygame: validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except json.JSONDecodeError as exc:
        print(f"agencygame: validation error: config is not valid JSON: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"agencygame: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
