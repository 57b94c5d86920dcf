"""Config files: JSON trees resolved into validated parameter objects.

A minimal config carries only the game::

    {"n": 10, "e0": 1, "m": 0.5, "a": 2, "g": 0.5,
     "production": {"family": "isoelastic", "beta": 0.5}}

Sections ``dynamics``, ``identity``, ``oracle`` and ``sweep`` are optional and
filled from :data:`DEFAULTS`.
"""

from __future__ import annotations

import copy
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable

from .dynamics import DynParams
from .errors import ConfigError, DomainError
from .game import GameParams
from .identity import IdentityParams
from .production import validate_assumptions

log = logging.getLogger(__name__)

GAME_KEYS = ("n", "e0", "m", "a", "g", "production")

DEFAULTS: dict[str, dict[str, Any]] = {
    "dynamics": {"delta": 0.2, "a_coef": 0.5, "t_max": 100_000, "conv_tol": 1e-10, "a_blowup": 1e9},
    "identity": {"alpha": 0.5, "p_tot": 1.0},
    "oracle": {"e_steps": 500, "max_i_step": 1e-3, "draws": 0, "seed": 0},
    "sweep": {"kind": "solve", "axes": [], "format": "csv", "max_points": 1_000_000, "workers": 1},
}

SWEEP_KINDS = ("solve", "identity", "long_run")
SWEEP_FORMATS = ("csv", "json", "plotdata")


@dataclass(frozen=True)
class OracleSettings:
    e_steps: int
    max_i_step: float
    draws: int
    seed: int


@dataclass(frozen=True)
class SweepSettings:
    kind: str
    axes: tuple[tuple[str, tuple], ...]
    format: str
    max_points: int
    workers: int


@dataclass(frozen=True)
class ResolvedConfig:
    game: GameParams
    dynamics: DynParams
    identity: IdentityParams
    oracle: OracleSettings
    sweep: SweepSettings
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def to_dict(self) -> dict[str, Any]:
        d = self.game.to_dict()
        dyn = self.dynamics
        d["dynamics"] = {"delta": dyn.delta, "a_coef": dyn.a_coef, "t_max": dyn.t_max,
                         "conv_tol": dyn.conv_tol, "a_blowup": dyn.a_blowup}
        d["identity"] = {"alpha": self.identity.alpha, "p_tot": self.identity.p_tot}
        o = self.oracle
        d["oracle"] = {"e_steps": o.e_steps, "max_i_step": o.max_i_step, "draws": o.draws, "seed": o.seed}
        s = self.sweep
        d["sweep"] = {"kind": s.kind, "axes": [[name, list(vals)] for name, vals in s.axes],
                      "format": s.format, "max_points": s.max_points, "workers": s.workers}
        return d


def _violation(msg: str, key: str | None = None) -> ConfigError:
    return ConfigError("constraint_violation", msg, key)


def _section(raw: dict, name: str) -> dict[str, Any]:
    given = raw.get(name, {})
    if not isinstance(given, dict):
        raise _violation(f"{name} must be a mapping", name)
    unknown = set(given) - set(DEFAULTS[name])
    if unknown:
        raise _violation(f"unknown key {name}.{sorted(unknown)[0]}", f"{name}.{sorted(unknown)[0]}")
    out = copy.deepcopy(DEFAULTS[name])
    out.update(given)
    return out


def _int(value, key: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or int(value) != value:
        raise _violation(f"{key} must be an integer, got {value!r}", key)
    return int(value)


def _axes(value) -> tuple[tuple[str, tuple], ...]:
    if not isinstance(value, list) or len(value) > 2:
        raise _violation("sweep.axes must be a list of at most 2 [name, values] pairs", "sweep.axes")
    axes = []
    for item in value:
        if not (isinstance(item, (list, tuple)) and len(item) == 2 and isinstance(item[0], str)
                and isinstance(item[1], list)):
            raise _violation(f"malformed sweep axis {item!r}", "sweep.axes")
        name, vals = item
        if not vals:
            raise _violation(f"sweep axis {name!r} has no values", "sweep.axes")
        axes.append((name, tuple(vals)))
    return tuple(axes)


def resolve(raw: dict[str, Any]) -> ResolvedConfig:
    """Validate a raw config tree and fill defaults."""
    if not isinstance(raw, dict):
        raise _violation("config root must be a mapping")
    unknown = set(raw) - set(GAME_KEYS) - set(DEFAULTS)
    if unknown:
        k = sorted(unknown)[0]
        raise _violation(f"unknown key {k!r}", k)
    try:
        game = GameParams.from_dict(raw)
        dyn_raw = _section(raw, "dynamics")
        dyn = DynParams(game, float(dyn_raw["delta"]), float(dyn_raw["a_coef"]),
                        _int(dyn_raw["t_max"], "dynamics.t_max"), float(dyn_raw["conv_tol"]),
                        float(dyn_raw["a_blowup"]))
        id_raw = _section(raw, "identity")
        ident = IdentityParams(game, float(id_raw["alpha"]), float(id_raw["p_tot"]))
    except DomainError as exc:
        raise _violation(str(exc), exc.key) from exc
    except (TypeError, ValueError) as exc:
        raise _violation(str(exc)) from exc

    o = _section(raw, "oracle")
    oracle = OracleSettings(_int(o["e_steps"], "oracle.e_steps"), float(o["max_i_step"]),
                            _int(o["draws"], "oracle.draws"), _int(o["seed"], "oracle.seed"))
    if oracle.e_steps < 2 or not oracle.max_i_step > 0 or oracle.draws < 0:
        raise _violation("oracle needs e_steps >= 2, max_i_step > 0, draws >= 0", "oracle")

    s = _section(raw, "sweep")
    sweep = SweepSettings(str(s["kind"]), _axes(s["axes"]), str(s["format"]),
                          _int(s["max_points"], "sweep.max_points"), _int(s["workers"], "sweep.workers"))
    if sweep.kind not in SWEEP_KINDS:
        raise _violation(f"sweep.kind must be one of {SWEEP_KINDS}", "sweep.kind")
    if sweep.format not in SWEEP_FORMATS:
        raise _violation(f"sweep.format must be one of {SWEEP_FORMATS}", "sweep.format")
    if sweep.workers < 1:
        raise _violation("sweep.workers must be >= 1", "sweep.workers")

    warnings = []
    if game.no_commitment_problem:
        warnings.append(f"no_commitment_problem: e0={game.E0:g} >= 1/g={1 / game.G:g}")
    report = validate_assumptions(game.f, game.A)
    warnings.extend(f"assumption: {m}" for m in report.messages)
    return ResolvedConfig(game, dyn, ident, oracle, sweep, tuple(warnings))


def parse_value(text: str) -> Any:
    """Override values are JSON where possible, bare strings otherwise."""
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def apply_overrides(raw: dict[str, Any], overrides: Iterable[str | tuple[str, Any]]) -> dict[str, Any]:
    """Return a copy of ``raw`` with ``key.path=value`` overrides applied."""
    out = copy.deepcopy(raw)
    for item in overrides:
        if isinstance(item, str):
            if "=" not in item:
                raise ConfigError("parse_error", f"override {item!r} is not key=value")
            key, text = item.split("=", 1)
            value = parse_value(text)
        else:
            key, value = item
        node = out
        parts = key.strip().split(".")
        for part in parts[:-1]:
            node = node.setdefault(part, {})
            if not isinstance(node, dict):
                raise _violation(f"cannot set {key!r}: {part!r} is not a mapping", key)
        node[parts[-1]] = value
    return out


def load_raw(path: str | Path | None) -> dict[str, Any]:
    if path is None:
        return {}
    path = Path(path)
    if not path.is_file():
        raise ConfigError("missing_file", f"config file not found: {path}")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError("parse_error", f"{path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("parse_error", f"{path}: top level must be an object")
    return raw


def parse_config(path: str | Path | None, overrides: Iterable[str] = ()) -> ResolvedConfig:
    cfg = resolve(apply_overrides(load_raw(path), overrides))
    for w in cfg.warnings:
        log.warning(w)
    return cfg


def dump_config(cfg: ResolvedConfig, path: str | Path) -> None:
    Path(path).write_text(json.dumps(cfg.to_dict(), indent=2) + "\n", encoding="utf-8")
