"""Command line entry point.

Subcommands: ``solve``, ``sweep``, ``simulate``, ``steady-state``,
``identity``, ``verify``. All take ``--config PATH`` and any number of
``--set key=value`` overrides (dotted keys, JSON values).

Exit codes: 0 ok, 2 usage, 3 missing_file, 4 parse_error,
5 constraint_violation, 6 domain_error, 7 verification_failed.
"""

from __future__ import annotations

import argparse
import logging
import sys
from contextlib import contextmanager
from dataclasses import replace
from pathlib import Path
from typing import Iterator, Sequence, TextIO

import numpy as np

from .config import ResolvedConfig, apply_overrides, load_raw, parse_config, parse_value
from .dynamics import PERIOD_COLUMNS, STEADY_STATE_COLUMNS, high_steady_states, low_steady_states, simulate
from .errors import ConfigError, DomainError
from .game import OUTCOME_COLUMNS, solve_equilibrium
from .identity import IDENTITY_COLUMNS, sweep_group_size
from .oracle import REPORT_COLUMNS, GridSpec, random_game_params, solve_by_backward_induction
from .output import fmt, write_csv, write_json
from .sweep import SweepSpec, emit_plot_data, run_sweep

EXIT_CODES = {
    "missing_file": 3,
    "parse_error": 4,
    "constraint_violation": 5,
    "domain_error": 6,
    "verification_failed": 7,
}

log = logging.getLogger("rights_extension")


class VerificationFailed(Exception):
    code = "verification_failed"


@contextmanager
def _output(path: str | None) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ConfigError("parse_error", f"expected comma-separated numbers, got {text!r}")


def cmd_solve(cfg: ResolvedConfig, args) -> None:
    rec = solve_equilibrium(cfg.game).as_record()
    with _output(args.out) as out:
        (write_json if args.format == "json" else write_csv)(OUTCOME_COLUMNS, [rec], out)


def cmd_sweep(cfg: ResolvedConfig, args) -> None:
    raw = apply_overrides(load_raw(args.config), args.set)
    if args.axis:
        axes = []
        for item in args.axis:
            if "=" not in item:
                raise ConfigError("parse_error", f"axis {item!r} is not name=v1,v2,...")
            name, text = item.split("=", 1)
            axes.append((name, tuple(parse_value(v) for v in text.split(",") if v.strip())))
        axes = tuple(axes)
    else:
        axes = cfg.sweep.axes
    kind = args.kind or cfg.sweep.kind
    fmt_name = args.format or cfg.sweep.format
    workers = args.workers or cfg.sweep.workers
    raw.pop("sweep", None)
    spec = SweepSpec(kind, raw, axes, cfg.sweep.max_points)
    table = run_sweep(spec, workers=workers)
    if fmt_name == "plotdata":
        if args.out is None:
            raise ConfigError("constraint_violation", "plotdata output needs --out DIR", "out")
        emit_plot_data(table, args.out)
        return
    with _output(args.out) as out:
        (write_json if fmt_name == "json" else write_csv)(table.columns, table.rows, out)


def cmd_simulate(cfg: ResolvedConfig, args) -> None:
    traj = simulate(cfg.dynamics)
    with _output(args.out) as out:
        write_csv(PERIOD_COLUMNS, (r.as_record() for r in traj.periods), out)
        out.write(f"# terminal={traj.terminal.value} a_final={fmt(traj.a_final)} "
                  f"transition_period={fmt(traj.transition_period) or 'none'}\n")


def cmd_steady_state(cfg: ResolvedConfig, args) -> None:
    rows = low_steady_states(cfg.dynamics).rows() + high_steady_states(cfg.dynamics).rows()
    with _output(args.out) as out:
        write_csv(STEADY_STATE_COLUMNS, rows, out)


def cmd_identity(cfg: ResolvedConfig, args) -> None:
    ip = cfg.identity
    if args.alpha is not None:
        ip = replace(ip, alpha=args.alpha)
    grid = _floats(args.p_grid) if args.p_grid else [args.p_tot if args.p_tot is not None else ip.p_tot]
    rows = [r.outcome.as_record(replace(ip, p_tot=r.p_tot)) for r in sweep_group_size(ip, grid)]
    with _output(args.out) as out:
        write_csv(IDENTITY_COLUMNS, rows, out)


def cmd_verify(cfg: ResolvedConfig | None, args) -> None:
    o = cfg.oracle if cfg is not None else None
    draws = args.draws if args.draws is not None else (o.draws if o else 0)
    seed = args.seed if args.seed is not None else (o.seed if o else 0)
    e_steps = o.e_steps if o else 500
    max_step = o.max_i_step if o else 1e-3
    if draws == 0:
        if cfg is None:
            raise ConfigError("constraint_violation", "verify needs a config or --draws N > 0")
        params = [cfg.game]
    else:
        rng = np.random.default_rng(seed)
        params = [random_game_params(rng) for _ in range(draws)]
    columns = ("draw", "family", "n", "e0", "m", "a", "g") + REPORT_COLUMNS
    agreements, max_gap = 0, 0.0
    with _output(args.out) as out:
        out.write(",".join(columns) + "\n")
        for i, p in enumerate(params):
            rep = solve_by_backward_induction(p, GridSpec.for_params(p, e_steps, max_step))
            agreements += rep.agrees
            max_gap = max(max_gap, rep.max_payoff_gap)
            rec = {"draw": i, "family": str(p.f), "n": p.N, "e0": p.E0, "m": p.M, "a": p.A, "g": p.G}
            rec.update(rep.as_record())
            out.write(",".join(fmt(rec[c]) for c in columns) + "\n")
        out.write(f"# summary draws={len(params)} agreements={agreements} max_gap={fmt(max_gap)}\n")
    if agreements != len(params):
        raise VerificationFailed(f"{len(params) - agreements} of {len(params)} draws disagree")


COMMANDS = {
    "solve": cmd_solve,
    "sweep": cmd_sweep,
    "simulate": cmd_simulate,
    "steady-state": cmd_steady_state,
    "identity": cmd_identity,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rights-extension", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser):
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override a config key (dotted path), repeatable")
        p.add_argument("--out", help="output file (directory for plotdata); stdout by default")
        return p

    p = common(sub.add_parser("solve", help="one-shot equilibrium"))
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = common(sub.add_parser("sweep", help="grid over up to two parameters"))
    p.add_argument("--axis", action="append", metavar="NAME=V1,V2,...",
                   help="sweep axis, repeatable (max 2); replaces sweep.axes from the config")
    p.add_argument("--kind", choices=("solve", "identity", "long_run"))
    p.add_argument("--format", choices=("csv", "json", "plotdata"))
    p.add_argument("--workers", type=int)

    common(sub.add_parser("simulate", help="repeated game with learning-by-doing"))
    common(sub.add_parser("steady-state", help="low and high TFP fixed points"))

    p = common(sub.add_parser("identity", help="identity-group extension"))
    p.add_argument("--alpha", type=float)
    p.add_argument("--p-tot", type=float)
    p.add_argument("--p-grid", help="comma-separated group shares")

    p = common(sub.add_parser("verify", help="brute-force oracle check"))
    p.add_argument("--draws", type=int, help="random parameter draws (0: the configured game)")
    p.add_argument("--seed", type=int)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        if args.command == "verify" and args.config is None and not args.set:
            cfg = None
        else:
            cfg = parse_config(args.config, args.set)
        COMMANDS[args.command](cfg, args)
    except (ConfigError, DomainError, VerificationFailed) as exc:
        print(f"error: {exc.code}: {exc.args[0]}", file=sys.stderr)
        return EXIT_CODES.get(exc.code, 1)
    return 0


if __name__ == "__main__":
    sys.exit(main())
