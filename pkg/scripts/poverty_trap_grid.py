"""Long-run classification over a grid of land rents M and initial TFP.

For each cell, evaluates the extension criterion at the stable low steady
state and cross-checks it against a full simulation.

    python3 scripts/poverty_trap_grid.py --m 0.2,1,5 --a1 5,20
"""

import argparse
import sys
from dataclasses import replace

from rights_extension.config import parse_config
from rights_extension.dynamics import classify_long_run
from rights_extension.output import write_csv

COLUMNS = ("m", "a1", "classification", "a_low", "criterion", "terminal", "transition_period", "consistent")


def floats(text):
    return [float(x) for x in text.split(",")]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--config", default="configs/poverty_trap.json")
    ap.add_argument("--m", type=floats, default=[0.2, 5.0])
    ap.add_argument("--a1", type=floats, default=[5.0, 20.0])
    args = ap.parse_args(argv)

    dyn = parse_config(args.config).dynamics
    rows = []
    for m in args.m:
        for a1 in args.a1:
            p = replace(dyn, base=replace(dyn.base, M=m, A=a1))
            rows.append({"m": m, "a1": a1, **classify_long_run(p).as_record()})
    write_csv(COLUMNS, rows, sys.stdout)
    bad = [r for r in rows if not r["consistent"]]
    if bad:
        print(f"# {len(bad)} cells where simulation disagrees with the criterion", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
