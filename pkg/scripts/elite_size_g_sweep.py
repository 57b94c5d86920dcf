"""Elite size as a function of the public-good efficiency G.

Sweeps G for a fixed economy, prints the table, and reports where the elite
first extend and whether E* falls as 1/G beyond that point.

    python3 scripts/elite_size_g_sweep.py --m 1 --points 89
"""

import argparse
import math
import sys

import numpy as np

from rights_extension.output import write_csv
from rights_extension.sweep import SweepSpec, run_sweep


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=10)
    ap.add_argument("--e0", type=float, default=1.0)
    ap.add_argument("--m", type=float, default=1.0)
    ap.add_argument("--a", type=float, default=2.0)
    ap.add_argument("--beta", type=float, default=0.5)
    ap.add_argument("--g-min", type=float, default=0.11)
    ap.add_argument("--g-max", type=float, default=0.99)
    ap.add_argument("--points", type=int, default=89)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)

    base = {"n": args.n, "e0": args.e0, "m": args.m, "a": args.a, "g": 0.5,
            "production": {"family": "isoelastic", "beta": args.beta}}
    grid = tuple(float(g) for g in np.linspace(args.g_min, args.g_max, args.points))
    table = run_sweep(SweepSpec("solve", base, (("g", grid),)), workers=args.workers)
    write_csv(table.columns, table.rows, sys.stdout)

    es = np.array([math.nan if v is None else v for v in table.column("e_star")], dtype=float)
    extended = np.flatnonzero(es > args.e0)
    if len(extended) == 0:
        print("# no extension anywhere on the grid", file=sys.stderr)
        return 0
    j = extended[0]
    tail_ok = np.allclose(es[j:], 1 / np.array(grid[j:])) and np.all(np.diff(es[j:]) < 0)
    print(f"# first extension at g={grid[j]:.4f}; E* = 1/G decreasing afterwards: {tail_ok}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
