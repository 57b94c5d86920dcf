"""Search for economies where a larger identity group flips the elite to public provision.

Draws random economies that are extractive in the base game and reports the
ones where raising the group share p_tot alone (from --p-low to --p-high)
switches the decision from steal to public.

    python3 scripts/identity_flip_search.py --draws 2000 --alpha 0.5
"""

import argparse
import sys

import numpy as np

from rights_extension.game import GameParams, Institution, solve_equilibrium
from rights_extension.identity import IdentityParams, solve_equilibrium_identity
from rights_extension.output import write_csv
from rights_extension.production import ProductionSpec

COLUMNS = ("n", "e0", "m", "a", "g", "alpha", "e_p_low", "e_p_high")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--draws", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--alpha", type=float, default=0.5)
    ap.add_argument("--p-low", type=float, default=0.2)
    ap.add_argument("--p-high", type=float, default=0.9)
    ap.add_argument("--beta", type=float, default=0.5)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    f = ProductionSpec.isoelastic(args.beta)
    rows = []
    for _ in range(args.draws):
        N = int(rng.integers(3, 21))
        G = rng.uniform(1 / N, 1)
        E0 = rng.uniform(0, 1 / G)
        if not (0 < E0 <= args.p_low * N and E0 < 1 / G):
            continue
        base = GameParams(N, E0, rng.uniform(0.1, 5), rng.uniform(0.5, 5), G, f)
        if solve_equilibrium(base).V_star is not Institution.STEAL:
            continue
        lo = solve_equilibrium_identity(IdentityParams(base, args.alpha, args.p_low))
        hi = solve_equilibrium_identity(IdentityParams(base, args.alpha, args.p_high))
        if lo.outcome.V_star is Institution.STEAL and hi.outcome.V_star is Institution.PUBLIC:
            rows.append({"n": N, "e0": E0, "m": base.M, "a": base.A, "g": G, "alpha": args.alpha,
                         "e_p_low": lo.E_P, "e_p_high": hi.E_P})
    write_csv(COLUMNS, rows, sys.stdout)
    print(f"# {len(rows)} flip instances in {args.draws} draws", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
