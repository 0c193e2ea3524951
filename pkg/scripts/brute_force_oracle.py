"""Exhaustive clique search over bridged pools against the greedy 2-number.

    python3 scripts/brute_force_oracle.py [--depth 2] [--max-size 6]
"""

import argparse
import time

from antipodal.catalog import get_entry
from antipodal.search import brute_force_max, make_pool, two_number

SPACES = ["SU2_mod_U1U1", "SU2_mod_SO2", "Sp1_mod_U1", "SO3_group", "SU3_mod_SO3",
          "SU2_group", "Sp1_group", "SU3_mod_U1U2"]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--depth", type=int, default=1)
    ap.add_argument("--max-size", type=int, default=6)
    args = ap.parse_args()
    print(f"{'space':16} {'pool':>6} {'brute':>6} {'greedy':>6} {'subsets':>9} {'sec':>6}")
    for sid in SPACES:
        sp = get_entry(sid).space
        t0 = time.perf_counter()
        pool = make_pool(sp, 4, False, bridge_depth=args.depth)
        best, _, visited = brute_force_max(pool, args.max_size)
        greedy = two_number(sp, pool, certify=False).value
        flag = "" if best == greedy else "  <-- greedy below brute force"
        print(f"{sid:16} {len(pool):6d} {best:6d} {greedy:6d} {visited:9d} "
              f"{time.perf_counter() - t0:6.1f}{flag}")


if __name__ == "__main__":
    main()
