"""AII spaces SU(2m)/Sp(m): diagonal antipodal points and the Pfaffian constraint.

A diagonal point D = diag(1,..,1, e_1..e_m) is on the tau'-orbit side only when
Pf(D J D^T) = Pf(J), i.e. prod(e_k) = 1.  Prints the pool 2-number next to 2^(m-1) and 2^m.
"""

import argparse

from antipodal.catalog import canonical_maximal_set, get_entry
from antipodal.search import make_pool, two_number


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bridges", action="store_true", help="use non-monomial pools as well")
    args = ap.parse_args()
    for sid in ("SU4_mod_Sp2", "SU6_mod_Sp3"):
        e = get_entry(sid)
        m = e.group.n // 2
        pool = make_pool(e.space, 4, not args.bridges, bridge_depth=1)
        r = two_number(e.space, pool, certify=False)
        X = canonical_maximal_set(e)
        print(f"{sid}: pool {len(pool)}, found {r.value}, canonical {len(X)}, "
              f"2^(m-1) = {2 ** (m - 1)}, closed form 2^m = {2 ** m}")


if __name__ == "__main__":
    main()
