#!/usr/bin/env python3
"""Region growth with the public pair's antenna count.

Prints the achievable S.D.o.F. region for a semi-symmetric network with
N1 fixed and N2 swept: single-user maxima, boundary endpoints, and every
strict-boundary point.  Even at N1 = NE, a confidential S.D.o.F. of N1
appears once the public arrays are large enough.
"""

import argparse

from sdofkit.region import AntennaConfig, boundary


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n1", type=int, default=4)
    ap.add_argument("--n2-max", type=int, default=8)
    args = ap.parse_args()

    print(f"{'N2':>3} {'SU1':>4} {'SU2':>4} {'E1':>8} {'E2':>8}  strict boundary")
    for n2 in range(1, args.n2_max + 1):
        cfg = AntennaConfig(ns1=args.n1, ns2=n2, nd1=args.n1, nd2=n2, ne=args.n1)
        reg = boundary(cfg)
        pts = " ".join(f"({p.d1},{p.d2})" for p in reg.strict) or "-"
        print(f"{n2:>3} {reg.su1:>4} {reg.su2:>4} "
              f"{str(tuple(reg.e1_point)):>8} {str(tuple(reg.e2_point)):>8}  {pts}")


if __name__ == "__main__":
    main()
