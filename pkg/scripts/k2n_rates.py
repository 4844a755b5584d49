"""Exact 1- and 2-surviving rates of K_{2,n} for small n."""

import argparse

from planefire.engine import SearchLimits, rho_exact, sn_exact, BudgetSchedule
from planefire.generators import k2n


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max", type=int, default=8)
    a = ap.parse_args()
    limits = SearchLimits(max_n=a.max + 2)
    print(f"{'n':>3} {'sn1(hub)':>9} {'sn1(leaf)':>10} {'rho1':>8} {'rho2':>8}")
    for n in range(2, a.max + 1):
        g = k2n(n)
        one = BudgetSchedule.constant(1)
        hub, leaf = sn_exact(g, 0, one, limits), sn_exact(g, 2, one, limits)
        r1, r2 = rho_exact(g, 1, limits), rho_exact(g, 2, limits)
        print(f"{n:3d} {hub:9d} {leaf:10d} {str(r1):>8} {str(r2):>8}")


if __name__ == "__main__":
    main()
