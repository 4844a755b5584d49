"""Compare the exact LP minimum with the closed form over an eps grid."""

import argparse
from fractions import Fraction

from planefire.bounds import alpha_closed, lp_min


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, nargs="+", default=[10, 100, 1000])
    ap.add_argument("--steps", type=int, default=25, help="eps = k/10 for k = 1..steps")
    a = ap.parse_args()
    print(f"{'n':>5} {'eps':>5} {'lp_min':>10} {'closed':>10} {'thm bound':>10}  minimiser (x, y, z, w)")
    mismatches = 0
    for n in a.n:
        for k in range(1, a.steps + 1):
            eps = Fraction(k, 10)
            val, sol = lp_min(n, eps)
            closed = alpha_closed(n, eps)
            # the average-degree rate bound, written in terms of eps directly
            bound = Fraction(2, 9) * eps - (0 if eps <= 1 else Fraction(1, n))
            mark = "" if val == closed else "  *"
            mismatches += val != closed
            xs = ", ".join(str(v) for v in sol)
            print(f"{n:5d} {str(eps):>5} {float(val):10.5f} {float(closed):10.5f} {float(bound):10.5f}  ({xs}){mark}")
    print(f"{mismatches} cells differ from the closed form (marked *)")


if __name__ == "__main__":
    main()
