"""Component counts of the depth-1 and depth-2 synthetic channels against their bounds.

The input channel has ``n`` interior BSC parts at crossovers ``j / (2n + 2)``
plus a B(1/2) part, all with equal weight.
"""

import argparse
from fractions import Fraction

from rscpolar import check_phi_bounds, make_bsc, mix


def channel(n):
    parts = [(Fraction(1, n + 1), make_bsc(Fraction(j, 2 * n + 2))) for j in range(1, n + 1)]
    return mix(parts + [(Fraction(1, n + 1), make_bsc(Fraction(1, 2)))])


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=5)
    args = parser.parse_args()

    alphas = ("0", "1", "00", "01", "10", "11")
    print("n  " + "".join(f"{a:>14}" for a in alphas))
    for n in range(1, args.max_n + 1):
        report = {r.alpha: r for r in check_phi_bounds(channel(n))}
        cells = "".join(f"{f'{report[a].phi}/{report[a].bound}':>14}" for a in alphas)
        print(f"{n:<3}{cells}")


if __name__ == "__main__":
    main()
