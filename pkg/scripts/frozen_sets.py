"""Frozen sets chosen on E(q) and on B(eps) of equal capacity, side by side.

Both masks rank indices by the Bhattacharyya parameter; the last line counts
the indices where the two choices differ.
"""

import argparse

from rscpolar import construct, make_bec, make_bsc, select_frozen
from rscpolar.algebra import binary_entropy


def bsc_with_capacity(c, iters=80):
    lo, hi = 0.0, 0.5
    for _ in range(iters):
        mid = (lo + hi) / 2
        lo, hi = (mid, hi) if 1 - binary_entropy(mid) > c else (lo, mid)
    return (lo + hi) / 2


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--q", type=float, default=0.5)
    parser.add_argument("--k", type=int, default=6)
    parser.add_argument("--rate", type=float, default=0.5)
    parser.add_argument("--cap", type=int, default=64)
    args = parser.parse_args()

    n = 2**args.k
    info = int(args.rate * n)
    eps = bsc_with_capacity(1 - args.q)
    masks = {}
    for name, w in ((f"E({args.q})", make_bec(args.q)), (f"B({eps:.5f})", make_bsc(eps))):
        masks[name] = select_frozen(construct(w, args.k, cap=args.cap), info, "z")
        print(f"{name:>12}  " + "".join("1" if f else "0" for f in masks[name]))
    a, b = masks.values()
    print(f"indices that differ: {sum(x != y for x, y in zip(a, b))} of {n}")


if __name__ == "__main__":
    main()
