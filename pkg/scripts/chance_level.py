#!/usr/bin/env python3
"""Agreement distribution between fingerprints of unrelated random images.

A sanity experiment: unrelated uniform noise should agree on about half
its bits, with spread shrinking as the bit count grows.
"""

import argparse
import statistics

from infokernel.images import random_image
from infokernel.kernel import KernelParams, build_kernel, similarity


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", type=int, default=8)
    ap.add_argument("--size", type=int, default=64)
    ap.add_argument("--bits", type=int, default=60_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    params = KernelParams(seed=args.seed, bit_count=args.bits, ceiling=255,
                          width=args.size, height=args.size, channels=1)
    fractions = []
    for pair in range(args.pairs):
        a = build_kernel(random_image(args.size, args.size, 1, 255,
                                      seed=1000 + 2 * pair), params)
        b = build_kernel(random_image(args.size, args.size, 1, 255,
                                      seed=1001 + 2 * pair), params)
        r = similarity(a, b)
        fractions.append(r.fraction)
        print(f"pair {pair}: {r.percent_text}%")
    mean = statistics.fmean(fractions)
    spread = max(fractions) - min(fractions)
    print(f"\nmean {mean * 100:.3f}%  spread {spread * 100:.3f} points "
          f"over {args.pairs} pairs at {args.bits} bits")


if __name__ == "__main__":
    main()
