#!/usr/bin/env python3
"""Two-class recognition experiment on noisy variants of random images.

Builds a few random base images, derives noisy variants of each, trains
an averaged template per class on the first half, and classifies the
held-out half by maximal bit agreement.
"""

import argparse
import time

from infokernel.images import random_image
from infokernel.kernel import KernelParams, build_kernel
from infokernel.recognizer import average_kernels, classify
from infokernel.transforms import add_noise


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--classes", type=int, default=2)
    ap.add_argument("--variants", type=int, default=10,
                    help="noisy variants per class (half train, half test)")
    ap.add_argument("--noise", type=float, default=20.0)
    ap.add_argument("--size", type=int, default=64)
    ap.add_argument("--bits", type=int, default=60_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    params = KernelParams(seed=args.seed, bit_count=args.bits, ceiling=255,
                          width=args.size, height=args.size, channels=1)
    half = args.variants // 2
    t0 = time.time()

    templates = []
    held_out = []
    for c in range(args.classes):
        base = random_image(args.size, args.size, 1, 255, seed=11 * (c + 1))
        kernels = [build_kernel(add_noise(base, args.noise, noise_seed=s), params)
                   for s in range(1, args.variants + 1)]
        templates.append(average_kernels(kernels[:half], f"class{c}"))
        held_out.extend((f"class{c}", k) for k in kernels[half:])

    correct = 0
    for truth, probe in held_out:
        label, score = classify(probe, templates)
        mark = "ok " if label == truth else "MISS"
        correct += label == truth
        print(f"{mark} true={truth} predicted={label} "
              f"agreement={score.percent_text}%")
    print(f"\naccuracy {correct}/{len(held_out)} "
          f"({time.time() - t0:.1f}s, {args.bits} bits per kernel)")


if __name__ == "__main__":
    main()
