"""Command-line surface: build, compare, train, classify, bench.

Exit codes: 0 success, 1 domain error (one-line message on stderr),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import ikrn, netpbm, oracle
from .kernel import (DEFAULT_BIT_COUNT, DEFAULT_SEED, KernelParams,
                     build_kernel, similarity)
from .recognizer import LabeledTemplate, average_kernels, classify
from .similarity import SimilarityResult
from .transforms import bench_table, bench_transforms, default_suite, resize_bilinear

_IMAGE_SUFFIXES = (".pgm", ".ppm", ".pnm")


def _parse_resize(text: str):
    m = re.fullmatch(r"(\d+)x(\d+)", text)
    if not m:
        raise argparse.ArgumentTypeError("expected WxH, e.g. 64x64")
    return int(m.group(1)), int(m.group(2))


def _load_image(path, resize=None):
    img = netpbm.read_image(path)
    if resize is not None:
        img = resize_bilinear(img, resize[0], resize[1])
    return img


def _compare_line(result: SimilarityResult) -> str:
    return (f"matches={result.matches} total={result.total} "
            f"percent={result.percent_text}")


def _add_build_flags(p, resize=True):
    p.add_argument("--bits", type=int, default=DEFAULT_BIT_COUNT,
                   help="kernel length in bits (default %(default)s)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                   help="generator seed (default %(default)s)")
    if resize:
        p.add_argument("--resize", type=_parse_resize, default=None,
                       metavar="WxH", help="bilinear resample before kerneling")
    p.add_argument("--workers", type=int, default=None,
                   help="thread count for kernel builds (default: auto)")


def _cmd_kernel(args) -> int:
    img = _load_image(args.image, args.resize)
    params = KernelParams.for_image(img, args.bits, args.seed)
    kernel = build_kernel(img, params, workers=args.workers)
    ikrn.write_kernel(kernel, args.output)
    return 0


def _cmd_compare(args) -> int:
    a = ikrn.read_kernel(args.a)
    b = ikrn.read_kernel(args.b)
    print(_compare_line(similarity(a, b)))
    return 0


def _cmd_compare_images(args) -> int:
    a = _load_image(args.a, args.resize)
    b = _load_image(args.b, args.resize)
    params = KernelParams.for_image(a, args.bits, args.seed)
    ka = build_kernel(a, params, workers=args.workers)
    kb = build_kernel(b, params, workers=args.workers)
    print(_compare_line(similarity(ka, kb)))
    return 0


def _gather_training_files(inputs) -> list:
    paths = []
    for raw in inputs:
        p = Path(raw)
        if p.is_dir():
            paths.extend(sorted(
                q for q in p.iterdir()
                if q.suffix.lower() in _IMAGE_SUFFIXES + (".ikrn",)))
        else:
            paths.append(p)
    if not paths:
        raise ValueError("no training inputs found")
    return paths


def _cmd_train(args) -> int:
    kernels = []
    for path in _gather_training_files(args.inputs):
        if path.suffix.lower() == ".ikrn":
            kernels.append(ikrn.read_kernel(path))
        else:
            img = netpbm.read_image(path)
            params = KernelParams.for_image(img, args.bits, args.seed)
            kernels.append(build_kernel(img, params, workers=args.workers))
    template = average_kernels(kernels, args.label)
    ikrn.write_kernel(template.kernel, args.output)
    return 0


def _load_manifest(path) -> list:
    base = Path(path).parent
    try:
        entries = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise ValueError(f"malformed manifest: {e}") from None
    if not isinstance(entries, list) or not entries:
        raise ValueError("malformed manifest: expected a non-empty list")
    templates = []
    labels = set()
    for entry in entries:
        if not isinstance(entry, dict) or "label" not in entry or "path" not in entry:
            raise ValueError("malformed manifest: entries need label and path")
        label = str(entry["label"])
        if label in labels:
            raise ValueError(f"duplicate manifest label: {label}")
        labels.add(label)
        kernel = ikrn.read_kernel(base / entry["path"])
        if not kernel.is_template:
            raise ValueError(f"not a template kernel: {entry['path']}")
        templates.append(LabeledTemplate(label, kernel))
    return templates


def _cmd_classify(args) -> int:
    templates = _load_manifest(args.manifest)
    ref = templates[0].kernel.params
    for t in templates[1:]:
        if t.kernel.params != ref:
            raise ValueError("incomparable kernels in manifest")
    img = netpbm.read_image(args.image)
    bits = args.bits if args.bits is not None else ref.bit_count
    seed = args.seed if args.seed is not None else ref.seed
    params = KernelParams.for_image(img, bits, seed)
    probe = build_kernel(img, params, workers=args.workers)
    label, score = classify(probe, templates)
    if args.min_similarity is not None:
        threshold = args.min_similarity * score.total / 100.0
        if score.matches < threshold:
            print(f"rejected label={label} {_compare_line(score)}")
            return 1
    print(f"label={label} {_compare_line(score)}")
    return 0


def _cmd_bench(args) -> int:
    img = netpbm.read_image(args.image)
    params = KernelParams.for_image(img, args.bits, args.seed)
    suite = default_suite(img.channels, noise_seed=args.noise_seed)
    rows = bench_transforms(img, params, suite, workers=args.workers)
    if args.json:
        for row in rows:
            print(row.to_json())
    else:
        print(bench_table(rows))
    return 0


def _cmd_oracle_kernel(args) -> int:
    print(oracle.exact_kernel(oracle.BitString.from_str(args.bitstring)).to01())
    return 0


def _cmd_oracle_compare(args) -> int:
    result = oracle.exact_similarity(oracle.BitString.from_str(args.s1),
                                     oracle.BitString.from_str(args.s2))
    print(_compare_line(result))
    return 0


def _cmd_oracle_classify(args) -> int:
    print(oracle.classify_transformation(oracle.BitString.from_str(args.source),
                                         oracle.BitString.from_str(args.variant)))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="infokernel",
        description="Bit-agreement fingerprints for images and bit strings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kernel", help="fingerprint an image into an .ikrn file")
    p.add_argument("image")
    p.add_argument("-o", "--output", required=True)
    _add_build_flags(p)
    p.set_defaults(func=_cmd_kernel)

    p = sub.add_parser("compare", help="bit agreement of two .ikrn files")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("compare-images", help="fingerprint and compare two images")
    p.add_argument("a")
    p.add_argument("b")
    _add_build_flags(p)
    p.set_defaults(func=_cmd_compare_images)

    p = sub.add_parser("train", help="average kernels into a labeled template")
    p.add_argument("inputs", nargs="+",
                   help="images, .ikrn files, or directories of either")
    p.add_argument("--label", required=True)
    p.add_argument("-o", "--output", required=True)
    _add_build_flags(p, resize=False)
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("classify", help="best-matching template for an image")
    p.add_argument("image")
    p.add_argument("--manifest", required=True,
                   help="JSON list of {label, path} template entries")
    p.add_argument("--bits", type=int, default=None,
                   help="kernel length (default: from the templates)")
    p.add_argument("--seed", type=int, default=None,
                   help="generator seed (default: from the templates)")
    p.add_argument("--min-similarity", type=float, default=None, metavar="PERCENT",
                   help="reject (exit 1) when best agreement is below this percent")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("bench", help="fingerprint agreement under standard transforms")
    p.add_argument("image")
    p.add_argument("--suite", choices=["default"], default="default")
    p.add_argument("--bits", type=int, default=DEFAULT_BIT_COUNT)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--noise-seed", type=int, default=1)
    p.add_argument("--json", action="store_true",
                   help="emit JSON lines instead of the text table")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("oracle", help="exact brute-force kernels of bit strings")
    osub = p.add_subparsers(dest="oracle_command", required=True)
    q = osub.add_parser("kernel", help="print the full 2^n kernel bits")
    q.add_argument("bitstring")
    q.set_defaults(func=_cmd_oracle_kernel)
    q = osub.add_parser("compare", help="kernel agreement of two bit strings")
    q.add_argument("s1")
    q.add_argument("s2")
    q.set_defaults(func=_cmd_oracle_compare)
    q = osub.add_parser("classify", help="1 if variant is a weak transform of source")
    q.add_argument("source")
    q.add_argument("variant")
    q.set_defaults(func=_cmd_oracle_classify)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
