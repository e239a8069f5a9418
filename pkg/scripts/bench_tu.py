#!/usr/bin/env python3
"""Benchmark shuffle coding over a directory of TU-format datasets.

Each immediate subdirectory of --root holding a *_A.txt is compressed and
decompressed under the requested models; rates and speeds are printed as a
table (and optionally dumped as JSON).

    python3 scripts/bench_tu.py --root ~/datasets/TU --models er,pu
"""

import argparse
import glob
import json
import os
import sys
import time
from dataclasses import asdict

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from shufflecodec.compress import compress_corpus, decompress_corpus
from shufflecodec.datasets import load_tu_dataset


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--root", required=True)
    ap.add_argument("--models", default="er")
    ap.add_argument("--attrs", choices=["auto", "none", "uniform"], default="auto")
    ap.add_argument("--json", default=None, help="also write reports to this file")
    args = ap.parse_args()

    datasets = sorted(
        os.path.dirname(p) for p in glob.glob(os.path.join(args.root, "*", "*_A.txt"))
    )
    if not datasets:
        print(f"no TU datasets under {args.root}", file=sys.stderr)
        return 1
    models = [m.strip() for m in args.models.split(",") if m.strip()]

    header = (
        f"{'dataset':20s} {'model':5s} {'ordered':>8s} {'shuffle':>8s} "
        f"{'disc%':>6s} {'init b/e':>9s} {'enc s':>7s} {'dec s':>7s} {'canon%':>7s}"
    )
    print(header)
    print("-" * len(header))
    reports = []
    for directory in datasets:
        corpus = load_tu_dataset(directory)
        for model in models:
            data, rep = compress_corpus(corpus, model=model, attrs=args.attrs)
            started = time.perf_counter()
            decompress_corpus(data)
            rep.decode_seconds = time.perf_counter() - started
            reports.append(rep)
            print(
                f"{rep.dataset:20s} {rep.model:5s} {rep.ordered_bits_per_edge:8.3f} "
                f"{rep.shuffle_bits_per_edge:8.3f} {rep.discount_percent:6.1f} "
                f"{rep.initial_bits_per_edge:9.4f} {rep.encode_seconds:7.2f} "
                f"{rep.decode_seconds:7.2f} {100 * rep.canonize_share:7.1f}"
            )
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump([asdict(r) for r in reports], fh, sort_keys=True, indent=2)
        print(f"wrote {args.json}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
