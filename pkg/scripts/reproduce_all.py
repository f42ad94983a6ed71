"""Regenerate every figure/table CSV into one directory."""

import argparse
import time
from pathlib import Path

from slipmap.io import default_outdir
from slipmap.reproduce import SCENARIOS


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", type=Path, default=default_outdir())
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    args = ap.parse_args()
    for name, fn in SCENARIOS.items():
        t0 = time.perf_counter()
        tables = fn()
        for t in tables:
            t.write(args.out / f"{t.name}.{args.format}", args.format)
        print(f"{name:7s} {len(tables)} table(s)  {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
