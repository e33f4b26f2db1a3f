"""Scan odd orders against the odd-order bound and write the report.

    python scripts/scan_odd_bound.py --max-n 2025 --out ta.csv
"""
import argparse
import time

from psisum import harness


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=2025)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--format", choices=sorted(harness.FORMATTERS), default="csv")
    ap.add_argument("--out", default="odd_bound.csv")
    args = ap.parse_args()

    t0 = time.perf_counter()
    rep = harness.verify_theoremA(args.max_n, jobs=args.jobs)
    with open(args.out, "w", newline="") as fh:
        fh.write(harness.FORMATTERS[args.format](rep))
    s = rep.summary()
    print(f"{s['result']}: {s['rows']} rows, {s['orders_exhaustive']} exhaustive orders, "
          f"{s['orders_family']} family orders, {time.perf_counter() - t0:.1f}s")
    print("equality orders:", rep.equal_orders())
    for p in rep.problems:
        print("problem:", p)


if __name__ == "__main__":
    main()
