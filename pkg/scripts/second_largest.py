"""Table of the largest non-cyclic psi per odd order, with the ratio to the
cyclic value and the bound it is compared against."""
import argparse
import csv
import sys

from psisum import harness
from psisum.arith import factorize, ratio_to_decimal
from psisum.bounds import f, odd_order_bound


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=500)
    args = ap.parse_args()

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["n", "tier", "descriptor", "psi", "ratio", "decimal", "f_q", "odd_order_bound"])
    for n in range(3, args.max_n + 1, 2):
        ranked = harness.scan_extremal(n)
        if len(ranked) < 2:
            continue
        desc, value, ratio = ranked[1]
        q, e = factorize(n)[0]
        ta = str(odd_order_bound(q)) if e == 1 else ""
        w.writerow([n, harness.order_profile(n).tier.value, desc, value, ratio,
                    ratio_to_decimal(ratio), f(q), ta])


if __name__ == "__main__":
    main()
