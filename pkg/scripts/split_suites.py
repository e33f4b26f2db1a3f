"""Run the split-extension property suites and summarise equality cases."""
import argparse
from collections import Counter

from psisum import harness


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cap", type=int, default=4000)
    args = ap.parse_args()

    c24 = harness.abelian_kernel_checks(args.cap)
    strict = sum(c.psi < c.product_bound for c in c24)
    print(f"mixed extension: {strict}/{len(c24)} strictly below psi(<a>x<b>)psi(<y>)")

    c25 = harness.cyclic_kernel_checks(args.cap)
    rel = Counter(c.relation.value for c in c25)
    print(f"cyclic kernel: {len(c25)} groups, {dict(rel)}")
    agree = sum((c.relation is harness.Relation.EQUAL) == harness.cyclic_kernel_equality_predicted(c) for c in c25)
    print(f"equality iff |P| prime, [F:Z] = q, q || |F|: {agree}/{len(c25)}")
    nontrivial = [c for c in c25 if c.relation is harness.Relation.EQUAL and c.case.centralizer_order > 1]
    print(f"equality with nontrivial centralizer: {len(nontrivial)}, first: "
          + ", ".join(c.case.descriptor for c in nontrivial[:5]))


if __name__ == "__main__":
    main()
