"""One test per acceptance criterion. Each prints a single PASS/FAIL line
(also repeated in the terminal summary). All comparisons are exact; the
only tolerances are the wall-clock budgets below."""
import time
from fractions import Fraction

import numpy as np
import pytest
import sympy

from psisum import catalog, harness
from psisum.arith import psi_cyclic, psi_prime_power
from psisum.bounds import Ordering, check_prop22, compare, f, g
from psisum.groups import SubsetHandle, cyclic, psi, psi_semidirect_formula

BUDGET_SECONDS = {1: 10, 2: 1, 3: 120, 4: 300, 5: 300, 6: 1, 7: 180, 8: 60}
SCAN_MAX = 2025


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def brute_orders(G):
    """Orders by walking x, x^2, ... on the table, independent of the
    divisor-powering used by the library."""
    mul = G.mul
    out = np.zeros(G.order, dtype=np.int64)
    cur = np.arange(G.order)
    x = np.arange(G.order)
    for k in range(1, G.order + 1):
        out[(cur == 0) & (out == 0)] = k
        cur = mul[cur, x]
    return out


def brute_psi_cyclic(n):
    i = np.arange(n, dtype=np.int64)
    return int((n // np.gcd(i, n)).sum())


def _finish(acceptance_line, k, label, failures, timer, extra=""):
    within = timer.elapsed < BUDGET_SECONDS[k]
    ok = not failures and within
    detail = f"{timer.elapsed:.2f}s (budget {BUDGET_SECONDS[k]}s){extra}"
    if failures:
        detail += "; " + "; ".join(failures[:5])
    acceptance_line(f"criterion {k} {label}", ok, detail)
    assert not failures, failures
    assert within, f"took {timer.elapsed:.1f}s"


def test_criterion_1_pinned_constants(acceptance_line):
    failures = []
    with Timer() as t:
        pins = {
            "f(2)": (f(2), Fraction(7, 11)),
            "f(3)": (f(3), Fraction(25, 61)),
            "f(5)": (f(5), Fraction(121, 521)),
            "f(7)": (f(7), Fraction(337, 2101)),
            "g_3(7)": (g(3, 7), Fraction(85, 301)),
        }
        failures += [f"{k}={got}" for k, (got, want) in pins.items() if got != want]
        if compare(g(3, 7), f(5)) is not Ordering.GREATER:
            failures.append("g_3(7) <= f(5)")
        primes = list(sympy.primerange(5, 10**4 + 1))
        failures += [f"q={q}" for q in primes if check_prop22(q) is not Ordering.LESS]
    _finish(acceptance_line, 1, "pinned bound constants", failures, t, f", {len(primes)} primes q")


PSI_PINS = [
    ("C4", 11), ("C2xC2", 7), ("S3", 13), ("C6", 21), ("Q8", 27), ("C8", 43), ("C7:C3@2", 85),
    ("C21", 301), ("C3xC3", 25), ("C9", 61), ("C7xC7", 337), ("C49", 2101),
]


def test_criterion_2_psi_pins(acceptance_line):
    failures = []
    with Timer() as t:
        for desc, want in PSI_PINS:
            G = catalog.build(desc)
            got = int(brute_orders(G).sum())
            if got != want or psi(G) != want:
                failures.append(f"{desc}: {got}")
    _finish(acceptance_line, 2, "psi pins by enumeration", failures, t)


def test_criterion_3_formula_oracles(acceptance_line):
    failures = []
    with Timer() as t:
        for n in range(1, 20001):
            if psi_cyclic(n) != brute_psi_cyclic(n):
                failures.append(f"psi_cyclic({n})")
            fac = sympy.factorint(n)
            if len(fac) == 1:
                (p, e), = fac.items()
                if psi_prime_power(p, e) != brute_psi_cyclic(n):
                    failures.append(f"psi_prime_power({p},{e})")
        cases = harness.split_cases(4000, prime_power_kernel=True, odd=False)
        for case in cases:
            F = cyclic(case.k)
            Z = SubsetHandle.of(F, [j for j in range(case.k) if pow(case.r, j, case.m) == 1])
            G = catalog.build(case.descriptor)
            if psi_semidirect_formula(cyclic(case.m), F, Z) != psi(G):
                failures.append(case.descriptor)
        if len(cases) < 200:
            failures.append(f"only {len(cases)} split groups")
    _finish(
        acceptance_line, 3, "cyclic and split formulas vs enumeration", failures, t,
        f", n<=20000 and {len(cases)} split groups",
    )


def test_criterion_4_odd_bound(acceptance_line):
    failures = []
    with Timer() as t:
        rep = harness.verify_theoremA(SCAN_MAX)
        failures += rep.problems
        failures += [f"{r.n} {r.descriptor} VIOLATION" for r in rep.rows if r.relation is harness.Relation.VIOLATION]
        equal_rows = [r for r in rep.rows if r.relation is harness.Relation.EQUAL and r.tier is catalog.Tier.EXHAUSTIVE]
        failures += [f"{r.n} {r.descriptor} wrong structure" for r in equal_rows if not r.structure_ok]
        got = sorted(r.n for r in equal_rows)
        predicted = sorted(
            n for n in harness.odd_bound_equality_orders(SCAN_MAX)
            if catalog.classify_shape(n) != "other"
        )
        if got != predicted:
            failures.append(f"EQUAL orders {got} != predicted {predicted}")
        listed = {21, 105, 231, 357, 483, 245}
        if not listed <= set(got):
            failures.append(f"missing listed orders {sorted(listed - set(got))}")
        for r in equal_rows:
            want = harness.odd_bound_extremal(r.n)
            if r.n % 3 == 0 and not (want and want.tag == "A1"):
                failures.append(f"{r.n}: expected (C7:C3)xC_m1")
        n245 = [r for r in equal_rows if r.n == 245]
        if len(n245) != 1 or not n245[0].structure_ok:
            failures.append("245 not attained by C5xC7xC7")
    s = rep.summary()
    _finish(
        acceptance_line, 4, "odd-order bound scan", failures, t,
        f", {s['orders_exhaustive']} exhaustive orders, EQUAL at {got}",
    )


def test_criterion_5_f_bound(acceptance_line):
    failures = []
    with Timer() as t:
        rep = harness.verify_theorem9(SCAN_MAX)
        failures += rep.problems
        failures += [f"{r.n} {r.descriptor}" for r in rep.rows if r.fails()]
        eq = {(r.n, r.descriptor) for r in rep.rows if r.relation is harness.Relation.EQUAL}
        for n in (9, 45, 63):
            if not any(m == n for m, _ in eq):
                failures.append(f"no equality at {n}")
        if (63, "C3xC21") not in eq:
            failures.append("C3xC21 not at 25/61")
    _finish(acceptance_line, 5, "f(q) bound scan", failures, t, f", {len(eq)} equality rows")


def test_criterion_6_modular_tie(acceptance_line):
    failures = []
    with Timer() as t:
        a = psi(catalog.build("C3xC9"))
        b = psi(catalog.build("M27"))
        if not a == b == 187:
            failures.append(f"psi values {a}, {b}")
        if Fraction(187, 547) != Fraction(3**6 + 3**3 - 3**2 + 1, 3**7 + 1):
            failures.append("187/547 closed form")
        if psi_cyclic(27) != 547:
            failures.append("psi(C27)")
    _finish(acceptance_line, 6, "C3xC9 and M27 tie", failures, t)


def test_criterion_7_split_suites(acceptance_line):
    """Strictness of the abelian-kernel product bound, the cyclic-kernel g_q bound, and the equality clause as
    worded: equality exactly when |P| is prime and Z = C_F(P) is trivial."""
    failures = []
    with Timer() as t:
        c24 = harness.abelian_kernel_checks(4000)
        failures += [c.descriptor for c in c24 if not c.psi < c.product_bound]
        c25 = harness.cyclic_kernel_checks(4000)
        failures += [f"{c.case.descriptor} exceeds g" for c in c25 if c.relation is harness.Relation.VIOLATION]
        equal = {c.case.descriptor for c in c25 if c.relation is harness.Relation.EQUAL}
        for w in ("C7:C3@2", "C11:C5@3"):
            if w not in equal:
                failures.append(f"witness {w} not at equality")
        worded = {
            c.case.descriptor for c in c25 if c.alpha == 1 and c.case.centralizer_order == 1
        }
        extra = sorted(equal - worded, key=lambda d: (len(d), d))
        missing = sorted(worded - equal, key=lambda d: (len(d), d))
        if extra:
            failures.append(f"{len(extra)} equality cases with Z nontrivial, e.g. {', '.join(extra[:3])}")
        if missing:
            failures.append(f"{len(missing)} worded cases below the bound, e.g. {', '.join(missing[:3])}")
    _finish(
        acceptance_line, 7, "split-extension suites", failures, t,
        f", {len(c24)} + {len(c25)} instances",
    )


def test_criterion_8_background(acceptance_line):
    failures = []
    with Timer() as t:
        rep = harness.verify_background(SCAN_MAX)
        failures += rep.problems
        failures += [f"{r.n} {r.descriptor} {r.ratio} vs {r.bound}" for r in rep.rows if r.fails()]
        pinned = {r.descriptor: r.ratio for r in rep.rows if r.pinned}
        if pinned.get("S3") != Fraction(13, 21) or pinned.get("Q8") != Fraction(27, 43):
            failures.append("S3/Q8 ratios")
        for l in (3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27):
            if pinned.get(f"D{2 * l}") != harness.dihedral_value(l):
                failures.append(f"D{2 * l}")
        for alpha in range(1, 6):
            if pinned.get(harness.two_power_witness(alpha)) != harness.two_power_value(alpha):
                failures.append(f"alpha={alpha}")
        half = [r for r in rep.rows if not r.pinned and r.bound == Fraction(1, 2)]
        exhaustive = {r.n for r in half if r.tier is catalog.Tier.EXHAUSTIVE}
    _finish(
        acceptance_line, 8, "background spot checks", failures, t,
        f", 1/2 bound over {len(exhaustive)} exhaustive orders",
    )
