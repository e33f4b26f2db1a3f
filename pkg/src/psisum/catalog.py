"""Group descriptors, named constructions, and isomorphism-class enumeration
for odd orders.

Descriptor strings::

    C21                      cyclic
    C3xC3xC5                 direct product (composite factors in parentheses)
    C7:C3@2                  C_7 split by C_3 acting by a -> a^2
    [9,3]:C2@[1,0;0,2]       abelian [9,3] split by C_2; row i = image of generator i
    S3  D18  Q8  M27         named groups
    G1@3  A1@m1=5  A2@q=5,m1=1  T9@q=3,k=5
"""
from __future__ import annotations

import enum
import itertools
import re
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable, Optional, Union

import numpy as np

from . import groups as grp
from .arith import (
    divisors,
    factorize,
    is_prime,
    is_squarefree,
    multiplicative_order,
    prime_divisors,
)
from .bounds import smallest_prime_greater
from .groups import FiniteGroup

ENUM_CAP = 4000


# descriptors -----------------------------------------------------------------


@dataclass(frozen=True)
class Cyclic:
    n: int

    @property
    def order(self) -> int:
        return self.n

    def __str__(self) -> str:
        return f"C{self.n}"


@dataclass(frozen=True)
class Product:
    factors: tuple

    @property
    def order(self) -> int:
        out = 1
        for d in self.factors:
            out *= d.order
        return out

    def __str__(self) -> str:
        return "x".join(_wrap(d) for d in self.factors)


@dataclass(frozen=True)
class SplitCyclic:
    m: int
    k: int
    r: int

    @property
    def order(self) -> int:
        return self.m * self.k

    def __str__(self) -> str:
        return f"C{self.m}:C{self.k}@{self.r}"


@dataclass(frozen=True)
class SplitAbelian:
    invariants: tuple
    k: int
    images: tuple

    @property
    def order(self) -> int:
        out = self.k
        for d in self.invariants:
            out *= d
        return out

    def __str__(self) -> str:
        inv = ",".join(map(str, self.invariants))
        rows = ";".join(",".join(map(str, row)) for row in self.images)
        return f"[{inv}]:C{self.k}@[{rows}]"


NAMED_TAGS = ("S3", "D", "Q8", "M", "G1", "A1", "A2", "T9")


@dataclass(frozen=True)
class Named:
    tag: str
    params: tuple = ()  # ((key, value), ...)

    def param(self, key: str) -> int:
        return dict(self.params)[key]

    @property
    def order(self) -> int:
        return 8 if self.tag == "Q8" else expand(self).order

    def __str__(self) -> str:
        p = dict(self.params)
        if self.tag in ("S3", "Q8"):
            return self.tag
        if self.tag == "D":
            return f"D{p['n']}"
        if self.tag == "M":
            return f"M{p['n']}"
        if self.tag == "G1":
            return f"G1@{p['alpha']}"
        if self.tag == "A1":
            return f"A1@m1={p['m1']}"
        if self.tag == "A2":
            return f"A2@q={p['q']},m1={p['m1']}"
        if self.tag == "T9":
            return f"T9@q={p['q']},k={p['k']}"
        raise ValueError(f"unknown tag {self.tag}")


Descriptor = Union[Cyclic, Product, SplitCyclic, SplitAbelian, Named]


def _wrap(d: Descriptor) -> str:
    s = str(d)
    return f"({s})" if any(c in s for c in ":@x") else s


def S3() -> Named:
    return Named("S3")


def D(n: int) -> Named:
    return Named("D", (("n", n),))


def Q8() -> Named:
    return Named("Q8")


def M(n: int) -> Named:
    return Named("M", (("n", n),))


def G1(alpha: int) -> Named:
    return Named("G1", (("alpha", alpha),))


def ExtremalA1(m1: int) -> Named:
    return Named("A1", (("m1", m1),))


def ExtremalA2(q: int, m1: int) -> Named:
    return Named("A2", (("q", q), ("m1", m1)))


def T9(q: int, k: int) -> Named:
    return Named("T9", (("q", q), ("k", k)))


def _prime_cube_root(n: int) -> int:
    fac = factorize(n)
    if len(fac) != 1 or fac[0][1] != 3:
        raise ValueError(f"M needs a prime cube, got {n}")
    return fac[0][0]


def _cyclic_or_product(parts: list) -> Descriptor:
    parts = [d for d in parts if not (isinstance(d, Cyclic) and d.n == 1)]
    if not parts:
        return Cyclic(1)
    return parts[0] if len(parts) == 1 else Product(tuple(parts))


def expand(d: Named) -> Descriptor:
    """Rewrite a named descriptor into core constructors."""
    t = d.tag
    if t == "S3":
        return SplitCyclic(3, 2, 2)
    if t == "Q8":
        return d
    if t == "D":
        n = d.param("n")
        if n % 2 or n < 6:
            raise ValueError(f"dihedral order must be even and >= 6, got {n}")
        l = n // 2
        return SplitCyclic(l, 2, l - 1)
    if t == "M":
        q = _prime_cube_root(d.param("n"))
        return SplitCyclic(q * q, q, q + 1)
    if t == "G1":
        return SplitCyclic(3, 2 ** d.param("alpha"), 2)
    if t == "A1":
        return _cyclic_or_product([SplitCyclic(7, 3, 2), Cyclic(d.param("m1"))])
    if t == "A2":
        q = d.param("q")
        p = smallest_prime_greater(q)
        return _cyclic_or_product([Cyclic(q), Cyclic(p), Cyclic(p), Cyclic(d.param("m1"))])
    if t == "T9":
        q = d.param("q")
        return _cyclic_or_product([Cyclic(q), Cyclic(q), Cyclic(d.param("k"))])
    raise ValueError(f"unknown tag {t}")


# parsing ---------------------------------------------------------------------


class DescriptorError(ValueError):
    pass


_ATOMS = [
    ("splitab", re.compile(r"\[(\d+(?:,\d+)*)\]:C(\d+)@\[(-?\d+(?:,-?\d+)*(?:;-?\d+(?:,-?\d+)*)*)\]")),
    ("split", re.compile(r"C(\d+):C(\d+)@(\d+)")),
    ("cyclic", re.compile(r"C(\d+)")),
    ("g1", re.compile(r"G1@(\d+)")),
    ("a1", re.compile(r"A1@m1=(\d+)")),
    ("a2", re.compile(r"A2@q=(\d+),m1=(\d+)")),
    ("t9", re.compile(r"T9@q=(\d+),k=(\d+)")),
    ("s3", re.compile(r"S3")),
    ("q8", re.compile(r"Q8")),
    ("dih", re.compile(r"D(\d+)")),
    ("mod", re.compile(r"M(\d+)")),
]


def _atom(kind: str, m: re.Match) -> Descriptor:
    g = m.groups()
    if kind == "splitab":
        inv = tuple(int(x) for x in g[0].split(","))
        rows = tuple(tuple(int(x) for x in row.split(",")) for row in g[2].split(";"))
        if len(rows) != len(inv) or any(len(r) != len(inv) for r in rows):
            raise DescriptorError(f"automorphism of {list(inv)} needs a {len(inv)}x{len(inv)} matrix")
        return SplitAbelian(inv, int(g[1]), rows)
    if kind == "split":
        return SplitCyclic(int(g[0]), int(g[1]), int(g[2]))
    if kind == "cyclic":
        return Cyclic(int(g[0]))
    if kind == "g1":
        return G1(int(g[0]))
    if kind == "a1":
        return ExtremalA1(int(g[0]))
    if kind == "a2":
        return ExtremalA2(int(g[0]), int(g[1]))
    if kind == "t9":
        return T9(int(g[0]), int(g[1]))
    if kind == "s3":
        return S3()
    if kind == "q8":
        return Q8()
    if kind == "dih":
        return D(int(g[0]))
    if kind == "mod":
        return M(int(g[0]))
    raise AssertionError(kind)


def parse(text: str) -> Descriptor:
    """Parse a descriptor string; inverse of ``str``."""
    s = text.strip()
    pos = 0

    def product() -> Descriptor:
        nonlocal pos
        parts = [factor()]
        while pos < len(s) and s[pos] == "x":
            pos += 1
            parts.append(factor())
        return parts[0] if len(parts) == 1 else Product(tuple(parts))

    def factor() -> Descriptor:
        nonlocal pos
        if pos < len(s) and s[pos] == "(":
            pos += 1
            inner = product()
            if pos >= len(s) or s[pos] != ")":
                raise DescriptorError(f"unbalanced parentheses in {text!r}")
            pos += 1
            return inner
        for kind, rx in _ATOMS:
            m = rx.match(s, pos)
            if m:
                pos = m.end()
                return _atom(kind, m)
        raise DescriptorError(f"cannot parse {text!r} at position {pos}")

    if not s:
        raise DescriptorError("empty descriptor")
    d = product()
    if pos != len(s):
        raise DescriptorError(f"trailing input in {text!r} at position {pos}")
    return d


# building --------------------------------------------------------------------


def build(d: Descriptor) -> FiniteGroup:
    if isinstance(d, str):
        d = parse(d)
    if isinstance(d, Cyclic):
        G = grp.cyclic(d.n)
    elif isinstance(d, Product):
        G = grp.direct_product_all([build(f) for f in d.factors])
    elif isinstance(d, SplitCyclic):
        G = grp.semidirect_cyclic(d.m, d.k, d.r)
    elif isinstance(d, SplitAbelian):
        G = grp.split_extension(d.invariants, d.k, d.images)
    elif isinstance(d, Named):
        G = grp.quaternion8() if d.tag == "Q8" else build(expand(d))
    else:
        raise DescriptorError(f"not a descriptor: {d!r}")
    G.label = str(d)
    return G


def validate_extremal_A1_params(m1: int) -> bool:
    return m1 >= 1 and gcd(m1, 42) == 1


def validate_extremal_A2_params(q: int, m1: int) -> bool:
    """(m1, p!) = 1, read as: no prime factor of m1 is <= p."""
    if m1 < 1 or not is_prime(q):
        return False
    p = smallest_prime_greater(q)
    return all(r > p for r in prime_divisors(m1))


# enumeration -----------------------------------------------------------------


class Tier(enum.Enum):
    EXHAUSTIVE = "EXHAUSTIVE"
    FAMILY = "FAMILY"


@dataclass
class EnumerationResult:
    order: int
    tier: Tier
    classes: list  # [(descriptor, FiniteGroup)]

    @property
    def descriptors(self) -> list:
        return [d for d, _ in self.classes]


def _units(m: int) -> list[int]:
    return [r for r in range(1, m) if gcd(r, m) == 1] if m > 1 else [0]


def cyclic_subgroup_reps(m: int, k: int, exact: bool = True) -> list[int]:
    """One generator per cyclic subgroup <r> of (Z/m)^* of order k (or
    dividing k when ``exact`` is false).

    r and r^u (u a unit mod k) give isomorphic split groups by changing the
    complement generator, so one representative per subgroup suffices.
    """
    if m == 1:
        return [0] if k == 1 or not exact else []
    seen = set()
    reps = []
    for r in _units(m):
        o = multiplicative_order(r, m)
        if (o != k) if exact else (k % o):
            continue
        key = frozenset(pow(r, j, m) for j in range(o))
        if key in seen:
            continue
        seen.add(key)
        reps.append(r)
    return reps


def _invariant_key(G: FiniteGroup) -> tuple:
    return tuple(np.bincount(G.elem_order, minlength=G.order + 1).tolist())


def dedupe(candidates: Iterable[Descriptor]) -> list:
    """Keep one (descriptor, group) per isomorphism class, first seen wins."""
    classes = []
    buckets: dict = defaultdict(list)
    for d in candidates:
        G = build(d)
        key = (G.order, _invariant_key(G))
        if any(grp.is_isomorphic(G, H) for _, H in buckets[key]):
            continue
        buckets[key].append((d, G))
        classes.append((d, G))
    return classes


def squarefree_candidates(n: int) -> list[Descriptor]:
    """C_n plus C_m:C_k@r with faithful action, one r per subgroup <r>.

    Every group of squarefree order is C_m:C_k with (m, k) = 1; the kernel
    of the action is a direct factor that can be moved into C_m, so faithful
    actions cover every class.
    """
    out: list[Descriptor] = [Cyclic(n)]
    for k in divisors(n):
        m = n // k
        if k == 1 or m == 1:
            continue
        for r in cyclic_subgroup_reps(m, k):
            out.append(SplitCyclic(m, k, r))
    return out


def squarefree_candidates_raw(n: int) -> list[Descriptor]:
    """Every (k, m, r) with r^k = 1 mod m, unreduced."""
    out: list[Descriptor] = []
    for k in divisors(n):
        m = n // k
        if m == 1:
            out.append(Cyclic(n))
            continue
        for r in _units(m):
            if pow(r, k, m) == 1:
                out.append(SplitCyclic(m, k, r))
    return out


def enumerate_squarefree(n: int) -> EnumerationResult:
    if n < 1 or n % 2 == 0 or not is_squarefree(n) or n > ENUM_CAP:
        raise ValueError(f"need odd squarefree n <= {ENUM_CAP}, got {n}")
    return EnumerationResult(n, Tier.EXHAUSTIVE, dedupe(squarefree_candidates(n)))


def _mat_mul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Batched 2x2 product mod p; arrays of shape (N, 2, 2)."""
    return np.einsum("nij,njk->nik", A, B) % p


def _gl2_elements_of_order_dividing(p: int, q: int) -> np.ndarray:
    """All M in GL(2, p) with M^q = I, as an (N, 2, 2) array."""
    vals = np.arange(p)
    a, b, c, d = (x.ravel() for x in np.meshgrid(vals, vals, vals, vals, indexing="ij"))
    Ms = np.stack([a, b, c, d], axis=1).reshape(-1, 2, 2).astype(np.int64)
    Ms = Ms[(a * d - b * c) % p != 0]
    # M^q by square-and-multiply
    result = np.broadcast_to(np.eye(2, dtype=np.int64), Ms.shape).copy()
    base, e = Ms.copy(), q
    while e:
        if e & 1:
            result = _mat_mul(result, base, p)
        base = _mat_mul(base, base, p)
        e >>= 1
    return Ms[(result == np.eye(2, dtype=np.int64)).all(axis=(1, 2))]


def _gl2_subgroup_reps(p: int, q: int) -> list[np.ndarray]:
    """Nontrivial cyclic subgroups of order q in GL(2, p), up to conjugacy.

    For a prime q != p these elements are semisimple, so conjugacy of
    elements is decided by the characteristic polynomial (trace, det);
    two subgroups are conjugate iff a generator of one is conjugate to a
    generator of the other, which the set of generator char-polys detects.
    """
    eye = np.eye(2, dtype=np.int64)
    reps, seen = [], set()
    for M in _gl2_elements_of_order_dividing(p, q):
        if (M == eye).all():
            continue
        powers, X = [], M.copy()
        for _ in range(1, q):
            powers.append((int(X[0, 0] + X[1, 1]) % p, int(X[0, 0] * X[1, 1] - X[0, 1] * X[1, 0]) % p))
            X = (X @ M) % p
        key = frozenset(powers)
        if key not in seen:
            seen.add(key)
            reps.append(M)
    return reps


def p2q_candidates(p: int, q: int) -> list[Descriptor]:
    """Split candidates of order p^2 q for odd primes p != q."""
    out: list[Descriptor] = [Cyclic(p * p * q), Product((Cyclic(p), Cyclic(p * q)))]
    # normal Sylow p: A:C_q with A in {C_p^2, C_p x C_p}
    for r in cyclic_subgroup_reps(p * p, q):
        out.append(SplitCyclic(p * p, q, r))
    for Mx in _gl2_subgroup_reps(p, q):
        # rows of images = images of generators; the matrix acts on row vectors
        out.append(SplitAbelian((p, p), q, tuple(tuple(int(v) for v in row) for row in Mx)))
    # normal Sylow q: C_q:A with A in {C_p^2, C_p x C_p}
    for r in cyclic_subgroup_reps(q, p * p, exact=False):
        if r != 1:
            out.append(SplitCyclic(q, p * p, r))
    for r in cyclic_subgroup_reps(q, p):
        # a nontrivial C_p x C_p -> Aut(C_q) has kernel C_p, which splits
        # off as a direct factor
        out.append(Product((SplitCyclic(q, p, r), Cyclic(p))))
    return out


def enumerate_p2q(p: int, q: int) -> EnumerationResult:
    if not (is_prime(p) and is_prime(q) and p % 2 and q % 2 and p != q):
        raise ValueError(f"need distinct odd primes, got p={p}, q={q}")
    n = p * p * q
    if n > ENUM_CAP:
        raise grp.CapExceeded(f"order {n} exceeds enumeration cap {ENUM_CAP}")
    return EnumerationResult(n, Tier.EXHAUSTIVE, dedupe(p2q_candidates(p, q)))


def prime_cube_candidates(p: int) -> list[Descriptor]:
    return [
        Cyclic(p**3),
        Product((Cyclic(p), Cyclic(p * p))),
        Product((Cyclic(p), Cyclic(p), Cyclic(p))),
        M(p**3),
        SplitAbelian((p, p), p, ((1, 1), (0, 1))),
    ]


def _partitions(e: int, largest: Optional[int] = None):
    largest = e if largest is None else largest
    if e == 0:
        yield ()
        return
    for first in range(min(e, largest), 0, -1):
        for rest in _partitions(e - first, first):
            yield (first,) + rest


def abelian_descriptors(n: int) -> list[Descriptor]:
    """All abelian groups of order n, written by invariant factors."""
    per_prime = []
    for p, e in factorize(n):
        per_prime.append([[p**part for part in lam] for lam in _partitions(e)])
    out = []
    for combo in itertools.product(*per_prime):
        width = max((len(c) for c in combo), default=0)
        factors = [1] * width
        for powers in combo:
            for i, pw in enumerate(powers):
                factors[width - 1 - i] *= pw
        out.append(_cyclic_or_product([Cyclic(f) for f in factors]))
    return out or [Cyclic(1)]


def family_candidates(n: int) -> list[Descriptor]:
    """Known constructions of order n: abelian groups, coprime metacyclic
    groups, prime-cube factors times a cyclic cofactor, and the named
    extremal families."""
    out = abelian_descriptors(n)
    for k in divisors(n):
        m = n // k
        if k == 1 or m == 1 or gcd(m, k) != 1:
            continue
        for r in cyclic_subgroup_reps(m, k):
            out.append(SplitCyclic(m, k, r))
    for p, e in factorize(n):
        if e == 3 and p**3 <= ENUM_CAP:
            c = n // p**3
            for d in prime_cube_candidates(p)[3:]:
                out.append(_cyclic_or_product([d, Cyclic(c)]))
    if n % 21 == 0 and validate_extremal_A1_params(n // 21):
        out.append(ExtremalA1(n // 21))
    q = factorize(n)[0][0] if n > 1 else None
    if q and q > 3 and n % q == 0:
        p = smallest_prime_greater(q)
        if n % (q * p * p) == 0 and validate_extremal_A2_params(q, n // (q * p * p)):
            out.append(ExtremalA2(q, n // (q * p * p)))
    if q and n % (q * q) == 0:
        out.append(T9(q, n // (q * q)))
    return out


def classify_shape(n: int) -> str:
    """'squarefree', 'p2', 'p3', 'p2q' or 'other'."""
    fac = factorize(n)
    exps = sorted(e for _, e in fac)
    if all(e == 1 for e in exps):
        return "squarefree"
    if exps == [2]:
        return "p2"
    if exps == [3]:
        return "p3"
    if exps == [1, 2]:
        return "p2q"
    return "other"


def enumerate_supported(n: int) -> EnumerationResult:
    if n < 1 or n % 2 == 0:
        raise ValueError(f"need a positive odd order, got {n}")
    if n > ENUM_CAP:
        raise grp.CapExceeded(f"order {n} exceeds enumeration cap {ENUM_CAP}")
    shape = classify_shape(n)
    fac = factorize(n)
    if shape == "squarefree":
        return enumerate_squarefree(n)
    if shape == "p2":
        p = fac[0][0]
        cands = [Cyclic(p * p), Product((Cyclic(p), Cyclic(p)))]
        return EnumerationResult(n, Tier.EXHAUSTIVE, dedupe(cands))
    if shape == "p3":
        return EnumerationResult(n, Tier.EXHAUSTIVE, dedupe(prime_cube_candidates(fac[0][0])))
    if shape == "p2q":
        p = next(r for r, e in fac if e == 2)
        q = next(r for r, e in fac if e == 1)
        return enumerate_p2q(p, q)
    return EnumerationResult(n, Tier.FAMILY, dedupe(family_candidates(n)))


@lru_cache(maxsize=None)
def squarefree_class_count(n: int) -> int:
    """Number of groups of squarefree order n by Hölder's formula:
    sum over m | n of prod over primes p | n/m of (p^c(p) - 1)/(p - 1),
    with c(p) the number of primes r | m with r = 1 mod p."""
    total = 0
    for m in divisors(n):
        term = 1
        for p in prime_divisors(n // m):
            c = sum(1 for r in prime_divisors(m) if r % p == 1)
            term *= (p**c - 1) // (p - 1)
        total += term
    return total
