"""Concrete finite groups on element indices 0..n-1 (0 is the identity).

Groups carry a multiplication table (built lazily) and cached element
orders. Constructions here are the only way groups enter the package:
cyclic groups, direct products, split extensions by a cyclic group, and
permutation closures.
"""
from __future__ import annotations

import hashlib
import itertools
import re
from collections import Counter, deque
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from math import gcd

import numpy as np

from .arith import divisors, factorize, is_prime

CYCLIC_CAP = 10**6
TABLE_CAP = 2 * 10**4
ISO_CAP = 4096
FULL_ASSOC_CAP = 256


class CapExceeded(RuntimeError):
    """A construction or query exceeds the engine's size caps."""


def _check_product_cap(n: int) -> None:
    if n > CYCLIC_CAP:
        raise CapExceeded(f"order {n} exceeds cap {CYCLIC_CAP}")


def _check_table_cap(n: int) -> None:
    if n > TABLE_CAP:
        raise CapExceeded(f"order {n} exceeds table cap {TABLE_CAP}")


Product = Callable[[np.ndarray, np.ndarray], np.ndarray]


def _powers(product: Product, n: int, d: int) -> np.ndarray:
    """x**d for every element x, by square-and-multiply."""
    result = np.zeros(n, dtype=np.int64)
    base = np.arange(n, dtype=np.int64)
    while d:
        if d & 1:
            result = product(result, base)
        base = product(base, base)
        d >>= 1
    return result


def orders_from_product(product: Product, n: int) -> np.ndarray:
    """Element orders by direct powering: least divisor d of n with x**d = e."""
    orders = np.zeros(n, dtype=np.int64)
    for d in divisors(n):
        hit = (orders == 0) & (_powers(product, n, d) == 0)
        orders[hit] = d
        if orders.all():
            break
    if not orders.all():
        raise ValueError("not a group: some element has no order dividing n")
    return orders


def orders_from_table(mul: np.ndarray) -> np.ndarray:
    return orders_from_product(lambda x, y: mul[x, y], mul.shape[0])


class FiniteGroup:
    """A finite group of order ``n`` on indices ``0..n-1``.

    ``mul[a, b]`` is the index of the product a*b. The table may be supplied
    directly, through ``table_fn`` (called on first access), or as a
    vectorized ``product`` rule on index arrays. With a product rule, element
    orders are found without ever building the table.
    """

    def __init__(
        self,
        order: int,
        *,
        table: Optional[np.ndarray] = None,
        table_fn: Optional[Callable[[], np.ndarray]] = None,
        product: Optional[Product] = None,
        orders: Optional[np.ndarray] = None,
        inverses: Optional[np.ndarray] = None,
        label: str = "",
    ):
        if table is None and table_fn is None and product is None:
            raise ValueError("need a table, a table builder or a product rule")
        if table_fn is None and product is not None:
            idx = np.arange(order, dtype=np.int64)
            table_fn = lambda: product(idx[:, None], idx[None, :])  # noqa: E731
        self.order = int(order)
        self.label = label
        self._table = table
        self._table_fn = table_fn
        self._product = product
        self._orders = orders
        self._inv = inverses
        self._sig = None
        self._classes = None

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, label={self.label!r})"

    def __len__(self) -> int:
        return self.order

    @property
    def mul(self) -> np.ndarray:
        if self._table is None:
            _check_table_cap(self.order)
            self._table = np.ascontiguousarray(self._table_fn(), dtype=np.int32)
        return self._table

    @property
    def elem_order(self) -> np.ndarray:
        if self._orders is None:
            if self._table is None and self._product is not None:
                self._orders = orders_from_product(self._product, self.order)
            else:
                self._orders = orders_from_table(self.mul)
        return self._orders

    def multiply(self, x, y) -> np.ndarray:
        """Vectorized product of index arrays."""
        if self._table is None and self._product is not None:
            return self._product(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64))
        return self.mul[x, y]

    @property
    def inv(self) -> np.ndarray:
        if self._inv is None:
            self._inv = np.argmax(self.mul == 0, axis=1).astype(np.int32)
        return self._inv

    def verify(self, rng: Optional[np.random.Generator] = None) -> None:
        """Check the group axioms on the table and the Lagrange/identity facts.

        Associativity is checked on all triples up to order 256 and on
        10*n^2 random triples above that.
        """
        n, mul = self.order, self.mul
        idx = np.arange(n)
        if mul.shape != (n, n):
            raise ValueError("table has the wrong shape")
        if not (np.array_equal(mul[0], idx) and np.array_equal(mul[:, 0], idx)):
            raise ValueError("index 0 is not the identity")
        sorted_rows = np.sort(mul, axis=1)
        sorted_cols = np.sort(mul, axis=0)
        if not (np.all(sorted_rows == idx) and np.all(sorted_cols == idx[:, None])):
            raise ValueError("table is not a Latin square")
        if n <= FULL_ASSOC_CAP:
            lhs = mul[mul[:, :, None], idx[None, None, :]]  # (ab)c
            rhs = mul[idx[:, None, None], mul[None, :, :]]  # a(bc)
            if not np.array_equal(lhs, rhs):
                raise ValueError("table is not associative")
        else:
            rng = rng or np.random.default_rng(0)
            total = 10 * n * n
            chunk = 1 << 20
            for start in range(0, total, chunk):
                size = min(chunk, total - start)
                a, b, c = rng.integers(0, n, size=(3, size))
                if not np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]]):
                    raise ValueError("table is not associative")
        orders = self.elem_order
        if np.any(n % orders != 0):
            raise ValueError("element order does not divide the group order")
        if orders[0] != 1 or np.any(orders[1:] == 1):
            raise ValueError("only the identity may have order 1")

    def conjugacy_classes(self) -> np.ndarray:
        """Class id per element, numbered by first appearance."""
        if self._classes is None:
            mul, inv = self.mul, self.inv
            cls = np.full(self.order, -1, dtype=np.int64)
            next_id = 0
            for x in range(self.order):
                if cls[x] < 0:
                    cls[mul[mul[:, x], inv]] = next_id  # g x g^-1 over all g
                    next_id += 1
            self._classes = cls
        return self._classes

    def signatures(self) -> np.ndarray:
        """Per-element isomorphism invariants.

        Columns: order, centralizer size, number of square roots, number of
        cube roots, number of conjugacy classes met by the generators of
        <x> (the rational class of x), and a hash of the power-conjugacy
        profile of x.
        """
        if self._sig is None:
            mul, n = self.mul, self.order
            idx = np.arange(n)
            cent = (mul == mul.T).sum(axis=1)
            sq = np.bincount(mul[idx, idx], minlength=n)
            cube = np.bincount(mul[mul[idx, idx], idx], minlength=n)
            self._sig = np.stack(
                [
                    self.elem_order,
                    cent,
                    sq,
                    cube,
                    self._rational_class_sizes(),
                    self._power_conjugacy_keys(),
                ],
                axis=1,
            )
        return self._sig

    def _power_conjugacy_keys(self) -> np.ndarray:
        """For each x, a hash of the multiset of (o(z), k) over all z, where
        x z x^-1 = z^k (k = -1 when the conjugate leaves <z>).

        Separates split groups whose actions differ only in how the
        eigenvalues on different factors are tied together.
        """
        mul, n = self.mul, self.order
        idx = np.arange(n)
        pos = np.full((n, n), -1, dtype=np.int32)  # pos[z, z^k] = k
        cur = np.zeros(n, dtype=np.int64)
        for k in range(int(self.elem_order.max())):
            fresh = pos[idx, cur] < 0
            pos[idx[fresh], cur[fresh]] = k
            cur = mul[cur, idx]
        conj = mul[mul, self.inv[:, None]]  # conj[x, z] = x z x^-1
        codes = self.elem_order[None, :].astype(np.int64) * (n + 1) + pos[idx[None, :], conj] + 1
        codes.sort(axis=1)
        return np.array(
            [
                int.from_bytes(hashlib.blake2b(row.tobytes(), digest_size=7).digest(), "little")
                for row in codes
            ],
            dtype=np.int64,
        )

    def _rational_class_sizes(self) -> np.ndarray:
        cls = self.conjugacy_classes()
        n_cls = int(cls.max()) + 1
        orders = self.elem_order
        exponent = int(np.lcm.reduce(orders))
        # union classes c ~ class(x^k) for k running over units mod exponent
        parent = list(range(n_cls))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for k in _unit_generators(exponent):
            img = cls[_powers(self.multiply, self.order, k)]
            for a, b in set(zip(cls.tolist(), img.tolist())):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
        roots = np.array([find(c) for c in range(n_cls)])
        per_root = np.bincount(roots, minlength=n_cls)
        return per_root[roots[cls]]


def _unit_generators(e: int) -> list[int]:
    """A generating set of (Z/e)^*: every unit works; keep it small by
    adding units that enlarge the generated subgroup."""
    if e <= 2:
        return []
    units = [k for k in range(2, e) if gcd(k, e) == 1]
    gens, span = [], {1}
    for k in units:
        if k in span:
            continue
        gens.append(k)
        frontier = list(span)
        while frontier:
            new = []
            for a in frontier:
                for g in gens:
                    b = a * g % e
                    if b not in span:
                        span.add(b)
                        new.append(b)
            frontier = new
    return gens


class CyclicGroup(FiniteGroup):
    """C_n with arithmetic element orders; the table is materialized on demand."""

    def __init__(self, n: int, label: str = ""):
        idx = np.arange(n, dtype=np.int64)
        orders = n // np.gcd(idx, n)

        def build():
            return (idx[:, None] + idx[None, :]) % n

        super().__init__(
            n,
            table_fn=build,
            orders=orders,
            inverses=((-idx) % n).astype(np.int32),
            label=label or f"C{n}",
        )


@dataclass(frozen=True, eq=False)
class SubsetHandle:
    group: FiniteGroup
    mask: np.ndarray

    def __post_init__(self):
        if len(self.mask) != self.group.order:
            raise ValueError("membership mask length must equal the group order")

    @classmethod
    def of(cls, group: FiniteGroup, elements) -> "SubsetHandle":
        mask = np.zeros(group.order, dtype=bool)
        mask[np.asarray(list(elements), dtype=np.int64)] = True
        return cls(group, mask)

    @classmethod
    def whole(cls, group: FiniteGroup) -> "SubsetHandle":
        return cls(group, np.ones(group.order, dtype=bool))

    @property
    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def __len__(self) -> int:
        return int(self.mask.sum())

    def __contains__(self, x: int) -> bool:
        return bool(self.mask[x])

    def complement(self) -> "SubsetHandle":
        return SubsetHandle(self.group, ~self.mask)

    def __and__(self, other: "SubsetHandle") -> "SubsetHandle":
        return SubsetHandle(self.group, self.mask & other.mask)

    def __sub__(self, other: "SubsetHandle") -> "SubsetHandle":
        return SubsetHandle(self.group, self.mask & ~other.mask)


# constructions ---------------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")
    if n > CYCLIC_CAP:
        raise CapExceeded(f"cyclic order {n} exceeds cap {CYCLIC_CAP}")
    return CyclicGroup(n)


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    """Pairs (a, b) stored at index a*|B| + b."""
    na, nb = A.order, B.order
    n = na * nb
    if n > CYCLIC_CAP:
        raise CapExceeded(f"product order {n} exceeds cap")
    oa = A.elem_order.astype(np.int64)
    ob = B.elem_order.astype(np.int64)
    orders = np.lcm(oa[:, None], ob[None, :]).ravel()
    inverses = None
    if A._inv is not None and B._inv is not None:
        inverses = (A.inv[:, None].astype(np.int64) * nb + B.inv[None, :]).ravel()

    def build():
        _check_table_cap(n)
        ma, mb = A.mul.astype(np.int64), B.mul.astype(np.int64)
        ia = np.repeat(np.arange(na), nb)
        ib = np.tile(np.arange(nb), na)
        return ma[ia[:, None], ia[None, :]] * nb + mb[ib[:, None], ib[None, :]]

    return FiniteGroup(
        n, table_fn=build, orders=orders, inverses=inverses, label=f"{A.label}x{B.label}"
    )


def direct_product_all(groups: Sequence[FiniteGroup]) -> FiniteGroup:
    out = groups[0]
    for G in groups[1:]:
        out = direct_product(out, G)
    return out


def semidirect_cyclic(m: int, k: int, r: int) -> FiniteGroup:
    """C_m split by C_k acting through a -> a**r.

    Element (i, j) = a^i b^j sits at index j*m + i, and
    (i1, j1)(i2, j2) = (i1 + i2*r^j1 mod m, j1 + j2 mod k), so b a b^-1 = a^r.
    """
    if m < 1 or k < 1:
        raise ValueError("m and k must be positive")
    if m > 1 and not 1 <= r < m:
        raise ValueError(f"need 1 <= r < m, got r={r}, m={m}")
    if pow(r, k, m) != 1 % m:
        raise ValueError(f"{r}^{k} is not 1 mod {m}")
    n = m * k
    _check_product_cap(n)
    rpow = np.array([pow(r, j, m) for j in range(k)], dtype=np.int64)

    def product(x, y):
        i1, j1 = x % m, x // m
        i2, j2 = y % m, y // m
        return (i1 + i2 * rpow[j1]) % m + ((j1 + j2) % k) * m

    return FiniteGroup(n, product=product, label=f"C{m}:C{k}@{r}")


def _mixed_radix(invariants: Sequence[int]) -> np.ndarray:
    """All coordinate vectors of the abelian group, row t = element t."""
    grids = np.meshgrid(*[np.arange(d) for d in invariants], indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)


def _encode(coords: np.ndarray, invariants: Sequence[int]) -> np.ndarray:
    out = np.zeros(coords.shape[0], dtype=np.int64)
    for c, d in enumerate(invariants):
        out = out * d + coords[:, c] % d
    return out


def abelian_automorphism(invariants: Sequence[int], images: Sequence[Sequence[int]]) -> np.ndarray:
    """Permutation of the abelian group induced by generator images.

    ``images[i]`` is the coordinate vector of the image of generator i.
    Raises ValueError if the map is not a well-defined bijective endomorphism.
    """
    inv = list(invariants)
    M = np.array(images, dtype=np.int64)
    if M.shape != (len(inv), len(inv)):
        raise ValueError("automorphism needs one image vector per generator")
    for i, di in enumerate(inv):
        for j, dj in enumerate(inv):
            if (di * M[i, j]) % dj:
                raise ValueError("images do not respect generator orders")
    coords = _mixed_radix(inv)
    perm = _encode(coords @ M, inv)
    if len(np.unique(perm)) != len(perm):
        raise ValueError("images do not define an automorphism")
    return perm


def split_extension(invariants: Sequence[int], k: int, images: Sequence[Sequence[int]]) -> FiniteGroup:
    """A split by C_k, where A is abelian with the given invariants and the
    generator y of C_k acts as the automorphism given by ``images``.

    Indices: (a, j) at j*|A| + a; (a1, j1)(a2, j2) = (a1 + y^j1(a2), j1 + j2).
    """
    inv = [int(d) for d in invariants]
    m = int(np.prod(inv)) if inv else 1
    n = m * k
    _check_product_cap(n)
    perm = abelian_automorphism(inv, images)
    powers = [np.arange(m, dtype=np.int64)]
    for _ in range(k):
        powers.append(perm[powers[-1]])
    if not np.array_equal(powers[k], powers[0]):
        raise ValueError(f"automorphism order does not divide {k}")
    act = np.stack(powers[:k])  # act[j, a] = y^j(a)
    coords = _mixed_radix(inv)
    radix = np.array([int(np.prod(inv[c + 1 :])) for c in range(len(inv))], dtype=np.int64)
    mods = np.array(inv, dtype=np.int64)

    def product(x, y):
        x, y = np.broadcast_arrays(x, y)
        a1, j1 = x % m, x // m
        a2, j2 = y % m, y // m
        b = act[j1, a2]
        c = (coords[a1] + coords[b]) % mods
        return c @ radix + ((j1 + j2) % k) * m

    label = "[" + ",".join(map(str, inv)) + f"]:C{k}"
    return FiniteGroup(n, product=product, label=label)


def quaternion8() -> FiniteGroup:
    """Q8 on +-1, +-i, +-j, +-k (index 2t is +unit t, 2t+1 is -unit t)."""
    # unit products among 1, i, j, k as (sign, unit)
    prod = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    table = np.zeros((8, 8), dtype=np.int64)
    for x in range(8):
        for y in range(8):
            sx = -1 if x % 2 else 1
            sy = -1 if y % 2 else 1
            s, u = prod[(x // 2, y // 2)]
            s *= sx * sy
            table[x, y] = 2 * u + (0 if s > 0 else 1)
    return FiniteGroup(8, table=table.astype(np.int32), label="Q8")


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: Optional[int] = None) -> tuple[int, ...]:
    """Parse cycle notation such as ``(1 2 3)(4 5)`` into a 0-based image tuple."""
    text = text.strip()
    cycles = []
    for body in _CYCLE.findall(text):
        pts = [int(t) for t in body.replace(",", " ").split()]
        if any(p < 1 for p in pts):
            raise ValueError(f"points are 1-based, got {body!r}")
        cycles.append(pts)
    if _CYCLE.sub("", text).strip():
        raise ValueError(f"cannot parse permutation {text!r}")
    top = max([max(c) for c in cycles if c] + [degree or 1])
    img = list(range(top))
    seen = set()
    for c in cycles:
        if len(set(c)) != len(c) or seen & set(c):
            raise ValueError(f"cycles of {text!r} are not disjoint")
        seen |= set(c)
        for a, b in zip(c, c[1:] + c[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def read_permutation_file(path) -> list[tuple[int, ...]]:
    """One generator per line in cycle notation; blank lines are ignored."""
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    perms = [parse_permutation(ln) for ln in lines]
    degree = max([len(p) for p in perms] + [1])
    return [tuple(list(p) + list(range(len(p), degree))) for p in perms]


def from_permutations(generators: Sequence[Sequence[int]], cap: int = ISO_CAP) -> FiniteGroup:
    """Close the generators under composition (x*y applies x, then y)."""
    gens = [tuple(g) for g in generators]
    degree = max([len(g) for g in gens] + [1])
    gens = [g + tuple(range(len(g), degree)) for g in gens]
    for g in gens:
        if sorted(g) != list(range(degree)):
            raise ValueError(f"{g} is not a bijection")
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(g[x[t]] for t in range(degree))
            if y not in index:
                if len(elements) >= cap:
                    raise CapExceeded(f"permutation closure exceeds {cap}")
                index[y] = len(elements)
                elements.append(y)
                queue.append(y)
    arr = np.array(elements, dtype=np.int64)
    n = len(elements)
    table = np.empty((n, n), dtype=np.int32)
    for a in range(n):
        # x*y = apply x then y: (x*y)(t) = y[x[t]]
        comp = arr[:, arr[a]]
        table[a] = [index[tuple(row)] for row in comp.tolist()]
    return FiniteGroup(n, table=table, label=f"perm{n}")


# order sums ------------------------------------------------------------------


def psi(G: FiniteGroup) -> int:
    return int(G.elem_order.sum())


def psi_subset(X: SubsetHandle) -> int:
    return int(X.group.elem_order[X.mask].sum())


# structure -------------------------------------------------------------------


def generated_subgroup(G: FiniteGroup, gens) -> SubsetHandle:
    gens = np.asarray(list(gens), dtype=np.int64)
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    frontier = np.array([0])
    if len(gens) == 0:
        return SubsetHandle(G, mask)
    mul = G.mul
    while len(frontier):
        new = np.unique(mul[frontier][:, gens])
        new = new[~mask[new]]
        mask[new] = True
        frontier = new
    return SubsetHandle(G, mask)


def is_subgroup(S: SubsetHandle) -> bool:
    els = S.elements
    if not S.mask[0]:
        return False
    return bool(S.mask[S.group.mul[np.ix_(els, els)]].all())


def centralizer(G: FiniteGroup, S: SubsetHandle) -> SubsetHandle:
    mul = G.mul
    s = S.elements
    commute = mul[:, s] == mul[s, :].T
    return SubsetHandle(G, commute.all(axis=1))


def is_abelian(G: FiniteGroup) -> bool:
    mul = G.mul
    return bool(np.array_equal(mul, mul.T))


def is_cyclic(G: FiniteGroup) -> bool:
    return bool((G.elem_order == G.order).any())


def is_normal(G: FiniteGroup, S: SubsetHandle) -> bool:
    if not is_subgroup(S):
        raise ValueError("is_normal needs a subgroup")
    mul, inv = G.mul, G.inv
    s = S.elements
    conj = mul[mul[:, s], inv[:, None]]  # g s g^-1
    return bool(S.mask[conj].all())


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def _is_power_of(x: int, p: int) -> bool:
    while x % p == 0:
        x //= p
    return x == 1


def sylow(G: FiniteGroup, p: int) -> SubsetHandle:
    """A Sylow p-subgroup, grown greedily one p-element at a time."""
    if not is_prime(p) or G.order % p:
        raise ValueError(f"{p} is not a prime dividing {G.order}")
    target = _p_part(G.order, p)
    orders = G.elem_order
    p_elems = [int(x) for x in np.flatnonzero(orders > 1) if _is_power_of(int(orders[x]), p)]
    # larger orders first, so cyclic Sylows are found in one step
    p_elems.sort(key=lambda x: -int(orders[x]))
    H = generated_subgroup(G, [])
    gens: list[int] = []
    while len(H) < target:
        for x in p_elems:
            if x in H:
                continue
            cand = generated_subgroup(G, gens + [x])
            if _is_power_of(len(cand), p):
                gens.append(x)
                H = cand
                break
        else:
            raise AssertionError("no p-element extends the current p-subgroup")
    return H


def _generating_set(G: FiniteGroup) -> list[int]:
    """Greedy small generating set: repeatedly add the element outside the
    current subgroup that generates the largest subgroup together with it."""
    orders = G.elem_order
    by_order = sorted(range(1, G.order), key=lambda x: (-int(orders[x]), x))
    gens: list[int] = []
    H = generated_subgroup(G, gens)
    while len(H) < G.order:
        best, best_sub = None, None
        tried = 0
        for x in by_order:
            if x in H:
                continue
            cand = generated_subgroup(G, gens + [x])
            if best_sub is None or len(cand) > len(best_sub):
                best, best_sub = x, cand
                if len(cand) == G.order:
                    break
            tried += 1
            if tried >= 64:
                break
        gens.append(best)
        H = best_sub
    return gens


def _signature_keys(G: FiniteGroup) -> list[tuple]:
    return [tuple(row) for row in G.signatures().tolist()]


def _short_words(level: int, max_len: int = 4):
    """Freely reduced words in generator slots 0..level that end in slot
    ``level`` with exponent +1; letters are (slot, +-1)."""
    letters = [(s, e) for s in range(level + 1) for e in (1, -1)]
    for length in range(1, max_len):
        for prefix in itertools.product(letters, repeat=length):
            word = prefix + ((level, 1),)
            if any(a == (b[0], -b[1]) for a, b in zip(word, word[1:])):
                continue
            yield word


def _extend_map(mul_g, mul_h, gens, images, n) -> Optional[np.ndarray]:
    """Extend generator images to <gens> by BFS; None if inconsistent or
    not injective. Unreached elements map to -1."""
    phi = [-1] * n
    phi[0] = 0
    mul_g_list = mul_g  # row access below stays numpy-free via tolist caches
    used = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        px = phi[x]
        row_g = mul_g_list[x]
        row_h = mul_h[px]
        for g, h in zip(gens, images):
            y = row_g[g]
            img = row_h[h]
            if phi[y] < 0:
                if img in used:
                    return None
                phi[y] = img
                used.add(img)
                queue.append(y)
            elif phi[y] != img:
                return None
    return np.array(phi)


def is_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    """Decide G = H by backtracking over generator images.

    Candidate images must match the per-element signature. After each
    choice the map is extended to the subgroup generated so far and must
    stay a well-defined injective homomorphism; candidates for the next
    generator must reproduce every short word that falls back into that
    subgroup, and the order of every other short word.
    """
    if G.order != H.order:
        return False
    n = G.order
    if n > ISO_CAP:
        raise CapExceeded(f"isomorphism test capped at order {ISO_CAP}")
    if Counter(G.elem_order.tolist()) != Counter(H.elem_order.tolist()):
        return False
    ab_g, ab_h = is_abelian(G), is_abelian(H)
    if ab_g != ab_h:
        return False
    if ab_g:
        # finite abelian groups are determined by their element-order counts
        return True
    sig_g, sig_h = _signature_keys(G), _signature_keys(H)
    if Counter(sig_g) != Counter(sig_h):
        return False

    gens = _generating_set(G)
    other = _generating_set(H)
    if len(other) < len(gens):
        G, H, gens = H, G, other
        sig_g, sig_h = sig_h, sig_g
    mul_g, mul_h = G.mul, H.mul
    mul_g_rows, mul_h_rows = mul_g.tolist(), mul_h.tolist()
    ord_g, ord_h = G.elem_order, H.elem_order
    inv_g, inv_h = G.inv, H.inv
    by_sig: dict[tuple, list] = {}
    for x, s in enumerate(sig_h):
        by_sig.setdefault(s, []).append(x)
    by_sig = {s: np.array(v) for s, v in by_sig.items()}
    words = [list(_short_words(level)) for level in range(len(gens))]

    def candidates(level: int, images: list[int], phi: Optional[np.ndarray]) -> np.ndarray:
        cand = by_sig[sig_g[gens[level]]]
        if level == 0:
            return cand
        for word in words[level]:
            xg = 0
            xh = np.zeros(len(cand), dtype=np.int64)
            for slot, e in word:
                g = gens[slot] if e == 1 else int(inv_g[gens[slot]])
                xg = mul_g_rows[xg][g]
                if slot == level:
                    hs = cand if e == 1 else inv_h[cand]
                else:
                    hs = images[slot] if e == 1 else inv_h[images[slot]]
                xh = mul_h[xh, hs]
            target = phi[xg]
            cand = cand[(xh == target) if target >= 0 else (ord_h[xh] == ord_g[xg])]
            if len(cand) == 0:
                break
        return cand

    def search(level: int, images: list[int], phi: Optional[np.ndarray]) -> bool:
        if level == len(gens):
            return True
        for h in candidates(level, images, phi).tolist():
            if h in images:
                continue
            new_images = images + [h]
            new_phi = _extend_map(mul_g_rows, mul_h_rows, gens[: level + 1], new_images, n)
            if new_phi is None:
                continue
            if level + 1 == len(gens) and (new_phi < 0).any():
                continue
            if search(level + 1, new_images, new_phi):
                return True
        return False

    return search(0, [], None)


def psi_semidirect_formula(P: FiniteGroup, F: FiniteGroup, Z: SubsetHandle) -> int:
    """psi(P)*psi(Z) + |P|*psi(F minus Z) for a split P:F, with P a cyclic
    p-group of order coprime to |F| and Z the centralizer of P in F.

    A composite cyclic kernel breaks the formula: C_21:C_2 acting on the
    C_3 part only gives 343 here against 559 by enumeration.
    """
    if not is_cyclic(P):
        raise ValueError("the kernel must be cyclic")
    if P.order > 1 and len(factorize(P.order)) != 1:
        raise ValueError("the kernel must be a p-group")
    if gcd(P.order, F.order) != 1:
        raise ValueError("kernel and complement orders must be coprime")
    if Z.group is not F:
        raise ValueError("Z must be a subset of F")
    pz = psi_subset(Z)
    return psi(P) * pz + P.order * (psi(F) - pz)
