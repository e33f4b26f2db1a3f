"""The bound functions f and g_q, prime-gap helpers, and their checks."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .arith import factorize, is_prime

PRIME_SEARCH_CAP = 10**7


def _as_ratio(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def f(x) -> Fraction:
    """(x^4 + x^3 - x^2 + 1) / (x^5 + 1), for x >= 2."""
    x = _as_ratio(x)
    if x < 2:
        raise ValueError(f"f is only used on x >= 2, got {x}")
    return (x**4 + x**3 - x**2 + 1) / (x**5 + 1)


def g(q: int, x) -> Fraction:
    """(x^2 - x + 1 + x(q^2 - q)) / ((x^2 - x + 1)(q^2 - q + 1))."""
    if not is_prime(q) or q < 3:
        raise ValueError(f"q must be an odd prime, got {q}")
    x = _as_ratio(x)
    if x < 2:
        raise ValueError(f"g_q is only used on x >= 2, got {x}")
    t = x * x - x + 1
    return (t + x * (q * q - q)) / (t * (q * q - q + 1))


def h(x: int) -> int:
    """Numerator factor of -f'(x)/x; positive for x >= 2."""
    return x**5 - 4 * x**3 + 8 * x**2 - 7 * x + 2


def smallest_prime_greater(q: int) -> int:
    p = q + 1
    while not is_prime(p):
        p += 1
    return p


def smallest_prime_1_mod(q: int) -> int:
    """Least prime q1 with q1 = 1 (mod q); always q1 >= 2q + 1 for odd q."""
    if q < 3:
        raise ValueError(f"q must be >= 3, got {q}")
    # q + 1 is even, so the first candidate is 2q + 1
    c = 2 * q + 1
    while c <= PRIME_SEARCH_CAP:
        if is_prime(c):
            assert c >= 2 * q + 1
            return c
        c += 2 * q
    raise RuntimeError(f"no prime = 1 mod {q} below {PRIME_SEARCH_CAP}")


@dataclass(frozen=True)
class BoundContext:
    q: int
    p: int
    q1: int
    p2: Optional[int] = None

    @classmethod
    def for_prime(cls, q: int, n: Optional[int] = None) -> "BoundContext":
        if q < 3 or not is_prime(q):
            raise ValueError(f"q must be an odd prime, got {q}")
        p2 = factorize(n)[-1][0] if n is not None and n > 1 else None
        ctx = cls(q, smallest_prime_greater(q), smallest_prime_1_mod(q), p2)
        ctx.check()
        return ctx

    def check(self) -> None:
        assert self.p > self.q
        assert self.q1 % self.q == 1 and self.q1 >= 2 * self.q + 1
        if self.q > 3:
            # Bertrand-style gap; the weaker p <= 2q - 2 follows
            assert self.p <= 2 * self.q - 3, (self.q, self.p)


def check_monotone(fn: Callable[[int], Fraction], lo: int, hi: int) -> bool:
    """True iff fn(x) > fn(x+1) at every integer x in [lo, hi).

    When ``fn`` is :func:`f`, also require h(x) > 0 at each point.
    """
    if not 2 <= lo < hi:
        raise ValueError("need 2 <= lo < hi")
    prev = fn(lo)
    for x in range(lo, hi):
        if fn is f and h(x) <= 0:
            return False
        cur = fn(x + 1)
        if not prev > cur:
            return False
        prev = cur
    return True


class Ordering(enum.Enum):
    LESS = "LESS"
    EQUAL = "EQUAL"
    GREATER = "GREATER"


def compare(a: Fraction, b: Fraction) -> Ordering:
    lhs = a.numerator * b.denominator
    rhs = b.numerator * a.denominator
    if lhs < rhs:
        return Ordering.LESS
    if lhs > rhs:
        return Ordering.GREATER
    return Ordering.EQUAL


def check_prop22(q: int) -> Ordering:
    """Compare g_q(q1) against f(p) for an odd prime q.

    q = 3 gives GREATER (85/301 > 121/521); every q > 3 must give LESS.
    """
    ctx = BoundContext.for_prime(q)
    verdict = compare(g(q, ctx.q1), f(ctx.p))
    if q == 3:
        assert (ctx.q1, ctx.p) == (7, 5)
        assert verdict is Ordering.GREATER
    else:
        assert verdict is Ordering.LESS, (q, ctx)
    return verdict


def odd_order_bound(q: int) -> Fraction:
    """Upper bound on psi(G)/psi(C_n) when q is the smallest prime and q || n."""
    if q == 3:
        return Fraction(85, 301)
    return f(smallest_prime_greater(q))
