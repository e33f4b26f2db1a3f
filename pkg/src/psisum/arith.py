"""Exact integer arithmetic: primes, factorization, Euler phi and the
order-sum of cyclic groups.

Every ratio in this package is a :class:`fractions.Fraction`, which keeps
numerator and denominator coprime with a positive denominator.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

ExactRatio = Fraction
Factorization = list[tuple[int, int]]


def _check_positive(n: int) -> None:
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    if n % 3 == 0:
        return n == 3
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


def primes_up_to(limit: int) -> list[int]:
    """Sieve of Eratosthenes."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


@lru_cache(maxsize=65536)
def _factorize(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def factorize(n: int) -> Factorization:
    """Return ``[(p, e), ...]`` with strictly increasing primes ``p``.

    Trial division up to sqrt(n); ``factorize(1) == []``.
    """
    _check_positive(n)
    return list(_factorize(n))


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


def smallest_prime_divisor(n: int) -> int:
    if n < 2:
        raise ValueError(f"{n} has no prime divisors")
    return factorize(n)[0][0]


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(n))


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    _check_positive(n)
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def multiplicative_order(r: int, m: int) -> int:
    """Order of ``r`` in the unit group mod ``m`` (1 when ``m == 1``)."""
    if m == 1:
        return 1
    r %= m
    if gcd(r, m) != 1:
        raise ValueError(f"{r} is not a unit mod {m}")
    for d in divisors(euler_phi(m)):
        if pow(r, d, m) == 1:
            return d
    raise AssertionError("unreachable: Euler's theorem")


def psi_prime_power(p: int, m: int) -> int:
    """Order-sum of the cyclic group of order ``p**m``: (p^(2m+1)+1)/(p+1)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1:
        raise ValueError(f"exponent must be positive, got {m}")
    num = p ** (2 * m + 1) + 1
    q, rem = divmod(num, p + 1)
    assert rem == 0
    return q


def psi_cyclic(n: int) -> int:
    """Order-sum of C_n, multiplicative over the prime-power factorization."""
    _check_positive(n)
    out = 1
    for p, e in factorize(n):
        out *= psi_prime_power(p, e)
    return out


def lam(k: int) -> Fraction:
    """Normalized cyclic order-sum psi(C_k)/k."""
    _check_positive(k)
    return Fraction(psi_cyclic(k), k)


def psi_cyclic_lower_bound(n: int) -> Fraction:
    """q*n^2/(p+1) with q, p the smallest and largest primes dividing n."""
    if n < 2:
        raise ValueError("the lower bound needs n >= 2")
    primes = prime_divisors(n)
    return Fraction(primes[0] * n * n, primes[-1] + 1)


def ratio_to_decimal(x: Fraction, digits: int = 6) -> str:
    """Display-only decimal, round-half-even at ``digits`` significant digits."""
    from decimal import ROUND_HALF_EVEN, Context, Decimal

    ctx = Context(prec=digits, rounding=ROUND_HALF_EVEN)
    return str(ctx.divide(Decimal(x.numerator), Decimal(x.denominator)))
