"""Elementary integer routines: factorization, square-freeness, Kronecker symbol."""

from __future__ import annotations

import math
from dataclasses import dataclass

from sympy import factorint

from .errors import NegativeInput, ZeroInput

MAX_FACTOR_INPUT = 2**63


@dataclass(frozen=True)
class Factorization:
    value: int
    sign: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def product(self) -> int:
        n = self.sign
        for p, e in self.factors:
            n *= p**e
        return n


def factorize(n: int) -> Factorization:
    if n == 0:
        raise ZeroInput("cannot factor 0")
    if abs(n) > MAX_FACTOR_INPUT:
        raise ValueError(f"|n| exceeds 2**63: {n}")
    sign = 1 if n > 0 else -1
    factors = tuple(sorted(factorint(abs(n)).items()))
    return Factorization(value=n, sign=sign, factors=factors)


def prime_divisors(n: int) -> tuple[int, ...]:
    return factorize(n).primes


def is_squarefree(n: int) -> bool:
    if n == 0:
        raise ZeroInput("square-freeness of 0 is undefined")
    return all(e == 1 for _, e in factorize(n).factors)


def isqrt(n: int) -> int:
    if n < 0:
        raise NegativeInput(f"isqrt of negative number {n}")
    return math.isqrt(n)


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), extending the Jacobi symbol to all n != 0."""
    if n == 0:
        raise ZeroInput("Kronecker symbol (a|0) is excluded")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = (n & -n).bit_length() - 1
    n >>= v
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol for odd n > 0
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0
