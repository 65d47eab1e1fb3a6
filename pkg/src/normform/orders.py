"""Quadratic fields and orders: discriminants, fundamental units, Picard counts.

Throughout, ``d`` is the square-free integer with k = Q(sqrt d).  Functions
that act on the conjugate field take the same ``d`` and negate internally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .arith import is_squarefree
from .classgrp import class_number
from .errors import FormulaMismatch, InvalidD, WrongResidue


def check_d(d: int) -> None:
    if d in (0, 1) or not is_squarefree(d):
        raise InvalidD(f"d must be square-free and not 0 or 1, got {d}")


def fundamental_discriminant(d: int) -> int:
    check_d(d)
    return d if d % 4 == 1 else 4 * d


@dataclass(frozen=True)
class QuadOrderInfo:
    d: int
    fund_disc: int
    order_disc: int
    conductor: int

    @property
    def is_maximal(self) -> bool:
        return self.conductor == 1


def order_info(d: int, root_order: bool = False) -> QuadOrderInfo:
    """Data for O_k, or for Z[sqrt d] when ``root_order`` is set."""
    fund = fundamental_discriminant(d)
    order_disc = 4 * d if root_order else fund
    return QuadOrderInfo(d, fund, order_disc, math.isqrt(order_disc // fund))


# -- continued fractions -----------------------------------------------------

def surd_expansion(d: int, P: int, Q: int) -> Iterator[tuple[int, int, int]]:
    """Partial quotients of (P + sqrt d)/Q, yielded with the state (P, Q).

    Requires Q | d - P^2 so the state stays integral.
    """
    if Q == 0 or (d - P * P) % Q:
        raise ValueError(f"Q={Q} must divide d - P^2 = {d - P * P}")
    s = math.isqrt(d)
    while True:
        if Q > 0:
            a = (P + s) // Q
        else:
            a = -((P + s) // -Q) - 1
        yield a, P, Q
        P = a * Q - P
        Q = (d - P * P) // Q


@dataclass(frozen=True)
class UnitData:
    """Fundamental unit eps = x + y*omega of the maximal order, omega per the
    norm-form basis ({1, (1+sqrt d)/2} if d = 1 mod 4, else {1, sqrt d})."""

    d: int
    x: int
    y: int
    norm: int
    unit_index_m: int

    @property
    def basis(self) -> str:
        return "1,(1+sqrt(d))/2" if self.d % 4 == 1 else "1,sqrt(d)"

    def root_coords(self) -> tuple[int, int] | None:
        """Coordinates in {1, sqrt d} if eps lies in Z[sqrt d], else None."""
        if self.d % 4 != 1:
            return self.x, self.y
        if self.y % 2:
            return None
        return self.x + self.y // 2, self.y // 2

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "x": self.x,
            "y": self.y,
            "basis": self.basis,
            "norm": self.norm,
            "m": self.unit_index_m,
        }


def _unit_norm(d: int, x: int, y: int) -> int:
    if d % 4 == 1:
        return x * x + x * y + (1 - d) // 4 * y * y
    return x * x - d * y * y


def _unit_mul(d: int, u: tuple[int, int], v: tuple[int, int]) -> tuple[int, int]:
    (x1, y1), (x2, y2) = u, v
    if d % 4 == 1:
        # omega^2 = omega + (d - 1)/4
        c = (d - 1) // 4
        return x1 * x2 + c * y1 * y2, x1 * y2 + x2 * y1 + y1 * y2
    return x1 * x2 + d * y1 * y2, x1 * y2 + x2 * y1


@lru_cache(maxsize=None)
def fundamental_unit(d: int) -> UnitData:
    """Least unit > 1 of O_k for real k, from the continued fraction of omega.

    With p/q a convergent of omega, p - q*omega is small; when its norm is
    +-1 the conjugate (p - q) + q*omega is the unit sought.
    """
    check_d(d)
    if d < 0:
        raise InvalidD(f"fundamental unit needs d > 1, got {d}")
    P, Q = (1, 2) if d % 4 == 1 else (0, 1)
    h0, h1 = 0, 1
    k0, k1 = 1, 0
    seen = set()
    for a, P, Q in surd_expansion(d, P, Q):
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        x, y = (h1 - k1, k1) if d % 4 == 1 else (h1, k1)
        n = _unit_norm(d, x, y)
        if n in (1, -1):
            break
        if (P, Q) in seen:
            raise RuntimeError(f"continued fraction of d={d} cycled without a unit")
        seen.add((P, Q))
    m = 1
    if d % 4 == 1:
        power = (x, y)
        while power[1] % 2:
            power = _unit_mul(d, power, (x, y))
            m += 1
    return UnitData(d, x, y, n, m)


# -- invariants -------------------------------------------------------------

def mu_invariant(d: int) -> int:
    check_d(d)
    return 1 if d < 0 else 0


def epsilon_invariant(d: int) -> int:
    check_d(d)
    if d < 0:
        return 1
    return 1 if fundamental_unit(d).norm == 1 else 0


def eta_invariant(d: int) -> int:
    """1 when Z[sqrt(-d)] has three times as many classes as O_{-d}."""
    check_d(d)
    if d % 4 != 3:
        raise WrongResidue(f"eta needs d = 3 mod 4, got {d}")
    if d % 8 != 3:
        return 0
    if d > 3:
        return 1
    if d < 0:
        return 1 if fundamental_unit(-d).unit_index_m == 1 else 0
    return 0


def narrow_class_number(d: int) -> tuple[int, int]:
    """(h_d, h_d^+) from the class groups of the fundamental discriminant.

    The h^+ = 2h dichotomy is cross-checked against the fundamental unit.
    """
    D = fundamental_discriminant(d)
    h_plus = class_number(D, narrow=True)
    h = class_number(D, narrow=False)
    expected = 2 * h if d > 0 and fundamental_unit(d).norm == 1 else h
    if h_plus != expected:
        raise FormulaMismatch(
            f"d={d}: narrow class number {h_plus}, wide {h}, unit says {expected}"
        )
    return h, h_plus


def picard_nonmaximal(d: int) -> tuple[int, int]:
    """|Pic Z[sqrt d]| for d = 1 mod 4, by enumeration and by 3^eta(-d) * h_d."""
    check_d(d)
    if d % 4 != 1:
        raise WrongResidue(f"Z[sqrt d] is non-maximal only for d = 1 mod 4, got {d}")
    order = class_number(4 * d, narrow=False)
    via_formula = 3 ** eta_invariant(-d) * narrow_class_number(d)[0]
    if order != via_formula:
        raise FormulaMismatch(f"d={d}: |Pic Z[sqrt d]| = {order} but formula gives {via_formula}")
    return order, via_formula
