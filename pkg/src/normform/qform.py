"""Binary quadratic forms ax^2 + bxy + cy^2 and their reduction theory.

Matrices are 2x2 integer tuples ``(alpha, beta, gamma, delta)`` standing for
``[[alpha, beta], [gamma, delta]]``.  ``act(f, M)`` is the form
``f(alpha*X + beta*Y, gamma*X + delta*Y)``, i.e. ``M^t B_f M``.  Reduction
routines return the accumulated matrix so every equivalence they claim can
be checked by a single call to :func:`act`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Literal

from .arith import is_square, is_squarefree
from .errors import (
    DiscMismatch,
    InvalidD,
    NotDefinite,
    NotIndefinite,
    SquareDiscriminant,
)

Matrix = tuple[int, int, int, int]
Kind = Literal["posdef", "negdef", "indefinite"]

IDENTITY: Matrix = (1, 0, 0, 1)


@dataclass(frozen=True, order=True)
class Form:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if is_square(self.disc):
            raise SquareDiscriminant(f"{tuple(self)} has square discriminant {self.disc}")

    def __iter__(self):
        yield self.a
        yield self.b
        yield self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def __str__(self) -> str:
        return f"{self.a}x^2{self.b:+d}xy{self.c:+d}y^2"

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def content(self) -> int:
        return math.gcd(self.a, self.b, self.c)

    @property
    def is_primitive(self) -> bool:
        return self.content == 1

    @property
    def kind(self) -> Kind:
        if self.disc > 0:
            return "indefinite"
        return "posdef" if self.a > 0 else "negdef"

    @property
    def sign(self) -> int:
        return -1 if self.kind == "negdef" else 1

    def to_json(self) -> list[int]:
        return [self.a, self.b, self.c]

    @classmethod
    def parse(cls, text: str) -> "Form":
        """Accept ``[a,b,c]``, ``a,b,c`` or the ``ax^2+bxy+cy^2`` rendering."""
        m = re.fullmatch(r"\s*([+-]?\d+)x\^2([+-]\d+)xy([+-]\d+)y\^2\s*", text)
        if m is None:
            m = re.fullmatch(r"\s*\[?\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\]?\s*", text)
        if m is None:
            raise ValueError(f"cannot parse form: {text!r}")
        return cls(*(int(g) for g in m.groups()))


def sort_key(f: Form) -> tuple[int, int, int, int]:
    """Sign first (positive before negative), then |a|, a, b."""
    return (f.sign < 0, abs(f.a), f.a, f.b)


def disc(f: Form) -> int:
    return f.disc


def norm_form(d: int) -> Form:
    """The norm form of the maximal order of Q(sqrt d) in the basis {1, omega}."""
    if d in (0, 1) or not is_squarefree(d):
        raise InvalidD(f"d must be square-free and not 0 or 1, got {d}")
    if d % 4 == 1:
        return Form(1, 1, (1 - d) // 4)
    return Form(1, 0, -d)


def opposite(f: Form) -> Form:
    return Form(f.a, -f.b, f.c)


def negate(f: Form) -> Form:
    return Form(-f.a, -f.b, -f.c)


def act(f: Form, m: Matrix) -> Form:
    al, be, ga, de = m
    a, b, c = f
    return Form(
        a * al * al + b * al * ga + c * ga * ga,
        2 * a * al * be + b * (al * de + be * ga) + 2 * c * ga * de,
        a * be * be + b * be * de + c * de * de,
    )


def matmul(m: Matrix, n: Matrix) -> Matrix:
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def det(m: Matrix) -> int:
    return m[0] * m[3] - m[1] * m[2]


# -- definite forms ---------------------------------------------------------

def is_reduced_definite(f: Form) -> bool:
    if f.disc >= 0:
        return False
    a, b, c = f if f.a > 0 else negate(f)
    return -a < b <= a <= c and not (b < 0 and a == c)


def reduce_definite_with_matrix(f: Form) -> tuple[Form, Matrix]:
    if f.disc >= 0:
        raise NotDefinite(f"{tuple(f)} has discriminant {f.disc} >= 0")
    if f.a < 0:
        g, m = reduce_definite_with_matrix(negate(f))
        return negate(g), m
    a, b, c = f
    m = IDENTITY
    while True:
        if not -a < b <= a:
            t = (a - b) // (2 * a)
            m = matmul(m, (1, t, 0, 1))
            b, c = b + 2 * a * t, a * t * t + b * t + c
        if a > c or (a == c and b < 0):
            m = matmul(m, (0, -1, 1, 0))
            a, b, c = c, -b, a
            continue
        return Form(a, b, c), m


def reduce_definite(f: Form) -> Form:
    return reduce_definite_with_matrix(f)[0]


# -- indefinite forms -------------------------------------------------------

def is_reduced_indefinite(f: Form) -> bool:
    D = f.disc
    if D <= 0:
        return False
    s = math.isqrt(D)
    # sqrt(D) is irrational, so strict inequalities against it become
    # integer comparisons against s = floor(sqrt(D)).
    return 0 < f.b <= s and s - f.b < 2 * abs(f.a) <= s + f.b


def rho(f: Form) -> tuple[Form, Matrix]:
    """One step of the normalised reduction operator for indefinite forms."""
    D = f.disc
    s = math.isqrt(D)
    a, b, c = f
    m = 2 * abs(c)
    if abs(c) > s:
        r = (-b) % m
        if r > abs(c):
            r -= m
    else:
        r = s - (s + b) % m
    t = (r + b) // (2 * c)
    return Form(c, r, (r * r - D) // (4 * c)), (0, -1, 1, t)


def reduce_indefinite_with_matrix(f: Form) -> tuple[Form, Matrix]:
    if f.disc <= 0:
        raise NotIndefinite(f"{tuple(f)} has discriminant {f.disc} <= 0")
    m = IDENTITY
    while not is_reduced_indefinite(f):
        f, step = rho(f)
        m = matmul(m, step)
    return f, m


def reduce_indefinite(f: Form) -> Form:
    return reduce_indefinite_with_matrix(f)[0]


def reduce_indefinite_cycle(f: Form) -> list[Form]:
    """The rho-cycle of reduced forms in the proper class of f.

    Rotated so that it starts at its least element under (|a|, a, b).
    """
    g = reduce_indefinite(f)
    cycle = [g]
    h = rho(g)[0]
    while h != g:
        cycle.append(h)
        h = rho(h)[0]
    i = min(range(len(cycle)), key=lambda k: sort_key(cycle[k]))
    return cycle[i:] + cycle[:i]


def reduce_with_matrix(f: Form) -> tuple[Form, Matrix]:
    if f.disc < 0:
        return reduce_definite_with_matrix(f)
    return reduce_indefinite_with_matrix(f)


# -- classes ----------------------------------------------------------------

@dataclass(frozen=True)
class FormClass:
    """A proper equivalence class, identified by its canonical reduced form."""

    canonical: Form
    cycle: tuple[Form, ...] = field(default=(), compare=False, repr=False)

    @property
    def disc(self) -> int:
        return self.canonical.disc

    @property
    def kind(self) -> Kind:
        return self.canonical.kind

    @property
    def sign(self) -> int:
        return self.canonical.sign

    @property
    def is_primitive(self) -> bool:
        return self.canonical.is_primitive

    def __contains__(self, f: Form) -> bool:
        return f.disc == self.disc and form_class(f) == self

    def __str__(self) -> str:
        return str(tuple(self.canonical))

    def to_json(self) -> list[int]:
        return self.canonical.to_json()


def form_class(f: Form) -> FormClass:
    if f.disc < 0:
        return FormClass(reduce_definite(f))
    cycle = reduce_indefinite_cycle(f)
    return FormClass(cycle[0], tuple(cycle))


def class_key(cl: FormClass) -> tuple[int, int, int, int]:
    return sort_key(cl.canonical)


def equivalent_proper(f: Form, g: Form) -> bool:
    if f.disc != g.disc:
        raise DiscMismatch(f"discriminants differ: {f.disc} vs {g.disc}")
    if f.disc < 0:
        return reduce_definite(f) == reduce_definite(g)
    return reduce_indefinite(g) in reduce_indefinite_cycle(f)
