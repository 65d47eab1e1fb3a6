"""Form class groups: composition, narrow/wide groups, genus theory."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .arith import is_square, kronecker, prime_divisors, xgcd
from .errors import (
    DiscMismatch,
    DuplicationFailure,
    ImprimitiveForm,
    InputError,
    InvalidDiscriminant,
    NoCoprimeValueFound,
)
from .qform import (
    Form,
    FormClass,
    class_key,
    form_class,
    is_reduced_indefinite,
    negate,
    rho,
)

SEARCH_START = 50
SEARCH_LIMIT = 800


def check_discriminant(D: int) -> None:
    if D % 4 not in (0, 1) or is_square(D):
        raise InvalidDiscriminant(f"{D} is not a nonsquare discriminant (need D = 0, 1 mod 4)")


def principal_form(D: int) -> Form:
    check_discriminant(D)
    if D % 4 == 0:
        return Form(1, 0, -D // 4)
    return Form(1, 1, (1 - D) // 4)


def compose_forms(f: Form, g: Form) -> Form:
    """Dirichlet composition of two primitive forms of equal discriminant.

    The result is united but not reduced.
    """
    D = f.disc
    if g.disc != D:
        raise DiscMismatch(f"cannot compose discriminants {D} and {g.disc}")
    a1, b1, _ = f
    a2, b2, _ = g
    h = (b1 + b2) // 2
    g1, p, q = xgcd(a1, a2)
    e, r, w = xgcd(g1, h)
    u, v = r * p, r * q
    A = a1 * a2 // (e * e)
    num = u * a1 * b2 + v * a2 * b1 + w * ((b1 * b2 + D) // 2)
    B = (num // e) % (2 * abs(A))
    C = (B * B - D) // (4 * A)
    return Form(A, B, C)


def _as_form(x: Form | FormClass) -> Form:
    return x.canonical if isinstance(x, FormClass) else x


def compose(f: Form | FormClass, g: Form | FormClass) -> FormClass:
    f, g = _as_form(f), _as_form(g)
    if f.disc != g.disc:
        raise DiscMismatch(f"cannot compose discriminants {f.disc} and {g.disc}")
    for x in (f, g):
        if not x.is_primitive:
            raise ImprimitiveForm(f"{tuple(x)} is not primitive")
        if x.kind == "negdef":
            raise InputError(f"{tuple(x)} is negative definite; the group is on positive forms")
    return form_class(compose_forms(f, g))


# -- enumeration ------------------------------------------------------------

def reduced_definite_forms(D: int) -> list[Form]:
    """All primitive reduced positive definite forms of discriminant D < 0."""
    out = []
    for a in range(1, math.isqrt(-D // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b - D) % 2 or (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(a, b, c) == 1:
                out.append(Form(a, b, c))
    return out


def reduced_indefinite_forms(D: int) -> list[Form]:
    """All primitive reduced forms of discriminant D > 0."""
    s = math.isqrt(D)
    out = []
    for b in range(s, 0, -1):
        if (b - D) % 2:
            continue
        n = (D - b * b) // 4  # = -ac > 0
        for a in range(max(1, (s - b) // 2 + 1), (s + b) // 2 + 1):
            if n % a:
                continue
            for sa in (a, -a):
                f = Form(sa, b, -n // sa)
                if f.is_primitive and is_reduced_indefinite(f):
                    out.append(f)
    return out


def _indefinite_classes(D: int) -> list[FormClass]:
    seen: set[Form] = set()
    classes = []
    for f in reduced_indefinite_forms(D):
        if f in seen:
            continue
        cycle = [f]
        g = rho(f)[0]
        while g != f:
            cycle.append(g)
            g = rho(g)[0]
        seen.update(cycle)
        i = min(range(len(cycle)), key=lambda k: class_key(FormClass(cycle[k])))
        cycle = cycle[i:] + cycle[:i]
        classes.append(FormClass(cycle[0], tuple(cycle)))
    return classes


def proper_classes(D: int) -> list[FormClass]:
    """Primitive proper classes (positive ones when D < 0), sorted."""
    check_discriminant(D)
    if D < 0:
        classes = [FormClass(f) for f in reduced_definite_forms(D)]
    else:
        classes = _indefinite_classes(D)
    return sorted(classes, key=class_key)


# -- group data -------------------------------------------------------------

@dataclass(frozen=True)
class ClassGroupData:
    disc: int
    narrow: bool
    classes: tuple[FormClass, ...]
    table: tuple[tuple[int, ...], ...] = field(repr=False)
    principal: int = 0
    _lookup: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_lookup", {cl: i for i, cl in enumerate(self.classes)})

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def order(self) -> int:
        return len(self.classes)

    def index(self, x: Form | FormClass) -> int:
        cl = x if isinstance(x, FormClass) else form_class(x)
        return self._lookup[cl]

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inverse(self, i: int) -> int:
        return next(j for j in range(len(self)) if self.table[i][j] == self.principal)

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != self.principal:
            x = self.table[x][i]
            k += 1
        return k

    @property
    def structure(self) -> list[int]:
        return invariant_factors([self.element_order(i) for i in range(len(self))])

    def squares(self) -> set[int]:
        return {self.table[i][i] for i in range(len(self))}

    def to_json(self) -> dict:
        return {
            "disc": self.disc,
            "narrow": self.narrow,
            "order": self.order,
            "structure": self.structure,
            "principal": self.classes[self.principal].to_json(),
            "classes": [cl.to_json() for cl in self.classes],
        }


def invariant_factors(orders: list[int]) -> list[int]:
    """Invariant factors d1 | d2 | ... of a finite abelian group.

    ``orders`` lists the order of every element.  For each prime p the
    number of elements killed by p^k is p^(sum_i min(e_i, k)), which pins
    down the exponents e_i of the p-primary part.
    """
    n = len(orders)
    exps: dict[int, list[int]] = {}
    for p in prime_divisors(n) if n > 1 else ():
        logs = [0]
        k = 1
        while True:
            cnt = sum(1 for o in orders if (p**k) % o == 0)
            logs.append(_valuation(cnt, p))
            if cnt == p ** _valuation(n, p):
                break
            k += 1
        at_least = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
        # at_least[k-1] = #{i : e_i >= k}
        parts = []
        for k, cnt in enumerate(at_least, start=1):
            nxt = at_least[k] if k < len(at_least) else 0
            parts += [k] * (cnt - nxt)
        exps[p] = sorted(parts, reverse=True)
    width = max((len(v) for v in exps.values()), default=0)
    factors = []
    for j in range(width):
        m = 1
        for p, es in exps.items():
            if j < len(es):
                m *= p ** es[j]
        factors.append(m)
    return sorted(factors)


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _table(classes: list[FormClass]) -> tuple[tuple[int, ...], ...]:
    index = {cl: i for i, cl in enumerate(classes)}
    return tuple(
        tuple(index[compose(x, y)] for y in classes)
        for x in classes
    )


@lru_cache(maxsize=4096)
def class_group(D: int, narrow: bool = True) -> ClassGroupData:
    """The form class group of discriminant D.

    For D < 0 the group lives on positive definite classes and ``narrow`` has
    no effect.  For D > 0 the wide group is the narrow group modulo the class
    of the negated principal form.
    """
    classes = proper_classes(D)
    table = _table(classes)
    principal = classes.index(form_class(principal_form(D)))
    group = ClassGroupData(D, narrow or D < 0, tuple(classes), table, principal)
    if narrow or D < 0:
        return group
    j = group.index(negate(principal_form(D)))
    if j == principal:
        return ClassGroupData(D, False, group.classes, table, principal)
    rep = {}
    for i in range(len(group)):
        partner = table[i][j]
        rep[i] = min(i, partner, key=lambda k: class_key(classes[k]))
    reps = sorted(set(rep.values()), key=lambda k: class_key(classes[k]))
    pos = {r: n for n, r in enumerate(reps)}
    wide_table = tuple(tuple(pos[rep[table[x][y]]] for y in reps) for x in reps)
    return ClassGroupData(
        D, False, tuple(classes[r] for r in reps), wide_table, pos[rep[principal]]
    )


def class_number(D: int, narrow: bool = True) -> int:
    return len(class_group(D, narrow))


# -- genus theory -----------------------------------------------------------

@dataclass(frozen=True)
class GenusLabel:
    character_names: tuple[str, ...]
    values: tuple[int, ...]

    @property
    def is_principal(self) -> bool:
        return all(v == 1 for v in self.values)

    def to_json(self) -> dict[str, int]:
        return dict(zip(self.character_names, self.values))


def genus_characters(D: int) -> list[str]:
    """Assigned characters of discriminant D.

    Odd primes p | D give (.|p); the 2-adic ones depend on D/4 mod 8.
    """
    check_discriminant(D)
    chars = []
    if D % 4 == 0:
        m = D // 4
        if m % 4 == 3 or m % 8 == 4:
            chars.append("chi_-4")
        elif m % 8 == 2:
            chars.append("chi_8")
        elif m % 8 == 6:
            chars.append("chi_-8")
        elif m % 8 == 0:
            chars += ["chi_-4", "chi_8"]
    chars += [f"(.|{p})" for p in prime_divisors(D) if p != 2]
    return chars


def character_value(name: str, n: int) -> int:
    if name == "chi_-4":
        return 1 if n % 4 == 1 else -1
    if name == "chi_8":
        return 1 if n % 8 in (1, 7) else -1
    if name == "chi_-8":
        return 1 if n % 8 in (1, 3) else -1
    return kronecker(n, int(name[3:-1]))


def coprime_value(f: Form, modulus: int) -> int:
    """A value f(x, y) coprime to ``modulus``, searched by increasing |x|+|y|."""
    bound = SEARCH_START
    searched = 0
    while bound <= SEARCH_LIMIT:
        for r in range(max(searched, 1), bound + 1):
            for x in range(-r, r + 1):
                y = r - abs(x)
                for yy in {y, -y}:
                    n = f(x, yy)
                    if n and math.gcd(n, modulus) == 1:
                        return n
        searched = bound + 1
        bound *= 2
    raise NoCoprimeValueFound(f"{tuple(f)} represents nothing coprime to {modulus}")


def genus_of(x: Form | FormClass) -> GenusLabel:
    f = _as_form(x)
    if not f.is_primitive:
        raise ImprimitiveForm(f"{tuple(f)} is not primitive")
    names = tuple(genus_characters(f.disc))
    n = coprime_value(f, 2 * f.disc)
    return GenusLabel(names, tuple(character_value(c, n) for c in names))


def genera(D: int) -> dict[GenusLabel, list[FormClass]]:
    """Partition of the (narrow) class group of D by genus label."""
    cells: dict[GenusLabel, list[FormClass]] = {}
    for cl in class_group(D).classes:
        cells.setdefault(genus_of(cl), []).append(cl)
    return cells


def principal_genus_by_characters(D: int) -> frozenset[FormClass]:
    return frozenset(cl for cl in class_group(D).classes if genus_of(cl).is_principal)


@lru_cache(maxsize=4096)
def principal_genus(D: int) -> frozenset[FormClass]:
    """Classes with all-ones genus label, checked against the set of squares."""
    group = class_group(D)
    by_label = principal_genus_by_characters(D)
    squares = frozenset(group.classes[i] for i in group.squares())
    if by_label != squares:
        raise DuplicationFailure(
            f"D={D}: principal genus {sorted(map(str, by_label))} "
            f"!= squares {sorted(map(str, squares))}"
        )
    return by_label
