"""The classification sets H^1_fl(Z, N_d), H^1_fl(Z, N'_{-d}) and H^1_fl(Z, O_d).

Each set is realised as an explicit list of proper form classes:

* ``h1_N(d)``: classes of discriminant Delta_k; for d < 0 the positive
  definite classes together with their negatives.
* ``h1_Nprime(d)`` (d = 2, 3 mod 4): classes of discriminant -4d, i.e. of the
  order Z[sqrt(-d)], again doubled by sign when definite.
* ``h1_O(d)``: h1_N(d) itself when d = 1 mod 4, otherwise the disjoint union
  of both sets after identifying each class with its opposite.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Literal

from .arith import prime_divisors
from .classgrp import class_group, compose, genus_of, principal_genus, principal_genus_by_characters
from .errors import AlreadyCollapsed, FormulaMismatch, InvalidD, WrongResidue
from .orders import (
    check_d,
    epsilon_invariant,
    eta_invariant,
    fundamental_discriminant,
    mu_invariant,
    narrow_class_number,
)
from .qform import FormClass, class_key, form_class, negate, opposite

Label = Literal["N_d", "N_prime_minus_d", "O_d"]

SCHEMA = "normform-h1/1"
CSV_COLUMNS = (
    "d", "case", "h", "h_plus", "mu", "eta", "m_d", "l_d",
    "cardN", "cardNprime", "cardO", "genera", "dup_ok",
)


@dataclass(frozen=True)
class H1Set:
    label: Label
    d: int
    classes: tuple[tuple[FormClass, int], ...]
    collapsed: bool = False

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self):
        return iter(self.classes)

    def forms(self) -> list[tuple[int, int, int]]:
        return [tuple(cl.canonical) for cl, _ in self.classes]

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "d": self.d,
            "collapsed": self.collapsed,
            "classes": [cl.to_json() for cl, _ in self.classes],
        }


def signed_classes(D: int) -> tuple[tuple[FormClass, int], ...]:
    """Proper classes of discriminant D, with negative definite mirrors for D < 0."""
    out = [(cl, 1) for cl in class_group(D).classes]
    if D < 0:
        out += [(FormClass(negate(cl.canonical)), -1) for cl, _ in out]
    return tuple(sorted(out, key=lambda t: class_key(t[0])))


def h1_N(d: int) -> H1Set:
    return H1Set("N_d", d, signed_classes(fundamental_discriminant(d)))


def _check_nprime(d: int) -> None:
    check_d(d)
    if d % 4 not in (2, 3):
        raise WrongResidue(f"the twisted set needs d = 2, 3 mod 4, got {d}")
    if d == -1:
        raise InvalidD("d = -1: the twisted form (1,0,-1) has square discriminant 4")


def h1_Nprime(d: int) -> H1Set:
    _check_nprime(d)
    return H1Set("N_prime_minus_d", d, signed_classes(-4 * d))


def collapse_opposites(s: H1Set) -> tuple[H1Set, int]:
    """Identify [(a,b,c)] with [(a,-b,c)]; return the quotient and the number of 2-element orbits."""
    if s.collapsed:
        raise AlreadyCollapsed(f"{s.label} for d={s.d} is already collapsed")
    kept: dict[FormClass, int] = {}
    pairs = 0
    for cl, sign in s.classes:
        opp = form_class(opposite(cl.canonical))
        rep = min(cl, opp, key=class_key)
        if rep not in kept:
            kept[rep] = sign
            pairs += opp != cl
    classes = tuple(sorted(kept.items(), key=lambda t: class_key(t[0])))
    return H1Set(s.label, s.d, classes, collapsed=True), pairs


def h1_O(d: int) -> H1Set:
    check_d(d)
    if d % 4 == 1:
        return H1Set("O_d", d, h1_N(d).classes)
    n, _ = collapse_opposites(h1_N(d))
    nprime, _ = collapse_opposites(h1_Nprime(d))
    return H1Set("O_d", d, n.classes + nprime.classes, collapsed=True)


def pair_counts(d: int) -> tuple[int, int]:
    """(m_d, l_d): opposite pairs in the full signed sets h1_N(d) and h1_Nprime(d)."""
    _check_nprime(d)
    return collapse_opposites(h1_N(d))[1], collapse_opposites(h1_Nprime(d))[1]


def _group_pairs(D: int, narrow: bool) -> int:
    group = class_group(D, narrow)
    fixed = sum(1 for i in range(len(group)) if group.mul(i, i) == group.principal)
    return (len(group) - fixed) // 2


def literal_pair_counts(d: int) -> tuple[int, int]:
    """Opposite pairs counted inside Pic^+(O_k) and Pic Z[sqrt(-d)] only (no mirrors)."""
    _check_nprime(d)
    return (
        _group_pairs(fundamental_discriminant(d), narrow=True),
        _group_pairs(-4 * d, narrow=False),
    )


def nprime_expected(d: int) -> int:
    """2^mu(-d) * 3^eta(d) * h^+_{-d}; the eta factor only for d = 3 mod 4."""
    _check_nprime(d)
    eta = eta_invariant(d) if d % 4 == 3 else 0
    return 2 ** mu_invariant(-d) * 3**eta * narrow_class_number(-d)[1]


def h1_O_cardinality_formula(d: int) -> int:
    check_d(d)
    first = 2 ** mu_invariant(d) * narrow_class_number(d)[1]
    if d % 4 == 1:
        return first
    m_d, l_d = pair_counts(d)
    return first + nprime_expected(d) - m_d - l_d


def class_set_principal_genus(d: int) -> frozenset[FormClass]:
    return principal_genus(fundamental_discriminant(d))


def duplication_check(d: int) -> bool:
    D = fundamental_discriminant(d)
    pg = principal_genus_by_characters(D)
    return all(compose(cl, cl) in pg for cl in class_group(D).classes)


def genera_by_characters(d: int, signed: bool = False) -> int:
    """Number of distinct genus labels on the narrow class group (or the signed set)."""
    D = fundamental_discriminant(d)
    classes = [cl for cl, _ in signed_classes(D)] if signed else class_group(D).classes
    return len({genus_of(cl) for cl in classes})


def genera_count(d: int) -> int:
    """2^(|S_r| - 1) for S_r the primes dividing Delta_k, checked against the characters."""
    D = fundamental_discriminant(d)
    expected = 2 ** (len(prime_divisors(D)) - 1)
    found = genera_by_characters(d)
    if found != expected:
        raise FormulaMismatch(f"d={d}: {found} genera by characters, expected {expected}")
    return expected


# -- report -----------------------------------------------------------------

@dataclass(frozen=True)
class CohomologyReport:
    d: int
    fund_disc: int
    nprime_disc: int | None
    residue_case: str
    h: int
    h_plus: int
    mu: int
    epsilon: int
    eta: int | None
    m_d: int | None
    l_d: int | None
    m_d_literal: int | None
    l_d_literal: int | None
    card_N: int
    card_Nprime: int | None
    card_Nprime_expected: int | None
    card_O_formula: int
    card_O_enumeration: int
    genera_count: int
    genera_by_characters: int
    genera_signed: int
    sr_size: int
    duplication_ok: bool

    def mismatches(self) -> list[str]:
        out = []
        if self.card_N != 2**self.mu * self.h_plus:
            out.append(f"|H1(N_d)| = {self.card_N} != 2^mu * h^+ = {2**self.mu * self.h_plus}")
        if self.card_N != 2**self.epsilon * self.h:
            out.append(f"|H1(N_d)| = {self.card_N} != 2^eps * h = {2**self.epsilon * self.h}")
        if self.card_Nprime != self.card_Nprime_expected:
            out.append(f"|H1(N'_-d)| = {self.card_Nprime} != {self.card_Nprime_expected}")
        if self.card_O_formula != self.card_O_enumeration:
            out.append(
                f"|H1(O_d)|: formula {self.card_O_formula} != enumeration {self.card_O_enumeration}"
            )
        if self.genera_by_characters != self.genera_count:
            out.append(f"genera: {self.genera_by_characters} by characters != {self.genera_count}")
        return out

    @property
    def formula_ok(self) -> bool:
        return not self.mismatches()

    def to_json(self) -> dict:
        return {"schema": SCHEMA, **asdict(self)}

    def csv_row(self) -> list:
        return [
            self.d, self.residue_case, self.h, self.h_plus, self.mu, self.eta,
            self.m_d, self.l_d, self.card_N, self.card_Nprime, self.card_O_enumeration,
            self.genera_count, self.duplication_ok,
        ]


def cohomology_report(d: int, strict: bool = True) -> CohomologyReport:
    check_d(d)
    twisted = d % 4 != 1
    if twisted:
        _check_nprime(d)
    D = fundamental_discriminant(d)
    h, h_plus = narrow_class_number(d)
    mu = mu_invariant(d)
    card_N = len(h1_N(d))
    if twisted:
        m_d, l_d = pair_counts(d)
        m_lit, l_lit = literal_pair_counts(d)
        card_Nprime = len(h1_Nprime(d))
        nprime_exp = nprime_expected(d)
    else:
        m_d = l_d = m_lit = l_lit = card_Nprime = nprime_exp = None
    sr = len(prime_divisors(D))
    report = CohomologyReport(
        d=d,
        fund_disc=D,
        nprime_disc=-4 * d if twisted else None,
        residue_case=f"{d % 4}mod4",
        h=h,
        h_plus=h_plus,
        mu=mu,
        epsilon=epsilon_invariant(d),
        eta=eta_invariant(d) if d % 4 == 3 else None,
        m_d=m_d,
        l_d=l_d,
        m_d_literal=m_lit,
        l_d_literal=l_lit,
        card_N=card_N,
        card_Nprime=card_Nprime,
        card_Nprime_expected=nprime_exp,
        card_O_formula=h1_O_cardinality_formula(d),
        card_O_enumeration=len(h1_O(d)),
        genera_count=2 ** (sr - 1),
        genera_by_characters=genera_by_characters(d),
        genera_signed=genera_by_characters(d, signed=True),
        sr_size=sr,
        duplication_ok=duplication_check(d),
    )
    if strict and report.mismatches():
        raise FormulaMismatch(f"d={d}: " + "; ".join(report.mismatches()))
    return report
