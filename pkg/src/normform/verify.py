"""Reference table, worked examples and small-range genus checks."""

from __future__ import annotations

from dataclasses import dataclass

from .arith import is_squarefree
from .classgrp import class_number
from .cohom import duplication_check, genera_count, h1_N, h1_Nprime, h1_O, signed_classes
from .orders import eta_invariant
from .qform import Form, FormClass, form_class

# d -> (h_{-d}, |H1(N'_{-d})|, |H1(N_{-d})|)
REFERENCE_TABLE = {
    3: (1, 2, 2),
    7: (1, 2, 2),
    11: (1, 6, 2),
    15: (2, 4, 4),
    19: (1, 6, 2),
    23: (3, 6, 6),
}


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


def class_set(forms) -> set[FormClass]:
    return {form_class(Form(*f)) for f in forms}


def table_row(d: int) -> tuple[int, int, int]:
    return class_number(-d if -d % 4 == 1 else -4 * d), len(h1_Nprime(d)), len(h1_N(-d))


def check_table() -> list[Check]:
    out = []
    for d, expected in REFERENCE_TABLE.items():
        got = table_row(d)
        out.append(Check(f"table row d={d}", got == expected, f"got {got}, expected {expected}"))
    return out


def check_d11() -> Check:
    s = h1_O(11)
    expected = class_set([(1, 0, -11), (-1, 0, 11), (1, 0, 11), (-1, 0, -11)])
    got = {cl for cl, _ in s}
    reps_324 = got & class_set([(3, 2, 4), (3, -2, 4)])
    reps_m324 = got & class_set([(-3, 2, -4), (-3, -2, -4)])
    ok = (
        len(s) == 6
        and expected <= got
        and len(reps_324) == 1
        and len(reps_m324) == 1
        and len(h1_N(11)) == 2
        and len(h1_Nprime(11)) == 6
    )
    return Check("d=11 example", ok, f"|H1(O_11)| = {len(s)}, classes {s.forms()}")


def check_d_minus5() -> Check:
    expected = class_set([(1, 0, 5), (-1, 0, -5), (2, 2, 3), (-2, -2, -3)])
    n = {cl for cl, _ in h1_N(-5)}
    # the twisted set of the form (1,0,5) itself: proper classes of disc -20 with sign
    twist = {cl for cl, _ in signed_classes(Form(1, 0, 5).disc)}
    eta = eta_invariant(-5)
    ok = n == expected and twist == expected and eta == 0
    return Check("d=-5 example", ok, f"|H1(N_-5)| = {len(n)}, twist of (1,0,5): {len(twist)}, eta = {eta}")


def _squarefree_range(bound: int):
    return [d for d in range(-bound, bound + 1) if d not in (0, 1) and is_squarefree(d)]


def check_genera(bound: int = 100) -> Check:
    bad = []
    for d in _squarefree_range(bound):
        try:
            genera_count(d)
        except Exception as exc:  # any failure is a reportable discrepancy
            bad.append(f"{d}: {exc}")
    return Check(f"genera = 2^(|S_r|-1), |d| <= {bound}", not bad, "; ".join(bad[:5]))


def check_duplication(bound: int = 100) -> Check:
    bad = [d for d in _squarefree_range(bound) if not duplication_check(d)]
    return Check(f"duplication, |d| <= {bound}", not bad, f"failures at {bad[:10]}" if bad else "")


def reference_checks() -> list[Check]:
    return [
        *check_table(),
        check_d11(),
        check_d_minus5(),
        check_genera(),
        check_duplication(),
    ]
