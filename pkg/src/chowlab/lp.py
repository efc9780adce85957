"""Exact feasibility of rational linear systems with strict inequalities.

Constraints are triples ``(coeffs, op, rhs)`` with ``op`` one of
``"<=", ">=", "==", "<", ">"``; variables are free (unrestricted in sign).

Strict inequalities are handled by one shared slack ``s``: every strict
``a.x < b`` becomes ``a.x + s <= b``, ``0 <= s <= 1``, and the system is
feasible iff the maximal ``s`` is positive.

:func:`lp_feasible` runs a two-phase tableau simplex with Bland's rule;
:func:`fm_feasible` decides the same question by Fourier-Motzkin elimination
and is meant as an independent check on small instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import Vector, dot, rat

OPS = ("<=", ">=", "==", "<", ">")

Constraint = tuple[Sequence, str, object]


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    point: Vector | None = None
    slack: Fraction = Fraction(0)

    def __bool__(self) -> bool:
        return self.feasible


def _normalize(constraints: Sequence[Constraint], nvars: int | None):
    rows = []
    for coeffs, op, rhs in constraints:
        if op not in OPS:
            raise ValueError(f"unknown relation {op!r}")
        rows.append(([rat(c) for c in coeffs], op, rat(rhs)))
    if nvars is None:
        nvars = max((len(c) for c, _, _ in rows), default=0)
    for c, _, _ in rows:
        c.extend([Fraction(0)] * (nvars - len(c)))
    return rows, nvars


def check_point(constraints: Sequence[Constraint], x: Sequence) -> bool:
    """Exact re-verification of a candidate point."""
    rel = {
        "<=": lambda v, b: v <= b,
        ">=": lambda v, b: v >= b,
        "==": lambda v, b: v == b,
        "<": lambda v, b: v < b,
        ">": lambda v, b: v > b,
    }
    return all(rel[op](dot([rat(c) for c in a], x), rat(b)) for a, op, b in constraints)


class _Tableau:
    """Dense simplex tableau for ``max c.x  s.t.  A x = b, x >= 0`` with b >= 0."""

    def __init__(self, a: list[list[Fraction]], b: list[Fraction], basis: list[int]):
        self.rows = [row + [bi] for row, bi in zip(a, b)]
        self.basis = basis
        self.ncols = len(a[0]) if a else 0

    def set_objective(self, c: list[Fraction]) -> None:
        # obj[j] = reduced cost (c_B B^-1 A_j - c_j); optimal when all >= 0.
        obj = [-x for x in c] + [Fraction(0)]
        for i, bv in enumerate(self.basis):
            cb = c[bv]
            if cb:
                obj = [o + cb * t for o, t in zip(obj, self.rows[i])]
        self.obj = obj

    def pivot(self, r: int, col: int) -> None:
        prow = self.rows[r]
        inv = 1 / prow[col]
        prow = [x * inv for x in prow]
        self.rows[r] = prow
        nz = [j for j, x in enumerate(prow) if x]
        for i, row in enumerate(self.rows):
            f = row[col]
            if i != r and f:
                for j in nz:
                    row[j] -= f * prow[j]
        f = self.obj[col]
        if f:
            for j in nz:
                self.obj[j] -= f * prow[j]
        self.basis[r] = col

    def run(self, allowed: int) -> None:
        """Bland's rule; columns >= ``allowed`` never enter."""
        while True:
            col = next((j for j in range(allowed) if self.obj[j] < 0), None)
            if col is None:
                return
            best = None
            for i, row in enumerate(self.rows):
                if row[col] > 0:
                    ratio = row[-1] / row[col]
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                raise ArithmeticError("unbounded objective in a bounded LP")
            self.pivot(best[1], col)

    def value(self, j: int) -> Fraction:
        for i, bv in enumerate(self.basis):
            if bv == j:
                return self.rows[i][-1]
        return Fraction(0)


def lp_feasible(constraints: Sequence[Constraint], nvars: int | None = None) -> LPResult:
    """Exact feasible point of a linear system, or an infeasible verdict."""
    rows, nvars = _normalize(constraints, nvars)
    strict = any(op in ("<", ">") for _, op, _ in rows)

    # Columns: x+ (nvars), x- (nvars), s (1), row slacks, artificials.
    s_col = 2 * nvars
    ineq = [i for i, (_, op, _) in enumerate(rows) if op != "=="]
    nslack = len(ineq) + 1  # +1 for s <= 1
    base = 2 * nvars + 1
    ncols = base + nslack
    a: list[list[Fraction]] = []
    b: list[Fraction] = []
    slack_of = {}
    for i, (coeffs, op, rhs) in enumerate(rows):
        sign = -1 if op in (">=", ">") else 1
        row = [Fraction(0)] * ncols
        for j, c in enumerate(coeffs):
            row[j] = sign * c
            row[nvars + j] = -sign * c
        if op in ("<", ">"):
            row[s_col] = Fraction(1)
        if op != "==":
            slack_of[i] = base + len(slack_of)
            row[slack_of[i]] = Fraction(1)
        a.append(row)
        b.append(sign * rhs)
    cap = [Fraction(0)] * ncols
    cap[s_col] = Fraction(1)
    cap[ncols - 1] = Fraction(1)
    a.append(cap)
    b.append(Fraction(1) if strict else Fraction(0))

    # Phase 1: artificial on every row whose slack cannot start basic.
    basis = []
    art_rows = []
    for i in range(len(a)):
        if b[i] < 0:
            a[i] = [-x for x in a[i]]
            b[i] = -b[i]
        slack_col = slack_of.get(i, ncols - 1 if i == len(a) - 1 else None)
        if slack_col is not None and a[i][slack_col] == 1:
            basis.append(slack_col)
        else:
            basis.append(None)
            art_rows.append(i)
    nart = len(art_rows)
    for i, row in enumerate(a):
        row.extend(Fraction(int(i == r)) for r in art_rows)
    for t, i in enumerate(art_rows):
        basis[i] = ncols + t
    tab = _Tableau(a, b, basis)
    c1 = [Fraction(0)] * ncols + [Fraction(-1)] * nart
    tab.set_objective(c1)
    tab.run(ncols)
    if tab.obj[-1] != 0:
        return LPResult(False)
    # Drive remaining artificials out of the basis.
    for i in range(len(tab.rows) - 1, -1, -1):
        if tab.basis[i] >= ncols:
            col = next((j for j in range(ncols) if tab.rows[i][j] != 0), None)
            if col is None:
                del tab.rows[i]
                del tab.basis[i]
            else:
                tab.pivot(i, col)
    for row in tab.rows:
        del row[ncols : ncols + nart]

    if strict:
        c2 = [Fraction(0)] * ncols
        c2[s_col] = Fraction(1)
        tab.set_objective(c2)
        tab.run(ncols)
        slack = tab.value(s_col)
        if slack <= 0:
            return LPResult(False)
    else:
        slack = Fraction(0)
    x = tuple(tab.value(j) - tab.value(nvars + j) for j in range(nvars))
    if not check_point(constraints, x):
        raise ArithmeticError("simplex returned a point that fails re-verification")
    return LPResult(True, x, slack)


# ---------------------------------------------------------------------------
# Fourier-Motzkin oracle


def _eliminate_equalities(rows):
    """Substitute equalities away; return (inequality rows, ok)."""
    ineqs = [r for r in rows if r[1] != "=="]
    eqs = [r for r in rows if r[1] == "=="]
    while eqs:
        coeffs, _, rhs = eqs.pop()
        j = next((j for j, c in enumerate(coeffs) if c != 0), None)
        if j is None:
            if rhs != 0:
                return [], False
            continue
        piv = coeffs[j]

        def subst(r):
            c, op, b = r
            f = c[j] / piv
            if not f:
                return r
            return ([x - f * y for x, y in zip(c, coeffs)], op, b - f * rhs)

        eqs = [subst(r) for r in eqs]
        ineqs = [subst(r) for r in ineqs]
    return ineqs, True


def fm_feasible(constraints: Sequence[Constraint], nvars: int | None = None) -> bool:
    """Feasibility by Fourier-Motzkin elimination with Chernikov's redundancy rule."""
    rows, nvars = _normalize(constraints, nvars)
    strict = any(op in ("<", ">") for _, op, _ in rows)
    rows, ok = _eliminate_equalities(rows)
    if not ok:
        return False
    # Weak system a.x + e*s <= b over variables x_0..x_{n-1}, s.
    n = nvars + 1
    system: list[tuple[list[Fraction], Fraction, frozenset[int]]] = []
    for coeffs, op, rhs in rows:
        sign = -1 if op in (">=", ">") else 1
        c = [sign * x for x in coeffs] + [Fraction(int(op in ("<", ">")))]
        system.append((c, sign * rhs, frozenset([len(system)])))
    if strict:
        system.append(([Fraction(0)] * nvars + [Fraction(1)], Fraction(1), frozenset([len(system)])))
        system.append(([Fraction(0)] * nvars + [Fraction(-1)], Fraction(0), frozenset([len(system)])))

    system = _dedupe(system)
    remaining = list(range(nvars))
    for t in range(1, nvars + 1):
        # Eliminate the variable producing the fewest combinations first.
        j = min(remaining, key=lambda v: _pair_count(system, v))
        remaining.remove(j)
        pos, neg, zero = [], [], []
        for row in system:
            c = row[0][j]
            (pos if c > 0 else neg if c < 0 else zero).append(row)
        new = list(zero)
        for cp, bp, op_ in pos:
            for cn, bn, on in neg:
                origin = op_ | on
                if len(origin) > t + 1:
                    continue
                fp, fn = -cn[j], cp[j]
                c = [fp * x + fn * y for x, y in zip(cp, cn)]
                new.append((c, fp * bp + fn * bn, origin))
        system = _dedupe(new)

    # Only s (or nothing) remains.
    lo = Fraction(0) if strict else None
    hi = Fraction(1) if strict else None
    for c, b, _ in system:
        e = c[n - 1]
        if e == 0:
            if b < 0:
                return False
        elif e > 0:
            hi = b / e if hi is None else min(hi, b / e)
        else:
            lo = b / e if lo is None else max(lo, b / e)
    if lo is not None and hi is not None and lo > hi:
        return False
    if strict:
        return hi > 0
    return True


def _pair_count(system, j: int) -> int:
    pos = sum(1 for c, _, _ in system if c[j] > 0)
    neg = sum(1 for c, _, _ in system if c[j] < 0)
    return pos * neg - pos - neg


def _dedupe(system):
    """Scale rows to a unit leading coefficient and keep the tightest per direction."""
    best: dict[tuple, tuple] = {}
    for c, b, origin in system:
        lead = next((x for x in c if x != 0), None)
        if lead is None:
            if b < 0:
                return [(c, b, origin)]
            continue
        scale = abs(lead)
        key = tuple(x / scale for x in c)
        bn = b / scale
        cur = best.get(key)
        if cur is None or bn < cur[1] or (bn == cur[1] and len(origin) < len(cur[2])):
            best[key] = (list(key), bn, origin)
    return list(best.values())
