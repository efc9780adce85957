"""Independent brute-force enumeration of labeled subdivisions, rank one only.

On a line every labeled coherent subdivision is fixed by two choices: the
interior breakpoints (distinct weight values where the lower envelope
bends) and the set of labels lying on the envelope. This module runs over
all such choices, builds the cells they induce, and decides coherence by
Fourier-Motzkin elimination in the lifting variables alone. It shares no
code with the chamber/exact-cover enumerator and serves as its oracle.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import chain, combinations

from .action import WeightSystem
from .errors import UnsupportedRankError
from .lp import fm_feasible


def _subsets(xs):
    return chain.from_iterable(combinations(xs, r) for r in range(len(xs) + 1))


def candidate_families(ws: WeightSystem) -> set[tuple[tuple[int, ...], ...]]:
    if ws.k != 1:
        raise UnsupportedRankError("the brute-force oracle handles rank one only")
    w = {i: ws.weights[i - 1][0] for i in ws.labels}
    values = sorted(set(w.values()))
    inner = values[1:-1]
    out = set()
    for breaks in _subsets(inner):
        ends = [values[0], *breaks, values[-1]]
        for on in _subsets(ws.labels):
            cells = []
            for a, b in zip(ends, ends[1:]):
                cell = tuple(i for i in on if a <= w[i] <= b)
                if not any(w[i] == a for i in cell) or not any(w[i] == b for i in cell):
                    break
                cells.append(cell)
            else:
                out.add(tuple(sorted(cells)))
    return out


def fm_coherent(ws: WeightSystem, cells) -> bool:
    """Coherence of a rank-one labeled family, decided in the variables psi."""
    w = {i: Fraction(ws.weights[i - 1][0]) for i in ws.labels}
    m = ws.n + 1
    cons = []
    for idx, cell in enumerate(cells):
        p = min(cell, key=lambda i: (w[i], i))
        q = max(cell, key=lambda i: (w[i], i))
        a, b = w[p], w[q]
        if idx == 0:
            for g in (p, q):
                row = [Fraction(0)] * m
                row[g - 1] = Fraction(1)
                cons.append((row, "==", 0))
        for i in ws.labels:
            # psi_i - l(w_i), with l interpolating psi_p and psi_q.
            t = (w[i] - a) / (b - a)
            row = [Fraction(0)] * m
            row[i - 1] += 1
            row[p - 1] -= 1 - t
            row[q - 1] -= t
            cons.append((row, "==" if i in cell else ">", 0))
    return fm_feasible(cons, m)


def brute_force_subdivisions(ws: WeightSystem) -> set[tuple[tuple[int, ...], ...]]:
    return {cells for cells in candidate_families(ws) if fm_coherent(ws, cells)}
