"""JSON report sections. Rationals are written as strings ``"p/q"``, never floats."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from itertools import combinations
from typing import Any, Sequence

from . import __version__
from .action import WeightSystem, all_supports
from .chambers import build_chambers, locate
from .charges import assign_charges, forgetful_to_principal, stable_orbit_types, validate_charges
from .chow import (
    check_support_injectivity,
    enumerate_subdivisions,
    fiber_cycle,
    polytope_volume,
    separation_check,
)
from .errors import InputError, OutsidePolytopeError
from .geometry import relative_interior_point
from .git import (
    is_semistable,
    is_stable,
    orbit_classes,
    reduction_strata,
    semistable_set,
    slice_polytope,
    wall_crossing_report,
)
from .linalg import rat
from .pts import check_collision_law, pts_block_separation, pts_torus_witness
from .series import DEFAULT_ORDER

SCHEMA_VERSION = "1.0"


def q(x) -> str:
    return str(Fraction(x))


def qv(v: Sequence) -> list[str]:
    return [q(x) for x in v]


def qvs(vs: Sequence[Sequence]) -> list[list[str]]:
    return [qv(v) for v in vs]


def supports(ss) -> list[list[int]]:
    return [list(s) for s in ss]


# ---------------------------------------------------------------------------
# Input


@dataclass(frozen=True)
class InputSpec:
    ws: WeightSystem
    principal: tuple[Fraction, ...]
    seed: int
    order: int
    explicit_principal: bool

    def echo(self) -> dict:
        return {
            "k": self.ws.k,
            "n": self.ws.n,
            "weights": [list(w) for w in self.ws.weights],
            "principal": qv(self.principal),
            "seed": self.seed,
            "order": self.order,
        }


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{what} must be an integer, got {x!r}")
    return x


def parse_point(value, k: int) -> tuple[Fraction, ...]:
    items = value if isinstance(value, list) else [value]
    if len(items) != k:
        raise InputError(f"point needs {k} coordinates, got {len(items)}")
    try:
        return tuple(rat(x) for x in items)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise InputError(f"cannot read {value!r} as a rational point") from e


def load_input(data: Any, seed: int | None = None, principal=None) -> InputSpec:
    if not isinstance(data, dict):
        raise InputError("input must be a JSON object")
    unknown = set(data) - {"k", "n", "weights", "principal", "seed", "order", "name"}
    if unknown:
        raise InputError(f"unknown input keys: {sorted(unknown)}")
    for key in ("k", "n", "weights"):
        if key not in data:
            raise InputError(f"missing required key {key!r}")
    k = _int(data["k"], "k")
    n = _int(data["n"], "n")
    rows = data["weights"]
    if not isinstance(rows, list) or len(rows) != n + 1:
        raise InputError(f"weights must list n + 1 = {n + 1} rows")
    weights = []
    for row in rows:
        row = [row] if k == 1 and not isinstance(row, list) else row
        if not isinstance(row, list) or len(row) != k:
            raise InputError(f"each weight row must have k = {k} entries")
        weights.append(tuple(_int(c, "weight") for c in row))
    ws = WeightSystem(tuple(weights))

    order = _int(data.get("order", DEFAULT_ORDER), "order")
    if order < 2:
        raise InputError("order must be at least 2")
    if seed is None:
        seed = _int(data.get("seed", 0), "seed")
    explicit = principal is not None or "principal" in data
    if principal is None:
        principal = data.get("principal")
    if principal is not None:
        r = parse_point(principal, k)
    elif ws.k <= 2:
        r = relative_interior_point(build_chambers(ws).top()[0].cell)
    else:
        r = relative_interior_point(ws.moment_polytope)
    if ws.k <= 2:
        if locate(build_chambers(ws), r).dim != ws.k:
            raise OutsidePolytopeError("the principal charge must lie in the interior of a top chamber")
    return InputSpec(ws, r, seed, order, explicit)


def read_input_file(path: str, **kw) -> InputSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e.msg} (line {e.lineno})") from e
    return load_input(data, **kw)


# ---------------------------------------------------------------------------
# Sections


def chambers_section(ws: WeightSystem) -> dict:
    cc = build_chambers(ws)
    return {
        "polytope": {"dim": cc.P.dim, "vertices": qvs(cc.P.vertices)},
        "chambers": [
            {"id": c.id, "dim": c.dim, "vertices": qvs(c.vertices)} for c in cc.chambers
        ],
        "face_poset": [list(p) for p in cc.face_poset],
    }


def _slice(ws: WeightSystem, r) -> dict:
    s = slice_polytope(ws, r)
    return {"point": qv(s.r), "dim": s.dim, "f_vector": list(s.f_vector), "vertices": qvs(s.vertices)}


def _strata(ws: WeightSystem, r) -> list[dict]:
    st = reduction_strata(ws, r)
    return [
        {"polytope": qvs(key), "supports": supports(st.strata[key]), "closure": supports(st.closures[key])}
        for key in st.strata
    ]


def charge_section(ws: WeightSystem, r) -> dict:
    """GIT data at one point ``r`` of the moment polytope."""
    cc = build_chambers(ws)
    ch = locate(cc, r)
    return {
        "point": qv(r),
        "chamber": ch.id,
        "semistable": supports(s for s in all_supports(ws) if is_semistable(ws, s, r)),
        "stable": supports(s for s in all_supports(ws) if is_stable(ws, s, r)),
        "slice": _slice(ws, r),
        "strata": _strata(ws, r),
    }


def git_section(ws: WeightSystem, r=None) -> dict:
    cc = build_chambers(ws)
    per = []
    for c in cc.chambers:
        center = relative_interior_point(c.cell)
        per.append(
            {
                "chamber": c.id,
                "semistable": supports(semistable_set(ws, c)),
                "classes": [
                    {"supports": supports(cl.supports), "closed_orbit": list(cl.closed_orbit)}
                    for cl in orbit_classes(ws, c)
                ],
                "slice": _slice(ws, center),
            }
        )
    out = {
        "chambers": per,
        "wall_crossings": [
            {
                "face": w.face,
                "chamber": w.chamber,
                "inclusion": w.inclusion,
                "face_f_vector": list(w.face_f_vector),
                "chamber_f_vector": list(w.chamber_f_vector),
            }
            for w in wall_crossing_report(ws, cc)
        ],
    }
    if r is not None:
        out["charge"] = charge_section(ws, r)
    return out


def chow_section(ws: WeightSystem) -> dict:
    poset = enumerate_subdivisions(ws)
    finest = poset.finest()
    cycles = [fiber_cycle(ws, poset.elements[i].cells, poset) for i in finest]
    inj = check_support_injectivity(ws, poset)
    sep = separation_check(ws, poset=poset)
    return {
        "count": len(poset.elements),
        "subdivisions": [
            {
                "id": i,
                "cells": supports(s.cells),
                "certificate": list(s.certificate),
                "stratum_dim": s.stratum_dim,
                "geometric": [qvs(key) for key in s.geometric],
            }
            for i, s in enumerate(poset.elements)
        ],
        "minimum": poset.minimum,
        "finest": finest,
        "covers": [list(c) for c in poset.covers()],
        "polytope_volume": polytope_volume(ws),
        "fiber_cycles": [
            {
                "subdivision": i,
                "components": [{"support": list(s), "multiplicity": m} for s, m in fc.components],
                "degree": fc.degree,
            }
            for i, fc in zip(finest, cycles)
        ],
        "support_injectivity": {
            "ok": inj.ok,
            "collisions": [[supports(a), supports(b)] for a, b in inj.collisions],
        },
        "separation": {
            "ok": sep.ok,
            "pairs": [
                {
                    "first": supports(p.first),
                    "second": supports(p.second),
                    "chamber": p.chamber,
                    "cells": supports(p.cells) if p.cells else None,
                }
                for p in sep.pairs
            ],
        },
    }


def charges_section(ws: WeightSystem, r, seed: int) -> dict:
    gamma = assign_charges(ws, r, seed)
    types = stable_orbit_types(ws, gamma)
    strata = reduction_strata(ws, gamma.principal)
    return {
        "principal": qv(gamma.principal),
        "seed": seed,
        "attempt": gamma.attempt,
        "types": [
            {
                "subdivision": t.subdivision,
                "labeled_multiplicity": t.labeled_multiplicity,
                "cells": [
                    {
                        "cell": qvs(c.cell),
                        "charge": qv(c.charge),
                        "supports": supports(c.supports),
                        "principal": c.principal,
                    }
                    for c in t.cells
                ],
                "principal_stratum": qvs(forgetful_to_principal(t, strata)),
            }
            for t in types
        ],
        "violations": [v.clause for v in validate_charges(gamma)],
    }


def witness_section(ws: WeightSystem, seed: int, order: int) -> dict:
    poset = enumerate_subdivisions(ws)
    rows = []
    for i in poset.finest():
        cells = poset.elements[i].cells
        for a, b in combinations(cells, 2):
            for s1, s2 in ((a, b), (b, a)):
                w = pts_torus_witness(ws, s1, s2, seed, order, poset)
                rows.append(
                    {
                        "from": list(s1),
                        "to": list(s2),
                        "subdivision": supports(w.cells),
                        "phi_exponents": list(w.phi_exponents),
                        "g_exponent": list(w.g_exponent),
                        "x": qv(w.x),
                        "limit": qv(w.limit),
                    }
                )
    return {"kind": "torus", "witnesses": rows}


def block_section(m: int, j: int, a, b, tail, order: int) -> dict:
    res = pts_block_separation(m, j, a, b, tail, order)
    top, bottom = res.rows()
    J = list(range(1, j + 1))
    section = {
        "kind": "block-separation",
        "m": m,
        "j": j,
        "a": q(rat(a)),
        "b": q(rat(b)),
        "tail": [qv(p) for p in tail],
        "order": order,
        "limit": [qv(top), qv(bottom)],
        "expected": [qv(p[0] for p in res.expected), qv(p[1] for p in res.expected)],
        "matches": res.matches,
    }
    if j >= 2 and len(tail) >= 2:
        verdict = check_collision_law(res.source, res.limit, J)
        section["collision_law"] = {
            "ok": verdict.ok,
            "applies": verdict.applies,
            "offending": list(verdict.offending) if verdict.offending else None,
            "tree": verdict.tree,
        }
    return section


def envelope(inp: InputSpec | None, **sections) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "chowlab", "version": __version__},
    }
    if inp is not None:
        out["input"] = inp.echo()
    out.update(sections)
    return out


def schema() -> dict:
    text = resources.files("chowlab").joinpath("report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"
