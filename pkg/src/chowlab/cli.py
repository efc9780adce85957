"""Command-line interface: ``chowlab <command> [options]``.

Every command prints one JSON report on standard output. Errors go to
standard error with an exit code that names their kind (see
:mod:`chowlab.errors`).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Sequence

from . import report as rp
from .errors import ChowlabError, InputError
from .series import DEFAULT_ORDER

SEED_ENV = "CHOWLAB_SEED"


def _default_seed() -> int | None:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError as e:
        raise InputError(f"{SEED_ENV} must be an integer, got {raw!r}") from e


def _load(args, principal=None):
    seed = args.seed if getattr(args, "seed", None) is not None else _default_seed()
    return rp.read_input_file(args.file, seed=seed, principal=principal)


def _principal_arg(text: str | None):
    if text is None:
        return None
    parts = [p.strip() for p in text.split(",")]
    return parts if len(parts) > 1 else parts[0]


class _Timer:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.marks: dict[str, str] = {}

    def run(self, name: str, fn, *a, **kw):
        t0 = time.perf_counter()
        out = fn(*a, **kw)
        if self.enabled:
            self.marks[name] = f"{time.perf_counter() - t0:.3f}"
        return out

    def attach(self, report: dict) -> dict:
        if self.enabled:
            report["timing"] = self.marks
        return report


def cmd_analyze(args) -> dict:
    inp = _load(args)
    ws = inp.ws
    tm = _Timer(args.timing)
    sections = {
        "chambers": tm.run("chambers", rp.chambers_section, ws),
        "git": tm.run("git", rp.git_section, ws),
        "chow": tm.run("chow", rp.chow_section, ws),
        "charges": tm.run("charges", rp.charges_section, ws, inp.principal, inp.seed),
        "pts": tm.run("pts", rp.witness_section, ws, inp.seed, inp.order),
    }
    return tm.attach(rp.envelope(inp, **sections))


def cmd_chambers(args) -> dict:
    inp = _load(args)
    tm = _Timer(args.timing)
    return tm.attach(rp.envelope(inp, chambers=tm.run("chambers", rp.chambers_section, inp.ws)))


def cmd_git(args) -> dict:
    inp = _load(args)
    tm = _Timer(args.timing)
    r = rp.parse_point(_principal_arg(args.charge), inp.ws.k) if args.charge else None
    return tm.attach(rp.envelope(inp, git=tm.run("git", rp.git_section, inp.ws, r)))


def cmd_chow(args) -> dict:
    inp = _load(args)
    tm = _Timer(args.timing)
    return tm.attach(rp.envelope(inp, chow=tm.run("chow", rp.chow_section, inp.ws)))


def cmd_charges(args) -> dict:
    inp = _load(args, principal=_principal_arg(args.principal))
    tm = _Timer(args.timing)
    section = tm.run("charges", rp.charges_section, inp.ws, inp.principal, inp.seed)
    return tm.attach(rp.envelope(inp, charges=section))


def _parse_tail(text: str) -> list[tuple[str, str]]:
    cols = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        xy = [s.strip() for s in part.split(",")]
        if len(xy) != 2:
            raise InputError(f"tail column {part!r} must be 'a_i,b_i'")
        cols.append((xy[0], xy[1]))
    return cols


def cmd_pts_demo(args) -> dict:
    tm = _Timer(args.timing)
    if args.input:
        args.file = args.input
        inp = _load(args)
        order = args.order if args.order is not None else inp.order
        return tm.attach(rp.envelope(inp, pts=tm.run("pts", rp.witness_section, inp.ws, inp.seed, order)))
    try:
        tail = [tuple(rp.rat(c) for c in col) for col in _parse_tail(args.tail)]
        a, b = rp.rat(args.a), rp.rat(args.b)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"cannot read pts-demo arguments: {e}") from e
    order = args.order if args.order is not None else DEFAULT_ORDER
    m = args.m if args.m is not None else args.j + len(tail)
    section = tm.run("pts", rp.block_section, m, args.j, a, b, tail, order)
    return tm.attach(rp.envelope(None, pts=section))


def cmd_plot(args) -> str:
    from .plot import render_svg

    inp = _load(args)
    return render_svg(inp.ws, inp.principal, inp.seed)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chowlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name: str, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", help="input JSON (k, n, weights, optional principal/seed/order)")
        sp.add_argument("--seed", type=int, default=None, help=f"overrides the file and ${SEED_ENV}")
        sp.add_argument("--timing", action="store_true", help="add wall-clock timings to the report")
        return sp

    with_file("analyze", "all sections").set_defaults(func=cmd_analyze)
    with_file("chambers", "chamber decomposition").set_defaults(func=cmd_chambers)
    sp = with_file("git", "semistable sets, orbit classes, slices, wall crossings")
    sp.add_argument("--charge", help="also report GIT data at this point, e.g. 1/2 or '1/2,1/3'")
    sp.set_defaults(func=cmd_git)
    with_file("chow", "labeled coherent subdivisions").set_defaults(func=cmd_chow)
    sp = with_file("charges", "momentum charges and stable orbit types")
    sp.add_argument("--principal", help="principal charge, e.g. -1/2")
    sp.set_defaults(func=cmd_charges)
    sp = with_file("plot", "SVG picture")
    sp.add_argument("--out", help="output path (default: standard output)")
    sp.set_defaults(func=cmd_plot)

    sp = sub.add_parser("pts-demo", help="perturb-translate-specialize limits")
    sp.add_argument("--input", help="weight-system file: torus witnesses instead of the line demo")
    sp.add_argument("--m", type=int, default=None, help="number of points (default j + tail size)")
    sp.add_argument("--j", type=int, default=2, help="size of the coincident block")
    sp.add_argument("--a", default="1")
    sp.add_argument("--b", default="1")
    sp.add_argument("--tail", default="2,1;3,1", help="remaining columns as 'a1,b1;a2,b2;...'")
    sp.add_argument("--order", type=int, default=None, help=f"truncation order (default {DEFAULT_ORDER})")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--timing", action="store_true")
    sp.set_defaults(func=cmd_pts_demo)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
        if isinstance(result, str):
            if getattr(args, "out", None):
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(result)
            else:
                sys.stdout.write(result)
        else:
            sys.stdout.write(rp.dumps(result))
    except ChowlabError as e:
        print(f"chowlab: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"chowlab: {e}", file=sys.stderr)
        return InputError.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
