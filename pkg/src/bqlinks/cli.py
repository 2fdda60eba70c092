"""Command-line front end.

Exit codes: 0 success, 1 a check or fuzz run failed, 2 unreadable or
malformed input, 3 a precondition was violated (invalid biquandle,
inadmissible f, bad cocycle, move site that does not match).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Sequence, TextIO

from .abelian import element_text
from .biquandle import FiniteBiquandle, Permutation, admissible_automorphisms, automorphisms, require_admissible
from .cohomology import Cocycle2, cocycle_violations, cohomology, is_coboundary, omega5_violations, state_sum
from .coloring import solve
from .diagram import ArrowedDiagram
from .errors import BqError, ContractError, FormatError
from .fuzz import Evaluator, fuzz, report
from .index import gx_abelianization, index_profile
from .moves import KINDS, Move, apply_move


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None


def _biquandle(path: str, *, valid: bool = True) -> FiniteBiquandle:
    b = FiniteBiquandle.parse(_read(path))
    if valid:
        report_ = b.check_axioms()
        if not report_.valid:
            raise ContractError(f"{path} is not a biquandle: {report_.violations[0]}")
    return b


def _perm(text: str, b: FiniteBiquandle, *, admissible: bool = True) -> Permutation:
    f = Permutation.parse(text)
    if f.n != b.n:
        raise FormatError(f"permutation has degree {f.n}, biquandle has order {b.n}")
    if admissible:
        require_admissible(b, f)
    return f


def _diagram(arg: str) -> ArrowedDiagram:
    """A diagram file, or an inline code when no such file exists."""
    p = Path(arg)
    text = _read(arg) if p.is_file() else arg
    d = ArrowedDiagram.parse(text)
    d.require_valid()
    return d


def _cocycle(path: str, b: FiniteBiquandle) -> Cocycle2:
    phi = Cocycle2.parse(_read(path))
    if phi.n != b.n:
        raise FormatError(f"cocycle is {phi.n}x{phi.n}, biquandle has order {b.n}")
    return phi


def _coeffs(text: str) -> int:
    if text == "Z":
        return 0
    if text.startswith("Z%"):
        try:
            m = int(text[2:])
        except ValueError:
            m = -1
        if m >= 2:
            return m
    raise FormatError(f"coefficients must be Z or Z%m with m >= 2, got {text!r}")


# subcommands --------------------------------------------------------------


def cmd_check_biquandle(a, out: TextIO) -> int:
    b = _biquandle(a.F, valid=False)
    rep = b.check_axioms()
    if rep.valid:
        out.write("valid\n")
        out.write(f"latin class: {b.latin_class()}\n")
        return 0
    out.write("invalid\n")
    for v in rep.violations:
        out.write(f"{v}\n")
    return 1


def cmd_automorphisms(a, out: TextIO) -> int:
    b = _biquandle(a.F)
    for f in admissible_automorphisms(b) if a.admissible else automorphisms(b):
        out.write(f.to_text() + "\n")
    return 0


def cmd_color_count(a, out: TextIO) -> int:
    b = _biquandle(a.F)
    out.write(f"{len(solve(b, _perm(a.PERM, b), _diagram(a.D)))}\n")
    return 0


def cmd_colorings(a, out: TextIO) -> int:
    b = _biquandle(a.F)
    d = _diagram(a.D)
    for col in solve(b, _perm(a.PERM, b), d):
        out.write(" ".join(map(str, col)) + "\n")
    return 0


def cmd_state_sum(a, out: TextIO) -> int:
    b = _biquandle(a.F)
    f = _perm(a.PERM, b)
    out.write(state_sum(b, f, _cocycle(a.PHI, b), _diagram(a.D)).to_text() + "\n")
    return 0


def cmd_check_cocycle(a, out: TextIO) -> int:
    b = _biquandle(a.F)
    f = _perm(a.PERM, b)
    phi = _cocycle(a.PHI, b)
    bad2, bad5 = cocycle_violations(b, phi), omega5_violations(b, f, phi)
    out.write(f"cocycle: {'no' if bad2 else 'yes'}\n")
    if bad2:
        out.write(f"  first failure at {bad2[0]}\n")
    out.write(f"omega5: {'no' if bad5 else 'yes'}\n")
    if bad5:
        out.write(f"  first failure at {bad5[0]}\n")
    return 1 if bad2 or bad5 else 0


def cmd_is_coboundary(a, out: TextIO) -> int:
    b = _biquandle(a.F)
    psi = is_coboundary(b, _cocycle(a.PHI, b))
    if psi is None:
        out.write("coboundary: no\n")
    else:
        out.write("coboundary: yes\n")
        out.write("psi = " + " ".join(element_text(v) for v in psi) + "\n")
    return 0


def cmd_cohomology(a, out: TextIO) -> int:
    b = _biquandle(a.F)
    out.write(cohomology(b, a.degree, _coeffs(a.coeffs)).to_text() + "\n")
    return 0


def cmd_gx(a, out: TextIO) -> int:
    b = _biquandle(a.F)
    out.write(gx_abelianization(b, _perm(a.PERM, b)).to_text())
    return 0


def cmd_index_profile(a, out: TextIO) -> int:
    b = _biquandle(a.F)
    out.write(index_profile(b, _perm(a.PERM, b), _diagram(a.D)).to_text())
    return 0


def cmd_apply_move(a, out: TextIO) -> int:
    d = _diagram(a.D)
    out.write(apply_move(d, Move.parse(a.move, a.site)).to_text() + "\n")
    return 0


def cmd_fuzz(a, out: TextIO) -> int:
    b = _biquandle(a.F)
    f = _perm(a.PERM, b)
    # the optional cocycle sits between PERM and D on the command line
    if len(a.rest) == 1:
        phi, d = None, _diagram(a.rest[0])
    elif len(a.rest) == 2:
        phi, d = _cocycle(a.rest[0], b), _diagram(a.rest[1])
    else:
        raise FormatError("fuzz expects F PERM [PHI] D")
    if a.steps < 0 or a.trials < 0:
        raise FormatError("steps and trials must be nonnegative")
    results = fuzz(Evaluator(b, f, phi), d, a.steps, a.trials, a.seed)
    out.write(report(results))
    return 0 if all(r.ok for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bqlinks", description="Biquandle invariants of arrowed link diagrams.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, *positional: str, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        for arg in positional:
            sp.add_argument(arg)
        sp.set_defaults(func=fn)
        return sp

    add("check-biquandle", cmd_check_biquandle, "F", help="verify the biquandle axioms")
    sp = add("automorphisms", cmd_automorphisms, "F", help="list automorphisms")
    sp.add_argument("--admissible", action="store_true", help="only those with x*y = x o f(y)")
    add("color-count", cmd_color_count, "F", "PERM", "D", help="number of colorings")
    add("colorings", cmd_colorings, "F", "PERM", "D", help="list colorings in semi-arc order")
    add("state-sum", cmd_state_sum, "F", "PERM", "PHI", "D", help="cocycle state sum")
    add("check-cocycle", cmd_check_cocycle, "F", "PERM", "PHI", help="2-cocycle and Omega5 conditions")
    add("is-coboundary", cmd_is_coboundary, "F", "PHI", help="solve delta psi = phi")
    sp = add("cohomology", cmd_cohomology, "F", help="cohomology of the non-degenerate complex")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--coeffs", default="Z", help="Z or Z%%m")
    add("gx", cmd_gx, "F", "PERM", help="abelianized pair group and generator images")
    add("index-profile", cmd_index_profile, "F", "PERM", "D", help="a_g profile")
    sp = add("apply-move", cmd_apply_move, "D", help="rewrite a diagram by one move")
    sp.add_argument("--move", required=True, choices=KINDS)
    sp.add_argument("--site", required=True, help="e.g. arc=0:0,order=ou,sign=+")
    sp = add("fuzz", cmd_fuzz, "F", "PERM", help="random move sequences; invariants must not change")
    sp.add_argument("rest", nargs="+", metavar="[PHI] D")
    sp.add_argument("--steps", type=int, default=12)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=1)
    return p


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except FormatError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except BqError as exc:
        err.write(f"error: {exc}\n")
        return 3


def main() -> None:
    sys.exit(run())
