"""Command-line front end: ``blockcenter <command> ...``.

Every command builds a :class:`~blockcenter.report.Report` and exits with 0
(PASS), 1 (FAIL) or 2 (ERROR).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Sequence

from . import fdalgebra as fda
from .center import PRESENTATIONS, center_basis, match_presentation, reduce_mod_p
from .errors import BlockCenterError, NotSymmetric, ParseError
from .exact_linalg import IntMatrix, RatMatrix, elementary_divisors, integer_kernel_basis, smith_normal_form
from .gendec import assemble, check_orthogonality, check_star_congruences, contribution
from .plesken import (
    canonical_form,
    enumerate_ordinary_16x3,
    enumerate_rows,
    enumerate_solutions,
    gram_automorphisms,
    row_orbit_key,
)
from .report import Report, emit
from .resolution import DEFAULT_STEPS, fibonacci_certificate, hypothesis_check, minimal_resolution_dims
from .textio import load_paper_matrix, read_algebra, read_block, read_matrix
from .verify import SECTIONS, verify_paper

__all__ = ["main", "build_parser", "run"]


def _matrix_lines(m) -> list[str]:
    rows = [[str(x) for x in m.row(i)] for i in range(m.rows)]
    if not rows:
        return ["(empty)"]
    w = max(len(x) for r in rows for x in r)
    return ["  " + " ".join(x.rjust(w) for x in r) for r in rows]


def _parse_vec(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise ParseError(f"bad vector {text!r}; expected comma-separated integers") from None


def _parse_contribs(text: str) -> dict[Fraction, int]:
    """``3/16:16`` or ``3/16,3/16,11/16`` style lists."""
    out: dict[Fraction, int] = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        val, _, cnt = item.partition(":")
        try:
            q, n = Fraction(val), int(cnt) if cnt else 1
        except ValueError:
            raise ParseError(f"bad contribution entry {item!r}") from None
        out[q] = out.get(q, 0) + n
    return out


def _int_matrix(path) -> IntMatrix:
    m = read_matrix(path)
    if isinstance(m, RatMatrix):
        raise ParseError(f"{path}: expected an integer matrix")
    return m


# ---------------------------------------------------------------- commands

def cmd_snf(args, rep: Report):
    a = _int_matrix(args.file)
    res = smith_normal_form(a)
    s = rep.section("Smith normal form U A V = D")
    s.add(f"elementary divisors: {list(elementary_divisors(a))}")
    for name, m in (("U", res.u), ("D", res.d), ("V", res.v)):
        s.add(f"{name} =")
        s.lines.extend(_matrix_lines(m))
    s.check(res.u @ a @ res.v == res.d, "U A V = D")
    s.check(res.u.is_unimodular() and res.v.is_unimodular(), "U and V are unimodular")
    s.data.update(u=res.u, d=res.d, v=res.v, elementary_divisors=list(elementary_divisors(a)))


def cmd_kernel(args, rep: Report):
    a = _int_matrix(args.file)
    k = integer_kernel_basis(a)
    s = rep.section(f"saturated integer kernel, rank {k.rows}")
    s.add("basis rows:")
    s.lines.extend(_matrix_lines(k))
    if k.rows:
        s.check(a @ k.T == IntMatrix.zeros(a.rows, k.rows), "A x = 0 for every basis row")
    s.data["kernel"] = k


def cmd_solve_gram(args, rep: Report):
    c = _int_matrix(args.gram)
    cands = enumerate_rows(c, parity_required=not args.all_rows)
    s = rep.section("admissible rows r with r C^-1 r^T <= 1"
                    + ("" if args.all_rows else " and odd scaled contribution"))
    types: dict[tuple, list] = {}
    for cd in cands:
        types.setdefault(row_orbit_key(cd.r), []).append(cd)
    s.add(f"{len(cands)} rows up to sign, {len(types)} classes under signed permutations")
    table = []
    for key in sorted(types, key=lambda k: (types[k][0].contribution, types[k][-1].r)):
        rep_row = max(cd.r for cd in types[key])
        q = types[key][0].contribution
        s.add(f"({','.join(map(str, rep_row))})  x{len(types[key])}  contribution {q}")
        table.append({"row": list(rep_row), "count": len(types[key]), "contribution": q})
    s.data["row_classes"] = table
    if args.rows is None:
        return
    cons = _parse_contribs(args.contrib) if args.contrib else None
    classes = enumerate_solutions(c, args.rows, cons, parity_required=not args.all_rows)
    s2 = rep.section(f"solution classes of X^T X = C with {args.rows} rows")
    s2.add(f"{len(classes)} classes")
    for cls in classes:
        s2.add(f"class {cls.label}: elementary divisors {cls.eldiv}, "
               f"contributions {[str(q) for q in cls.contributions]}")
        s2.lines.extend(_matrix_lines(cls.canonical))
    s2.data["classes"] = [{"label": cls.label, "eldiv": list(cls.eldiv), "canonical": cls.canonical}
                          for cls in classes]


def cmd_ordinary(args, rep: Report):
    c = _int_matrix(args.gram) if args.gram else load_paper_matrix("cartan_x")
    cls = enumerate_ordinary_16x3(c, args.rows)
    s = rep.section(f"{args.rows} x {c.rows} solutions with every row contributing "
                    f"3/{elementary_divisors(c)[-1]}")
    s.add("unique class; canonical representative:")
    s.lines.extend(_matrix_lines(cls.canonical))
    s.check(sum(cls.contributions) == c.rows, f"trace {sum(cls.contributions)}")
    s.data["canonical"] = cls.canonical
    if args.gram is None:
        shown = load_paper_matrix("ordinary_bx")
        s.check(canonical_form(shown, gram_automorphisms(c)) == cls.canonical,
                "bundled matrix lies in this class")


def _block_from_args(args):
    if args.block:
        return read_block(args.block)
    raise ParseError("--block FILE is required")


def cmd_contrib(args, rep: Report):
    block = _block_from_args(args)
    for sub in block.subsections:
        if args.label and sub.label != args.label:
            continue
        cm = contribution(sub, block.scale)
        s = rep.section(f"{block.scale} M^{sub.label}")
        s.lines.extend(_matrix_lines(cm.scaled))
        s.add(f"trace {cm.trace()}")
        s.check(cm.is_idempotent(), "M is idempotent")
        s.check(cm.all_odd(), "all entries odd")
        s.data[sub.label] = cm.scaled


def cmd_check_block(args, rep: Report):
    block = _block_from_args(args)
    s = rep.section("block constraints")
    try:
        check_orthogonality(block)
        g = assemble(block)
    except BlockCenterError as exc:
        s.fail(f"{type(exc).__name__}: {exc}")
        return
    s.add("ok: orthogonality and Cartan matrices")
    for chk in check_star_congruences(block):
        s.check(chk.ok, chk.describe())
    s.data["gendec"] = g


def cmd_center(args, rep: Report):
    if args.q:
        q = read_matrix(args.q)
    elif args.block:
        q = assemble(read_block(args.block)).T
    else:
        raise ParseError("give --q FILE or --block FILE")
    lat = center_basis(q)
    s = rep.section("center lattice: column j is the diagonal of beta_j")
    s.lines.extend(_matrix_lines(lat.basis_diagonals))
    s.data["diagonals"] = lat.basis_diagonals
    mc = reduce_mod_p(lat, args.p)
    a = mc.algebra
    s2 = rep.section(f"structure constants mod {args.p} (b_i * b_j = sum c_k b_k)")
    for i in range(a.dim):
        for j in range(i, a.dim):
            prod = a.mul(a.basis_vector(i), a.basis_vector(j))
            terms = [a.labels[k] if c == 1 else f"{c}*{a.labels[k]}" for k, c in enumerate(prod) if c]
            s2.add(f"{a.labels[i]} * {a.labels[j]} = {' + '.join(terms) or '0'}")
    s2.data["structure_constants"] = a.sc
    try:
        loc, _ = fda.local_presentation(a)
        layers = fda.loewy_dimensions(loc)
        s2.add(f"Loewy layers {layers}")
        s2.data["loewy"] = layers
    except BlockCenterError as exc:
        s2.add(f"not local: {exc}")
    if args.match:
        target = PRESENTATIONS[args.match]
        s3 = rep.section(f"presentation {target.name}")
        w = match_presentation(mc, target)
        if s3.check(w is not None, f"isomorphic to {target.name}"):
            for g, v in w.as_dict().items():
                s3.add(f"{g} -> {''.join(map(str, v))}")
            s3.data["witness"] = {g: list(v) for g, v in w.as_dict().items()}


def _subspace_lines(u: fda.Subspace, labels) -> list[str]:
    out = [f"dimension {u.dim}"]
    for row in u.basis:
        out.append("  " + (" + ".join(labels[i] if c == 1 else f"{c}*{labels[i]}"
                                      for i, c in enumerate(row) if c) or "0"))
    return out


def cmd_algebra(args, rep: Report):
    a = read_algebra(args.file)
    a.validate()
    op, *rest = args.op
    ops = ("loewy", "socle", "center", "commutator", "tn", "symform", "perp")
    if op not in ops or len(rest) != (op == "tn"):
        raise ParseError(f"--op expects one of {', '.join(ops)} (tn takes N)")
    n = None
    if op == "tn":
        try:
            n = int(rest[0])
        except ValueError:
            raise ParseError(f"bad N {rest[0]!r} for --op tn") from None
    s = rep.section(op + (f" {n}" if n is not None else ""))
    if op == "loewy":
        dims = [u.dim for u in fda.radical_series(a)]
        layers = fda.loewy_dimensions(a)
        s.add(f"radical series dimensions {dims}")
        s.add(f"Loewy layers {layers}, Loewy length {len(layers)}")
        s.data.update(series=dims, layers=layers)
        return
    if op == "socle":
        u = fda.socle(a, args.side)
    elif op == "center":
        u = fda.center(a)
    elif op == "commutator":
        u = fda.commutator_space(a)
    elif op == "tn":
        u = fda.kulshammer_T(a, n)
    elif op == "symform":
        try:
            form = fda.find_symmetrizing_form(a, seed=args.seed)
        except NotSymmetric as exc:
            s.fail(str(exc))
            return
        s.add("s = (" + " ".join(map(str, form.coeffs)) + ")")
        s.data["form"] = list(form.coeffs)
        return
    else:  # perp
        form = fda.find_symmetrizing_form(a, seed=args.seed)
        series = fda.radical_series(a)
        base = {"J": lambda: series[1], "J2": lambda: series[min(2, len(series) - 1)],
                "soc": lambda: fda.socle(a), "center": lambda: fda.center(a),
                "commutator": lambda: fda.commutator_space(a)}[args.of]()
        u = fda.perp_space(a, form, base)
        s.add(f"U = {args.of}, dim U = {base.dim}")
    s.lines.extend(_subspace_lines(u, a.labels))
    s.data["basis"] = u.basis


def cmd_resolve(args, rep: Report):
    a = read_algebra(args.algebra)
    tr = minimal_resolution_dims(a, args.steps)
    s = rep.section(f"minimal resolution of the simple module, {len(tr.n) - 1} steps")
    s.add("n = " + ", ".join(map(str, tr.n)))
    s.add("f = " + ", ".join(map(str, tr.fib)))
    if tr.truncated:
        s.add(tr.note)
    s.data.update(n=list(tr.n), fib=list(tr.fib))
    if args.x is not None or args.z is not None:
        if args.x is None or args.z is None:
            raise ParseError("--x and --z must be given together")
        y = _parse_vec(args.y) if args.y else None
        hv = hypothesis_check(a, _parse_vec(args.x), _parse_vec(args.z), y)
        sh = rep.section(hv.label)
        sh.check(hv.ok, hv.details or "all conditions hold")
    v = fibonacci_certificate(tr)
    sv = rep.section(v.label)
    sv.check(v.ok, v.details if v.ok else f"first violation at i = {v.first_violation}: {v.details}")


def cmd_verify(args, rep: Report):
    only = [x.strip() for x in args.only.split(",")] if args.only else None
    sub = verify_paper(only)
    rep.sections.extend(sub.sections)
    rep.error = sub.error


COMMANDS = {
    "snf": cmd_snf,
    "kernel": cmd_kernel,
    "solve-gram": cmd_solve_gram,
    "ordinary16x3": cmd_ordinary,
    "contrib": cmd_contrib,
    "check-block": cmd_check_block,
    "center": cmd_center,
    "algebra": cmd_algebra,
    "resolve": cmd_resolve,
    "verify-paper": cmd_verify,
}


def _global_flags(parser, suppress: bool):
    # on subcommands the defaults are suppressed so flags given earlier survive
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--json", action="store_true", default=d(False), help="emit a JSON report")
    parser.add_argument("--seed", type=int, default=d(0), help="seed for randomised searches")
    parser.add_argument("--steps", type=int, default=d(DEFAULT_STEPS), help="resolution steps")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    p = argparse.ArgumentParser(prog="blockcenter",
                                description="Exact computations for a 2-block with defect group of order 16.")
    _global_flags(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    x = sub.add_parser("snf", parents=[common], help="Smith normal form of an integer matrix")
    x.add_argument("file")
    x = sub.add_parser("kernel", parents=[common], help="saturated integer kernel")
    x.add_argument("file")

    x = sub.add_parser("solve-gram", parents=[common], help="rows and solutions of X^T X = C")
    x.add_argument("--gram", required=True)
    x.add_argument("--rows", type=int, help="number of rows k; enumerate solution classes")
    x.add_argument("--contrib", help="row contributions, e.g. 3/16:5,11/16:3")
    x.add_argument("--all-rows", action="store_true", help="drop the odd-contribution requirement")

    x = sub.add_parser("ordinary16x3", parents=[common], help="the k x 3 solution with rows 3/16")
    x.add_argument("--gram", help="Cartan matrix (default: the bundled C_x)")
    x.add_argument("--rows", type=int, default=16)

    x = sub.add_parser("contrib", parents=[common], help="contribution matrices of a block")
    x.add_argument("--block", required=True)
    x.add_argument("--label")
    x = sub.add_parser("check-block", parents=[common], help="verify the block constraints")
    x.add_argument("block", help="block file")

    x = sub.add_parser("center", parents=[common], help="center lattice and its reduction")
    x.add_argument("--q", help="matrix Q (rows: Brauer characters, columns: ordinary characters)")
    x.add_argument("--block", help="block file; Q is the transposed assembled matrix")
    x.add_argument("--p", type=int, default=2)
    x.add_argument("--match", choices=["case12", "case3"])

    x = sub.add_parser("algebra", parents=[common], help="operations on an algebra file")
    x.add_argument("file")
    x.add_argument("--op", required=True, nargs="+", metavar="OP",
                   help="loewy | socle | center | commutator | tn N | symform | perp")
    x.add_argument("--side", default="two-sided", choices=["left", "right", "two-sided"])
    x.add_argument("--of", default="J", choices=["J", "J2", "soc", "center", "commutator"],
                   help="subspace U for --op perp")

    x = sub.add_parser("resolve", parents=[common], help="minimal resolution growth")
    x.add_argument("--algebra", required=True)
    x.add_argument("--x")
    x.add_argument("--z")
    x.add_argument("--y")

    x = sub.add_parser("verify-paper", parents=[common], help="reproduce the bundled reference data")
    x.add_argument("--only", help="comma-separated subset of: " + ", ".join(SECTIONS))
    return p


def run(argv: Sequence[str] | None = None) -> tuple[Report, str]:
    """Execute a command line; returns the report and the output format."""
    args = build_parser().parse_args(argv)
    rep = Report(args.command)
    try:
        COMMANDS[args.command](args, rep)
    except BlockCenterError as exc:
        rep.error = f"{type(exc).__name__}: {exc}"
    return rep, "json" if args.json else "text"


def main(argv: Sequence[str] | None = None) -> int:
    rep, fmt = run(argv)
    sys.stdout.buffer.write(emit(rep, fmt))
    sys.stdout.flush()
    return rep.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
