"""End-to-end reproduction of the bundled reference data.

Each stage recomputes an object from first principles and compares it with
the transcribed data, up to the relevant group action (row order, signs,
basic sets). Stages are independent enough that a failure in one does not
prevent the others from reporting.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .center import center_basis, isomorphism_invariants, match_presentation, q_from_gendec, reduce_mod_p
from .errors import BlockCenterError, DataFileMissing, ParseError
from .exact_linalg import IntMatrix, elementary_divisors, rat_inverse, same_lattice, solve_integral
from .fdalgebra import local_presentation, loewy_dimensions
from .gendec import (
    BlockDatum,
    assemble,
    check_star_congruences,
    find_simultaneous_permutation,
)
from .plesken import (
    canonical_form,
    contribution_of,
    enumerate_ordinary_16x3,
    enumerate_rows,
    enumerate_solutions,
    gram_automorphisms,
    normalize_row,
    row_orbit_key,
)
from .report import ERROR, Report, Section
from .textio import load_paper_block, load_paper_matrix

__all__ = ["SECTIONS", "CASES", "EXPECTED_ROW_TYPES", "EXPECTED_ELDIVS", "PaperData", "verify_paper"]

SECTIONS = (
    "rows",
    "classes",
    "contributions",
    "block-constraints",
    "center-lattices",
    "center-case1",
    "classification",
    "non-isomorphism",
    "ordinary16x3",
)
CASES = ("I", "II", "III")

# representatives of the admissible rows for C_x and their contributions r C^-1 r^T
EXPECTED_ROW_TYPES = {
    (1, 0, 0): Fraction(3, 16),
    (1, 1, 1): Fraction(3, 16),
    (0, 1, 2): Fraction(11, 16),
    (1, 1, -1): Fraction(11, 16),
    (1, 2, 2): Fraction(11, 16),
}
EXPECTED_ELDIVS = {"I": (1, 2, 2), "II": (1, 1, 2), "III": (1, 1, 1)}
EXPECTED_PRESENTATION = {"I": "CASE_I_II", "II": "CASE_I_II", "III": "CASE_III"}
EXPECTED_DIM_J2 = {"I": 1, "II": 1, "III": 3}


class PaperData:
    """Lazy access to the bundled files, with optional in-memory overrides."""

    def __init__(self, overrides: dict | None = None):
        self._cache = dict(overrides or {})

    def _get(self, key, loader):
        if key not in self._cache:
            self._cache[key] = loader()
        return self._cache[key]

    def matrix(self, name: str) -> IntMatrix:
        return self._get(name, lambda: load_paper_matrix(name))

    def block(self, case: str) -> BlockDatum:
        name = f"case_{case}"
        return self._get(name, lambda: load_paper_block(name))

    @property
    def cartan_x(self) -> IntMatrix:
        return self.matrix("cartan_x")


def _run(section: Section, fn):
    try:
        fn(section)
    except (DataFileMissing, ParseError) as exc:
        section.status = ERROR
        section.add(f"ERROR: {type(exc).__name__}: {exc}")
    except BlockCenterError as exc:
        section.fail(f"{type(exc).__name__}: {exc}")


def _fmt_row(r) -> str:
    return "(" + ",".join(str(x) for x in r) + ")"


class _Pipeline:
    def __init__(self, data: PaperData):
        self.d = data
        self._classes = None
        self._lattices: dict[str, object] = {}
        self._centers: dict[str, object] = {}

    # -- shared intermediate results

    def classes(self):
        if self._classes is None:
            self._classes = enumerate_solutions(self.d.cartan_x, 8, parity_required=True)
        return self._classes

    def lattice(self, case):
        if case not in self._lattices:
            g = assemble(self.d.block(case))
            self._lattices[case] = center_basis(q_from_gendec(g))
        return self._lattices[case]

    def modular_center(self, case):
        if case not in self._centers:
            self._centers[case] = reduce_mod_p(self.lattice(case), 2)
        return self._centers[case]

    # -- stages

    def rows(self, s: Section):
        c = self.d.cartan_x
        cands = enumerate_rows(c)
        types: dict[tuple, list] = {}
        for cd in cands:
            types.setdefault(row_orbit_key(cd.r), []).append(cd)
        expected = {row_orbit_key(r): (r, q) for r, q in EXPECTED_ROW_TYPES.items()}
        s.add(f"{len(cands)} admissible rows (one per sign) in {len(types)} classes")
        for key, (rep, q) in expected.items():
            got = types.get(key)
            if got is None:
                s.fail(f"row class of {_fmt_row(rep)} not found")
                continue
            qs = {cd.contribution for cd in got}
            s.check(qs == {q}, f"{_fmt_row(rep)}: {len(got)} rows, contribution {q}")
        extra = sorted(set(types) - set(expected))
        s.check(not extra, "no further row classes" if not extra
                else f"unexpected row classes {[_fmt_row(k) for k in extra]}")
        s.data["row_classes"] = {_fmt_row(rep): str(q) for rep, q in EXPECTED_ROW_TYPES.items()}

    def classes_stage(self, s: Section):
        c = self.d.cartan_x
        classes = self.classes()
        s.check(len(classes) == 3, f"{len(classes)} classes of 8 x 3 solutions")
        aut = gram_automorphisms(c)
        for cls in classes:
            s.add(f"class {cls.label}: elementary divisors {cls.eldiv}")
        for case, cls in zip(CASES, classes):
            s.check(cls.eldiv == EXPECTED_ELDIVS[case],
                    f"case ({case}) has elementary divisors {EXPECTED_ELDIVS[case]}")
            x = self.d.matrix(f"solution_{case}")
            s.check(x.T @ x == c, f"transcribed solution ({case}) satisfies X^T X = C_x")
            s.check(canonical_form(x, aut) == cls.canonical,
                    f"transcribed solution ({case}) lies in class {cls.label}")
        s.data["eldivs"] = {cls.label: list(cls.eldiv) for cls in classes}

    def contributions(self, s: Section):
        c = self.d.cartan_x
        cinv = rat_inverse(c)
        for case in CASES:
            x = self.d.matrix(f"solution_{case}")
            m = (x @ cinv @ x.T) * 16
            if not m.is_integral():
                s.fail(f"16 M^x for case ({case}) is not integral")
                continue
            m = m.to_integer()
            shown = self.d.matrix(f"contrib_16M_{case}")
            perm = find_simultaneous_permutation(m, shown)
            s.check(perm is not None,
                    f"case ({case}): computed 16 M^x equals the display up to relabelling"
                    + (f" (permutation {perm})" if perm else ""))
            odd = [v for v in m.entries if v % 2 == 0]
            s.check(not odd, f"case ({case}): all 64 entries of 16 M^x are odd")

    def block_constraints(self, s: Section):
        for case in CASES:
            block = self.d.block(case)
            try:
                g = assemble(block)
            except BlockCenterError as exc:
                s.fail(f"case ({case}): {type(exc).__name__}: {exc}")
                continue
            s.add(f"ok: case ({case}): Q_u^T Q_v = 0 for u != v and Q_u^T Q_u = C_u")
            try:
                shown = self.d.matrix(f"gendec_{case}")
                s.check(g == shown, f"case ({case}): assembled matrix equals the transcribed one")
            except DataFileMissing:
                pass
            for chk in check_star_congruences(block):
                s.check(chk.ok, f"case ({case}): {chk.describe()}")

    def center_lattices(self, s: Section):
        for case in CASES:
            lat = self.lattice(case)
            s.check(lat.rank == 8, f"case ({case}): lattice of rank {lat.rank}")
            s.check(list(lat.basis_diagonals.col(0)) == [1] * 8,
                    f"case ({case}): first basis vector is the unit")
            closed = all(m.is_integral() for m in
                         (lat.matrix_of(lat.basis_diagonals.col(j)) for j in range(lat.rank)))
            s.check(closed, f"case ({case}): Q D Q^-1 integral for every basis diagonal")

    def center_case1(self, s: Section):
        lat = self.lattice("I")
        table = self.d.matrix("center_table_I")
        s.check(same_lattice(lat.basis_diagonals, table),
                "computed lattice equals the span of the transcribed table")
        t = solve_integral(lat.basis_diagonals, table)
        u = solve_integral(table, lat.basis_diagonals)
        ok = t is not None and u is not None and t.is_unimodular() and u.is_unimodular()
        s.check(ok, "transition matrices are unimodular in both directions")
        if t is not None:
            s.data["transition"] = t

    def classification(self, s: Section):
        for case in CASES:
            mc = self.modular_center(case)
            target = EXPECTED_PRESENTATION[case]
            other = "CASE_III" if target == "CASE_I_II" else "CASE_I_II"
            w = match_presentation(mc, target)
            s.check(w is not None, f"case ({case}): center mod 2 matches {target}")
            if w is not None:
                s.data[f"witness_{case}"] = {k: "".join(map(str, v)) for k, v in w.as_dict().items()}
            s.check(match_presentation(mc, other) is None,
                    f"case ({case}): no match with {other}")
            loc, _ = local_presentation(mc.algebra)
            ll = len(loewy_dimensions(loc))
            if target == "CASE_I_II":
                s.check(ll == 3, f"case ({case}): Loewy length {ll}")
            else:
                s.add(f"case ({case}): Loewy length {ll}")

    def non_isomorphism(self, s: Section):
        dims = {}
        for case in CASES:
            inv = isomorphism_invariants(self.modular_center(case).algebra)
            dims[case] = inv["dim_J2"]
            s.check(inv["dim_J2"] == EXPECTED_DIM_J2[case],
                    f"case ({case}): dim J(Z)^2 = {inv['dim_J2']}")
        s.check(dims["I"] == dims["II"] != dims["III"],
                "dim J^2 separates cases (I), (II) from case (III)")
        s.data["dim_J2"] = dims

    def ordinary16x3(self, s: Section):
        c = self.d.cartan_x
        cls = enumerate_ordinary_16x3(c)
        cinv = rat_inverse(c)
        x = self.d.matrix("ordinary_bx")
        s.check(x.shape == (16, 3), f"transcribed matrix has shape {x.shape}")
        s.check(x.T @ x == c, "transcribed matrix satisfies X^T X = C_x")
        contribs = [contribution_of(x.row(i), cinv) for i in range(x.rows)]
        s.check(all(q == Fraction(3, 16) for q in contribs), "every row contributes 3/16")
        s.check(sum(contribs) == 3, f"trace of the contribution matrix is {sum(contribs)}")
        s.check(canonical_form(x, gram_automorphisms(c)) == cls.canonical,
                "transcribed matrix is in the unique solution class")
        computed = sorted(normalize_row(cls.canonical.row(i)) for i in range(16))
        shown = sorted(normalize_row(x.row(i)) for i in range(16))
        s.check(computed == shown, "computed solution equals the transcribed one up to row order and signs")
        s.data["elementary_divisors"] = elementary_divisors(x)


_STAGES = {
    "rows": ("row enumeration for C_x", _Pipeline.rows),
    "classes": ("solution classes of X^T X = C_x, k = 8, odd contributions", _Pipeline.classes_stage),
    "contributions": ("contribution matrices 16 M^x", _Pipeline.contributions),
    "block-constraints": ("orthogonality, Cartan, congruences, sum of M^u", _Pipeline.block_constraints),
    "center-lattices": ("center lattices", _Pipeline.center_lattices),
    "center-case1": ("center lattice of case (I) against the table", _Pipeline.center_case1),
    "classification": ("centers mod 2 and their presentations", _Pipeline.classification),
    "non-isomorphism": ("non-isomorphism via dim J^2", _Pipeline.non_isomorphism),
    "ordinary16x3": ("ordinary 16 x 3 decomposition matrix", _Pipeline.ordinary16x3),
}


def verify_paper(only: Iterable[str] | None = None, overrides: dict | None = None) -> Report:
    """Run the stages in order (all of them, or those named in ``only``)."""
    names = list(SECTIONS) if only is None else list(only)
    unknown = [n for n in names if n not in _STAGES]
    report = Report("verify-paper")
    if unknown:
        report.error = f"unknown section(s) {unknown}; choose from {list(SECTIONS)}"
        return report
    pipe = _Pipeline(PaperData(overrides))
    for name in SECTIONS:
        if name not in names:
            continue
        title, fn = _STAGES[name]
        sec = report.section(f"{name}: {title}")
        _run(sec, lambda s, fn=fn: fn(pipe, s))
    return report

