"""Integral solutions of ``X^T X = C`` for small positive definite ``C``.

Solutions are classified up to the group generated by signed row
permutations (acting on the left) and the automorphisms of the form ``C``
(acting on the right, ``X -> X S`` with ``S^T C S = C``).

The search works on row multisets: ``X^T X`` is the sum of ``r^T r`` over
rows, so the order and signs of rows never matter and each solution is a
multiset of sign-normalised candidate rows.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence

from .errors import NoSolution, NotPositiveDefinite
from .exact_linalg import IntMatrix, elementary_divisors, rat_inverse

__all__ = [
    "RowCandidate",
    "GramSolutionClass",
    "GramAutGroup",
    "check_positive_definite",
    "contribution_of",
    "enumerate_rows",
    "gram_automorphisms",
    "canonical_form",
    "normalize_row",
    "enumerate_solutions",
    "enumerate_ordinary_16x3",
    "row_orbit_key",
]

ROMAN = ("I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X")


@dataclass(frozen=True)
class RowCandidate:
    r: tuple[int, ...]
    contribution: Fraction
    scale: int

    @property
    def contribution_num(self) -> int:
        """``scale * r C^-1 r^T``; an integer because scale is C's top divisor."""
        return int(self.contribution * self.scale)


@dataclass(frozen=True)
class GramAutGroup:
    gram: IntMatrix
    elements: tuple[IntMatrix, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, s) -> bool:
        return s in set(self.elements)


@dataclass(frozen=True)
class GramSolutionClass:
    canonical: IntMatrix
    eldiv: tuple[int, ...]
    contributions: tuple[Fraction, ...]
    label: str = ""

    @property
    def k(self) -> int:
        return self.canonical.rows


def check_positive_definite(c: IntMatrix) -> None:
    if not c.is_symmetric():
        raise NotPositiveDefinite("Gram matrix is not symmetric")
    for n in range(1, c.rows + 1):
        if c.submatrix(range(n), range(n)).det() <= 0:
            raise NotPositiveDefinite(f"leading minor of order {n} is not positive")


def _is_psd(m: list[list[int]]) -> bool:
    # every principal minor nonnegative; exact, fine for the tiny l we use
    n = len(m)
    for size in range(1, n + 1):
        for idx in itertools.combinations(range(n), size):
            sub = IntMatrix.from_rows([[m[i][j] for j in idx] for i in idx])
            if sub.det() < 0:
                return False
    return True


def contribution_of(r: Sequence[int], cinv) -> Fraction:
    n = len(r)
    return sum((r[i] * cinv[i, j] * r[j] for i in range(n) for j in range(n)), Fraction(0))


def normalize_row(r: Sequence[int]) -> tuple[int, ...]:
    """Flip the sign so that the first nonzero entry is positive."""
    for x in r:
        if x:
            return tuple(r) if x > 0 else tuple(-y for y in r)
    return tuple(r)


def _top_divisor(c: IntMatrix) -> int:
    return elementary_divisors(c)[-1]


def enumerate_rows(c: IntMatrix, parity_required: bool = True) -> list[RowCandidate]:
    """All rows ``r`` with ``r C^-1 r^T <= 1``, one per sign pair.

    With ``parity_required`` only rows whose scaled contribution is odd are
    kept (the scale is the largest elementary divisor of ``C``).
    """
    check_positive_definite(c)
    cinv = rat_inverse(c)
    scale = _top_divisor(c)
    # Cauchy-Schwarz: r_i^2 <= (r C^-1 r^T) * C_ii <= C_ii
    bounds = [isqrt(c[i, i]) for i in range(c.rows)]
    out = []
    for r in itertools.product(*(range(-b, b + 1) for b in bounds)):
        if normalize_row(r) != r:
            continue
        q = contribution_of(r, cinv)
        if q > 1:
            continue
        cand = RowCandidate(r, q, scale)
        if parity_required and cand.contribution_num % 2 == 0:
            continue
        out.append(cand)
    out.sort(key=lambda cand: cand.r)
    return out


def row_orbit_key(r: Sequence[int]) -> tuple[int, ...]:
    """Least representative of ``r`` under coordinate permutations and sign."""
    return min(min(p, tuple(-x for x in p)) for p in itertools.permutations(r))


def _short_vectors(c: IntMatrix, norm: int) -> list[tuple[int, ...]]:
    cinv = rat_inverse(c)
    # |v_i|^2 <= (v^T C v) * (C^-1)_ii
    bounds = [isqrt(int(norm * cinv[i, i])) for i in range(c.rows)]
    out = []
    for v in itertools.product(*(range(-b, b + 1) for b in bounds)):
        if sum(v[i] * c[i, j] * v[j] for i in range(c.rows) for j in range(c.rows)) == norm:
            out.append(v)
    return out


def gram_automorphisms(c: IntMatrix) -> GramAutGroup:
    """All integral ``S`` with ``S^T C S = C``, by backtracking over columns."""
    check_positive_definite(c)
    n = c.rows
    pools = {}
    for j in range(n):
        pools.setdefault(c[j, j], _short_vectors(c, c[j, j]))

    def inner(u, v):
        return sum(u[i] * c[i, k] * v[k] for i in range(n) for k in range(n))

    found = []

    def extend(cols):
        j = len(cols)
        if j == n:
            found.append(IntMatrix.from_columns(cols))
            return
        for v in pools[c[j, j]]:
            if all(inner(cols[i], v) == c[i, j] for i in range(j)):
                extend(cols + [v])

    extend([])
    found.sort(key=lambda s: s.entries)
    return GramAutGroup(c, tuple(found))


def _matrix_key(rows: Iterable[Sequence[int]]) -> tuple:
    return tuple(sorted(normalize_row(r) for r in rows))


def canonical_form(x: IntMatrix, aut: GramAutGroup) -> IntMatrix:
    """Least matrix, row-major lexicographically, in the orbit of ``x``.

    Rows are taken sign-normalised (first nonzero entry positive), so the
    minimum runs over ``Aut(C)`` and row permutations only.
    """
    best = None
    rows = [x.row(i) for i in range(x.rows)]
    for s in aut.elements:
        cols = [s.col(j) for j in range(s.cols)]
        key = _matrix_key([tuple(sum(a * b for a, b in zip(r, col)) for col in cols)
                           for r in rows])
        if best is None or key < best:
            best = key
    return IntMatrix.from_rows(best)


def _as_counter(constraints) -> Counter:
    if isinstance(constraints, Counter):
        return Counter({Fraction(k): v for k, v in constraints.items()})
    if isinstance(constraints, dict):
        return Counter({Fraction(k): v for k, v in constraints.items()})
    return Counter(Fraction(x) for x in constraints)


def _row_multisets(c: IntMatrix, k: int, cands: list[RowCandidate], need: Counter | None):
    """Yield every multiset of k candidate rows whose outer products sum to c."""
    n = c.rows
    cinv = rat_inverse(c)
    # high contributions first: they are the most constrained rows
    cands = sorted(cands, key=lambda cd: (-cd.contribution, cd.r))
    outer = [[[cd.r[i] * cd.r[j] for j in range(n)] for i in range(n)] for cd in cands]
    residual = c.tolist()
    chosen: list[int] = []
    remaining = Counter(need) if need is not None else None

    def trace_cinv(m):
        return sum((cinv[i, j] * m[j][i] for i in range(n) for j in range(n)), Fraction(0))

    def rec(start: int, left: int):
        if left == 0:
            if all(v == 0 for row in residual for v in row):
                yield [cands[i].r for i in chosen]
            return
        # the remaining rows must account for the remaining trace of C^-1 R
        if remaining is not None:
            if trace_cinv(residual) != sum(q * m for q, m in remaining.items()):
                return
        for idx in range(start, len(cands)):
            cd = cands[idx]
            if remaining is not None and remaining[cd.contribution] == 0:
                continue
            o = outer[idx]
            for i in range(n):
                for j in range(n):
                    residual[i][j] -= o[i][j]
            if all(residual[i][i] >= 0 for i in range(n)) and _is_psd(residual):
                chosen.append(idx)
                if remaining is not None:
                    remaining[cd.contribution] -= 1
                yield from rec(idx, left - 1)
                if remaining is not None:
                    remaining[cd.contribution] += 1
                chosen.pop()
            for i in range(n):
                for j in range(n):
                    residual[i][j] += o[i][j]

    yield from rec(0, k)


def enumerate_solutions(c: IntMatrix, k: int, row_constraints=None,
                        parity_required: bool = False) -> list[GramSolutionClass]:
    """Orbit representatives of ``X in Z^(k x l)`` with ``X^T X = C``.

    ``row_constraints`` is an optional multiset of row contributions
    ``r C^-1 r^T`` (an iterable of rationals or a mapping value -> count).
    Its total must equal ``l`` and its size must equal ``k``; otherwise
    :class:`NoSolution` is raised. An empty result is returned when the
    constraints are consistent but nothing satisfies them. With
    ``parity_required`` every row must have an odd scaled contribution (the
    diagonal of ``scale * X C^-1 X^T`` is odd).
    """
    check_positive_definite(c)
    l = c.rows
    if k < l:
        raise ValueError(f"need at least {l} rows, got k={k}")
    need = None
    if row_constraints is not None:
        need = _as_counter(row_constraints)
        total = sum(q * m for q, m in need.items())
        if sum(need.values()) != k:
            raise NoSolution(f"{sum(need.values())} row contributions given for k={k} rows")
        if total != l:
            raise NoSolution(f"contributions sum to {total}, but the trace must be {l}")
        cands = [cd for cd in enumerate_rows(c, parity_required)
                 if need[cd.contribution] > 0]
    else:
        cands = enumerate_rows(c, parity_required)

    aut = gram_automorphisms(c)
    cinv = rat_inverse(c)
    classes: dict[IntMatrix, None] = {}
    for rows in _row_multisets(c, k, cands, need):
        classes.setdefault(canonical_form(IntMatrix.from_rows(rows), aut))
    out = []
    for canon in classes:
        contribs = tuple(sorted(contribution_of(canon.row(i), cinv) for i in range(canon.rows)))
        out.append(GramSolutionClass(canon, tuple(elementary_divisors(canon)), contribs))
    # largest elementary divisors first, then the canonical matrix
    out.sort(key=lambda s: (tuple(-e for e in reversed(s.eldiv)), s.canonical.entries))
    return [GramSolutionClass(s.canonical, s.eldiv, s.contributions,
                              ROMAN[i] if i < len(ROMAN) else str(i + 1))
            for i, s in enumerate(out)]


def enumerate_ordinary_16x3(c: IntMatrix, k: int = 16) -> GramSolutionClass:
    """The unique class of ``k x 3`` solutions whose rows all contribute 3/16."""
    if c.rows != 3:
        raise ValueError("expected a 3 x 3 Cartan matrix")
    classes = enumerate_solutions(c, k, {Fraction(3, _top_divisor(c)): k})
    if len(classes) != 1:
        raise NoSolution(f"expected exactly one class, found {len(classes)}")
    return classes[0]
