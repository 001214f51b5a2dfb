"""Generalized decomposition data: per-subsection blocks and their checks.

A block is described by subsections ``(label, Q_u, C_u)``. From these we
build contribution matrices ``scale * Q_u C_u^-1 Q_u^T``, verify the
orthogonality relations, the partition of unity and the integrality
congruences coming from stable generalized characters, and assemble the
square matrix ``[Q_u1 | Q_u2 | ...]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import DimensionMismatch, NotIntegral, OrthogonalityViolation
from .exact_linalg import IntMatrix, RatMatrix, rat_inverse

__all__ = [
    "SubsectionDatum",
    "BlockDatum",
    "ContributionMatrix",
    "CongruenceCheck",
    "StarReport",
    "DEFAULT_LAMBDA_LABELS",
    "DEFAULT_LAMBDA_TABLE",
    "contribution",
    "check_star_congruences",
    "assemble",
    "check_orthogonality",
    "block_from_matrix",
    "find_simultaneous_permutation",
]

# stable generalized characters of the defect group at the class representatives
DEFAULT_LAMBDA_LABELS = ("1", "x", "y", "xy")
DEFAULT_LAMBDA_TABLE = IntMatrix.from_rows([
    [4, 4, 0, 0],
    [4, 0, 4, 0],
    [0, 4, 0, 4],
])


@dataclass(frozen=True)
class SubsectionDatum:
    label: str
    q: IntMatrix
    cartan: IntMatrix

    def __post_init__(self):
        if self.q.cols != self.cartan.rows or not self.cartan.is_square():
            raise DimensionMismatch(f"subsection {self.label}: Q and Cartan shapes disagree")

    @classmethod
    def from_q(cls, label: str, q: IntMatrix) -> "SubsectionDatum":
        return cls(label, q, q.T @ q)

    @property
    def l(self) -> int:
        return self.q.cols

    def cartan_ok(self) -> bool:
        return self.q.T @ self.q == self.cartan


@dataclass(frozen=True)
class BlockDatum:
    subsections: tuple[SubsectionDatum, ...]
    scale: int = 16

    def __post_init__(self):
        object.__setattr__(self, "subsections", tuple(self.subsections))
        ks = {s.q.rows for s in self.subsections}
        if len(ks) > 1:
            raise DimensionMismatch(f"subsections disagree on the number of characters: {ks}")

    @property
    def k(self) -> int:
        return self.subsections[0].q.rows if self.subsections else 0

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(s.label for s in self.subsections)

    def __getitem__(self, label: str) -> SubsectionDatum:
        for s in self.subsections:
            if s.label == label:
                return s
        raise KeyError(label)

    def permute_characters(self, perm: Sequence[int]) -> "BlockDatum":
        """Reorder the characters: new row ``i`` is old row ``perm[i]``."""
        subs = []
        for s in self.subsections:
            q = IntMatrix.from_rows([s.q.row(i) for i in perm])
            subs.append(SubsectionDatum(s.label, q, s.cartan))
        return BlockDatum(tuple(subs), self.scale)


@dataclass(frozen=True)
class ContributionMatrix:
    label: str
    scaled: IntMatrix
    scale: int

    @property
    def rational(self) -> RatMatrix:
        return RatMatrix(self.scaled.rows, self.scaled.cols,
                         [x / self.scale for x in map(Fraction, self.scaled.entries)])

    def is_idempotent(self) -> bool:
        return self.scaled @ self.scaled == self.scaled * self.scale

    def all_odd(self) -> bool:
        return all(x % 2 for x in self.scaled.entries)

    def trace(self):
        return Fraction(self.scaled.trace(), self.scale)


def contribution(sub: SubsectionDatum, scale: int = 16) -> ContributionMatrix:
    """``scale * Q C^-1 Q^T`` as an integer matrix.

    Raises NotIntegral when ``scale`` does not clear the denominators, which
    happens when it is smaller than the largest elementary divisor of C.
    """
    m = sub.q @ rat_inverse(sub.cartan) @ sub.q.T
    scaled = m * scale
    if not scaled.is_integral():
        raise NotIntegral(f"{scale} * M^{sub.label} is not integral")
    return ContributionMatrix(sub.label, scaled.to_integer(), scale)


@dataclass(frozen=True)
class CongruenceCheck:
    name: str
    ok: bool
    first_violation: tuple[int, int] | None = None
    value: int | None = None

    def describe(self) -> str:
        if self.ok:
            return f"{self.name}: ok"
        i, j = self.first_violation
        return f"{self.name}: fails at entry ({i + 1},{j + 1}) with value {self.value}"


@dataclass(frozen=True)
class StarReport:
    checks: tuple[CongruenceCheck, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __iter__(self):
        return iter(self.checks)

    def first_failure(self) -> CongruenceCheck | None:
        return next((c for c in self.checks if not c.ok), None)


def _first_entry(m: IntMatrix, pred):
    for i in range(m.rows):
        for j in range(m.cols):
            if pred(m[i, j]):
                return (i, j), m[i, j]
    return None, None


def check_star_congruences(block: BlockDatum, lambda_table: IntMatrix = DEFAULT_LAMBDA_TABLE,
                           lambda_labels: Sequence[str] = DEFAULT_LAMBDA_LABELS) -> StarReport:
    """Partition of unity and the integrality congruences of the contributions.

    For a table row ``lambda`` the sum ``sum_u lambda(u) M^u`` must be
    integral, i.e. ``sum_u lambda(u) * (scale M^u) = 0 (mod scale)``. With
    values 4 and scale 16 this is the familiar "sum of two scaled
    contribution matrices is 0 mod 4".
    """
    if lambda_table.cols != len(lambda_labels):
        raise DimensionMismatch("lambda table columns and labels disagree")
    missing = [lab for lab in lambda_labels if lab not in block.labels]
    if missing:
        raise DimensionMismatch(f"block has no subsection(s) {missing}")
    k, scale = block.k, block.scale
    contribs = {s.label: contribution(s, scale) for s in block.subsections}

    checks = []
    total = IntMatrix.zeros(k, k)
    for cm in contribs.values():
        total = total + cm.scaled
    where, val = _first_entry(total - IntMatrix.identity(k) * scale, lambda x: x != 0)
    checks.append(CongruenceCheck("sum of M^u is the identity", where is None, where,
                                  None if where is None else total[where]))

    for row in range(lambda_table.rows):
        coeffs = {lab: lambda_table[row, col] for col, lab in enumerate(lambda_labels)
                  if lambda_table[row, col]}
        # divide out the common factor: 4*(16M^1 + 16M^x) = 0 mod 16  <=>  16M^1 + 16M^x = 0 mod 4
        g = gcd(scale, *coeffs.values())
        modulus = scale // g
        acc = IntMatrix.zeros(k, k)
        terms = []
        for lab, coeff in coeffs.items():
            acc = acc + contribs[lab].scaled * (coeff // g)
            terms.append(("" if coeff == g else f"{coeff // g}*") + f"{scale}M^{lab}")
        where, val = _first_entry(acc, lambda x: x % modulus != 0)
        name = " + ".join(terms) + f" = 0 mod {modulus}"
        checks.append(CongruenceCheck(name, where is None, where, val))
    return StarReport(tuple(checks))


def check_orthogonality(block: BlockDatum) -> None:
    for a, b in itertools.combinations(block.subsections, 2):
        prod = a.q.T @ b.q
        where, val = _first_entry(prod, lambda x: x != 0)
        if where is not None:
            raise OrthogonalityViolation((a.label, b.label), where, val)


def assemble(block: BlockDatum) -> IntMatrix:
    """The square matrix ``[Q_u1 | Q_u2 | ...]`` (characters as rows).

    Its Gram matrix is block diagonal with the Cartan matrices; the center
    computations use its transpose.
    """
    if sum(s.l for s in block.subsections) != block.k:
        raise DimensionMismatch(
            f"column total {sum(s.l for s in block.subsections)} != {block.k} characters")
    for s in block.subsections:
        if not s.cartan_ok():
            raise DimensionMismatch(f"Q_{s.label}^T Q_{s.label} differs from its Cartan matrix")
    check_orthogonality(block)
    out = block.subsections[0].q
    for s in block.subsections[1:]:
        out = out.hstack(s.q)
    return out


def block_from_matrix(g: IntMatrix, labels: Sequence[str], widths: Sequence[int],
                      scale: int = 16) -> BlockDatum:
    """Split a generalized decomposition matrix into subsection column groups."""
    if sum(widths) != g.cols:
        raise DimensionMismatch("column widths do not add up")
    subs, start = [], 0
    for lab, w in zip(labels, widths):
        q = g.submatrix(range(g.rows), range(start, start + w))
        subs.append(SubsectionDatum.from_q(lab, q))
        start += w
    return BlockDatum(tuple(subs), scale)


def find_simultaneous_permutation(a: IntMatrix, b: IntMatrix) -> list[int] | None:
    """A permutation ``p`` with ``a[p[i], p[j]] == b[i, j]``, or None.

    Backtracking row by row; rows are first bucketed by their diagonal entry
    and sorted entry multiset, which prunes almost everything for k = 8.
    """
    n = a.rows
    if a.shape != b.shape or not a.is_square():
        return None

    def sig(m, i):
        return (m[i, i], tuple(sorted(m.row(i))))

    sig_a = [sig(a, i) for i in range(n)]
    sig_b = [sig(b, i) for i in range(n)]
    if sorted(sig_a) != sorted(sig_b):
        return None
    perm: list[int] = []
    used = [False] * n

    def rec(i):
        if i == n:
            return True
        for c in range(n):
            if used[c] or sig_a[c] != sig_b[i]:
                continue
            if all(a[c, perm[j]] == b[i, j] and a[perm[j], c] == b[j, i] for j in range(i)):
                used[c] = True
                perm.append(c)
                if rec(i + 1):
                    return True
                perm.pop()
                used[c] = False
        return False

    return perm if rec(0) else None
