"""The center lattice of a block from its generalized decomposition matrix.

For an invertible ``Q`` (rows: Brauer characters of the subsections,
columns: ordinary characters) the center over the 2-adic integers is
``{D diagonal : Q D Q^-1 integral}``. Its integral points are found as the
integer kernel of the linear conditions "``Q^-1 A Q`` has no off-diagonal
part"; reducing the multiplication of that lattice modulo p gives the
center of the block over the residue field.

Presentations are matched constructively: generator images are searched
over the whole algebra, relation by relation.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

import numpy as np

from . import gfp
from .errors import (
    NonIntegralDiagonal,
    NotPresentedLocal,
    SingularMatrix,
    UnitNotInLattice,
    WrongDimension,
)
from .exact_linalg import (
    IntMatrix,
    RatMatrix,
    complete_to_unimodular,
    integer_kernel_basis,
    rat_inverse,
    solve_integral,
)
from .fdalgebra import FinDimAlgebra, local_presentation, monomial_algebra, product_space, radical

__all__ = [
    "CenterLattice",
    "ModularCenter",
    "Presentation",
    "PresentationWitness",
    "CASE_I_II",
    "CASE_III",
    "PRESENTATIONS",
    "q_from_gendec",
    "center_equations",
    "center_basis",
    "reduce_mod_p",
    "presentation_algebra",
    "match_presentation",
    "isomorphism_invariants",
]


def q_from_gendec(g: IntMatrix) -> RatMatrix:
    """The conjugating matrix: transpose of the generalized decomposition matrix."""
    return g.T.to_rational()


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def center_equations(q) -> IntMatrix:
    """Coefficients of ``(Q^-1 A Q)_{rs} = 0`` for ``r != s`` in the unknowns ``a_ij``.

    Unknown ``a_ij`` sits in column ``i*k + j``; rows run over ``(r, s)`` with
    ``r != s`` in row-major order. Each row is scaled to primitive integers.
    """
    q = q if isinstance(q, RatMatrix) else q.to_rational()
    k = q.rows
    qinv = rat_inverse(q)
    rows = []
    for r in range(k):
        for s in range(k):
            if r == s:
                continue
            coeffs = [qinv[r, i] * q[j, s] for i in range(k) for j in range(k)]
            den = 1
            for c in coeffs:
                den = _lcm(den, c.denominator)
            ints = [int(c * den) for c in coeffs]
            g = 0
            for x in ints:
                g = gcd(g, x)
            rows.append([x // g for x in ints] if g else ints)
    if not rows:
        return IntMatrix.zeros(0, k * k)
    return IntMatrix.from_rows(rows)


@dataclass(frozen=True)
class CenterLattice:
    q: RatMatrix
    basis_diagonals: IntMatrix
    basis_matrices: tuple[IntMatrix, ...]

    @property
    def k(self) -> int:
        return self.q.rows

    @property
    def rank(self) -> int:
        return self.basis_diagonals.cols

    def matrix_of(self, diag: Sequence[int]) -> RatMatrix:
        """``Q D Q^-1`` for the diagonal matrix D with the given entries."""
        return self.q @ RatMatrix.diagonal(list(diag)) @ rat_inverse(self.q)

    def contains(self, diag: Sequence[int]) -> bool:
        return self.matrix_of(diag).is_integral()

    def coordinates(self, diag: Sequence[int]) -> IntMatrix | None:
        return solve_integral(self.basis_diagonals, IntMatrix(len(diag), 1, diag))

    def rebased(self, change: IntMatrix) -> "CenterLattice":
        """The same lattice with basis ``basis_diagonals @ change``."""
        diags = self.basis_diagonals @ change
        mats = tuple(self.matrix_of(diags.col(j)).to_integer() for j in range(diags.cols))
        return CenterLattice(self.q, diags, mats)


def center_basis(q) -> CenterLattice:
    """A basis of the center lattice, normalised so that the first vector is 1.

    Raises NonIntegralDiagonal if some kernel vector conjugates to a diagonal
    matrix with non-integral entries (impossible for a rational ``Q``, kept
    as a diagnostic).
    """
    q = q if isinstance(q, RatMatrix) else q.to_rational()
    if q.det() == 0:
        raise SingularMatrix("Q is singular")
    k = q.rows
    qinv = rat_inverse(q)
    kern = integer_kernel_basis(center_equations(q))
    diags, mats = [], []
    for t in range(kern.rows):
        a = IntMatrix(k, k, kern.row(t))
        conj = qinv @ a @ q
        d = conj.diag()
        if any(x.denominator != 1 for x in d):
            raise NonIntegralDiagonal(f"basis vector {t} has diagonal {d}")
        diags.append([x.numerator for x in d])
        mats.append(a)
    lat = CenterLattice(q, IntMatrix.from_columns(diags), tuple(mats))
    return _unit_first(lat)


def _unit_coordinates(lat: CenterLattice) -> list[int]:
    x = lat.coordinates([1] * lat.k)
    if x is None:
        raise UnitNotInLattice("the all-ones diagonal is not in the lattice")
    return list(x.col(0))


def _unit_first(lat: CenterLattice) -> CenterLattice:
    x = _unit_coordinates(lat)
    if x == [1] + [0] * (len(x) - 1):
        return lat
    return lat.rebased(complete_to_unimodular(x))


@dataclass(frozen=True)
class ModularCenter:
    """The lattice multiplication reduced mod p, with the lattice it came from."""

    algebra: FinDimAlgebra
    lattice: CenterLattice

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def structure_constants(self) -> np.ndarray:
        return self.algebra.sc

    @property
    def unit_index(self) -> int:
        return self.algebra.unit_index


def reduce_mod_p(lat: CenterLattice, p: int = 2) -> ModularCenter:
    """Structure constants of ``Z / pZ`` in the lattice basis.

    Products of basis diagonals are taken entrywise and re-expressed
    integrally in the basis. If the unit is not itself a basis vector the
    lattice is first rebased so that it is.
    """
    lat = _unit_first(lat)
    d = lat.basis_diagonals
    n = d.cols
    cols = [d.col(j) for j in range(n)]
    prods = [[a * b for a, b in zip(cols[i], cols[j])] for i in range(n) for j in range(n)]
    coords = solve_integral(d, IntMatrix.from_columns(prods))
    if coords is None:
        raise UnitNotInLattice("lattice is not closed under multiplication")
    sc = np.zeros((n, n, n), dtype=np.int64)
    for idx in range(n * n):
        i, j = divmod(idx, n)
        sc[i, j] = [c % p for c in coords.col(idx)]
    labels = tuple(f"b{i + 1}" for i in range(n))
    return ModularCenter(FinDimAlgebra(p, sc, 0, labels), lat)


# ---------------------------------------------------------------- presentations

Monomial = tuple[int, ...]  # generator indices; () is 1


@dataclass(frozen=True)
class Presentation:
    """Commutative GF(2)-algebra given by generators, relations and a basis.

    Relations are sums of monomials (all coefficients 1 over GF(2)). The
    basis words form a basis of the presented algebra; ``model`` realises it
    concretely by giving each generator as an element of a monomial algebra.
    """

    name: str
    generators: tuple[str, ...]
    relations: tuple[tuple[Monomial, ...], ...]
    basis_words: tuple[Monomial, ...]
    model: FinDimAlgebra
    model_generators: tuple[tuple[int, ...], ...]
    # generators forced by the relations to equal a word in the others
    derived: tuple[tuple[int, Monomial], ...] = ()

    @property
    def dim(self) -> int:
        return len(self.basis_words)

    def word_label(self, w: Monomial) -> str:
        return "*".join(self.generators[i] for i in w) or "1"

    def relation_label(self, rel) -> str:
        return " + ".join(self.word_label(m) for m in rel)


def _rel(*monos):
    return tuple(tuple(m) for m in monos)


def _case_i_ii() -> Presentation:
    gens = ("X", "Y", "Z1", "Z2", "Z3", "Z4")
    X, Y = 0, 1
    zs = [2, 3, 4, 5]
    rels = [_rel((X, X), ()), _rel((Y, Y), ())]
    for z in zs:
        rels.append(_rel((X, z), (z,)))
        rels.append(_rel((Y, z), (z,)))
    for i, z in enumerate(zs):
        for w in zs[i:]:
            rels.append(_rel((z, w)))
    basis = ((), (X,), (Y,), (X, Y)) + tuple((z,) for z in zs)
    # model: GF(2)[a, b, c1..c4] / (a^2, b^2, a c_i, b c_i, c_i c_j), X = 1 + a, Y = 1 + b
    relations = [(2, 0, 0, 0, 0, 0), (0, 2, 0, 0, 0, 0)]
    for i in range(4):
        e = [0] * 6
        e[0], e[2 + i] = 1, 1
        relations.append(tuple(e))
        e = [0] * 6
        e[1], e[2 + i] = 1, 1
        relations.append(tuple(e))
        for j in range(i, 4):
            e = [0] * 6
            e[2 + i] += 1
            e[2 + j] += 1
            relations.append(tuple(e))
    model = monomial_algebra(6, relations, 2, ["a", "b", "c1", "c2", "c3", "c4"])
    idx = {lab: i for i, lab in enumerate(model.labels)}

    def vec(*labs):
        v = [0] * model.dim
        for lab in labs:
            v[idx[lab]] ^= 1
        return tuple(v)

    images = (vec("1", "a"), vec("1", "b"), vec("c1"), vec("c2"), vec("c3"), vec("c4"))
    return Presentation("CASE_I_II", gens, tuple(rels), basis, model, images)


def _case_iii() -> Presentation:
    gens = ("X", "Z1", "Z2", "Z3", "Z4", "Z5", "Z6")
    X = 0
    zs = list(range(1, 7))
    rels = [_rel((X, X), ())]
    for i in (1, 2, 3):
        rels.append(_rel((X, zs[2 * i - 1]), (zs[2 * i - 2],)))
    for i, z in enumerate(zs):
        for w in zs[i:]:
            rels.append(_rel((z, w)))
    basis = ((), (X,)) + tuple((z,) for z in zs)
    # model: GF(2)[a, w1, w2, w3] / (a^2, w_i w_j), X = 1 + a, Z_{2i} = w_i, Z_{2i-1} = X w_i
    relations = [(2, 0, 0, 0)]
    for i in range(3):
        for j in range(i, 3):
            e = [0] * 4
            e[1 + i] += 1
            e[1 + j] += 1
            relations.append(tuple(e))
    model = monomial_algebra(4, relations, 2, ["a", "w1", "w2", "w3"])
    idx = {lab: i for i, lab in enumerate(model.labels)}

    def vec(*labs):
        v = [0] * model.dim
        for lab in labs:
            v[idx[lab]] ^= 1
        return tuple(v)

    images = [vec("1", "a")]
    for i in (1, 2, 3):
        images.append(vec(f"w{i}", f"a*w{i}"))
        images.append(vec(f"w{i}"))
    # X^2 = 1 turns X Z_{2i} = Z_{2i-1} into Z_{2i} = X Z_{2i-1}
    derived = tuple((zs[2 * i - 1], (X, zs[2 * i - 2])) for i in (1, 2, 3))
    return Presentation("CASE_III", gens, tuple(rels), basis, model, tuple(images), derived)


CASE_I_II = _case_i_ii()
CASE_III = _case_iii()
PRESENTATIONS = {"CASE_I_II": CASE_I_II, "CASE_III": CASE_III,
                 "case12": CASE_I_II, "case3": CASE_III}


def _eval_word(a: FinDimAlgebra, images, word) -> np.ndarray:
    out = a.one
    for g in word:
        out = a.mul(out, np.asarray(images[g], dtype=np.int64))
    return out


def presentation_algebra(pres: Presentation) -> FinDimAlgebra:
    """The presented algebra on its own basis words (unit first)."""
    rows = np.array([_eval_word(pres.model, pres.model_generators, w)
                     for w in pres.basis_words])
    labels = tuple(pres.word_label(w).replace("*", "") for w in pres.basis_words)
    return pres.model.change_basis(rows, 0, labels)


@dataclass(frozen=True)
class PresentationWitness:
    presentation: Presentation
    images: tuple[tuple[int, ...], ...]

    def as_dict(self) -> dict[str, tuple[int, ...]]:
        return dict(zip(self.presentation.generators, self.images))

    def verify(self, a: FinDimAlgebra) -> bool:
        """All relations hold and the basis words map to a basis."""
        pres = self.presentation
        for rel in pres.relations:
            acc = np.zeros(a.dim, dtype=np.int64)
            for m in rel:
                acc = (acc + _eval_word(a, self.images, m)) % a.p
            if acc.any():
                return False
        words = np.array([_eval_word(a, self.images, w) for w in pres.basis_words])
        return gfp.rank(words, a.p) == a.dim


def _encode(v) -> int:
    return sum(int(x) << i for i, x in enumerate(v))


def _decode(x: int, n: int) -> tuple[int, ...]:
    return tuple((x >> i) & 1 for i in range(n))


def _invariants_or_none(a: FinDimAlgebra):
    try:
        return isomorphism_invariants(a)
    except NotPresentedLocal:
        return None


def match_presentation(alg, target) -> PresentationWitness | None:
    """Images of the target's generators realising an isomorphism, or None.

    Two local algebras with different invariants (see
    :func:`isomorphism_invariants`) are rejected at once. Otherwise the
    search is exhaustive backtracking over GF(2)^dim per free generator; a
    partial assignment is dropped as soon as a relation among known
    generators fails or the basis words known so far become linearly
    dependent. Candidates are tried by Hamming weight, then
    lexicographically, so the result is deterministic.
    """
    a = alg.algebra if isinstance(alg, ModularCenter) else alg
    pres = PRESENTATIONS[target] if isinstance(target, str) else target
    if a.p != 2:
        raise ValueError("presentation matching is implemented over GF(2)")
    if a.dim != pres.dim:
        raise WrongDimension(f"algebra has dimension {a.dim}, presentation {pres.dim}")
    inv = _invariants_or_none(a)
    if inv is not None and inv != _invariants_or_none(presentation_algebra(pres)):
        return None
    n = a.dim
    size = 1 << n
    elems = np.array([_decode(x, n) for x in range(size)], dtype=np.int64)
    prod = np.einsum("ai,bj,ijk->abk", elems, elems, a.sc) % 2
    weights = 1 << np.arange(n, dtype=np.int64)
    table = (prod @ weights).tolist()
    one = _encode(a.one)

    def word_value(word, assign):
        v = one
        for g in word:
            v = table[v][assign[g]]
        return v

    ngen = len(pres.generators)
    derived = dict(pres.derived)
    free = [g for g in range(ngen) if g not in derived]
    # after free step t, which derived generators become computable
    known: set[int] = set()
    derive_at, known_at = [], []
    for g in free:
        known.add(g)
        new = []
        progress = True
        while progress:
            progress = False
            for d, w in pres.derived:
                if d not in known and all(x in known for x in w):
                    known.add(d)
                    new.append((d, w))
                    progress = True
        derive_at.append(new)
        known_at.append(set(known))

    def first_step(gens):
        return next(t for t, ks in enumerate(known_at) if set(gens) <= ks)

    rel_at = [[] for _ in free]
    for rel in pres.relations:
        rel_at[first_step([g for m in rel for g in m])].append(rel)
    word_at = [[] for _ in free]
    for w in pres.basis_words:
        if w:
            word_at[first_step(w)].append(w)
    order = sorted(range(size), key=lambda x: (bin(x).count("1"), [-b for b in _decode(x, n)]))

    def reduce(v, basis):
        for piv, row in basis:
            if v >> piv & 1:
                v ^= row
        return v

    def add_vectors(vals, basis):
        basis = list(basis)
        for v in vals:
            r = reduce(v, basis)
            if r == 0:
                return None
            piv = r.bit_length() - 1
            basis = [(p, row ^ r if row >> piv & 1 else row) for p, row in basis]
            basis.append((piv, r))
        return basis

    start_basis = add_vectors([one], []) if () in pres.basis_words else []
    assign = [0] * ngen

    def rec(step, basis):
        if step == len(free):
            return True
        for cand in order:
            assign[free[step]] = cand
            for d, w in derive_at[step]:
                assign[d] = word_value(w, assign)
            ok = True
            for rel in rel_at[step]:
                acc = 0
                for m in rel:
                    acc ^= word_value(m, assign)
                if acc:
                    ok = False
                    break
            if not ok:
                continue
            nb = add_vectors([word_value(w, assign) for w in word_at[step]], basis)
            if nb is None:
                continue
            if rec(step + 1, nb):
                return True
        return False

    if not rec(0, start_basis):
        return None
    witness = PresentationWitness(pres, tuple(_decode(x, n) for x in assign))
    if not witness.verify(a):
        raise AssertionError("internal error: witness failed verification")
    return witness


def isomorphism_invariants(a: FinDimAlgebra) -> dict[str, int]:
    """dim J, J^2, J^3 and the number of w in J with w^2 = 0 (commutative local)."""

    loc, _ = local_presentation(a)
    j = radical(loc)
    j2 = product_space(loc, j, j)
    j3 = product_space(loc, j, j2)
    square_zero = sum(1 for w in j.elements() if not loc.mul(w, w).any())
    return {"dim_J": j.dim, "dim_J2": j2.dim, "dim_J3": j3.dim, "square_zero_in_J": square_zero}
