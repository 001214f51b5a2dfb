"""Finite-dimensional unital algebras over GF(p) given by structure constants.

An algebra stores ``sc[i, j, k]``, the coefficient of ``e_k`` in ``e_i e_j``.
Elements are coefficient vectors, subspaces are kept in reduced row echelon
form so that equal subspaces compare equal.

Radical computations assume the algebra is *presented local*: one basis
vector is the unit and the others span a nilpotent ideal. That is checked,
never assumed silently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import gfp
from .errors import (
    DimensionMismatch,
    FormNotSymmetrizing,
    NotPresentedLocal,
    NotSymmetric,
    OddCharacteristic,
)

__all__ = [
    "FinDimAlgebra",
    "Subspace",
    "LinearForm",
    "radical",
    "radical_series",
    "loewy_dimensions",
    "socle",
    "center",
    "commutator_space",
    "product_space",
    "kulshammer_T",
    "find_symmetrizing_form",
    "perp_space",
    "nilradical_commutative",
    "local_presentation",
    "truncated_polynomial_algebra",
    "monomial_algebra",
    "algebra_from_matrices",
    "group_algebra",
]

EXHAUSTIVE_FORM_LIMIT = 2 ** 16
RANDOM_FORM_SAMPLES = 1000


@dataclass(frozen=True, eq=False)
class FinDimAlgebra:
    p: int
    sc: np.ndarray
    unit_index: int = 0
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        sc = np.asarray(self.sc, dtype=np.int64) % self.p
        if sc.ndim != 3 or not (sc.shape[0] == sc.shape[1] == sc.shape[2]):
            raise DimensionMismatch("structure constants must have shape (n, n, n)")
        sc.setflags(write=False)
        object.__setattr__(self, "sc", sc)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{i}" for i in range(sc.shape[0])))
        elif len(self.labels) != sc.shape[0]:
            raise DimensionMismatch("one label per basis element")
        else:
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def dim(self) -> int:
        return self.sc.shape[0]

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    @property
    def one(self) -> np.ndarray:
        return self.basis_vector(self.unit_index)

    def element(self, coeffs) -> np.ndarray:
        v = np.asarray(coeffs, dtype=np.int64) % self.p
        if v.shape != (self.dim,):
            raise DimensionMismatch(f"expected a vector of length {self.dim}")
        return v

    def mul(self, a, b) -> np.ndarray:
        return np.einsum("i,j,ijk->k", a, b, self.sc) % self.p

    def power(self, a, n: int) -> np.ndarray:
        out = self.one
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def left_mult(self, a) -> np.ndarray:
        """Matrix ``L`` with ``x @ L == a * x`` (row-vector convention)."""
        return np.einsum("i,ijk->jk", a, self.sc) % self.p

    def right_mult(self, a) -> np.ndarray:
        """Matrix ``R`` with ``x @ R == x * a``."""
        return np.einsum("j,ijk->ik", a, self.sc) % self.p

    def is_associative(self) -> bool:
        # (e_i e_j) e_k vs e_i (e_j e_k), all triples at once
        lhs = np.einsum("ijm,mkn->ijkn", self.sc, self.sc) % self.p
        rhs = np.einsum("jkm,imn->ijkn", self.sc, self.sc) % self.p
        return bool(np.array_equal(lhs, rhs))

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.sc, self.sc.transpose(1, 0, 2)))

    def is_unital(self) -> bool:
        eye = np.eye(self.dim, dtype=np.int64)
        u = self.unit_index
        return bool(np.array_equal(self.sc[u], eye) and np.array_equal(self.sc[:, u], eye))

    def validate(self) -> None:
        if not self.is_unital():
            raise ValueError(f"basis element {self.unit_index} is not a two-sided unit")
        if not self.is_associative():
            raise ValueError("structure constants are not associative")

    def change_basis(self, rows, unit_index: int = 0, labels=()) -> "FinDimAlgebra":
        """Rewrite the algebra in the basis given by the rows of ``rows``."""
        b = gfp.as_gf(rows, self.p)
        binv = _inverse(b, self.p)
        prods = np.einsum("ai,bj,ijk->abk", b, b, self.sc) % self.p
        return FinDimAlgebra(self.p, (prods @ binv) % self.p, unit_index, labels)

    def full_space(self) -> "Subspace":
        return Subspace.from_rows(np.eye(self.dim, dtype=np.int64), self.p)

    def zero_space(self) -> "Subspace":
        return Subspace.zero(self.dim, self.p)

    def elements(self):
        """Every element of the algebra (only sensible for tiny p**dim)."""
        for c in itertools.product(range(self.p), repeat=self.dim):
            yield np.array(c, dtype=np.int64)

    def __repr__(self):
        return f"FinDimAlgebra(p={self.p}, dim={self.dim}, labels={self.labels})"


def _inverse(b: np.ndarray, p: int) -> np.ndarray:
    n = b.shape[0]
    r, piv = gfp.rref(np.concatenate([b, np.eye(n, dtype=np.int64)], axis=1), p)
    if piv[:n] != list(range(n)) or len(piv) < n or piv[n - 1] >= n:
        raise ValueError("basis change matrix is singular")
    return r[:, n:]


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of GF(p)^n held as a reduced echelon basis."""

    ambient_dim: int
    p: int
    basis: np.ndarray = field(repr=False)

    @classmethod
    def from_rows(cls, rows, p: int, ambient_dim: int | None = None) -> "Subspace":
        a = np.asarray(rows, dtype=np.int64)
        if ambient_dim is None:
            ambient_dim = a.shape[-1]
        a = a.reshape(-1, ambient_dim) % p
        r, _ = gfp.rref(a, p) if a.shape[0] else (a, [])
        r.setflags(write=False)
        return cls(ambient_dim, p, r)

    @classmethod
    def zero(cls, n: int, p: int) -> "Subspace":
        return cls.from_rows(np.zeros((0, n), dtype=np.int64), p, n)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __len__(self):
        return self.dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim, self.p) == (other.ambient_dim, other.p) and np.array_equal(
            self.basis, other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.p, self.basis.tobytes()))

    def __contains__(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64) % self.p
        if self.dim == 0:
            return not v.any()
        return gfp.rank(np.vstack([self.basis, v]), self.p) == self.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.from_rows(np.vstack([self.basis, other.basis]), self.p, self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        # x = a B1 = b B2  <=>  (a, b) in left kernel of [B1; -B2]
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim, self.p)
        stacked = np.vstack([self.basis, (-other.basis) % self.p])
        k = gfp.left_kernel(stacked, self.p)
        return Subspace.from_rows(k[:, :self.dim] @ self.basis, self.p, self.ambient_dim)

    def __le__(self, other: "Subspace") -> bool:
        return (self + other).dim == other.dim

    def __ge__(self, other: "Subspace") -> bool:
        return other <= self

    def complement_basis(self) -> np.ndarray:
        """Standard basis vectors completing ``self`` to the whole space."""
        piv = set(_pivots(self.basis))
        return np.eye(self.ambient_dim, dtype=np.int64)[
            [i for i in range(self.ambient_dim) if i not in piv]]

    def coordinates(self, v) -> np.ndarray:
        x = gfp.solve_left(self.basis, v, self.p)
        if x is None:
            raise ValueError("vector not in subspace")
        return x

    def elements(self):
        for c in itertools.product(range(self.p), repeat=self.dim):
            yield (np.array(c, dtype=np.int64) @ self.basis) % self.p if self.dim else \
                np.zeros(self.ambient_dim, dtype=np.int64)


def _pivots(rref_rows: np.ndarray) -> list[int]:
    return [int(np.nonzero(r)[0][0]) for r in rref_rows]


@dataclass(frozen=True)
class LinearForm:
    p: int
    coeffs: tuple[int, ...]

    @property
    def ambient_dim(self) -> int:
        return len(self.coeffs)

    def __call__(self, v) -> int:
        return int(np.dot(np.asarray(self.coeffs, dtype=np.int64), v) % self.p)

    def gram(self, a: FinDimAlgebra) -> np.ndarray:
        """``G[i, j] = s(e_i e_j)``."""
        return (a.sc @ np.asarray(self.coeffs, dtype=np.int64)) % a.p

    def is_symmetrizing(self, a: FinDimAlgebra) -> bool:
        g = self.gram(a)
        return bool(np.array_equal(g, g.T)) and gfp.rank(g, a.p) == a.dim


def product_space(a: FinDimAlgebra, u: Subspace, v: Subspace) -> Subspace:
    """Span of all products ``x * y`` with ``x`` in ``u`` and ``y`` in ``v``."""
    if u.dim == 0 or v.dim == 0:
        return a.zero_space()
    prods = np.einsum("ai,bj,ijk->abk", u.basis, v.basis, a.sc).reshape(-1, a.dim)
    return Subspace.from_rows(prods % a.p, a.p, a.dim)


def _nonunit_span(a: FinDimAlgebra) -> Subspace:
    idx = [i for i in range(a.dim) if i != a.unit_index]
    return Subspace.from_rows(np.eye(a.dim, dtype=np.int64)[idx], a.p, a.dim)


def radical(a: FinDimAlgebra) -> Subspace:
    """Jacobson radical of a presented local algebra.

    Returns the span N of the non-unit basis vectors after checking that N is
    a two-sided ideal with N^dim = 0; raises NotPresentedLocal otherwise.
    """
    n = _nonunit_span(a)
    if not (product_space(a, a.full_space(), n) <= n and product_space(a, n, a.full_space()) <= n):
        raise NotPresentedLocal("non-unit basis vectors do not span an ideal")
    power = n
    for _ in range(a.dim):
        if power.dim == 0:
            return n
        power = product_space(a, n, power)
    if power.dim:
        raise NotPresentedLocal("non-unit basis vectors span a non-nilpotent ideal")
    return n


def radical_series(a: FinDimAlgebra) -> list[Subspace]:
    """``[J^0, J^1, ..., 0]``, ending with the first zero power."""
    j = radical(a)
    series = [a.full_space(), j]
    while series[-1].dim:
        nxt = product_space(a, j, series[-1])
        if nxt.dim >= series[-1].dim:
            raise NotPresentedLocal("radical powers stopped decreasing")
        series.append(nxt)
    return series


def loewy_dimensions(a: FinDimAlgebra) -> list[int]:
    """Dimensions of the Loewy layers J^i / J^(i+1)."""
    dims = [s.dim for s in radical_series(a)]
    return [x - y for x, y in zip(dims, dims[1:])]


def _annihilator(a: FinDimAlgebra, u: Subspace, side: str) -> Subspace:
    # side "right": {v : v * u = 0};  side "left": {v : u * v = 0}
    if u.dim == 0:
        return a.full_space()
    if side == "right":
        cols = [a.right_mult(x) for x in u.basis]
    else:
        cols = [a.left_mult(x) for x in u.basis]
    m = np.concatenate(cols, axis=1)
    return Subspace.from_rows(gfp.left_kernel(m, a.p), a.p, a.dim)


def socle(a: FinDimAlgebra, side: str = "two-sided") -> Subspace:
    """Socle of a presented local algebra.

    ``side="left"`` gives ``{v : v J = 0}``, ``side="right"`` gives
    ``{v : J v = 0}``; ``"two-sided"`` is their intersection.
    """
    j = radical(a)
    if side == "left":
        return _annihilator(a, j, "right")
    if side == "right":
        return _annihilator(a, j, "left")
    if side == "two-sided":
        return _annihilator(a, j, "right") & _annihilator(a, j, "left")
    raise ValueError(f"unknown side {side!r}")


def center(a: FinDimAlgebra) -> Subspace:
    """``{v : v e_i = e_i v for all i}``."""
    blocks = [(a.right_mult(a.basis_vector(i)) - a.left_mult(a.basis_vector(i))) % a.p
              for i in range(a.dim)]
    return Subspace.from_rows(gfp.left_kernel(np.concatenate(blocks, axis=1), a.p), a.p, a.dim)


def commutator_space(a: FinDimAlgebra) -> Subspace:
    """``[A, A]``: span of ``e_i e_j - e_j e_i``."""
    diff = (a.sc - a.sc.transpose(1, 0, 2)).reshape(-1, a.dim) % a.p
    return Subspace.from_rows(diff, a.p, a.dim)


def kulshammer_T(a: FinDimAlgebra, n: int) -> Subspace:
    """``T_n(A) = {x : x^(2^n) in [A, A]}`` in characteristic 2.

    Modulo ``[A, A]`` the map ``x -> x^2`` is additive in characteristic 2,
    so ``T_n`` is the kernel of the linear map sending each basis vector to
    its ``2^n``-th power in ``A / [A, A]``.
    """
    if a.p != 2:
        raise OddCharacteristic("Kuelshammer spaces are defined here for p = 2 only")
    comm = commutator_space(a)
    images = np.array([a.power(a.basis_vector(i), 2 ** n) for i in range(a.dim)])
    if comm.dim == 0:
        return Subspace.from_rows(gfp.left_kernel(images, 2), 2, a.dim)
    # x @ images lies in comm  <=>  (x @ images) is killed by the quotient map
    quotient = gfp.left_kernel(comm.basis.T, 2).T  # columns: functionals vanishing on comm
    return Subspace.from_rows(gfp.left_kernel((images @ quotient) % 2, 2), 2, a.dim)


def _symmetric_form_space(a: FinDimAlgebra) -> np.ndarray:
    comm = commutator_space(a)
    if comm.dim == 0:
        return np.eye(a.dim, dtype=np.int64)
    return gfp.left_kernel(comm.basis.T, a.p)


def find_symmetrizing_form(a: FinDimAlgebra, seed: int = 0) -> LinearForm:
    """A linear form with ``s(xy) = s(yx)`` and nondegenerate ``(x, y) -> s(xy)``.

    The forms vanishing on ``[A, A]`` are enumerated outright when there are
    at most 2**16 of them; otherwise random samples are tried and a failure
    is reported with ``low_confidence=True``.
    """
    space = _symmetric_form_space(a)
    k = space.shape[0]
    if k == 0:
        raise NotSymmetric()

    def check(c):
        s = (np.asarray(c, dtype=np.int64) @ space) % a.p
        form = LinearForm(a.p, tuple(int(x) for x in s))
        return form if gfp.rank(form.gram(a), a.p) == a.dim else None

    if a.p ** k <= EXHAUSTIVE_FORM_LIMIT:
        for c in itertools.product(range(a.p), repeat=k):
            form = check(c)
            if form is not None:
                return form
        raise NotSymmetric()
    rng = np.random.default_rng(seed)
    for _ in range(RANDOM_FORM_SAMPLES):
        form = check(rng.integers(0, a.p, size=k))
        if form is not None:
            return form
    raise NotSymmetric(low_confidence=True)


def perp_space(a: FinDimAlgebra, s: LinearForm, u: Subspace) -> Subspace:
    """``U^perp = {x : s(x U) = 0}``."""
    if not s.is_symmetrizing(a):
        raise FormNotSymmetrizing("form is not symmetrizing for this algebra")
    if u.dim == 0:
        return a.full_space()
    g = s.gram(a)
    return Subspace.from_rows(gfp.left_kernel((g @ u.basis.T) % a.p, a.p), a.p, a.dim)


def nilradical_commutative(a: FinDimAlgebra) -> Subspace:
    """Nilpotent elements of a commutative algebra.

    In characteristic p the Frobenius map is GF(p)-linear on a commutative
    algebra, so the nilradical is the kernel of ``x -> x^(p^m)`` once
    ``p^m >= dim``.
    """
    if not a.is_commutative():
        raise NotPresentedLocal("nilradical shortcut needs a commutative algebra")
    e = 1
    while e < a.dim:
        e *= a.p
    images = np.array([a.power(a.basis_vector(i), e) for i in range(a.dim)])
    return Subspace.from_rows(gfp.left_kernel(images, a.p), a.p, a.dim)


def local_presentation(a: FinDimAlgebra) -> tuple[FinDimAlgebra, np.ndarray]:
    """Rewrite a commutative local algebra in the basis ``1`` + radical basis.

    Returns the new algebra and the basis-change matrix whose rows are the
    new basis vectors in old coordinates.
    """
    j = nilradical_commutative(a)
    if j.dim != a.dim - 1:
        raise NotPresentedLocal(f"nilradical has dimension {j.dim}, expected {a.dim - 1}")
    rows = np.vstack([a.one, j.basis])
    labels = ["1"] + [f"j{i + 1}" for i in range(j.dim)]
    return a.change_basis(rows, 0, labels), rows


# ---------------------------------------------------------------- constructors

def algebra_from_matrices(mats: Sequence[np.ndarray], p: int, unit_index: int = 0,
                          labels=()) -> FinDimAlgebra:
    """Algebra spanned by linearly independent matrices closed under product."""
    flat = np.array([np.asarray(m, dtype=np.int64).reshape(-1) for m in mats]) % p
    n = len(mats)
    if gfp.rank(flat, p) != n:
        raise ValueError("matrices are linearly dependent")
    sc = np.zeros((n, n, n), dtype=np.int64)
    for i, x in enumerate(mats):
        for j, y in enumerate(mats):
            prod = (np.asarray(x, dtype=np.int64) @ np.asarray(y, dtype=np.int64)) % p
            c = gfp.solve_left(flat, prod.reshape(-1), p)
            if c is None:
                raise ValueError("span of matrices is not closed under product")
            sc[i, j] = c
    return FinDimAlgebra(p, sc, unit_index, labels)


def monomial_algebra(nvars: int, relations: Sequence[Sequence[int]], p: int = 2,
                     names: Sequence[str] | None = None) -> FinDimAlgebra:
    """Commutative ``GF(p)[x_1..x_n] / (monomial ideal)``.

    ``relations`` are exponent vectors of the monomials generating the ideal;
    the ideal must have finite codimension. The basis is the standard
    monomials in degree-lex order, so the unit comes first.
    """
    names = list(names) if names else [f"x{i + 1}" for i in range(nvars)]

    def killed(e):
        return any(all(a >= b for a, b in zip(e, r)) for r in relations)

    bounds = []
    for i in range(nvars):
        pure = [r[i] for r in relations if all(r[k] == 0 for k in range(nvars) if k != i)]
        if not pure:
            raise ValueError(f"variable {names[i]} is not nilpotent")
        bounds.append(min(pure))
    mons = [e for e in itertools.product(*(range(b) for b in bounds)) if not killed(e)]
    mons.sort(key=lambda e: (sum(e), [-x for x in e]))
    index = {e: i for i, e in enumerate(mons)}
    n = len(mons)
    sc = np.zeros((n, n, n), dtype=np.int64)
    for i, e in enumerate(mons):
        for j, f in enumerate(mons):
            g = tuple(a + b for a, b in zip(e, f))
            if g in index:
                sc[i, j, index[g]] = 1
    labels = [_monomial_label(e, names) for e in mons]
    return FinDimAlgebra(p, sc, 0, labels)


def _monomial_label(e, names) -> str:
    parts = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k]
    return "*".join(parts) or "1"


def truncated_polynomial_algebra(n: int, p: int = 2) -> FinDimAlgebra:
    """``GF(p)[x] / (x^n)`` on the basis ``1, x, ..., x^(n-1)``."""
    return monomial_algebra(1, [(n,)], p, ["x"])


def group_algebra(elements: Sequence, multiply, p: int = 2) -> FinDimAlgebra:
    """Group algebra of a p-group in the local basis ``1, g - 1 (g != 1)``.

    ``elements[0]`` must be the identity.
    """
    idx = {g: i for i, g in enumerate(elements)}
    n = len(elements)
    sc = np.zeros((n, n, n), dtype=np.int64)
    for i, g in enumerate(elements):
        for j, h in enumerate(elements):
            sc[i, j, idx[multiply(g, h)]] = 1
    plain = FinDimAlgebra(p, sc, 0, tuple(f"g{i}" for i in range(n)))
    b = np.eye(n, dtype=np.int64)
    b[1:, 0] = p - 1
    labels = ["1"] + [f"({g})-1" for g in elements[1:]]
    return plain.change_basis(b, 0, labels)
