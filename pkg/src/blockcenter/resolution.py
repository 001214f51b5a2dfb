"""Minimal projective resolutions of the simple module over a local algebra.

Over a local algebra projectives are free, so a minimal resolution of
``F = A/J`` is determined by the ranks ``n_i`` of its terms. Submodules of a
free module ``A^m`` are kept as GF(p) row spans of length ``m * dim A``;
the algebra acts from the left, componentwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gfp
from .errors import NotInRadical, NotPresentedLocal
from .fdalgebra import FinDimAlgebra, Subspace, product_space, radical

__all__ = [
    "DEFAULT_STEPS",
    "MAX_KERNEL_DIM",
    "CERTIFICATE_LABEL",
    "ModuleOverLocal",
    "ResolutionTrace",
    "Verdict",
    "shifted_fibonacci",
    "minimal_resolution_dims",
    "fibonacci_certificate",
    "hypothesis_check",
]

DEFAULT_STEPS = 16
MAX_KERNEL_DIM = 2_000_000
CERTIFICATE_LABEL = "growth certificate at desk scale"


def shifted_fibonacci(count: int) -> list[int]:
    """``f_0, ..., f_{count-1}`` with ``f_{-1} = f_0 = 1``."""
    out, prev, cur = [], 1, 1
    for _ in range(count):
        out.append(cur)
        prev, cur = cur, prev + cur
    return out


def _left_action(a: FinDimAlgebra) -> np.ndarray:
    # act[j] maps the coordinates of v to those of e_j * v
    return a.sc % a.p


def _radical_indices(a: FinDimAlgebra) -> list[int]:
    j = radical(a)
    idx = [i for i in range(a.dim) if i != a.unit_index]
    if j.dim != len(idx):
        raise NotPresentedLocal("radical is not spanned by the non-unit basis vectors")
    return idx


@dataclass(frozen=True)
class ModuleOverLocal:
    """A left submodule of ``A^free_rank`` given by spanning rows."""

    algebra: FinDimAlgebra
    generators: np.ndarray
    free_rank: int

    def __post_init__(self):
        g, _ = gfp.rref(np.asarray(self.generators).reshape(-1, self.free_rank * self.algebra.dim),
                        self.algebra.p)
        object.__setattr__(self, "generators", g)

    @property
    def dim(self) -> int:
        return self.generators.shape[0]

    def act(self, j: int, rows: np.ndarray | None = None) -> np.ndarray:
        """``e_j * v`` for every row v, componentwise."""
        a = self.algebra
        rows = self.generators if rows is None else rows
        blocks = rows.reshape(rows.shape[0], self.free_rank, a.dim)
        return (blocks @ _left_action(a)[j] % a.p).reshape(rows.shape[0], -1)

    def is_submodule(self) -> bool:
        for j in range(self.algebra.dim):
            moved = self.act(j)
            if moved.size and not all(gfp.in_row_space(v, self.generators, self.algebra.p)
                                      for v in moved):
                return False
        return True

    def radical_part(self) -> np.ndarray:
        """Echelon basis of ``J * M``."""
        a = self.algebra
        width = self.free_rank * a.dim
        if self.dim == 0:
            return np.zeros((0, width), dtype=np.int64)
        parts = [self.act(j) for j in _radical_indices(a)]
        if not parts:
            return np.zeros((0, width), dtype=np.int64)
        return gfp.rref(np.vstack(parts), a.p)[0]

    def top_generators(self) -> np.ndarray:
        """Rows of M that are a basis of ``M / JM``: a minimal generating set."""
        p = self.algebra.p
        jm, piv = gfp.rref(self.radical_part(), p)
        rest = self.generators.copy()
        for row, c in zip(jm, piv):
            rest = (rest - np.outer(rest[:, c], row)) % p
        return gfp.rref(rest, p)[0]


@dataclass(frozen=True)
class ResolutionTrace:
    n: tuple[int, ...]
    fib: tuple[int, ...]
    kernel_dims: tuple[int, ...] = ()
    truncated: bool = False
    note: str = ""

    @classmethod
    def from_ranks(cls, n, **kw) -> "ResolutionTrace":
        n = tuple(n)
        return cls(n, tuple(shifted_fibonacci(len(n))), **kw)

    @property
    def terminated(self) -> bool:
        return bool(self.n) and self.n[-1] == 0


def _cover_kernel(a: FinDimAlgebra, k: ModuleOverLocal, gens: np.ndarray) -> np.ndarray:
    """Kernel of ``A^n -> K``, ``(a_t) -> sum a_t g_t``, as rows in ``A^n``."""
    n = gens.shape[0]
    act = _left_action(a)
    m, d, p = k.free_rank, a.dim, a.p
    # row (t, j) is e_j * g_t
    blocks = gens.reshape(n, m, d)
    images = np.einsum("tmi,jik->tjmk", blocks, act) % p
    cover = images.reshape(n * d, m * d)
    if gfp.rank(cover, p) != k.dim:
        raise AssertionError("internal error: cover map is not onto")
    return gfp.left_kernel(cover, p)


# ---- GF(2): vectors of A^m as Python int bitsets (bit c*dim + i is e_i in component c)

def _iter_bits(v: int):
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


class _Gf2Action:
    def __init__(self, a: FinDimAlgebra):
        d = a.dim
        self.d = d
        sc = a.sc % 2
        # masks[j][i] = e_j * e_i as a bitset of length d
        self.masks = [[sum(1 << k for k in range(d) if sc[j, i, k]) for i in range(d)]
                      for j in range(d)]

    def act(self, j: int, v: int) -> int:
        d, masks = self.d, self.masks[j]
        out = 0
        for b in _iter_bits(v):
            c, i = divmod(b, d)
            if masks[i]:
                out ^= masks[i] << (c * d)
        return out


def _gf2_reduce(v: int, pivots: dict[int, int]) -> int:
    while v:
        low = (v & -v).bit_length() - 1
        row = pivots.get(low)
        if row is None:
            return v
        v ^= row
    return 0


def _gf2_insert(v: int, pivots: dict[int, int]) -> bool:
    v = _gf2_reduce(v, pivots)
    if v:
        pivots[(v & -v).bit_length() - 1] = v
        return True
    return False


def _gf2_step(act: _Gf2Action, kernel: list[int], rad: list[int]):
    """Minimal generators of K and the kernel of the cover onto K."""
    d = act.d
    jk: dict[int, int] = {}
    for v in kernel:
        for j in rad:
            _gf2_insert(act.act(j, v), jk)
    gens = [v for v in kernel if _gf2_insert(v, jk)]
    n = len(gens)
    width = max((g.bit_length() for g in kernel), default=0)
    shift = width + 1
    pivots: dict[int, int] = {}
    out: list[int] = []
    image_rank = 0
    for t, g in enumerate(gens):
        for j in range(d):
            row = act.act(j, g) | (1 << (shift + t * d + j))
            r = _gf2_reduce(row, pivots)
            low = r & ((1 << shift) - 1)
            if low:
                pivots[(low & -low).bit_length() - 1] = r
                image_rank += 1
            else:
                out.append(r >> shift)
    return n, out, image_rank


def _gf2_resolution(a: FinDimAlgebra, jidx: list[int], steps: int, max_kernel_dim: int,
                    check: bool) -> ResolutionTrace:
    act = _Gf2Action(a)
    d, u = a.dim, a.unit_index
    kernel = [1 << i for i in jidx]
    n, kdims = [1], [len(kernel)]
    truncated, note = False, ""
    for _ in range(steps):
        if not kernel:
            n.append(0)
            break
        ni, nxt, image_rank = _gf2_step(act, kernel, jidx)
        if check:
            if image_rank != len(kernel):
                raise AssertionError("internal error: cover map is not onto")
            if len(nxt) != ni * d - len(kernel):
                raise AssertionError("rank-nullity bookkeeping failed")
            unit_bits = sum(1 << (t * d + u) for t in range(ni))
            if any(v & unit_bits for v in nxt):
                raise AssertionError("cover is not minimal")
        n.append(ni)
        if len(nxt) > max_kernel_dim:
            truncated, note = True, f"stopped: kernel dimension {len(nxt)} over limit"
            break
        kernel = nxt
        kdims.append(len(kernel))
    return ResolutionTrace.from_ranks(n, kernel_dims=tuple(kdims), truncated=truncated, note=note)


def minimal_resolution_dims(a: FinDimAlgebra, steps: int = DEFAULT_STEPS,
                            max_kernel_dim: int = MAX_KERNEL_DIM,
                            check: bool = True, method: str = "auto") -> ResolutionTrace:
    """Ranks ``n_0, ..., n_steps`` of a minimal free resolution of ``A/J``.

    Stops early once a kernel vanishes (the last rank is then 0). With
    ``check`` the rank-nullity bookkeeping and minimality (kernel inside
    ``J * A^n``) are asserted at every step. Over GF(2) the default works on
    sparse bitsets; ``method="dense"`` forces numpy elimination.
    """
    d, p = a.dim, a.p
    jidx = _radical_indices(a)
    if method not in ("auto", "dense", "sparse"):
        raise ValueError(f"unknown method {method!r}")
    if method == "sparse" and p != 2:
        raise ValueError("the sparse method needs p = 2")
    if p == 2 and method != "dense":
        return _gf2_resolution(a, jidx, steps, max_kernel_dim, check)
    # K_0 = kernel of the augmentation A -> F, i.e. J itself
    k = ModuleOverLocal(a, np.eye(d, dtype=np.int64)[jidx].reshape(-1, d), 1)
    n = [1]
    kdims = [k.dim]
    note = ""
    truncated = False
    for _ in range(steps):
        if k.dim == 0:
            n.append(0)
            break
        gens = k.top_generators()
        ni = gens.shape[0]
        kern = _cover_kernel(a, k, gens)
        if check:
            if kern.shape[0] != ni * d - k.dim:
                raise AssertionError("rank-nullity bookkeeping failed")
            units = kern.reshape(kern.shape[0], ni, d)[:, :, a.unit_index]
            if units.any():
                raise AssertionError("cover is not minimal")
        n.append(ni)
        if kern.shape[0] > max_kernel_dim:
            truncated, note = True, f"stopped: kernel dimension {kern.shape[0]} over limit"
            break
        k = ModuleOverLocal(a, kern, ni)
        kdims.append(k.dim)
    return ResolutionTrace.from_ranks(n, kernel_dims=tuple(kdims), truncated=truncated, note=note)


@dataclass(frozen=True)
class Verdict:
    status: str  # PASS or FAIL
    label: str
    first_violation: int | None = None
    details: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "PASS"

    def describe(self) -> str:
        return f"{self.label}: {self.status}" + (f" ({self.details})" if self.details else "")


def fibonacci_certificate(trace) -> Verdict:
    """PASS when ``n_i >= f_i`` for every computed i.

    This certifies Fibonacci growth for the computed range only; it is not a
    proof of infinite complexity.
    """
    n = tuple(trace.n if isinstance(trace, ResolutionTrace) else trace)
    fib = shifted_fibonacci(len(n))
    for i, (ni, fi) in enumerate(zip(n, fib)):
        if ni < fi:
            why = "resolution terminated" if ni == 0 else f"n_{i} = {ni} < f_{i} = {fi}"
            return Verdict("FAIL", CERTIFICATE_LABEL, i, why)
    return Verdict("PASS", CERTIFICATE_LABEL, None, f"n_i >= f_i for i = 0..{len(n) - 1}")


def hypothesis_check(a: FinDimAlgebra, x, z, y=None) -> Verdict:
    """Test ``xz = zx = z^2 = 0`` with x, z independent modulo ``J^2``.

    With ``y`` the three-element variant is tested instead: additionally
    ``yz = zy = 0`` and x, y, z independent modulo ``J^2``.
    """
    j = radical(a)
    j2 = product_space(a, j, j)
    elems = {"x": x, "z": z} if y is None else {"x": x, "y": y, "z": z}
    vecs = {}
    for name, v in elems.items():
        v = np.asarray(v, dtype=np.int64) % a.p
        if v.shape != (a.dim,):
            raise ValueError(f"{name} has {v.shape[0]} coordinates, algebra has dimension {a.dim}")
        if v not in j:
            raise NotInRadical(f"{name} is not in J(A)")
        vecs[name] = v
    label = "hypotheses xz = zx = z^2 = 0" if y is None else "hypotheses xz = zx = yz = zy = 0"
    span = j2 + Subspace.from_rows(list(vecs.values()), a.p, a.dim)
    if span.dim != j2.dim + len(vecs):
        return Verdict("FAIL", label, None, "not linearly independent modulo J^2")
    pairs = [("x", "z"), ("z", "x"), ("z", "z")]
    if y is not None:
        pairs += [("y", "z"), ("z", "y")]
    for u, w in pairs:
        if a.mul(vecs[u], vecs[w]).any():
            return Verdict("FAIL", label, None, f"{u}{w} != 0")
    return Verdict("PASS", label)
