"""Finite-dimensional algebras over GF(p): radicals, socles, commutators, perps."""

# %%
from pathlib import Path

import numpy as np

from blockcenter.fdalgebra import (
    Subspace,
    center,
    commutator_space,
    find_symmetrizing_form,
    kulshammer_T,
    loewy_dimensions,
    perp_space,
    radical,
    socle,
)
from blockcenter.textio import load_paper_algebra, read_algebra

DATA = Path(__file__).resolve().parent / "data"

# %% The mod 2 center of the third case, in a basis adapted to its radical.
w = load_paper_algebra("center_case_III_W")
print(w.labels)
print("dim J", radical(w).dim, "socle", socle(w).dim, "Loewy", loewy_dimensions(w))
print("T_1 = J:", kulshammer_T(w, 1) == radical(w))

# %% A noncommutative example: the group algebra of the dihedral group of order 8.
d8 = read_algebra(DATA / "d8.alg")
print("center", center(d8).dim, "[A,A]", commutator_space(d8).dim, "Loewy", loewy_dimensions(d8))
print([kulshammer_T(d8, n).dim for n in range(4)])

# %% With a symmetrizing form, Z(A)^perp = [A, A] and perp is an involution.
s = find_symmetrizing_form(d8)
print(perp_space(d8, s, center(d8)) == commutator_space(d8))
rng = np.random.default_rng(1)
u = Subspace.from_rows(rng.integers(0, 2, size=(3, 8)), 2, 8)
print(u.dim, perp_space(d8, s, u).dim, perp_space(d8, s, perp_space(d8, s, u)) == u)
