"""Solving X^T X = C up to signed row permutations and basic-set changes."""

# %%
from fractions import Fraction

from blockcenter.plesken import (
    enumerate_ordinary_16x3,
    enumerate_rows,
    enumerate_solutions,
    gram_automorphisms,
)
from blockcenter.textio import load_paper_matrix

cx = load_paper_matrix("cartan_x")

# %% Admissible rows: r C^-1 r^T <= 1 with an odd numerator over 16.
for cd in enumerate_rows(cx):
    print(cd.r, cd.contribution)

# %% The automorphism group of the form has order 48.
print(gram_automorphisms(cx).order)

# %% Eight rows: three classes, told apart by elementary divisors.
for cls in enumerate_solutions(cx, 8, parity_required=True):
    print(cls.label, cls.eldiv)
    print(cls.canonical.tolist())

# %% Prescribing contributions prunes the search to the same three classes.
classes = enumerate_solutions(cx, 8, {Fraction(3, 16): 5, Fraction(11, 16): 3})
print([c.eldiv for c in classes])

# %% Sixteen rows all of contribution 3/16 admit a single solution.
big = enumerate_ordinary_16x3(cx)
print(sorted(map(tuple, big.canonical.tolist())))
