"""Exact integer linear algebra: Smith forms, saturated kernels, lattice equality."""

# %%
from blockcenter.exact_linalg import (
    IntMatrix,
    elementary_divisors,
    integer_kernel_basis,
    rat_inverse,
    same_lattice,
    smith_normal_form,
)
from blockcenter.textio import load_paper_matrix

# %% The Cartan matrix of the major subsection and its Smith form.
cx = load_paper_matrix("cartan_x")
res = smith_normal_form(cx)
print(cx.tolist())
print("diagonal", res.diagonal)
assert res.u @ cx @ res.v == res.d

# %% Its inverse has denominator 16, matching the top elementary divisor.
print(rat_inverse(cx).tolist())

# %% Integer kernels come out saturated: the quotient Z^n / K is torsion free.
a = IntMatrix.from_rows([[2, 4, 6, 8], [1, 3, 5, 7]])
k = integer_kernel_basis(a)
print(k.tolist(), elementary_divisors(k))

# %% Lattices are compared through their Hermite forms.
b = IntMatrix.from_rows([[1, -2, 1, 0], [0, 1, -2, 1]])
print("same lattice:", same_lattice(k, b))
