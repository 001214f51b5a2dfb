"""Growth of minimal resolutions of the simple module over local algebras."""

# %%
from pathlib import Path

from blockcenter.resolution import fibonacci_certificate, hypothesis_check, minimal_resolution_dims
from blockcenter.textio import read_algebra

DATA = Path(__file__).resolve().parent / "data"

# %% GF(2)[x,z]/(x^3, xz, z^2) on the basis 1, x, z, x^2.
a = read_algebra(DATA / "xz_local.alg")
print(hypothesis_check(a, [0, 1, 0, 0], [0, 0, 1, 0]).describe())
tr = minimal_resolution_dims(a, steps=12)
print("n  ", tr.n)
print("fib", tr.fib)
print(fibonacci_certificate(tr).describe())

# %% The dual numbers have periodic resolutions, so the certificate fails at once.
dual = read_algebra(DATA / "dual_numbers.alg")
tr = minimal_resolution_dims(dual, steps=8)
print(tr.n, fibonacci_certificate(tr).describe())

# %% The dense and bitset back ends agree.
dense = minimal_resolution_dims(a, steps=6, method="dense")
sparse = minimal_resolution_dims(a, steps=6, method="sparse")
print(dense.n == sparse.n, dense.kernel_dims)
