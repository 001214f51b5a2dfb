"""The center as a lattice of diagonals, its reduction mod 2, and presentations."""

# %%
from blockcenter.center import center_basis, match_presentation, q_from_gendec, reduce_mod_p
from blockcenter.fdalgebra import local_presentation, loewy_dimensions, product_space, radical
from blockcenter.gendec import assemble
from blockcenter.textio import load_paper_block

# %% Diagonals D with Q D Q^-1 integral; the first basis vector is the unit.
lat = {}
for case in ("I", "II", "III"):
    lat[case] = center_basis(q_from_gendec(assemble(load_paper_block(f"case_{case}"))))
print(lat["I"].basis_diagonals.tolist())

# %% Reduce mod 2 and compare with the two candidate presentations.
for case, l in lat.items():
    z = reduce_mod_p(l)
    for name in ("case12", "case3"):
        w = match_presentation(z, name)
        print(case, name, "match" if w else "no match")
        if w:
            print("   ", w.as_dict())

# %% The invariant separating the two types.
for case, l in lat.items():
    loc, _ = local_presentation(reduce_mod_p(l).algebra)
    j = radical(loc)
    print(case, "dim J^2 =", product_space(loc, j, j).dim, "Loewy layers", loewy_dimensions(loc))
