"""Block data: contribution matrices, orthogonality and the integrality congruences."""

# %%
from blockcenter.gendec import assemble, check_star_congruences, contribution
from blockcenter.textio import load_paper_block

blocks = {case: load_paper_block(f"case_{case}") for case in ("I", "II", "III")}

# %% Scaled contribution matrices of the major subsection.
for case, b in blocks.items():
    m = contribution(b["x"])
    print(case, "trace", m.trace(), "all odd", m.all_odd())
    print(m.scaled.tolist())

# %% Every case satisfies the partition of unity and the mod 4 congruences.
for case, b in blocks.items():
    print(case)
    for chk in check_star_congruences(b):
        print("   ", chk.describe())

# %% Assembly checks Q_u^T Q_v = 0 and returns the square matrix.
g = assemble(blocks["III"])
print(g.tolist(), g.det())
