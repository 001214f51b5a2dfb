from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from blockcenter.center import (
    CASE_I_II,
    CASE_III,
    PRESENTATIONS,
    center_basis,
    center_equations,
    isomorphism_invariants,
    match_presentation,
    presentation_algebra,
    q_from_gendec,
    reduce_mod_p,
)
from blockcenter.errors import SingularMatrix, WrongDimension
from blockcenter.exact_linalg import IntMatrix, complete_to_unimodular
from blockcenter.fdalgebra import (
    local_presentation,
    loewy_dimensions,
    product_space,
    radical,
    socle,
    truncated_polynomial_algebra,
)
from blockcenter.gendec import assemble
from blockcenter.textio import load_paper_algebra, load_paper_matrix

CASES = ("I", "II", "III")
EXPECTED = {"I": CASE_I_II, "II": CASE_I_II, "III": CASE_III}


@pytest.fixture(scope="module")
def lattices(blocks):
    return {c: center_basis(q_from_gendec(assemble(blocks[c]))) for c in CASES}


@pytest.fixture(scope="module")
def centers(lattices):
    return {c: reduce_mod_p(lat) for c, lat in lattices.items()}


@pytest.mark.parametrize("case", CASES)
def test_lattice_matches_oracle(lattices, frozen, case):
    lat = lattices[case]
    assert lat.rank == 8
    assert oracles.same_lattice(lat.basis_diagonals.T.tolist(), frozen["cases"][case]["center_hnf"])


@pytest.mark.parametrize("case", CASES)
def test_lattice_basis_properties(lattices, case):
    lat = lattices[case]
    assert list(lat.basis_diagonals.col(0)) == [1] * 8
    for j in range(lat.rank):
        d = lat.basis_diagonals.col(j)
        assert lat.matrix_of(d).to_integer() == lat.basis_matrices[j]
    # closed under entrywise products
    for i in range(lat.rank):
        for j in range(lat.rank):
            a, b = lat.basis_diagonals.col(i), lat.basis_diagonals.col(j)
            assert lat.contains([x * y for x, y in zip(a, b)])


def test_case_one_table(lattices, frozen):
    table = load_paper_matrix("center_table_I")
    assert oracles.same_lattice(table.T.tolist(), lattices["I"].basis_diagonals.T.tolist())
    assert frozen["center_table_I_hnf"] == frozen["cases"]["I"]["center_hnf"]


def test_equations_shape(blocks):
    q = q_from_gendec(assemble(blocks["I"]))
    eq = center_equations(q)
    assert eq.shape == (56, 64)
    with pytest.raises(SingularMatrix):
        center_basis(IntMatrix.from_rows([[1, 1], [1, 1]]))


def test_identity_q_gives_all_diagonals():
    lat = center_basis(IntMatrix.identity(3))
    assert oracles.same_lattice(lat.basis_diagonals.T.tolist(), IntMatrix.identity(3).tolist())


@pytest.mark.parametrize("case", CASES)
def test_reduction_is_commutative_local(centers, case):
    a = centers[case].algebra
    assert a.p == 2 and a.dim == 8 and a.unit_index == 0
    assert a.is_associative() and a.is_commutative()
    assert radical(local_presentation(a)[0]).dim == 7


@pytest.mark.parametrize("case", CASES)
def test_presentation_matches(centers, case):
    w = match_presentation(centers[case], EXPECTED[case].name)
    assert w is not None and w.verify(centers[case].algebra)
    other = CASE_III if EXPECTED[case] is CASE_I_II else CASE_I_II
    assert match_presentation(centers[case], other) is None


def test_radical_squares(centers):
    dims = {}
    for case in CASES:
        a, _ = local_presentation(centers[case].algebra)
        j = radical(a)
        dims[case] = product_space(a, j, j).dim
    assert dims == {"I": 1, "II": 1, "III": 3}


@pytest.mark.parametrize("name,key", [("I_II", CASE_I_II), ("III", CASE_III)])
def test_presentation_algebra_vs_word_model(frozen, name, key):
    ref = frozen[f"presentation_{name}"]
    a = presentation_algebra(key)
    assert list(a.labels) == ref["words"]
    assert (a.sc % 2).tolist() == ref["sc"]
    loc, _ = local_presentation(a)
    assert [s.dim for s in [loc.full_space(), *_powers(loc)]] == ref["radical_series"]
    assert socle(loc).dim == ref["socle_dim"]


def _powers(a):
    j = radical(a)
    out, cur = [j], j
    while cur.dim:
        cur = product_space(a, cur, j)
        out.append(cur)
    return out


def test_presentations_self_witness_is_identity():
    for pres in (CASE_I_II, CASE_III):
        a = presentation_algebra(pres)
        w = match_presentation(a, pres)
        eye = np.eye(8, dtype=int)
        expect = [tuple(eye[pres.basis_words.index((g,))]) for g in range(len(pres.generators))]
        assert list(w.images) == expect


def test_invariants_separate(frozen):
    i12 = isomorphism_invariants(presentation_algebra(CASE_I_II))
    i3 = isomorphism_invariants(presentation_algebra(CASE_III))
    assert i12 != i3
    assert i12["square_zero_in_J"] == frozen["presentation_I_II"]["square_zero_in_J"]
    assert i3["square_zero_in_J"] == frozen["presentation_III"]["square_zero_in_J"]


def test_w_table_is_case_three():
    w = load_paper_algebra("center_case_III_W")
    assert match_presentation(w, "case3") is not None
    assert match_presentation(w, "case12") is None


def test_loewy_layers(centers):
    layers = {c: loewy_dimensions(local_presentation(centers[c].algebra)[0]) for c in CASES}
    assert layers == {"I": [1, 6, 1], "II": [1, 6, 1], "III": [1, 4, 3]}


def test_wrong_dimension_and_aliases():
    with pytest.raises(WrongDimension):
        match_presentation(truncated_polynomial_algebra(4), "case3")
    assert PRESENTATIONS["case12"] is CASE_I_II and PRESENTATIONS["case3"] is CASE_III


@settings(max_examples=25)
@given(st.lists(st.integers(-3, 3), min_size=7, max_size=7), st.sampled_from(CASES))
def test_rebasing_preserves_lattice_and_type(lattices, tail, case):
    lat = lattices[case]
    vec = [1] + tail
    change = complete_to_unimodular(vec)
    moved = lat.rebased(change)
    assert oracles.same_lattice(moved.basis_diagonals.T.tolist(), lat.basis_diagonals.T.tolist())
    assert match_presentation(reduce_mod_p(moved), EXPECTED[case]) is not None
