from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blockcenter.errors import DimensionMismatch, NotIntegral, OrthogonalityViolation
from blockcenter.exact_linalg import IntMatrix
from blockcenter.gendec import (
    BlockDatum,
    SubsectionDatum,
    assemble,
    block_from_matrix,
    check_orthogonality,
    check_star_congruences,
    contribution,
    find_simultaneous_permutation,
)
from blockcenter.textio import format_block, load_paper_matrix, parse_block

CASES = ("I", "II", "III")


@pytest.mark.parametrize("case", CASES)
def test_contributions_match_oracle(blocks, frozen, case):
    for sub in blocks[case].subsections:
        cm = contribution(sub)
        assert cm.scaled.tolist() == frozen["cases"][case]["contrib16"][sub.label]
        assert cm.is_idempotent()


@pytest.mark.parametrize("case", CASES)
def test_bundled_contribution_tables(cartan_x, case):
    x = load_paper_matrix(f"solution_{case}")
    computed = contribution(SubsectionDatum("x", x, cartan_x)).scaled
    shown = load_paper_matrix(f"contrib_16M_{case}")
    # the displays list characters in another order
    assert find_simultaneous_permutation(computed, shown) is not None


def test_contribution_y_case_one(blocks):
    shown = load_paper_matrix("contrib_16M_y_case_I")
    assert find_simultaneous_permutation(contribution(blocks["I"]["y"]).scaled, shown) is not None


@pytest.mark.parametrize("case", CASES)
def test_star_congruences_hold(blocks, case):
    rep = check_star_congruences(blocks[case])
    assert rep.ok, rep.first_failure().describe()
    assert len(rep.checks) == 4
    assert rep.checks[0].name == "sum of M^u is the identity"


@pytest.mark.parametrize("case", CASES)
def test_major_subsection_entries_odd(blocks, case):
    assert contribution(blocks[case]["x"]).all_odd()
    assert contribution(blocks[case]["x"]).trace() == 3


@pytest.mark.parametrize("case", CASES)
def test_assembled_determinant(blocks, frozen, case):
    g = assemble(blocks[case])
    assert g == load_paper_matrix(f"gendec_{case}")
    assert g.det() == frozen["cases"][case]["det_gendec"]


def test_broken_sign_breaks_orthogonality(blocks):
    b = blocks["II"]
    q = b["y"].q.tolist()
    j = next(j for j, v in enumerate(q[0]) if v)
    q[0][j] = -q[0][j]
    bad_y = SubsectionDatum("y", IntMatrix.from_rows(q), b["y"].cartan)
    broken = BlockDatum(tuple(bad_y if s.label == "y" else s for s in b.subsections))
    with pytest.raises(OrthogonalityViolation) as info:
        check_orthogonality(broken)
    assert "y" in info.value.pair


def test_broken_entry_breaks_congruence(blocks):
    b = blocks["I"]
    q = b["y"].q.tolist()
    q[0] = [-v for v in q[0]]
    bad = SubsectionDatum("y", IntMatrix.from_rows(q), b["y"].cartan)
    rep = check_star_congruences(BlockDatum(tuple(bad if s.label == "y" else s for s in b.subsections)))
    assert not rep.ok
    assert rep.first_failure() is rep.checks[0]
    assert "fails at entry (1," in rep.first_failure().describe()


def test_scale_too_small():
    sub = SubsectionDatum.from_q("u", IntMatrix.from_rows([[1], [1], [1]]))
    with pytest.raises(NotIntegral):
        contribution(sub, scale=2)
    assert contribution(sub, scale=3).scaled == IntMatrix.from_rows([[1] * 3] * 3)


def test_shape_errors():
    with pytest.raises(DimensionMismatch):
        SubsectionDatum("u", IntMatrix.from_rows([[1, 0]]), IntMatrix.identity(1))
    with pytest.raises(DimensionMismatch):
        BlockDatum((SubsectionDatum.from_q("a", IntMatrix.from_rows([[1]])),
                    SubsectionDatum.from_q("b", IntMatrix.from_rows([[1], [1]]))))


def test_block_roundtrip_and_split(blocks):
    for case in CASES:
        b = blocks[case]
        assert parse_block(format_block(b)) == b
        g = assemble(b)
        again = block_from_matrix(g, b.labels, [s.l for s in b.subsections])
        assert assemble(again) == g


def test_character_permutation_is_recovered(blocks):
    b = blocks["III"]
    perm = [3, 1, 7, 0, 2, 6, 5, 4]
    shuffled = b.permute_characters(perm)
    m1 = contribution(b["x"]).scaled
    m2 = contribution(shuffled["x"]).scaled
    found = find_simultaneous_permutation(m1, m2)
    assert found is not None
    assert all(m1[found[i], found[j]] == m2[i, j] for i in range(8) for j in range(8))


def _unimodular(draw, n):
    m = IntMatrix.identity(n).tolist()
    for _ in range(draw(st.integers(0, 12))):
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        kind = draw(st.sampled_from(["add", "swap", "neg"]))
        if kind == "add" and i != j:
            c = draw(st.integers(-3, 3))
            for r in m:
                r[i] += c * r[j]
        elif kind == "swap":
            for r in m:
                r[i], r[j] = r[j], r[i]
        elif kind == "neg":
            for r in m:
                r[i] = -r[i]
    return IntMatrix.from_rows(m)


@settings(max_examples=100)
@given(st.data(), st.sampled_from(CASES), st.sampled_from(["x", "y", "xy"]))
def test_basic_set_change_leaves_contribution(blocks, data, case, label):
    sub = blocks[case][label]
    s = _unimodular(data.draw, sub.l)
    assert abs(s.det()) == 1
    moved = SubsectionDatum(label, sub.q @ s, s.T @ sub.cartan @ s)
    assert contribution(moved) == contribution(sub)
