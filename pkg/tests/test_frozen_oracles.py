"""The frozen oracle file must agree with a fresh run of the cheap oracles."""

from __future__ import annotations

import freeze_oracles as fz
import oracles


def test_cartan_rows_and_divisors(frozen):
    cx = fz.read_matrix("cartan_x.mat")
    assert oracles.determinantal_divisors(cx) == frozen["cartan_x_eldivs"]
    assert [[list(r), str(q)] for r, q in oracles.admissible_rows(cx)] == frozen["cartan_x_rows"]


def test_center_lattices(frozen):
    for case in ("I", "II", "III"):
        qs = fz.read_block_q(f"case_{case}.block")
        g = [sum((qs[lab][r] for lab in ("1", "xy", "x", "y")), []) for r in range(8)]
        q = [list(col) for col in zip(*g)]
        assert oracles.center_lattice(q) == frozen["cases"][case]["center_hnf"]


def test_small_resolutions(frozen):
    dual = fz.monomial_sc([(0,), (1,)], lambda e: e[0] >= 2)
    assert oracles.resolution_ranks(dual, 0, 8) == frozen["resolution"]["dual_numbers"]


def test_oracle_self_consistency():
    m = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    assert oracles.determinantal_divisors(m) == [2, 6, 12]
    k = oracles.column_kernel([[1, 2, 3], [2, 4, 6]])
    assert len(k) == 2 and all(sum(a * b for a, b in zip([1, 2, 3], v)) == 0 for v in k)
    assert oracles.same_lattice([[2, 0], [0, 3]], [[2, 3], [0, 3]])
