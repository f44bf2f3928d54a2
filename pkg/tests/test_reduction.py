"""Tests for conditions A and B', the moves, and the reduction fixpoint."""

from pathlib import Path

import pytest

from tsr.complexes import (Incidence, OrbitCell, OrbitComplex,
                           classify_component, parse_complex,
                           serialize_complex, torsion_subcomplex)
from tsr.groups import catalog_group, mod_ell_homology_bruteforce
from tsr.reduction import (MergeCandidate, Move, ReductionLog,
                           check_condition_A, check_condition_B_prime, cut,
                           find_terminal_cells, merge, reduce_complex, replay,
                           scripted_merge)

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "tsr" / "fixtures"


def load(name: str) -> OrbitComplex:
    return parse_complex(FIXTURES.joinpath(name).read_text())


# --------------------------------------------------------------------------
# Condition A


def test_condition_a_path_vertex():
    assert check_condition_A(load("path_c2_d3_c2.json"), "v2", "e1", "e2")


def test_condition_a_fails_on_unlike_stabilizers():
    # at Q the edges carry D2 and C2, which are not isomorphic
    assert not check_condition_A(load("sl3z_intermediate.json"),
                                 "Q", "f1_OQ", "f2_QM")


def test_condition_a_fails_with_three_cofaces():
    assert not check_condition_A(load("graphfive.json"), "u", "a", "b")


def test_condition_a_dimension_error():
    with pytest.raises(ValueError):
        check_condition_A(load("path_c2_d3_c2.json"), "e1", "v1", "v2")


def test_condition_a_blocked_by_higher_cells():
    # inside the 2-dimensional complex, an edge-pair merge at a vertex is
    # blocked because triangles sit above it
    cx = load("sl3z_soule.json")
    assert not check_condition_A(cx, "Q", "e01_QN", "e08_MQ")


def test_condition_a_self_identified_blocks():
    cells = (OrbitCell("s", 0, "C2"), OrbitCell("t1", 1, "C2", True),
             OrbitCell("t2", 1, "C2"), OrbitCell("w", 0, "C2"),
             OrbitCell("x", 0, "C2"))
    incs = (Incidence("s", "t1"), Incidence("s", "t2"),
            Incidence("w", "t1"), Incidence("x", "t2"))
    assert not check_condition_A(OrbitComplex(cells, incs), "s", "t1", "t2")


# --------------------------------------------------------------------------
# Condition B'


@pytest.mark.parametrize("sigma,tau,ell,expect", [
    ("D3", "C2", 2, "B'(1)"),
    ("C2", "C2", 2, "B'(1)"),
    ("D4", "D4", 2, "B'(1)"),
    ("C3", "C3", 3, "B'(1)"),
    ("D6", "D2", 2, "B'(1)"),
    ("S4", "D3", 3, "B'(1)"),
    ("D3", "C3", 3, None),
    ("D2", "C2", 2, None),
    ("A4", "C2", 2, None),
    ("S4", "D2", 2, None),
    ("S4", "D4", 2, None),
    ("D4", "C2", 2, None),
])
def test_condition_b_prime_table(sigma, tau, ell, expect):
    assert check_condition_B_prime(sigma, tau, ell) == expect


def test_b_prime_soundness_dimension_check():
    # wherever some clause holds, the two stabilizers have equal mod-ell
    # homology dimensions (the assertable shadow of the cohomology iso)
    tags = ["C1", "C2", "C3", "C4", "C6", "D2", "D3", "D4", "D6", "A4"]
    for ell in (2, 3):
        for s in tags:
            for t in tags:
                if check_condition_B_prime(s, t, ell) is None:
                    continue
                q_max = 3
                ds = mod_ell_homology_bruteforce(catalog_group(s), ell, q_max)
                dt = mod_ell_homology_bruteforce(catalog_group(t), ell, q_max)
                assert ds == dt, (s, t, ell)


# --------------------------------------------------------------------------
# Moves


def test_merge_path():
    cx = load("path_c2_d3_c2.json")
    merged = merge(cx, MergeCandidate("v2", "e1", "e2"), 2)
    ids = sorted(c.id for c in merged.cells)
    assert ids == ["e1+", "v1", "v3"]
    ends = sorted(i.face for i in merged.faces("e1+"))
    assert ends == ["v1", "v3"]


def test_merge_two_edge_loop_gives_circle():
    cells = (OrbitCell("u", 0, "D3"), OrbitCell("v", 0, "D3"),
             OrbitCell("a", 1, "C2"), OrbitCell("b", 1, "C2"))
    incs = (Incidence("u", "a"), Incidence("v", "a"),
            Incidence("u", "b"), Incidence("v", "b"))
    cx = OrbitComplex(cells, incs)
    out = merge(cx, MergeCandidate("u", "a", "b"), 2)
    assert len(out.cells_of_dim(1)) == 1
    loop = out.cells_of_dim(1)[0]
    (inc,) = out.faces(loop.id)
    assert inc.multiplicity == 2
    assert classify_component(out, 2) == "Circle"


def test_merge_rejects_non_candidate():
    with pytest.raises(ValueError):
        merge(load("graphfive.json"), MergeCandidate("u", "a", "b"), 2)


def test_reduce_two_edge_loop_to_circle():
    cells = (OrbitCell("u", 0, "D3"), OrbitCell("v", 0, "D3"),
             OrbitCell("a", 1, "C2"), OrbitCell("b", 1, "C2"))
    incs = (Incidence("u", "a"), Incidence("v", "a"),
            Incidence("u", "b"), Incidence("v", "b"))
    reduced, log = reduce_complex(OrbitComplex(cells, incs), 2)
    assert [m.kind for m in log.moves] == ["merge"]
    assert classify_component(reduced, 2) == "Circle"


def test_find_terminal_cells():
    assert ("N", "f4_PN") in find_terminal_cells(load("sl3z_intermediate.json"))
    assert find_terminal_cells(load("bianchi_circle2.json")) == []
    bare = OrbitComplex((OrbitCell("v", 0, "C2"),), ())
    assert find_terminal_cells(bare) == []


def test_cut_sl3_terminal_branch():
    cx = load("sl3z_intermediate.json")
    out = cut(cx, "N", "f4_PN", 2)
    assert "N" not in {c.id for c in out.cells}
    assert "f4_PN" not in {c.id for c in out.cells}
    assert len(out.cells) == 7


def test_cut_c2_leaf_removable():
    cx = load("chain_c2_c2_d3.json")
    out = cut(cx, "v1", "e1", 2)
    assert len(out.cells) == 3


def test_cut_d2_leaf_not_removable():
    cx = load("path_c2_d3_c2.json")
    reduced, _ = reduce_complex(cx, 2)
    (sigma, tau) = find_terminal_cells(reduced)[0]
    with pytest.raises(ValueError, match="B'"):
        cut(reduced, sigma, tau, 2)


# --------------------------------------------------------------------------
# The reduction loop


def test_reduce_edge3_is_fixpoint():
    cx = load("bianchi_edge3.json")
    reduced, log = reduce_complex(cx, 3)
    assert log.moves == ()
    assert reduced == torsion_subcomplex(cx, 3)


def test_reduce_path_single_merge():
    reduced, log = reduce_complex(load("path_c2_d3_c2.json"), 2)
    assert [m.kind for m in log.moves] == ["merge"]
    edges = reduced.cells_of_dim(1)
    assert len(edges) == 1 and edges[0].stabilizer == "C2"
    assert len(reduced.cells_of_dim(0)) == 2


def test_reduce_sl3_intermediate_cuts_terminal_branch():
    reduced, log = reduce_complex(load("sl3z_intermediate.json"), 2)
    assert [m.kind for m in log.moves] == ["cut"]
    assert log.moves[0].sigma == "N"
    assert log.moves[0].condition == "B'(1)"
    stabs = sorted((c.dim, c.stabilizer) for c in reduced.cells)
    assert stabs == [(0, "D6"), (0, "S4"), (0, "S4"), (0, "S4"),
                     (1, "C2"), (1, "D2"), (1, "D4")]


def test_reduce_sl3_full_reaches_graph():
    reduced, log = reduce_complex(load("sl3z_soule.json"), 2)
    assert len([m for m in log.moves if m.kind == "cut"]) == len(log.moves)
    assert reduced.dimension == 1
    stabs = sorted((c.dim, c.stabilizer) for c in reduced.cells)
    assert stabs == [(0, "D6"), (0, "S4"), (0, "S4"), (0, "S4"),
                     (1, "C2"), (1, "D2"), (1, "D4")]


def test_reduce_deterministic():
    for name, ell in [("sl3z_soule.json", 2), ("path_c2_d3_c2.json", 2),
                      ("chain_c2_c2_d3.json", 2)]:
        cx = load(name)
        red1, log1 = reduce_complex(cx, ell)
        red2, log2 = reduce_complex(cx, ell)
        assert serialize_complex(red1) == serialize_complex(red2)
        assert log1 == log2


def test_reduce_termination_bound():
    for name, ell in [("sl3z_soule.json", 2), ("chain_c2_c2_d3.json", 2)]:
        cx = load(name)
        _, log = reduce_complex(cx, ell)
        assert len(log.moves) <= len(cx.cells)


def test_replay_reproduces_fixpoint():
    cx = load("sl3z_soule.json")
    reduced, log = reduce_complex(cx, 2)
    assert serialize_complex(replay(cx, log, 2)) == serialize_complex(reduced)


def test_log_jsonl_roundtrip():
    _, log = reduce_complex(load("sl3z_soule.json"), 2)
    assert ReductionLog.from_jsonl(log.to_jsonl()) == log


def test_euler_bookkeeping():
    # each move removes one (n-1)-cell and one n-cell net (a merge takes
    # two n-cells and adds one back)
    from tsr.reduction import apply_move
    for name, ell in [("sl3z_soule.json", 2), ("path_c2_d3_c2.json", 2)]:
        state = torsion_subcomplex(load(name), ell)
        _, log = reduce_complex(state, ell)
        for move in log.moves:
            sigma_dim = state.cell(move.sigma).dim
            before = [len(state.cells_of_dim(d)) for d in range(3)]
            state = apply_move(state, move, ell)
            after = [len(state.cells_of_dim(d)) for d in range(3)]
            assert before[sigma_dim] - after[sigma_dim] == 1, move
            assert before[sigma_dim + 1] - after[sigma_dim + 1] == 1, move


def test_reduce_requires_rigid():
    cx = OrbitComplex((OrbitCell("v", 0, "C2"),), (), rigid=False)
    with pytest.raises(ValueError, match="rigid"):
        reduce_complex(cx, 2)


def test_scripted_merge_reaches_final_chain():
    reduced, _ = reduce_complex(load("sl3z_intermediate.json"), 2)
    chain = scripted_merge(reduced, "Q", "f2_QM", "f1_OQ")
    stabs = sorted((c.dim, c.stabilizer) for c in chain.cells)
    assert stabs == [(0, "S4"), (0, "S4"), (0, "S4"), (1, "C2"), (1, "D4")]


def test_scripted_merge_validates_adjacency():
    with pytest.raises(ValueError):
        scripted_merge(load("graphfive.json"), "u", "a", "b")
