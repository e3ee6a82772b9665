import pytest

from znfree.errors import BallExceeded, Infeasible
from znfree.lexvec import LexVec
from znfree.weights import (
    ConstraintSystem,
    WeightSystem,
    build_constraints,
    enumerate_wm_ball,
    lex_shortest_length,
    solve_weights,
    weighted_length,
    weights_for,
)
from znfree.words import Word

W = Word.from_text
E = Word.identity()


def test_build_constraints_empty(f2, t1):
    assert build_constraints(f2).equations == ()
    assert build_constraints(t1).equations == ()  # phi = id gives identical sides


def test_build_constraints_t2(t2):
    cs = build_constraints(t2)
    assert cs.variables == ("x", "y", "t")
    assert len(cs.equations) == 1
    left, right = cs.equations[0]
    assert dict(left) == {"x": 2, "y": 1}
    assert dict(right) == {"x": 1, "y": 2}
    assert cs.coefficient_rows() == [(1, -1, 0)]


def test_solve_empty_system():
    ws = solve_weights(ConstraintSystem(("x", "y"), ()))
    assert ws.weights == {"x": 1, "y": 1}


def test_solve_t2(t2):
    ws = solve_weights(build_constraints(t2))
    assert ws.weights == {"x": 1, "y": 1, "t": 1}


def test_solve_infeasible(t2_corrupt):
    # 2x + y = x + y forces x = 0, violating positivity
    with pytest.raises(Infeasible):
        solve_weights(build_constraints(t2_corrupt))


def test_solve_nontrivial_ray():
    # x = 2y has least positive solution (2, 1); stable letter unconstrained
    cs = ConstraintSystem(("x", "y"), (((("x", 1),), (("y", 2),)),))
    ws = solve_weights(cs)
    assert ws.weights == {"x": 2, "y": 1}


def test_gcd_normalized(t2):
    ws = weights_for(t2)
    from math import gcd

    assert gcd(*ws.weights.values()) == 1 or len(set(ws.weights.values())) == 1


def test_weighted_length(f2, t1):
    unit_f2 = weights_for(f2)
    assert weighted_length(E, unit_f2, f2, 4) == 0
    assert weighted_length(W("x x y"), unit_f2, f2, 4) == 3
    unit_t1 = weights_for(t1)
    assert weighted_length(W("t^-1 x y t"), unit_t1, t1, 4) == 2


def test_weighted_length_ball_exceeded(f2):
    with pytest.raises(BallExceeded):
        weighted_length(W("x") ** 9, weights_for(f2), f2, 4)


def test_ball_sizes_free_group(f2):
    # spheres of F2: 1, 4, 12, 36
    ball = enumerate_wm_ball(f2, 3)
    from collections import Counter

    sizes = Counter(ball.values())
    assert sizes[0] == 1 and sizes[1] == 4 and sizes[2] == 12 and sizes[3] == 36


def test_ball_identifications_t1(t1):
    # in T1, x y t == t x y collapses some radius-3 vertices of the free F3 ball
    ball = enumerate_wm_ball(t1, 3)
    from znfree.words import canonical_form, system_for

    sys_ = system_for(t1)
    assert sys_.to_i(canonical_form(W("x y t"), t1)) in ball
    free_count = 1 + 6 + 30 + 150
    assert len(ball) < free_count


def test_lex_shortest_length(f2, t1):
    assert lex_shortest_length(E, f2, 3) == LexVec((0, 0))
    assert lex_shortest_length(W("x y"), f2, 3) == LexVec((2, 0))
    assert lex_shortest_length(W("t"), t1, 3) == LexVec((0, 1))
    assert lex_shortest_length(W("t^-1 x y t"), t1, 4) == LexVec((2, 0))


def test_wm_equal_on_assoc_pairs(t2):
    # Dijkstra metric agrees on both sides of the associated pair
    ws = weights_for(t2)
    for k in (1, 2):
        u = W("x x y") ** k
        v = W("x y y") ** k
        assert weighted_length(u, ws, t2, 8) == weighted_length(v, ws, t2, 8)
