import pytest

from znfree.errors import HalfError, IdentityInput
from znfree.length import (
    additive_junction,
    check_axioms,
    common_beginning,
    engine_for,
    gromov_product,
    length,
    length_reduce,
    translation_length,
)
from znfree.lexvec import LexVec
from znfree.words import Word, britton_reduce

W = Word.from_text
E = Word.identity()


def test_length_identity(f2, t1):
    assert length(E, f2) == LexVec((0, 0))
    assert length(E, t1) == LexVec((0, 0))


def test_length_free(f2):
    assert length(W("x x y"), f2) == LexVec((3, 0))
    assert length(W("x y^-1 y x"), f2) == LexVec((2, 0))


def test_length_pinch(t1):
    assert length(W("t^-1 x y t"), t1) == LexVec((2, 0))


def test_length_stable(t1, t3):
    assert length(W("t"), t1) == LexVec((0, 1))
    assert length(W("s"), t3) == LexVec((0, 0, 1))
    assert length(W("x t"), t1) == LexVec((1, 1))


def test_length_absorption(t1):
    # (xy)^-1 t (xy) = t since t centralizes xy
    assert length(W("y^-1 x^-1 t x y"), t1) == LexVec((0, 1))
    assert length(W("y^-1 x^-1 t x y x y"), t1) == LexVec((2, 1))


def test_length_signed_backtrack(t1):
    # the geodesic to y t^-1 backtracks one base unit along the axis of xy
    assert length(W("y t^-1"), t1) == LexVec((-1, 1))
    assert length(W("x^-1 t"), t1) == LexVec((-1, 1))
    assert length(W("t y^-1"), t1) == LexVec((-1, 1))
    # coherent neighbours stay additive
    assert length(W("x t"), t1) == LexVec((1, 1))
    assert length(W("y^-1 t^-1"), t1) == LexVec((1, 1))


def test_length_t2(t2):
    # x^2 y t = t x y^2: both spellings carry three base letters
    assert length(W("x x y t"), t2) == LexVec((3, 1))
    assert length(W("t x y y"), t2) == LexVec((3, 1))
    # conjugating t by the domain generator fixes the base point's axis
    assert length(W("y^-1 x^-1 x^-1 t x x y"), t2) == LexVec((0, 1))
    # t x0 projects onto the x-axis at x^2, so t^-1 x t displaces by
    # l_T(x) + 2 d(t x0, A_x) = (1,0) + 2((0,1) - (2,0))
    assert length(W("t^-1 x t"), t2) == LexVec((-3, 2))
    assert length(W("t y^-1"), t2) == LexVec((-1, 1))


def test_length_t3_nested(t3):
    assert length(W("s t"), t3) == LexVec((0, 1, 1))
    assert length(W("s t^-1"), t3) == LexVec((0, -1, 1))
    assert length(W("s^-1 x t s"), t3) == LexVec((-1, 1, 2))
    assert length(W("x y t s"), t3) == LexVec((2, 1, 1))


def test_length_symmetry_random(t1, t2, t3):
    import random

    rng = random.Random(5)
    for t, gens in ((t1, "xyt"), (t2, "xyt"), (t3, "xyts")):
        eng = engine_for(t)
        for _ in range(200):
            w = [rng.choice([1, -1]) * (eng.sys.index[g]) for g in
                 (rng.choice(gens) for _ in range(rng.randint(0, 7)))]
            iw = tuple(w)
            from znfree.words import inv_i

            assert eng.length_i(iw) == eng.length_i(inv_i(iw)), eng.sys.to_word(iw)


def test_length_reduce_examples(t1, f2):
    assert length_reduce(britton_reduce(W("x y"), f2), f2) == W("x y")
    out = length_reduce(britton_reduce(W("y^-1 x^-1 t x y"), t1), t1)
    assert out == W("t")
    out = length_reduce(britton_reduce(W("t^-1 x t x^-1"), t1), t1)
    assert len(out) == 4


def test_gromov_product(f2):
    g = W("x y")
    assert gromov_product(g, g, f2) == length(g, f2)
    assert gromov_product(W("x y"), W("x x"), f2) == LexVec((1, 0))
    assert gromov_product(W("x"), W("y"), f2) == LexVec((0, 0))


def test_gromov_on_axis(t1):
    # x lies on the segment from the base point to t's endpoint
    assert gromov_product(W("x"), W("t"), t1) == LexVec((1, 0))
    assert gromov_product(W("y^-1"), W("t^-1"), t1) == LexVec((1, 0))


def test_gromov_half_error(t2_corrupt):
    # the corrupted tower produces a genuine odd Gromov product
    with pytest.raises(HalfError):
        gromov_product(W("x x y t"), W("t"), t2_corrupt)


def test_common_beginning(f2, t1):
    g = W("x y")
    assert common_beginning(g, g, f2) == g
    assert common_beginning(W("x y"), W("x x"), f2) == W("x")
    assert common_beginning(W("x"), W("y"), f2) == E
    u = common_beginning(W("t"), W("x y t"), t1)
    assert length(u, t1) == gromov_product(W("t"), W("x y t"), t1)
    # branch point interior to the jump: com(t, x) = x
    assert common_beginning(W("t"), W("x"), t1) == W("x")


def test_additive_junction(f2, t1):
    assert additive_junction(W("x"), W("y"), f2)
    assert not additive_junction(W("x"), W("x^-1 y"), f2)
    assert additive_junction(W("x y"), W("t"), t1)
    assert not additive_junction(W("y"), W("t^-1"), t1)


def test_additive_junction_identity_raises(f2):
    with pytest.raises(IdentityInput):
        additive_junction(E, W("x"), f2)


def test_translation_length(f2, t1):
    assert translation_length(W("x y x^-1"), f2) == LexVec((1, 0))
    assert translation_length(W("x y"), f2) == LexVec((2, 0))
    assert translation_length(W("x y t y^-1 x^-1"), t1) == LexVec((0, 1))
    with pytest.raises(IdentityInput):
        translation_length(W("t t^-1"), t1)


def test_translation_length_conjugacy_invariance(t1):
    g = W("x t")
    base = translation_length(g, t1)
    for conj in (W("x"), W("y x"), W("t"), W("x y")):
        assert translation_length(conj * g * ~conj, t1) == base


def test_word_metric_matches_oracle_small(t1, t2):
    from znfree.weights import lex_ball

    for t in (t1, t2):
        engine = engine_for(t)
        ball = lex_ball(t, 3)
        for iw, dist in ball.items():
            assert engine.word_metric_length_i(iw) == dist


def test_check_axioms_f2(f2):
    report = check_axioms(f2, 3)
    assert report.ok
    assert report.axioms["L1"].checked > 0
    assert report.axioms["L3"].checked > 0
    assert report.axioms["L6"].violations == 0


def test_check_axioms_t1(t1):
    report = check_axioms(t1, 4)
    assert report.ok, {k: v.to_json() for k, v in report.axioms.items() if v.violations}


def test_check_axioms_t2(t2):
    report = check_axioms(t2, 4)
    assert report.ok, {k: v.to_json() for k, v in report.axioms.items() if v.violations}


def test_check_axioms_corrupted(t2_corrupt):
    # the corrupted relation breaks well-definedness: the same element gets
    # different lengths through slide-equivalent spellings
    report = check_axioms(t2_corrupt, 4)
    assert not report.ok
    assert report.axioms["welldef"].violations > 0
    assert any("unit weights" in n for n in report.notes)


def test_report_json_shape(f2):
    doc = check_axioms(f2, 2).to_json()
    assert set(doc["axioms"]) == {"welldef", "L1", "L2", "L3", "L4", "L5", "L6"}
    assert doc["radius"] == 2
