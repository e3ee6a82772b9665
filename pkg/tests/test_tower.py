import json

import pytest

from znfree.errors import IndexOutOfRange, SchemaError, UnknownGenerator
from znfree.lexvec import LexVec
from znfree.tower import level_prefix, parse_tower, serialize_tower
from znfree.words import Word

from conftest import FIXTURES, load


def test_parse_f2(f2):
    assert f2.rank_n == 2
    assert [g.name for g in f2.base_generators] == ["x", "y"]
    assert f2.levels == ()
    assert f2.lengths["x"] == LexVec((1, 0))


def test_parse_t1(t1):
    assert len(t1.levels) == 1
    lv = t1.levels[0]
    assert lv.stable.name == "t"
    assert lv.stable.stable_level == 1
    assert lv.is_centralizer_extension
    assert lv.assoc[0].gen_word == Word.from_text("x y")
    assert lv.assoc[0].image_word == Word.from_text("x y")


def test_unknown_generator_in_level():
    with pytest.raises(UnknownGenerator):
        load("unknown_gen.json")


def test_roundtrip(t1, t2, t3, f2):
    for t in (f2, t1, t2, t3):
        assert parse_tower(serialize_tower(t)) == t


def test_serialize_deterministic(t3):
    assert serialize_tower(t3) == serialize_tower(parse_tower(serialize_tower(t3)))


def test_default_lengths():
    doc = {
        "rank_n": 3,
        "base_generators": ["x", "y"],
        "levels": [
            {"stable": "t", "assoc": [{"gen_word": "x y", "image_word": "x y"}],
             "is_centralizer_extension": True},
            {"stable": "s",
             "assoc": [{"gen_word": "x y", "image_word": "x y"},
                       {"gen_word": "t", "image_word": "t"}],
             "is_centralizer_extension": True},
        ],
    }
    t = parse_tower(json.dumps(doc))
    assert t.lengths["x"] == LexVec((1, 0, 0))
    assert t.lengths["t"] == LexVec((0, 1, 0))
    assert t.lengths["s"] == LexVec((0, 0, 1))


def test_default_length_overflows_rank():
    doc = {
        "rank_n": 1,
        "base_generators": ["x", "y"],
        "levels": [
            {"stable": "t", "assoc": [{"gen_word": "x y", "image_word": "x y"}],
             "is_centralizer_extension": True},
        ],
    }
    with pytest.raises(SchemaError):
        parse_tower(json.dumps(doc))


def test_level_prefix(t3, t1, f2):
    p0 = level_prefix(t3, 0)
    assert p0.levels == ()
    assert p0.generator_names() == ["x", "y"]
    assert p0 == f2.with_rank(3)
    p1 = level_prefix(t3, 1)
    assert p1 == t1.with_rank(3)
    assert level_prefix(t3, 2) == t3
    with pytest.raises(IndexOutOfRange):
        level_prefix(t3, 3)


def test_centralizer_flag_requires_equal_words():
    doc = {
        "rank_n": 2,
        "base_generators": ["x", "y"],
        "levels": [
            {"stable": "t", "assoc": [{"gen_word": "x x y", "image_word": "x y y"}],
             "is_centralizer_extension": True},
        ],
    }
    with pytest.raises(SchemaError):
        parse_tower(json.dumps(doc))


def test_bad_json():
    with pytest.raises(SchemaError):
        parse_tower(b"{nope")


def test_word_text_roundtrip():
    w = Word.from_text("t^-1 x y t")
    assert w.to_text() == "t^-1 x y t"
    assert (~w).to_text() == "t^-1 y^-1 x^-1 t"
    assert (w * ~w).to_text() != ""  # plain concatenation does not reduce


def test_validate_fixtures(f2, t1, t2, t3):
    from znfree.tower import validate_tower

    for t in (f2, t1, t2, t3):
        report = validate_tower(t, 3)
        assert report.ok
        assert report.to_json()["ok"]


def test_validate_t2_conditions(t2):
    from znfree.tower import validate_tower

    report = validate_tower(t2, 4)
    by = {(e["level"], e["condition"]): e for e in report.entries}
    assert by[(1, "1-length-preserving")]["status"] == "pass"
    assert by[(1, "2-not-conjugate-to-inverse")]["status"] == "verified_within_radius"
    assert by[(1, "5-subgroups-distinct")]["status"] == "verified_within_radius"
    assert by[(1, "6-letter-additivity")]["status"] == "pass"


def test_validate_corrupted_raises(t2_corrupt):
    from znfree.errors import LengthMismatch
    from znfree.tower import validate_tower

    with pytest.raises(LengthMismatch) as err:
        validate_tower(t2_corrupt, 3)
    assert err.value.level == 1 and err.value.pair_index == 1


def test_validate_height_order():
    from znfree.errors import StableHeightViolation
    from znfree.tower import validate_tower

    doc = {
        "rank_n": 2,
        "base_generators": ["x", "y"],
        "levels": [
            {"stable": "t", "assoc": [{"gen_word": "x y", "image_word": "x y"}],
             "is_centralizer_extension": True},
        ],
        "lengths": {"x": [1, 0], "y": [1, 0], "t": [5, 0]},
    }
    with pytest.raises(StableHeightViolation):
        validate_tower(parse_tower(json.dumps(doc)), 2)


def test_validate_deterministic(t1):
    from znfree.tower import validate_tower

    a = validate_tower(t1, 3).to_json()
    b = validate_tower(t1, 3).to_json()
    assert a == b
