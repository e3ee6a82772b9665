"""Data model for a regular Z^n-free group presented as a tower of HNN-extensions.

A tower is a free base plus an ordered list of levels; level i adjoins a stable
letter conjugating an abelian associated subgroup C_i (generated by the
``gen_word`` entries) onto its image (the ``image_word`` entries).  Generator
lengths are vectors in Z^n; the rank n is fixed tower-wide.

The JSON schema (see ``parse_tower``) is the authoritative external format.
Mathematical side conditions are checked by ``validate_tower``; parsing only
enforces schema validity, so corrupted fixtures can be loaded and then
rejected with a typed error.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import (
    DuplicateGenerator,
    HeightOrderViolation,
    IndexOutOfRange,
    LengthMismatch,
    SchemaError,
    StableHeightViolation,
    UnknownGenerator,
)
from .lexvec import LexVec, height
from .words import Word

_NAME_BAD = set(" \t\n^")


@dataclass(frozen=True)
class GeneratorId:
    """A generator name; ``stable_level`` is None for base letters."""

    name: str
    stable_level: int | None = None

    @property
    def is_base(self) -> bool:
        return self.stable_level is None


@dataclass(frozen=True)
class AssocPair:
    """One basis generator of C_i paired with its image under phi_i."""

    gen_word: Word
    image_word: Word


@dataclass(frozen=True)
class Level:
    stable: GeneratorId
    assoc: tuple[AssocPair, ...]
    is_centralizer_extension: bool = False


@dataclass(frozen=True, eq=True)
class TowerPresentation:
    rank_n: int
    base_generators: tuple[GeneratorId, ...]
    levels: tuple[Level, ...]
    lengths: dict[str, LexVec] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "base_generators", tuple(self.base_generators))
        object.__setattr__(self, "levels", tuple(self.levels))
        object.__setattr__(self, "lengths", dict(self.lengths))

    def generator_names(self) -> list[str]:
        """All generator names in file order: base letters, then stable letters."""
        return [g.name for g in self.base_generators] + [lv.stable.name for lv in self.levels]

    def length_of(self, name: str) -> LexVec:
        return self.lengths[name]

    def with_rank(self, n: int) -> "TowerPresentation":
        """Embed into rank n by zero-padding every length vector at the top."""
        return TowerPresentation(
            rank_n=n,
            base_generators=self.base_generators,
            levels=self.levels,
            lengths={k: v.pad_to(n) for k, v in self.lengths.items()},
        )


def _check_name(name, where):
    if not isinstance(name, str) or not name or set(name) & _NAME_BAD:
        raise SchemaError(f"{where}: invalid generator name {name!r}")


def _parse_word(text, known, available, where) -> Word:
    if not isinstance(text, str):
        raise SchemaError(f"{where}: expected a word string")
    w = Word.from_text(text)
    for name, _ in w:
        if name not in known:
            raise UnknownGenerator(f"{where}: unknown generator {name!r}")
        if name not in available:
            raise UnknownGenerator(f"{where}: generator {name!r} not available at this level")
    return w


def parse_tower(data: bytes | str) -> TowerPresentation:
    """Parse the JSON tower schema; raises SchemaError / DuplicateGenerator /
    UnknownGenerator with the offending location."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise SchemaError("top level: expected an object")

    rank = doc.get("rank_n")
    if not isinstance(rank, int) or rank < 1:
        raise SchemaError("rank_n: expected a positive integer")

    base_names = doc.get("base_generators")
    if not isinstance(base_names, list) or not base_names:
        raise SchemaError("base_generators: expected a nonempty list")
    seen: set[str] = set()
    base = []
    for i, name in enumerate(base_names):
        _check_name(name, f"base_generators[{i}]")
        if name in seen:
            raise DuplicateGenerator(f"base_generators[{i}]: duplicate {name!r}")
        seen.add(name)
        base.append(GeneratorId(name))

    levels = []
    available = set(seen)
    for i, lv in enumerate(doc.get("levels", [])):
        where = f"levels[{i}]"
        if not isinstance(lv, dict):
            raise SchemaError(f"{where}: expected an object")
        sname = lv.get("stable")
        _check_name(sname, f"{where}.stable")
        if sname in seen:
            raise DuplicateGenerator(f"{where}.stable: duplicate {sname!r}")
        assoc_doc = lv.get("assoc")
        if not isinstance(assoc_doc, list) or not assoc_doc:
            raise SchemaError(f"{where}.assoc: expected a nonempty list")
        is_ce = lv.get("is_centralizer_extension", False)
        if not isinstance(is_ce, bool):
            raise SchemaError(f"{where}.is_centralizer_extension: expected a bool")
        assoc = []
        for j, pair in enumerate(assoc_doc):
            pw = f"{where}.assoc[{j}]"
            if not isinstance(pair, dict):
                raise SchemaError(f"{pw}: expected an object")
            gw = _parse_word(pair.get("gen_word"), seen | {sname}, available, f"{pw}.gen_word")
            iw = _parse_word(pair.get("image_word"), seen | {sname}, available, f"{pw}.image_word")
            if not gw or not iw:
                raise SchemaError(f"{pw}: words must be nonempty")
            if is_ce and gw != iw:
                raise SchemaError(f"{pw}: centralizer extension requires gen_word == image_word")
            assoc.append(AssocPair(gw, iw))
        seen.add(sname)
        available.add(sname)
        levels.append(Level(GeneratorId(sname, i + 1), tuple(assoc), is_ce))

    lengths_doc = doc.get("lengths", {})
    if not isinstance(lengths_doc, dict):
        raise SchemaError("lengths: expected an object")
    lengths: dict[str, LexVec] = {}
    for name, coords in lengths_doc.items():
        if name not in seen:
            raise UnknownGenerator(f"lengths: unknown generator {name!r}")
        if not isinstance(coords, list) or len(coords) != rank or not all(isinstance(c, int) for c in coords):
            raise SchemaError(f"lengths[{name}]: expected a list of {rank} integers")
        lengths[name] = LexVec(coords)

    t = TowerPresentation(rank, tuple(base), tuple(levels), lengths)
    _fill_default_lengths(t)
    return t


def _fill_default_lengths(t: TowerPresentation) -> None:
    """Base letters default to the unit at height 1; each stable letter to the
    unit just above the heights of its associated generators."""
    for g in t.base_generators:
        if g.name not in t.lengths:
            t.lengths[g.name] = LexVec.unit(t.rank_n, 1)
    for lv in t.levels:
        if lv.stable.name in t.lengths:
            continue
        h = 0
        for pair in lv.assoc:
            for name, _ in pair.gen_word:
                h = max(h, height(t.lengths[name]))
        if h + 1 > t.rank_n:
            raise SchemaError(
                f"lengths: default height {h + 1} for {lv.stable.name!r} exceeds rank {t.rank_n}"
            )
        t.lengths[lv.stable.name] = LexVec.unit(t.rank_n, h + 1)


def serialize_tower(t: TowerPresentation) -> bytes:
    doc = {
        "rank_n": t.rank_n,
        "base_generators": [g.name for g in t.base_generators],
        "levels": [
            {
                "stable": lv.stable.name,
                "assoc": [
                    {"gen_word": p.gen_word.to_text(), "image_word": p.image_word.to_text()}
                    for p in lv.assoc
                ],
                "is_centralizer_extension": lv.is_centralizer_extension,
            }
            for lv in t.levels
        ],
        "lengths": {name: t.lengths[name].to_json() for name in t.generator_names()},
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def level_prefix(t: TowerPresentation, i: int) -> TowerPresentation:
    """The tower for G_(i+1): the base plus the first i levels."""
    if not 0 <= i <= len(t.levels):
        raise IndexOutOfRange(f"prefix index {i} outside 0..{len(t.levels)}")
    keep = {g.name for g in t.base_generators}
    keep.update(lv.stable.name for lv in t.levels[:i])
    return TowerPresentation(
        rank_n=t.rank_n,
        base_generators=t.base_generators,
        levels=t.levels[:i],
        lengths={k: v for k, v in t.lengths.items() if k in keep},
    )


@dataclass
class ValidationReport:
    radius: int
    entries: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e["status"] in ("pass", "verified_within_radius", "skipped") for e in self.entries)

    def add(self, level, condition, status, detail=""):
        self.entries.append(
            {"level": level, "condition": condition, "status": status, "detail": detail}
        )

    def to_json(self):
        return {"radius": self.radius, "ok": self.ok, "entries": self.entries, "notes": self.notes}


def _exponent_boxes(m, budget):
    """Nonzero exponent vectors (e_1..e_m) with sum |e_j| <= budget."""
    from itertools import product

    for combo in product(range(-budget, budget + 1), repeat=m):
        if any(combo) and sum(abs(e) for e in combo) <= budget:
            yield combo


def _assoc_power(pairs, exps, side):
    w = Word.identity()
    for pair, e in zip(pairs, exps):
        base = pair.gen_word if side == "domain" else pair.image_word
        w = w * (base ** e)
    return w


def validate_tower(t: TowerPresentation, search_radius: int = 4) -> ValidationReport:
    """Check the structure-theorem side conditions.

    Exact conditions raise typed errors (LengthMismatch, HeightOrderViolation,
    StableHeightViolation); letter-additivity and syntactic form violations
    become report entries; the non-conjugacy conditions are verified by
    exhaustive conjugator search in the bounded weighted ball of the level's
    base group and reported with the radius used.
    """
    from .length import engine_for
    from .weights import enumerate_wm_ball
    from .words import abelian_membership, equal, system_for

    report = ValidationReport(radius=search_radius)
    engine = engine_for(t)

    for name in t.generator_names():
        vec = t.lengths[name]
        if not LexVec.zero(t.rank_n) < vec:
            raise SchemaError(f"lengths[{name}]: generator length must be positive")
    for g in t.base_generators:
        if height(t.lengths[g.name]) != 1:
            raise SchemaError(f"lengths[{g.name}]: base generators must have height 1")

    base_names = {g.name for g in t.base_generators}
    earlier_stables: set[str] = set()
    seen_heights: dict[int, list[str]] = {}
    for li, lv in enumerate(t.levels, start=1):
        s_h = height(t.lengths[lv.stable.name])
        seen_heights.setdefault(s_h, []).append(lv.stable.name)
        prev_h = 0
        for j, pair in enumerate(lv.assoc, start=1):
            lg = engine.length(pair.gen_word)
            li_img = engine.length(pair.image_word)
            # condition (1): the isomorphism preserves lengths
            if lg != li_img:
                raise LengthMismatch(li, j, f"l(c)={lg.coords} l(phi(c))={li_img.coords}")
            report.add(li, "1-length-preserving", "pass", f"l={lg.coords}")
            # condition (3): strictly increasing heights, equal across phi
            hg, hi = height(lg), height(li_img)
            if hg != hi or hg <= prev_h:
                raise HeightOrderViolation(
                    f"level {li} pair {j}: heights {prev_h} -> {hg}/{hi}"
                )
            prev_h = hg
            if hg >= s_h:
                raise StableHeightViolation(
                    f"level {li}: ht({lv.stable.name})={s_h} <= assoc height {hg}"
                )
            # condition (4): first generator is a base word, later ones are
            # single earlier stable letters
            if j == 1:
                ok4 = all(n in base_names for n, _ in pair.gen_word)
                detail = "base word"
            else:
                ok4 = (
                    len(pair.gen_word) == 1
                    and pair.gen_word.letters[0][0] in earlier_stables
                    and pair.gen_word.letters[0][1] == 1
                )
                detail = "single earlier stable letter"
            report.add(li, "4-generator-form", "pass" if ok4 else "violated", detail)
            # condition (6): letter-sum additivity of the generator lengths
            for tag, w in (("gen", pair.gen_word), ("image", pair.image_word)):
                letter_sum = LexVec.zero(t.rank_n)
                for n, _ in w:
                    letter_sum = letter_sum + t.lengths[n]
                ok6 = engine.length(w) == letter_sum
                report.add(
                    li,
                    "6-letter-additivity",
                    "pass" if ok6 else "violated",
                    f"{tag} {w.to_text()!r}",
                )
        report.add(li, "3-height-order", "pass")
        report.add(li, "stable-height", "pass", f"ht({lv.stable.name})={s_h}")
        earlier_stables.add(lv.stable.name)

    # conditions (2) and (5): bounded conjugacy sweeps in the base groups
    for li, lv in enumerate(t.levels, start=1):
        prefix = level_prefix(t, li - 1)
        prefix_sys = system_for(prefix)
        ball_words = [prefix_sys.to_word(z) for z in sorted(enumerate_wm_ball(prefix, search_radius))]
        budget = max(2, search_radius // max(1, min(len(p.gen_word) for p in lv.assoc)))
        witness = None
        for exps in _exponent_boxes(len(lv.assoc), budget):
            w = _assoc_power(lv.assoc, exps, "domain")
            target = ~_assoc_power(lv.assoc, exps, "image")
            for z in ball_words:
                if equal(~z * w * z, target, t):
                    witness = (exps, z)
                    break
            if witness:
                break
        report.add(
            li,
            "2-not-conjugate-to-inverse",
            "violated" if witness else "verified_within_radius",
            f"w exponents {witness[0]}, conjugator {witness[1].to_text()!r}"
            if witness
            else f"radius {search_radius}, exponent budget {budget}",
        )

        # condition (5) within the level: domain vs image subgroup
        identical = all(p.gen_word == p.image_word for p in lv.assoc)
        if identical or lv.is_centralizer_extension:
            report.add(li, "5-subgroups-distinct", "skipped", "A = B")
        else:
            carrier = None
            for z in ball_words:
                if all(
                    abelian_membership(~z * p.gen_word * z, t, li, side="image") is not None
                    for p in lv.assoc
                ) and all(
                    abelian_membership(z * p.image_word * ~z, t, li, side="domain") is not None
                    for p in lv.assoc
                ):
                    carrier = z
                    break
            report.add(
                li,
                "5-subgroups-distinct",
                "violated" if carrier else "verified_within_radius",
                f"conjugator {carrier.to_text()!r}" if carrier else f"radius {search_radius}",
            )

    for h, names in sorted(seen_heights.items()):
        if len(names) > 1:
            report.notes.append(
                f"levels {names} share stable-letter height {h}; ordered as in the file"
            )
    return report
