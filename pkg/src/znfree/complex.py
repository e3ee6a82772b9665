"""The torus-gluing space blueprint.

A tower with a weight system determines a combinatorial-metric space: a rose
of circles (one per generator, circumference = its weight) and, per level, a
torus glued along two families of attaching paths spelled by the associated
words.  Curvature itself is not computed; the artifact verifies the stated
preconditions, exact length matching of the attach paths and bounded orbit
distinctness, and extracts the fundamental group, which must reproduce the
tower presentation relator for relator.

Realized circle lengths are the integer Key-Lemma weights (the paper-level
rescaling by Z^n-lengths has no real-metric meaning without them).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .errors import SchemaError, UnknownFormat, WeightMismatch
from .weights import WeightSystem, enumerate_wm_ball, weighted_length
from .words import Word, system_for

if TYPE_CHECKING:  # pragma: no cover
    from .tower import TowerPresentation


@dataclass(frozen=True)
class Circle:
    id: str
    length: int


@dataclass(frozen=True)
class TorusGluing:
    level: int
    stable: str
    circles: tuple[Circle, ...]
    attach_alpha: tuple[Word, ...]
    attach_beta: tuple[Word, ...]


@dataclass(frozen=True)
class SpaceBlueprint:
    rose: tuple[Circle, ...]
    gluings: tuple[TorusGluing, ...]


@dataclass
class GluingReport:
    radius: int
    entries: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e["status"] != "violated" for e in self.entries)

    def to_json(self):
        return {"radius": self.radius, "entries": self.entries}


def _path_weight(w: Word, ws: WeightSystem) -> int:
    return sum(ws[name] for name, _ in w)


def build_blueprint(t: "TowerPresentation", ws: WeightSystem) -> SpaceBlueprint:
    """One rose circle per generator and one torus gluing per level; circle
    lengths are the wm-values of the associated generator words, which must
    match both attach paths' weights exactly."""
    rose = tuple(Circle(name, ws[name]) for name in t.generator_names())
    gluings = []
    for li, lv in enumerate(t.levels, start=1):
        circles, alphas, betas = [], [], []
        for j, pair in enumerate(lv.assoc, start=1):
            alpha, beta = pair.gen_word, pair.image_word
            wa = _path_weight(alpha, ws)
            wb = _path_weight(beta, ws)
            # reach is guaranteed: the word itself is a path of weight wa
            wm = weighted_length(alpha, ws, t, wa)
            if not wa == wm == wb:
                raise WeightMismatch(li, j, f"alpha weight {wa}, wm {wm}, beta weight {wb}")
            circles.append(Circle(f"T{li}.c{j}", wm))
            alphas.append(alpha)
            betas.append(beta)
        gluings.append(
            TorusGluing(li, lv.stable.name, tuple(circles), tuple(alphas), tuple(betas))
        )
    return SpaceBlueprint(rose, tuple(gluings))


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]


def fundamental_group(b: SpaceBlueprint) -> Presentation:
    """Seifert-van-Kampen reading: one generator per rose circle and the
    relator stable^-1 alpha_j stable beta_j^-1 per gluing circle."""
    from .words import free_reduce

    relators = []
    for g in b.gluings:
        s = Word(((g.stable, -1),))
        s_inv = Word(((g.stable, 1),))
        for alpha, beta in zip(g.attach_alpha, g.attach_beta):
            relators.append(free_reduce(s * alpha * s_inv * ~beta))
    return Presentation(tuple(c.id for c in b.rose), tuple(relators))


def tower_relators(t: "TowerPresentation") -> Presentation:
    """The tower's own defining presentation, normalized the same way."""
    from .words import free_reduce

    relators = []
    for lv in t.levels:
        s = Word(((lv.stable.name, -1),))
        s_inv = Word(((lv.stable.name, 1),))
        for pair in lv.assoc:
            relators.append(free_reduce(s * pair.gen_word * s_inv * ~pair.image_word))
    return Presentation(tuple(t.generator_names()), tuple(relators))


def verify_gluing(b: SpaceBlueprint, t: "TowerPresentation", radius: int) -> GluingReport:
    """Exact length-match per circle plus a bounded orbit-distinctness sweep:
    no ball conjugator may carry a level's domain subgroup onto its image
    when the two are declared distinct."""
    from .words import abelian_membership

    sys_ = system_for(t)
    report = GluingReport(radius=radius)
    ws = WeightSystem({c.id: c.length for c in b.rose})
    for g in b.gluings:
        for j, (circle, alpha, beta) in enumerate(
            zip(g.circles, g.attach_alpha, g.attach_beta), start=1
        ):
            wa = _path_weight(alpha, ws)
            wb = _path_weight(beta, ws)
            ok = wa == circle.length == wb
            report.entries.append(
                {
                    "level": g.level,
                    "circle": circle.id,
                    "check": "length-match",
                    "status": "pass" if ok else "violated",
                    "detail": f"alpha {wa}, circle {circle.length}, beta {wb}",
                }
            )
        lv = t.levels[g.level - 1]
        same_torus = lv.is_centralizer_extension or all(
            p.gen_word == p.image_word for p in lv.assoc
        )
        if same_torus:
            report.entries.append(
                {
                    "level": g.level,
                    "check": "orbit-distinctness",
                    "status": "skipped",
                    "detail": "identity isomorphism glues the torus to itself",
                }
            )
            continue
        # conjugators range over the level's base group G_i (the prefix tower)
        from .tower import level_prefix

        prefix = level_prefix(t, g.level - 1)
        prefix_sys = system_for(prefix)
        carrier = None
        for z in sorted(enumerate_wm_ball(prefix, radius)):
            zw = prefix_sys.to_word(z)
            if all(
                abelian_membership(~zw * p.gen_word * zw, t, g.level, side="image")
                is not None
                for p in lv.assoc
            ):
                carrier = zw
                break
        report.entries.append(
            {
                "level": g.level,
                "check": "orbit-distinctness",
                "status": "violated" if carrier is not None else "verified_within_radius",
                "detail": f"conjugator {carrier.to_text()!r}" if carrier else f"radius {radius}",
            }
        )
    return report


def _word_tokens(w: Word) -> list[str]:
    return [n if s > 0 else f"{n}^-1" for n, s in w]


def _word_from_tokens(tokens) -> Word:
    return Word.from_text(" ".join(tokens))


def emit(b: SpaceBlueprint, format: str = "json") -> bytes:
    if format == "json":
        doc = {
            "rose": [{"id": c.id, "length": c.length} for c in b.rose],
            "gluings": [
                {
                    "level": g.level,
                    "stable": g.stable,
                    "circles": [{"id": c.id, "length": c.length} for c in g.circles],
                    "alpha": [_word_tokens(w) for w in g.attach_alpha],
                    "beta": [_word_tokens(w) for w in g.attach_beta],
                }
                for g in b.gluings
            ],
        }
        return (json.dumps(doc, indent=2) + "\n").encode("utf-8")
    if format == "dot":
        lines = ["digraph blueprint {"]
        rose_label = ", ".join(f"{c.id}({c.length})" for c in b.rose)
        lines.append(f'  rose [label="rose: {rose_label}"];')
        for g in b.gluings:
            node = f"level{g.level}"
            circles = ", ".join(f"{c.id}({c.length})" for c in g.circles)
            lines.append(f'  {node} [label="torus {g.stable}: {circles}"];')
            for w in g.attach_alpha:
                lines.append(f'  {node} -> rose [label="alpha: {w.to_text()}"];')
            for w in g.attach_beta:
                lines.append(f'  {node} -> rose [label="beta: {w.to_text()}"];')
        lines.append("}")
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise UnknownFormat(f"unknown format {format!r}")


def parse_blueprint(data: bytes | str) -> SpaceBlueprint:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e}") from e
    try:
        rose = tuple(Circle(c["id"], int(c["length"])) for c in doc["rose"])
        gluings = tuple(
            TorusGluing(
                int(g["level"]),
                g["stable"],
                tuple(Circle(c["id"], int(c["length"])) for c in g["circles"]),
                tuple(_word_from_tokens(tokens) for tokens in g["alpha"]),
                tuple(_word_from_tokens(tokens) for tokens in g["beta"]),
            )
            for g in doc["gluings"]
        )
    except (KeyError, TypeError) as e:
        raise SchemaError(f"blueprint schema: {e}") from e
    return SpaceBlueprint(rose, gluings)
