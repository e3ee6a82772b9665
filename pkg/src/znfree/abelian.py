"""Abelian-subgroup basis reduction.

Commuting elements are first cyclically reduced by a common conjugator, then
repeatedly combined pairwise at equal heights via the gcd of their top length
components until every height is occupied at most once.  The result generates
the same subgroup with at most n generators of strictly increasing heights;
both directions of the generation claim are certified with exact equality
tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _iproduct
from typing import TYPE_CHECKING

from .errors import (
    ConjugatorMismatch,
    HeightMismatch,
    NonCommuting,
    NonCommutingInput,
    RankMismatch,
    ZnFreeError,
)
from .lexvec import LexVec, height
from .words import Word, equal

if TYPE_CHECKING:  # pragma: no cover
    from .tower import TowerPresentation


@dataclass(frozen=True)
class HeightProfile:
    """Greatest top components (L_1,...,L_n) of a reference set with one
    element per occupied height; L_j = 0 marks height j unoccupied."""

    C: tuple[int, ...]

    @classmethod
    def of_vectors(cls, vectors, n: int | None = None) -> "HeightProfile":
        vectors = [v if isinstance(v, LexVec) else LexVec(v) for v in vectors]
        if n is None:
            if not vectors:
                raise ZnFreeError("empty reference set needs an explicit rank")
            n = vectors[0].n
        C = [0] * n
        for v in vectors:
            if v.n != n:
                raise RankMismatch(f"rank {v.n} vs {n}")
            h = height(v)
            if h == 0:
                continue
            top = v.coords[h - 1]
            C[h - 1] = max(C[h - 1], abs(top))
        return cls(tuple(C))


def is_r_bounded(P, profile: HeightProfile) -> bool:
    """True iff every vector of P is coordinatewise bounded by the profile."""
    n = len(profile.C)
    for v in P:
        coords = v.coords if isinstance(v, LexVec) else tuple(v)
        if len(coords) != n:
            raise RankMismatch(f"rank {len(coords)} vs {n}")
        if any(a > L for a, L in zip(coords, profile.C)):
            return False
    return True


def maximal_r_bounded_box(profile: HeightProfile) -> list[LexVec]:
    """The maximal R-bounded subset of the nonnegative box [0,L_1]x...x[0,L_n]."""
    ranges = [range(0, L + 1) for L in profile.C]
    return [LexVec(c) for c in _iproduct(*ranges)]


@dataclass(frozen=True)
class AbelianBasis:
    gens: tuple[Word, ...]
    heights: tuple[int, ...]


def _xgcd(a: int, b: int):
    """g = s*a + t*b with the standard minimal coefficients."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def combine_equal_height(s: Word, t: Word, tower: "TowerPresentation"):
    """(p, s~, t~) with <s,t> = <p, s~, t~> and ht(s~), ht(t~) < ht(p) = ht(s).

    p = s^sigma t^tau realizes gcd(m_s, m_t) of the top components; the
    remainders drop in height.  When the gcd equals m_s the pair collapses
    onto s itself.
    """
    from .length import engine_for

    engine = engine_for(tower)
    ls = engine.length(s)
    lt = engine.length(t)
    hs, ht_ = height(ls), height(lt)
    if hs != ht_:
        raise HeightMismatch(f"heights {hs} != {ht_}")
    if not equal(s * t, t * s, tower):
        raise NonCommuting(f"{s.to_text()!r} and {t.to_text()!r} do not commute")
    m_s = abs(ls.coords[hs - 1])
    m_t = abs(lt.coords[ht_ - 1])
    # the gcd arithmetic needs coherent directions along the shared axis:
    # flip t when the top components cancel instead of adding
    if engine.length(s * t).coords[hs - 1] != m_s + m_t:
        t = ~t
    m, sigma, tau = _xgcd(m_s, m_t)
    if m == m_s:
        p, s_rem = s, Word.identity()
    else:
        p = (s ** sigma) * (t ** tau)
        s_rem = s * (p ** (-(m_s // m)))
    t_rem = t * (p ** (-(m_t // m)))
    for rem in (s_rem, t_rem):
        if rem and not height(engine.length(rem)) < hs:
            raise ZnFreeError("combine_equal_height failed to lower the height")
    return p, s_rem, t_rem


def _common_cyclic_reduction(gens, tower):
    """Conjugate the whole family by one element so every member is
    cyclically reduced (possible since commuting elements share axes)."""
    from .length import engine_for
    from .words import cyclic_reduce

    engine = engine_for(tower)

    def all_reduced(ws):
        return all(
            engine._is_cyclically_reduced(engine.sys.britton(engine.sys.to_i(w)))
            for w in ws
            if w
        )

    if all_reduced(gens):
        return list(gens), Word.identity()
    candidates = []
    for g in gens:
        if not g:
            continue
        _, conj = cyclic_reduce(g, tower)
        if conj:
            candidates.append(conj)
    for conj in candidates:
        moved = [~conj * g * conj for g in gens]
        if all_reduced(moved):
            return moved, conj
    raise ConjugatorMismatch("no single conjugator cyclically reduces the family")


def reduce_basis(gens, tower: "TowerPresentation", ball_radius: int | None = None) -> AbelianBasis:
    """Basis of <gens> with at most n generators of strictly increasing
    heights; inputs must pairwise commute."""
    from .length import engine_for

    engine = engine_for(tower)
    gens = [g for g in gens]
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not equal(gens[i] * gens[j], gens[j] * gens[i], tower):
                raise NonCommutingInput(
                    f"{gens[i].to_text()!r} and {gens[j].to_text()!r} do not commute"
                )
    inputs = list(gens)
    gens, conj = _common_cyclic_reduction(gens, tower)
    live = [g for g in gens if not equal(g, Word.identity(), tower)]

    def ht_of(w):
        return height(engine.length(w))

    measure = None
    fuel = 8 * (len(live) + 1) * (tower.rank_n + 1)
    while True:
        by_height: dict[int, list[Word]] = {}
        for g in live:
            by_height.setdefault(ht_of(g), []).append(g)
        dup = next(
            (h for h, group in sorted(by_height.items(), reverse=True) if len(group) > 1),
            None,
        )
        # occupation counts from the top height down strictly decrease with
        # every combine (the count at the combined height drops, higher ones
        # are untouched), which is the termination measure
        counts = tuple(
            len(by_height.get(h, ())) for h in range(tower.rank_n, 0, -1)
        )
        if measure is not None:
            assert counts < measure, "height occupation must strictly decrease"
        measure = counts
        if dup is None:
            break
        fuel -= 1
        if fuel < 0:
            raise ZnFreeError("basis reduction failed to terminate")
        group = sorted(by_height[dup], key=lambda w: (len(w), w.letters))
        a, b = group[0], group[1]
        p, a_rem, b_rem = combine_equal_height(a, b, tower)
        live.remove(a)
        live.remove(b)
        live.append(p)
        for rem in (a_rem, b_rem):
            if rem and not equal(rem, Word.identity(), tower):
                live.append(rem)

    live.sort(key=lambda w: ht_of(w))
    basis = AbelianBasis(tuple(live), tuple(ht_of(w) for w in live))
    _certify(basis, inputs, conj, tower)
    return basis


def _profile_key(engine, words, n):
    """Lexicographic key (L_n,...,L_1) of the family's height profile."""
    C = [0] * n
    for w in words:
        lv = engine.length(w)
        h = height(lv)
        if h:
            C[h - 1] = max(C[h - 1], abs(lv.coords[h - 1]))
    return tuple(reversed(C))


def _certify(basis: AbelianBasis, inputs, conj, tower):
    """Exact bidirectional generation certificates.

    Forward: every (conjugated) input is a product of basis powers, with
    exponents read off the top length coordinates height by height.
    Backward: the construction builds basis elements inside the conjugated
    input subgroup, certified here by re-deriving each input's expression.
    """
    from .length import engine_for

    engine = engine_for(tower)
    if len(set(basis.heights)) != len(basis.heights):
        raise ZnFreeError("basis heights must be distinct")
    for g in inputs:
        residual = ~conj * g * conj
        for b, h in sorted(zip(basis.gens, basis.heights), key=lambda x: -x[1]):
            lr = engine.length(residual)
            if height(lr) < h:
                continue
            top = abs(lr.coords[h - 1])
            mb = abs(engine.length(b).coords[h - 1])
            if top % mb:
                raise ZnFreeError(f"input {g.to_text()!r} is not generated by the basis")
            k = top // mb
            for cand in (residual * (b ** (-k)), residual * (b ** k)):
                if height(engine.length(cand)) < h:
                    residual = cand
                    break
            else:
                raise ZnFreeError(f"input {g.to_text()!r} is not generated by the basis")
        if not equal(residual, Word.identity(), tower):
            raise ZnFreeError(f"input {g.to_text()!r} is not generated by the basis")
