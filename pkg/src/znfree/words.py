"""Word and normal-form engine over a tower.

Words are sequences of signed generator letters.  The engine removes pinches
(Britton reduction) level by level from the top of the tower down, decides
membership in the abelian associated subgroups, tests equality, and computes
canonical forms used to identify group elements during Cayley-ball sweeps.

Internally words are tuples of nonzero ints: letter +k / -k is the k-th
generator (1-based, file order: base letters then stable letters) with sign.
The public API speaks :class:`Word` objects of (name, sign) pairs.

Canonical forms fix coset representatives at every stable letter, scanning
left to right.  The representative of a coset u*H is chosen by zeroing the
net exponent of each stable basis letter of H (a group invariant) and then
minimizing over powers of the height-1 basis element, ties broken by the
lexicographically least word.  Both rules depend only on the coset, never on
the incoming representative, which is what makes the form canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _iproduct
from typing import Iterator, TYPE_CHECKING

from .errors import IdentityInput, LevelOutOfRange, SchemaError, ZnFreeError

if TYPE_CHECKING:  # pragma: no cover
    from .tower import TowerPresentation


class Word:
    """An immutable word in signed generator letters.

    Multiplication concatenates without reduction; ``free_reduce`` and the
    tower-aware operations below do the rewriting.
    """

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        letters = tuple((str(n), int(s)) for n, s in letters)
        for n, s in letters:
            if s not in (1, -1):
                raise SchemaError(f"letter sign must be +1 or -1, got {s}")
        object.__setattr__(self, "letters", letters)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Word is immutable")

    @classmethod
    def identity(cls) -> "Word":
        return cls()

    @classmethod
    def from_text(cls, text: str) -> "Word":
        """Parse whitespace-separated letters; inverses carry a ``^-1`` suffix."""
        letters = []
        for tok in text.split():
            if tok.endswith("^-1"):
                name, sign = tok[:-3], -1
            elif "^" in tok:
                raise SchemaError(f"bad letter token {tok!r}")
            else:
                name, sign = tok, 1
            if not name:
                raise SchemaError(f"bad letter token {tok!r}")
            letters.append((name, sign))
        return cls(letters)

    def to_text(self) -> str:
        return " ".join(n if s > 0 else f"{n}^-1" for n, s in self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __invert__(self) -> "Word":
        return Word(tuple((n, -s) for n, s in reversed(self.letters)))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else ~self
        return Word(base.letters * abs(k))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[tuple[str, int]]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        return f"Word({self.to_text()!r})"


@dataclass(frozen=True)
class NormalForm:
    """A freely reduced, pinch-free word, tagged with the lowest tower prefix
    (number of levels) whose generators it uses."""

    word: Word
    tower_level: int


# --- internal integer-word helpers -----------------------------------------


def free_reduce_i(w):
    out = []
    for a in w:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def inv_i(w):
    return tuple(-a for a in reversed(w))


def pow_i(b, k):
    if k < 0:
        b, k = inv_i(b), -k
    return b * k


def net_count(w, gen_abs):
    return sum(1 if a == gen_abs else -1 for a in w if abs(a) == gen_abs)


class _LevelData:
    __slots__ = ("stable", "pairs", "is_centralizer", "dom_single", "img_single")

    def __init__(self, stable, pairs, is_centralizer):
        self.stable = stable
        self.pairs = pairs
        self.is_centralizer = is_centralizer
        # single-stable-letter basis entries admit exact net-exponent read-off
        self.dom_single = [w[0] if len(w) == 1 else None for w, _ in pairs]
        self.img_single = [w[0] if len(w) == 1 else None for _, w in pairs]


class GroupSystem:
    """Computed view of a tower: letter tables plus the reduction engine.

    Obtain instances through :func:`system_for`; they cache canonical forms
    and membership answers, so sharing one per tower matters.
    """

    def __init__(self, tower: "TowerPresentation"):
        self.tower = tower
        names = tower.generator_names()
        if len(set(names)) != len(names):
            raise SchemaError("duplicate generator names in tower")
        self.names = names
        self.index = {n: i + 1 for i, n in enumerate(names)}
        self.rank = tower.rank_n
        self.num_levels = len(tower.levels)
        self.base_count = len(tower.base_generators)
        self.length = [None] + [tuple(tower.lengths[n].coords) for n in names]
        # level_of[abs letter]: 0 for base letters, else the letter's level
        self.level_of = [0] * (len(names) + 1)
        self.levels: list[_LevelData | None] = [None]
        for li, lv in enumerate(tower.levels, start=1):
            s = self.index[lv.stable.name]
            self.level_of[s] = li
            pairs = [(self.to_i(p.gen_word), self.to_i(p.image_word)) for p in lv.assoc]
            self.levels.append(_LevelData(s, pairs, lv.is_centralizer_extension))
        self._canon_memo: dict = {}
        self._canon_level_memo: dict = {}
        self._member_memo: dict = {}
        self._britton_memo: dict = {}

    # -- conversions --

    def to_i(self, w: Word):
        out = []
        for name, sign in w:
            idx = self.index.get(name)
            if idx is None:
                from .errors import UnknownGenerator

                raise UnknownGenerator(f"unknown generator {name!r}")
            out.append(idx * sign)
        return tuple(out)

    def to_word(self, iw) -> Word:
        return Word(tuple((self.names[abs(a) - 1], 1 if a > 0 else -1) for a in iw))

    def top_level_of(self, iw) -> int:
        return max((self.level_of[abs(a)] for a in iw), default=0)

    def letter_length(self, a):
        return self.length[abs(a)]

    # -- Britton reduction --

    def britton(self, iw):
        """Freely reduced, pinch-free form (all levels, top down)."""
        cached = self._britton_memo.get(iw, _MISS)
        if cached is not _MISS:
            return cached
        w = free_reduce_i(iw)
        for level in range(self.num_levels, 0, -1):
            w = self._britton_level(w, level)
        self._britton_memo[iw] = w
        self._britton_memo[w] = w
        return w

    def _split(self, w, s):
        """Split at occurrences of +-s: segments s0, e1, s1, ..., em, sm."""
        segs, signs, cur = [], [], []
        for a in w:
            if abs(a) == s:
                segs.append(tuple(cur))
                signs.append(1 if a > 0 else -1)
                cur = []
            else:
                cur.append(a)
        segs.append(tuple(cur))
        return segs, signs

    def _britton_level(self, w, level):
        """Remove pinches involving this level's stable letter."""
        s = self.levels[level].stable
        while True:
            if not any(abs(a) == s for a in w):
                return w
            segs, signs = self._split(w, s)
            hit = None
            for i in range(len(signs) - 1):
                seg = segs[i + 1]
                if signs[i] == -1 and signs[i + 1] == 1:
                    exps = self.member(seg, level, "domain")
                    if exps is not None:
                        hit = (i, self._assoc_product(level, "image", exps))
                        break
                elif signs[i] == 1 and signs[i + 1] == -1:
                    exps = self.member(seg, level, "image")
                    if exps is not None:
                        hit = (i, self._assoc_product(level, "domain", exps))
                        break
            if hit is None:
                return w
            i, mid = hit
            pre = []
            for j in range(i):
                pre.extend(segs[j])
                pre.append(signs[j] * s)
            pre.extend(segs[i])
            post = []
            for j in range(i + 2, len(signs)):
                post.extend(segs[j])
                post.append(signs[j] * s)
            post.extend(segs[-1])
            w = free_reduce_i(tuple(pre) + mid + tuple(post))

    def _assoc_product(self, level, side, exps):
        """The word prod basis_j^exps[j] on the requested side, ascending j."""
        pairs = self.levels[level].pairs
        out = []
        for (dom, img), e in zip(pairs, exps):
            out.extend(pow_i(dom if side == "domain" else img, e))
        return free_reduce_i(tuple(out))

    # -- membership in associated subgroups --

    def member(self, seg, level, side):
        """Exponents (a_1,...,a_m) with seg = prod basis_j^(a_j), else None.

        Net exponents of stable basis letters are read off directly (they are
        group invariants); the height-1 generator is solved in the free base;
        non-letter basis entries fall back to a bounded verified search.  The
        result is always confirmed with an exact equality test.
        """
        key = (seg, level, side)
        cached = self._member_memo.get(key, _MISS)
        if cached is not _MISS:
            return cached
        res = self._member(seg, level, side)
        self._member_memo[key] = res
        return res

    def _member(self, seg, level, side):
        if any(self.level_of[abs(a)] >= level for a in seg):
            return None
        data = self.levels[level]
        basis = [p[0] if side == "domain" else p[1] for p in data.pairs]
        single = data.dom_single if side == "domain" else data.img_single
        m = len(basis)
        exps = [0] * m
        v = seg
        search_js = []
        for j in range(m - 1, 0, -1):
            if single[j] is not None and self.level_of[abs(single[j])] > 0:
                letter = single[j]
                k = net_count(v, abs(letter)) * (1 if letter > 0 else -1)
                exps[j] = k
                v = free_reduce_i(v + pow_i(basis[j], -k))
            else:
                search_js.append(j)
        if search_js:
            return self._member_bruteforce(seg, level, side, basis)
        v = self._britton_below(v, level)
        if any(self.level_of[abs(a)] > 0 for a in v):
            return None
        k1 = _free_power(v, basis[0])
        if k1 is None:
            return None
        exps[0] = k1
        if self._verify_member(seg, basis, exps):
            return tuple(exps)
        return None

    def _britton_below(self, w, level):
        w = free_reduce_i(w)
        for lv in range(level - 1, 0, -1):
            w = self._britton_level(w, lv)
        return w

    def _verify_member(self, seg, basis, exps):
        rhs = []
        for b, e in zip(basis, exps):
            rhs.extend(pow_i(b, e))
        return self.is_trivial(seg + inv_i(tuple(rhs)))

    def _member_bruteforce(self, seg, level, side, basis):
        # exotic towers only: joint bounded search, each candidate verified
        bound = len(seg) + 1
        ranges = [range(-bound, bound + 1) for _ in basis]
        for exps in _iproduct(*ranges):
            if self._verify_member(seg, basis, list(exps)):
                return tuple(exps)
        return None

    # -- equality --

    def is_trivial(self, iw) -> bool:
        return not self.britton(iw)

    def equal_i(self, g, f) -> bool:
        return self.is_trivial(g + inv_i(f))

    # -- canonical forms --

    def canonical(self, iw):
        """Unique word per group element: pinch-free with canonical cosets."""
        cached = self._canon_memo.get(iw, _MISS)
        if cached is not _MISS:
            return cached
        res = self._canon(self.britton(iw), self.num_levels)
        self._canon_memo[iw] = res
        self._canon_memo[res] = res
        return res

    def _canon(self, w, level):
        w = free_reduce_i(w)
        key = (w, level)
        cached = self._canon_level_memo.get(key, _MISS)
        if cached is not _MISS:
            return cached
        res = self._canon_uncached(w, level)
        self._canon_level_memo[key] = res
        self._canon_level_memo[(res, level)] = res
        return res

    def _canon_uncached(self, w, level):
        if level == 0:
            return free_reduce_i(w)
        w = self._britton_level(w, level)
        s = self.levels[level].stable
        if not any(abs(a) == s for a in w):
            return self._canon(w, level - 1)
        segs, signs = self._split(w, s)
        out = []
        carry = ()
        for i, eps in enumerate(signs):
            rep, push = self._coset_canon(carry + segs[i], level, eps)
            out.extend(rep)
            out.append(eps * s)
            carry = push
        out.extend(self._canon(carry + segs[-1], level - 1))
        return tuple(out)

    def _coset_canon(self, u, level, eps):
        """Canonical representative of u modulo the sliding side of this level.

        eps=+1 slides C across s (u s ... = (u c^-1) s (phi(c) ...)); eps=-1
        slides phi(C) across s^-1.  Returns (representative, pushed word).
        """
        data = self.levels[level]
        if eps > 0:
            slide = [p[0] for p in data.pairs]
            single = data.dom_single
            push_basis = [p[1] for p in data.pairs]
        else:
            slide = [p[1] for p in data.pairs]
            single = data.img_single
            push_basis = [p[0] for p in data.pairs]
        m = len(slide)
        ks = [0] * m
        v = u
        for j in range(m - 1, 0, -1):
            if single[j] is not None and self.level_of[abs(single[j])] > 0:
                letter = single[j]
                k = net_count(v, abs(letter)) * (1 if letter > 0 else -1)
            else:
                k = self._min_power(v, slide[j], level)[0]
            ks[j] = k
            v = free_reduce_i(v + pow_i(slide[j], -k))
        ks[0], rep = self._min_power(v, slide[0], level)
        push = []
        for b, k in zip(push_basis, ks):
            push.extend(pow_i(b, k))
        return rep, free_reduce_i(tuple(push))

    def _min_power(self, v, b, level):
        """k minimizing the canonical form of v * b^-k; ties by least word.

        The candidate box covers every k whose canonical form is no longer
        than v's, so the winner depends only on the coset of v.
        """
        if not b:
            return 0, self._canon(v, level - 1)
        bound = 2 * (len(v) // len(b)) + 2
        best = None
        for k in range(-bound, bound + 1):
            cand = self._canon(v + pow_i(b, -k), level - 1)
            key = (len(cand), cand)
            if best is None or key < best[0]:
                best = (key, k, cand)
        return best[1], best[2]


_MISS = object()

_SYSTEMS: dict[int, tuple["TowerPresentation", GroupSystem]] = {}


def system_for(t: "TowerPresentation") -> GroupSystem:
    """Shared GroupSystem per tower instance (caches normal forms)."""
    entry = _SYSTEMS.get(id(t))
    if entry is not None and entry[0] is t:
        return entry[1]
    sys_ = GroupSystem(t)
    _SYSTEMS[id(t)] = (t, sys_)
    return sys_


def _free_power(v, b):
    """k with v == b^k in the free group on the letters, else None."""
    if not v:
        return 0
    if not b or len(v) % len(b):
        return None
    k = len(v) // len(b)
    if v == free_reduce_i(b * k):
        return k
    if v == free_reduce_i(inv_i(b) * k):
        return -k
    return None


# --- public operations ------------------------------------------------------


def free_reduce(w: Word) -> Word:
    """Cancel adjacent inverse pairs until none remain."""
    reduced = []
    for letter in w:
        name, sign = letter
        if reduced and reduced[-1] == (name, -sign):
            reduced.pop()
        else:
            reduced.append(letter)
    return Word(reduced)


def britton_reduce(w: Word, t: "TowerPresentation") -> NormalForm:
    """Pinch-free, freely reduced form of w: no factor s^-1 c s with c in C
    and no factor s phi(c) s^-1 survives."""
    sys_ = system_for(t)
    out = sys_.britton(sys_.to_i(w))
    return NormalForm(sys_.to_word(out), sys_.top_level_of(out))


def abelian_membership(g: Word, t: "TowerPresentation", level: int, side: str = "domain"):
    """Exponent vector of g in the level's associated subgroup (or its image),
    or None when g lies outside."""
    if side not in ("domain", "image"):
        raise ZnFreeError(f"side must be 'domain' or 'image', got {side!r}")
    sys_ = system_for(t)
    if not 1 <= level <= sys_.num_levels:
        raise LevelOutOfRange(f"level {level} outside 1..{sys_.num_levels}")
    return sys_.member(sys_.britton(sys_.to_i(g)), level, side)


def equal(g: Word, f: Word, t: "TowerPresentation") -> bool:
    """True iff g and f represent the same group element."""
    sys_ = system_for(t)
    return sys_.equal_i(sys_.to_i(g), sys_.to_i(f))


def canonical_form(w: Word, t: "TowerPresentation") -> Word:
    """The unique canonical word of w's group element."""
    sys_ = system_for(t)
    return sys_.to_word(sys_.canonical(sys_.to_i(w)))


def cyclic_reduce(g: Word, t: "TowerPresentation", radius: int | None = None):
    """Split g as conjugator * core * conjugator^-1 with core cyclically
    reduced, certified by l(core^2) = 2 l(core).

    Peels matched end letters of the pinch-free form first; if the length
    certificate still fails, searches conjugators in the weighted ball.
    """
    from .length import engine_for

    engine = engine_for(t)
    sys_ = engine.sys
    w = sys_.britton(sys_.to_i(g))
    if not w:
        raise IdentityInput("cyclic_reduce of the identity")
    conj = []
    while len(w) >= 2 and w[0] == -w[-1]:
        conj.append(w[0])
        w = sys_.britton(w[1:-1])
        if not w:
            # g was conjugate to the identity, impossible for g != 1
            raise IdentityInput("cyclic_reduce of the identity")
    core, extra = engine.certified_core(w, radius)
    return sys_.to_word(core), sys_.to_word(free_reduce_i(tuple(conj) + extra))
