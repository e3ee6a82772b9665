"""The Lyndon Z^n-length engine.

l(g) is the displacement of the base point in the Z^n-tree the tower acts
on.  After Britton reduction the word is folded left to right through an
explicit geodesic model: maximal straight runs along the (translated) axes
of the associated subgroups are kept as signed displacement vectors, base
letters extend or backtrack those runs, and stable letters open new runs
after absorbing the contact their junction has with the tail of the path.
Lower coordinates of a length can be negative (the path may backtrack an
infinitesimal amount before an infinitely-larger jump); the axiom sweeps
L1-L6 are the correctness oracle for the fold.

The letter-sum word metric lives alongside: ``length_reduce`` minimizes the
letter-length sum over the abelian slides s^-1 c s = phi(c) (an exact chain
DP per junction coordinate), and its output is what the lexicographic
shortest-path oracle of module ``weights`` must reproduce.  The two notions
agree on coherent elements and differ exactly where directions along a
shared axis oppose.

Also here: the Gromov product c(g,f), the common beginning com(g,f),
junction additivity, translation length, and the L1-L6 axiom checkers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .errors import (
    BallExceeded,
    HalfError,
    IdentityInput,
    Infeasible,
    OracleBallExceeded,
    ReductionCapExceeded,
    RegularityViolation,
)
from .lexvec import LexVec
from .words import NormalForm, Word, free_reduce_i, inv_i, pow_i, system_for

if TYPE_CHECKING:  # pragma: no cover
    from .tower import TowerPresentation


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _vabs(a):
    for x in reversed(a):
        if x > 0:
            return a
        if x < 0:
            return tuple(-y for y in a)
    return a


def _is_positive(a):
    for x in reversed(a):
        if x:
            return x > 0
    return False


def _stable_count(w, sys_):
    return sum(1 for a in w if sys_.level_of[abs(a)] > 0)


def _lexkey(v):
    return tuple(reversed(v))


class _Jump:
    """A maximal straight run along a translated axis.

    delta: signed displacement from the run's start to its end.
    pos:   offset (in letters) of the endpoint along the end-side axis,
           0 at the endpoint frame; the domain word spells positions >= 0,
           the image word positions < 0.
    bletters: net base-letter offset folded into the run (for the phase
           arithmetic when a higher jump later absorbs this one).
    """

    __slots__ = ("level", "delta", "pos", "bletters")

    def __init__(self, level, delta, pos=0, bletters=0):
        self.level = level
        self.delta = delta
        self.pos = pos
        self.bletters = bletters


class _Side:
    """Axis data of one level: spelling words and vertical basis letters."""

    __slots__ = ("dom", "img", "dom_verts", "img_verts")

    def __init__(self, data, level_of):
        self.dom, self.img = data.pairs[0]
        self.dom_verts = set()
        self.img_verts = set()
        for d, im in data.pairs[1:]:
            if len(d) == 1 and level_of[abs(d[0])] > 0:
                self.dom_verts.add(abs(d[0]))
            if len(im) == 1 and level_of[abs(im[0])] > 0:
                self.img_verts.add(abs(im[0]))

    def spell(self, pos):
        """Letter of the axis step pos -> pos+1 at the endpoint frame."""
        if pos >= 0:
            return self.dom[pos % len(self.dom)]
        return self.img[pos % len(self.img)]


class LengthEngine:
    """Length computations over one tower; share one engine per tower."""

    def __init__(self, tower: "TowerPresentation", oracle_radius: int = 4):
        self.tower = tower
        self.sys = system_for(tower)
        self.oracle_radius = oracle_radius
        self._sides = [None] + [
            _Side(self.sys.levels[li], self.sys.level_of)
            for li in range(1, self.sys.num_levels + 1)
        ]
        self._opt_memo: dict = {}
        self._len_memo: dict = {}
        self._zero = (0,) * self.sys.rank

    # -- the tree length --

    def length_i(self, iw) -> tuple:
        cached = self._len_memo.get(iw)
        if cached is None:
            total = self._zero
            for item in self._fold(self.sys.britton(iw)):
                if isinstance(item, int):
                    total = _vadd(total, self.sys.length[abs(item)])
                else:
                    total = _vadd(total, _vabs(item.delta))
            self._len_memo[iw] = cached = total
        return cached

    def length(self, g: Word, check_oracle: bool = False) -> LexVec:
        """l(g).  With check_oracle, additionally assert that the letter-sum
        of the length-reduced word equals the lex-Dijkstra oracle distance
        inside the engine's oracle ball (the dual-route word-metric check)."""
        iw = self.sys.to_i(g)
        if check_oracle:
            from .weights import lex_ball

            ball = lex_ball(self.tower, self.oracle_radius)
            target = self.sys.canonical(iw)
            if target not in ball:
                raise OracleBallExceeded(self.oracle_radius)
            oracle = ball[target]
            wm = self.word_metric_length_i(iw)
            if oracle != wm:
                raise AssertionError(
                    f"word-metric length {wm} != oracle {oracle} for {g.to_text()!r}"
                )
        return LexVec(self.length_i(iw))

    def _fold(self, w):
        stack = []
        for a in w:
            lv = self.sys.level_of[abs(a)]
            if lv == 0:
                self._fold_base(stack, a)
            else:
                self._fold_stable(stack, a, lv)
        return stack

    def _fold_base(self, stack, a):
        la = self.sys.length[abs(a)]
        if stack:
            tail = stack[-1]
            if isinstance(tail, int):
                if tail == -a:
                    stack.pop()
                    return
            else:
                side = self._sides[tail.level]
                if side.spell(tail.pos) == a:  # extend the run upward
                    tail.delta = _vadd(tail.delta, la)
                    tail.pos += 1
                    tail.bletters += 1
                    return
                if side.spell(tail.pos - 1) == -a:  # backtrack downward
                    tail.delta = _vsub(tail.delta, la)
                    tail.pos -= 1
                    tail.bletters -= 1
                    return
        stack.append(a)

    def _fold_stable(self, stack, a, lv):
        sys_ = self.sys
        s_abs = abs(a)
        eps = 1 if a > 0 else -1
        sl = sys_.length[s_abs]
        side = self._sides[lv]
        if stack and isinstance(stack[-1], _Jump):
            J = stack[-1]
            if J.level == lv:
                # band crossing: the next fundamental domain of the same axis
                if eps > 0 and J.pos >= 0 and J.pos % len(side.dom) == 0:
                    J.delta = _vadd(J.delta, sl)
                    J.pos = 0
                    return
                if eps < 0 and J.pos <= 0 and (-J.pos) % len(side.img) == 0:
                    J.delta = _vsub(J.delta, sl)
                    J.pos = 0
                    return
            elif J.level > lv:
                # vertical move inside the higher run's plane
                hs = self._sides[J.level]
                if (
                    (J.pos >= 0 and J.pos % len(hs.dom) == 0 and s_abs in hs.dom_verts)
                    or (J.pos <= 0 and (-J.pos) % len(hs.img) == 0 and s_abs in hs.img_verts)
                ):
                    J.delta = _vadd(J.delta, sl) if eps > 0 else _vsub(J.delta, sl)
                    return
        # fresh run; absorb the tail's contact with the junction's axis
        word = side.dom if eps > 0 else side.img
        L = len(word)
        verts = side.dom_verts if eps > 0 else side.img_verts
        delta = tuple(eps * c for c in sl)
        phase = 0
        while stack:
            tail = stack[-1]
            if isinstance(tail, int):
                if tail == word[(phase - 1) % L]:  # arrived climbing the axis
                    delta = _vadd(delta, sys_.length[abs(tail)])
                    phase -= 1
                    stack.pop()
                    continue
                if tail == -word[phase % L]:  # arrived descending the axis
                    delta = _vsub(delta, sys_.length[abs(tail)])
                    phase += 1
                    stack.pop()
                    continue
                break
            if (
                tail.level < lv
                and (phase - tail.pos) % L == 0
                and sys_.levels[tail.level].stable in verts
            ):
                # the absorbed run's vertical steps sit at its own frame
                # origin, pos letters away from its end, hence the alignment
                delta = _vadd(delta, tail.delta)
                phase -= tail.bletters
                stack.pop()
                continue
            # peel single steps shared between the tail run's end and this
            # junction's axis: an edge is determined by its endpoint and
            # letter, so a letter match means the same tree edge; peel only
            # while it strictly shortens (a neutral peel just reslices the
            # same geodesic and would never terminate)
            hs = self._sides[tail.level]
            if _is_positive(tail.delta):
                sigma = hs.spell(tail.pos - 1)
                if sigma == word[(phase - 1) % L]:
                    la = sys_.length[abs(sigma)]
                    ntail = _vsub(tail.delta, la)
                    ndelta = _vadd(delta, la)
                    if _lexkey(_vadd(_vabs(ntail), _vabs(ndelta))) < _lexkey(
                        _vadd(_vabs(tail.delta), _vabs(delta))
                    ):
                        tail.delta = ntail
                        tail.pos -= 1
                        tail.bletters -= 1
                        delta = ndelta
                        phase -= 1
                        continue
            else:
                sigma = hs.spell(tail.pos)
                if sigma == word[phase % L]:
                    la = sys_.length[abs(sigma)]
                    ntail = _vadd(tail.delta, la)
                    ndelta = _vsub(delta, la)
                    if _lexkey(_vadd(_vabs(ntail), _vabs(ndelta))) < _lexkey(
                        _vadd(_vabs(tail.delta), _vabs(delta))
                    ):
                        tail.delta = ntail
                        tail.pos += 1
                        tail.bletters += 1
                        delta = ndelta
                        phase += 1
                        continue
            break
        stack.append(_Jump(lv, delta, 0, -phase))

    # -- the letter-sum word metric (dual route, checked by the oracle) --

    def word_metric_length_i(self, iw) -> tuple:
        return self._opt(self.sys.britton(iw), self.sys.num_levels)[0]

    def reduced_word_i(self, iw) -> tuple:
        return self._opt(self.sys.britton(iw), self.sys.num_levels)[1]

    def length_reduce(self, w: NormalForm) -> Word:
        """A letter-sum-minimal spelling of w, found by shifting abelian
        powers across stable letters; its letter lengths sum to the word
        metric value (and to l(w) exactly when the directions are coherent)."""
        iw = self.sys.britton(self.sys.to_i(w.word))
        return self.sys.to_word(self._opt(iw, self.sys.num_levels)[1])

    def _opt(self, w, level):
        w = free_reduce_i(w)
        key = (w, level)
        hit = self._opt_memo.get(key)
        if hit is not None:
            return hit
        res = self._opt_uncached(w, level)
        self._opt_memo[key] = res
        return res

    def _opt_uncached(self, w, level):
        sys_ = self.sys
        if level == 0:
            return _vsum((sys_.length[abs(a)] for a in w), sys_.rank), w
        s = sys_.levels[level].stable
        if not any(abs(a) == s for a in w):
            return self._opt(w, level - 1)
        segs, signs = sys_._split(w, s)
        m = len(signs)
        stable_cost = _vsum((sys_.length[s] for _ in range(m)), sys_.rank)
        data = sys_.levels[level]
        nb = len(data.pairs)

        # Block-coordinate minimization over the slide exponents, one basis
        # element at a time from the highest height down; every accepted pass
        # strictly lex-decreases the total, so the loop terminates.
        K = [(0,) * nb] * m
        words = self._realize(segs, signs, data, K)
        total = _vsum((self._opt(u, level - 1)[0] for u in words), sys_.rank)
        cap = 4 * (len(w) + 4)
        rounds = 0
        improved = True
        while improved:
            improved = False
            for ci in range(nb - 1, -1, -1):
                rounds += 1
                if rounds > cap:
                    raise ReductionCapExceeded("slide optimization exceeded its iteration cap")
                rng = self._coord_range(ci, words, data, K)
                if len(rng) <= 1:
                    continue
                res = self._coord_dp(segs, signs, data, K, ci, rng, level, total)
                if res is not None:
                    total, K = res
                    words = self._realize(segs, signs, data, K)
                    improved = True

        out = []
        final_total = self._zero
        for j in range(m):
            vec, word = self._opt(words[j], level - 1)
            final_total = _vadd(final_total, vec)
            out.extend(word)
            out.append(signs[j] * s)
        vec, word = self._opt(words[m], level - 1)
        final_total = _vadd(final_total, vec)
        out.extend(word)
        out = tuple(out)
        # a slide can empty the segment between opposite stable letters and
        # expose a new pinch; re-reduce and start over on the smaller word
        rebritton = sys_.britton(out)
        if _stable_count(rebritton, sys_) < _stable_count(out, sys_):
            return self._opt(rebritton, level)
        return _vadd(final_total, stable_cost), out

    def _realize(self, segs, signs, data, K):
        """Segment words under the slide exponent vectors K."""
        words = []
        push = ()
        for j in range(len(signs)):
            tail, npush = self._slide_words(data, signs[j], K[j])
            words.append(free_reduce_i(push + segs[j] + tail))
            push = npush
        words.append(free_reduce_i(push + segs[-1]))
        return words

    def _slide_words(self, data, eps, k):
        """(word appended to the left segment, word prepended to the right)
        at a junction of sign eps for slide exponents k over the basis."""
        tail, push = [], []
        for (dom, img), e in zip(data.pairs, k):
            if e:
                if eps > 0:
                    tail.extend(pow_i(dom, -e))
                    push.extend(pow_i(img, e))
                else:
                    tail.extend(pow_i(img, e))
                    push.extend(pow_i(dom, -e))
        return tuple(tail), tuple(push)

    def _coord_range(self, ci, words, data, K):
        """Candidate exponents for basis element ci, shared by all junctions.

        A useful slide cancels against letters already present, so the
        exponent is clamped by the count of letters the basis words are made
        of; current values stay in the set, so a pass can only improve."""
        dom, img = data.pairs[ci]
        alphabet = {abs(a) for a in dom} | {abs(a) for a in img}
        mass = sum(1 for u in words for a in u if abs(a) in alphabet)
        bound = mass // max(1, min(len(dom), len(img))) + 1
        rng = set(range(-bound, bound + 1))
        rng.update(k[ci] for k in K)
        return sorted(rng)

    def _coord_dp(self, segs, signs, data, K, ci, rng, level, incumbent):
        """Exact chain DP over junction values of one slide coordinate.

        Segment j couples only junctions j-1 and j; partial sums that reach
        the incumbent are pruned (remaining costs are nonnegative).  Returns
        (total, new K) on strict improvement, else None.
        """
        m = len(signs)
        inc_key = _lexkey(incumbent)

        def with_coord(base, v):
            if base[ci] == v:
                return base
            lst = list(base)
            lst[ci] = v
            return tuple(lst)

        def seg_cost(j, vprev, vcur):
            parts = ()
            if j > 0:
                _, push = self._slide_words(data, signs[j - 1], with_coord(K[j - 1], vprev))
                parts += push
            parts += segs[j]
            if j < m:
                tail, _ = self._slide_words(data, signs[j], with_coord(K[j], vcur))
                parts += tail
            return self._opt(free_reduce_i(parts), level - 1)[0]

        frontier = {}
        for v in rng:
            vec = seg_cost(0, None, v)
            if _lexkey(vec) < inc_key:
                frontier[v] = (vec, (v,))
        for j in range(1, m):
            nxt = {}
            for v in rng:
                best = None
                for vp, (vec, path) in frontier.items():
                    tot = _vadd(vec, seg_cost(j, vp, v))
                    entry = (_lexkey(tot), path, tot)
                    if best is None or entry[:2] < best[:2]:
                        best = entry
                if best is not None and best[0] < inc_key:
                    nxt[v] = (best[2], best[1] + (v,))
            frontier = nxt
            if not frontier:
                return None
        best = None
        for v, (vec, path) in frontier.items():
            tot = _vadd(vec, seg_cost(m, v, None))
            entry = (_lexkey(tot), path, tot)
            if best is None or entry[:2] < best[:2]:
                best = entry
        if best is None or not best[0] < inc_key:
            return None
        path = best[1]
        newK = [with_coord(K[j], path[j]) for j in range(m)]
        return best[2], newK

    # -- derived quantities --

    def gromov_i(self, g, f):
        lg = self.length_i(g)
        lf = self.length_i(f)
        lgf = self.length_i(inv_i(g) + f)
        total = tuple(a + b - c for a, b, c in zip(lg, lf, lgf))
        return LexVec(total).halve().coords

    def gromov_product(self, g: Word, f: Word) -> LexVec:
        """c(g,f) = (l(g) + l(f) - l(g^-1 f)) / 2, exact halving."""
        return LexVec(self.gromov_i(self.sys.to_i(g), self.sys.to_i(f)))

    def common_beginning(self, g: Word, f: Word) -> Word:
        """u with l(u) = c(g,f) splitting both g and f length-additively.

        The branch point of the two geodesics is always reachable as a
        letter prefix of one of the two pinch-free words, so both are
        scanned and every candidate is certified by the three equalities."""
        gi, fi = self.sys.to_i(g), self.sys.to_i(f)
        c = self.gromov_i(gi, fi)
        u = self._com_prefix(gi, fi, c)
        if u is None:
            raise RegularityViolation(
                f"no prefix certifies com({g.to_text()!r}, {f.to_text()!r})"
            )
        return self.sys.to_word(u)

    def _com_prefix(self, gi, fi, c):
        lg, lf = self.length_i(gi), self.length_i(fi)
        residual_g = _vsub(lg, c)
        residual_f = _vsub(lf, c)
        reps = []
        for rep in (self.sys.britton(gi), self.sys.britton(fi)):
            if rep not in reps:
                reps.append(rep)

        def certified(u):
            if self.length_i(u) != c:
                return False
            if self.length_i(inv_i(u) + gi) != residual_g:
                return False
            return self.length_i(inv_i(u) + fi) == residual_f

        for rep in reps:
            for i in range(len(rep) + 1):
                if certified(rep[:i]):
                    return rep[:i]
        # the branch point may sit inside a jump's segment: walk the axis
        # from each junction, bounded by the coordinate mass of the target
        bound = max((abs(x) for x in c), default=0) + 2
        for rep in reps:
            for u in self._axis_walks(rep, bound):
                if certified(u):
                    return u
        return None

    def _axis_walks(self, rep, bound):
        """Group points interior to the jumps of rep's geodesic: bounded
        walks along the start-side and end-side lines of every stable
        letter occurrence."""
        sys_ = self.sys
        for i, a in enumerate(rep):
            lv = sys_.level_of[abs(a)]
            if lv == 0:
                continue
            side = self._sides[lv]
            start_word = side.dom if a > 0 else side.img
            before, after = rep[:i], rep[: i + 1]
            for word, prefix in ((start_word, before), (side.dom, after), (side.img, after)):
                L = len(word)
                up, down = prefix, prefix
                for k in range(bound * max(L, 1)):
                    up = up + (word[k % L],)
                    down = down + (-word[(-k - 1) % L],)
                    yield free_reduce_i(up)
                    yield free_reduce_i(down)

    def additive_junction(self, f: Word, g: Word) -> bool:
        """True iff l(fg) = l(f) + l(g)."""
        fi, gi = self.sys.to_i(f), self.sys.to_i(g)
        return self.length_i(fi + gi) == _vadd(self.length_i(fi), self.length_i(gi))

    def translation_length(self, g: Word) -> LexVec:
        """l of a cyclically reduced conjugate; conjugacy-class invariant."""
        from .words import cyclic_reduce

        core, _ = cyclic_reduce(g, self.tower, radius=self.oracle_radius)
        return LexVec(self.length_i(self.sys.to_i(core)))

    # -- cyclic reduction support --

    def certified_core(self, w, radius=None):
        """(core, extra conjugator) with l(core^2) = 2 l(core); w must already
        be pinch-free with matched end letters peeled.

        Repeatedly conjugates by ball elements as long as the length strictly
        drops; a cyclically reduced conjugate minimizes l in its class, so the
        descent reaches one whenever the ball contains the needed conjugators."""
        if self._is_cyclically_reduced(w):
            return w, ()
        r = radius if radius is not None else self.oracle_radius
        from .weights import WeightSystem, enumerate_wm_ball

        try:
            ball = enumerate_wm_ball(self.tower, r)
        except Infeasible:
            unit = WeightSystem({n: 1 for n in self.sys.names})
            ball = enumerate_wm_ball(self.tower, r, unit)
        order = [z for _, z in sorted((d, v) for v, d in ball.items())]
        conj = ()
        current = w
        while True:
            best = None
            for z in order:
                cand = self.sys.britton(inv_i(z) + current + z)
                extra = list(z)
                while len(cand) >= 2 and cand[0] == -cand[-1]:
                    extra.append(cand[0])
                    cand = self.sys.britton(cand[1:-1])
                if not cand:
                    continue
                if self._is_cyclically_reduced(cand):
                    return cand, free_reduce_i(conj + tuple(extra))
                if _lexkey(self.length_i(cand)) < _lexkey(self.length_i(current)):
                    best = (cand, tuple(extra))
                    break
            if best is None:
                raise BallExceeded(
                    r, f"no cyclically reduced conjugate found within radius {r}"
                )
            current = best[0]
            conj = free_reduce_i(conj + best[1])

    def _is_cyclically_reduced(self, w):
        lw = self.length_i(w)
        return self.length_i(w + w) == _vadd(lw, lw)

    # -- axiom sweeps --

    def check_axioms(self, radius: int) -> "AxiomReport":
        """Exhaustive exact check of L1-L6 over the weighted ball.

        Tuples are drawn with combined weight wm(g)+wm(f)(+wm(h)) <= radius,
        so the sweep is finite and every violation is a concrete counter-
        example; all lengths come from the tree-length engine.
        """
        from .weights import WeightSystem, enumerate_wm_ball, weights_for

        notes = []
        try:
            ws = weights_for(self.tower)
        except Infeasible:
            ws = WeightSystem({n: 1 for n in self.sys.names})
            notes.append("weight system infeasible; ball uses unit weights")
        ball = enumerate_wm_ball(self.tower, radius, ws)
        by_dist: list[list] = [[] for _ in range(radius + 1)]
        for v, d in ball.items():
            by_dist[d].append(v)
        for group in by_dist:
            group.sort()
        elements = [(v, d) for d in range(radius + 1) for v in by_dist[d]]
        lengths = [self.length_i(v) for v, _ in elements]

        report = AxiomReport(radius=radius, weights=ws.to_json(), notes=notes)
        zero = self._zero
        rzero = _lexkey(zero)

        # precondition of every axiom: l must be well-defined on the group,
        # i.e. agree on every pair of spellings the ball graph identifies
        l0 = report.axioms["welldef"]
        letters = [a for i in range(1, len(self.sys.names) + 1) for a in (i, -i)]
        for v, _ in elements:
            for a in letters:
                u = v + (a,)
                w = self.sys.canonical(u)
                l0.checked += 1
                if self.length_i(u) != self.length_i(w):
                    l0.record(
                        self._word_text(u),
                        f"l(spelling)={self.length_i(u)} l(canonical)={self.length_i(w)}",
                    )

        l1 = report.axioms["L1"]
        l2 = report.axioms["L2"]
        l5 = report.axioms["L5"]
        for i, (v, _) in enumerate(elements):
            lv = lengths[i]
            l1.checked += 1
            if _lexkey(lv) < rzero or (not v and lv != zero):
                l1.record(self._word_text(v), f"l = {lv}")
            l2.checked += 1
            linv = self.length_i(inv_i(v))
            if linv != lv:
                l2.record(self._word_text(v), f"l(g)={lv} l(g^-1)={linv}")
            if v:
                l5.checked += 1
                lsq = self.length_i(v + v)
                if not _lexkey(lsq) > _lexkey(lv):
                    l5.record(self._word_text(v), f"l(g)={lv} l(g^2)={lsq}")

        # pairs with combined weight <= radius (i <= j avoids duplicates)
        c_cache: dict[tuple[int, int], tuple | None] = {}
        l4 = report.axioms["L4"]
        l6 = report.axioms["L6"]
        pairs = []
        for i, (g, dg) in enumerate(elements):
            for j in range(i, len(elements)):
                f, df = elements[j]
                if dg + df <= radius:
                    pairs.append((i, j))
        for i, j in pairs:
            g, f = elements[i][0], elements[j][0]
            l4.checked += 1
            lprod = self.length_i(inv_i(g) + f)
            total = tuple(a + b - c for a, b, c in zip(lengths[i], lengths[j], lprod))
            if any(x % 2 for x in total):
                l4.record(
                    f"({self._word_text(g)}, {self._word_text(f)})", f"2c(g,f) = {total}"
                )
                c = None
            else:
                c = tuple(x // 2 for x in total)
            c_cache[(i, j)] = c
            l6.checked += 1
            if c is None or self._com_prefix(g, f, c) is None:
                l6.record(f"({self._word_text(g)}, {self._word_text(f)})", "no certified prefix")

        def cval(i, j):
            return c_cache[(i, j) if i <= j else (j, i)]

        l3 = report.axioms["L3"]
        for i, (g, dg) in enumerate(elements):
            for j in range(i, len(elements)):
                f, df = elements[j]
                if dg + df > radius:
                    continue
                for k in range(j, len(elements)):
                    h, dh = elements[k]
                    if dg + df + dh > radius:
                        continue
                    cs = (cval(i, j), cval(i, k), cval(j, k))
                    if any(x is None for x in cs):
                        continue
                    for (x, y, z), (cxy, cxz, cyz) in (
                        ((i, j, k), (cs[0], cs[1], cs[2])),
                        ((j, i, k), (cs[0], cs[2], cs[1])),
                        ((k, i, j), (cs[1], cs[2], cs[0])),
                    ):
                        l3.checked += 1
                        # axiom: c(g,f) > c(g,h) -> c(g,h) = c(f,h)
                        if _lexkey(cxy) > _lexkey(cxz) and cxz != cyz:
                            l3.record(
                                f"({self._word_text(elements[x][0])}, "
                                f"{self._word_text(elements[y][0])}, "
                                f"{self._word_text(elements[z][0])})",
                                f"c(g,f)={cxy} c(g,h)={cxz} c(f,h)={cyz}",
                            )
        return report

    def _word_text(self, iw):
        return self.sys.to_word(iw).to_text() or "1"


def _vsum(vectors, n):
    out = [0] * n
    for v in vectors:
        for i, x in enumerate(v):
            out[i] += x
    return tuple(out)


@dataclass
class AxiomCheck:
    checked: int = 0
    violations: int = 0
    first_counterexample: dict | None = None

    def record(self, where: str, detail: str):
        self.violations += 1
        if self.first_counterexample is None:
            self.first_counterexample = {"at": where, "detail": detail}

    def to_json(self):
        return {
            "checked": self.checked,
            "violations": self.violations,
            "first_counterexample": self.first_counterexample,
        }


@dataclass
class AxiomReport:
    radius: int
    weights: dict[str, int]
    notes: list[str] = field(default_factory=list)
    semantics: str = "tuples drawn with combined weighted length <= radius"
    axioms: dict[str, AxiomCheck] = field(
        default_factory=lambda: {
            name: AxiomCheck()
            for name in ("welldef", "L1", "L2", "L3", "L4", "L5", "L6")
        }
    )

    @property
    def ok(self) -> bool:
        return all(c.violations == 0 for c in self.axioms.values())

    def violations(self) -> int:
        return sum(c.violations for c in self.axioms.values())

    def to_json(self):
        return {
            "radius": self.radius,
            "weights": self.weights,
            "semantics": self.semantics,
            "notes": self.notes,
            "axioms": {k: v.to_json() for k, v in self.axioms.items()},
        }


_ENGINES: dict[int, tuple] = {}


def engine_for(t: "TowerPresentation", oracle_radius: int = 4) -> LengthEngine:
    entry = _ENGINES.get(id(t))
    if entry is not None and entry[0] is t:
        return entry[1]
    engine = LengthEngine(t, oracle_radius)
    _ENGINES[id(t)] = (t, engine)
    return engine


# --- module-level API mirroring the operations -------------------------------


def length(g: Word, t: "TowerPresentation", check_oracle: bool = False) -> LexVec:
    return engine_for(t).length(g, check_oracle=check_oracle)


def length_reduce(w: NormalForm, t: "TowerPresentation") -> Word:
    return engine_for(t).length_reduce(w)


def gromov_product(g: Word, f: Word, t: "TowerPresentation") -> LexVec:
    return engine_for(t).gromov_product(g, f)


def common_beginning(g: Word, f: Word, t: "TowerPresentation") -> Word:
    return engine_for(t).common_beginning(g, f)


def additive_junction(f: Word, g: Word, t: "TowerPresentation") -> bool:
    if not f or not g:
        raise IdentityInput("additive_junction requires nontrivial arguments")
    return engine_for(t).additive_junction(f, g)


def translation_length(g: Word, t: "TowerPresentation") -> LexVec:
    from .words import equal

    if equal(g, Word.identity(), t):
        raise IdentityInput("translation length of the identity")
    return engine_for(t).translation_length(g)


def check_axioms(t: "TowerPresentation", radius: int) -> AxiomReport:
    return engine_for(t).check_axioms(radius)
