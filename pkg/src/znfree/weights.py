"""Key Lemma weight systems and the weighted Cayley-graph machinery.

Positive integer weights are assigned to the generators so that both sides of
every associated pair get equal total weight.  Feasibility of the homogeneous
system (intersected with the open positive cone) is decided exactly over the
rationals; the canonical solution is the positive integer point of least
coordinate sum, ties broken lexicographically in generator file order, which
is automatically gcd-normalized.

The same module owns ball enumeration over canonical forms: Dijkstra with the
integer weights gives the weighted word metric wm, and Dijkstra with the
generators' Z^n length vectors (valid because the right-lex order is
translation-invariant and all lengths are positive) gives the lexicographic
shortest-path oracle used to cross-check the rewriting length engine.
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

from .errors import BallExceeded, Infeasible, ZnFreeError
from .lexvec import LexVec
from .words import Word, system_for

if TYPE_CHECKING:  # pragma: no cover
    from .tower import TowerPresentation


@dataclass(frozen=True)
class ConstraintSystem:
    """One homogeneous equation per associated pair: equal letter multisets
    imply equal weights; every variable is implicitly >= 1."""

    variables: tuple[str, ...]
    equations: tuple[tuple[tuple[tuple[str, int], ...], tuple[tuple[str, int], ...]], ...]

    def coefficient_rows(self) -> list[tuple[int, ...]]:
        """left minus right letter counts, one row per equation."""
        idx = {v: i for i, v in enumerate(self.variables)}
        rows = []
        for left, right in self.equations:
            row = [0] * len(self.variables)
            for name, c in left:
                row[idx[name]] += c
            for name, c in right:
                row[idx[name]] -= c
            rows.append(tuple(row))
        return rows


@dataclass(frozen=True)
class WeightSystem:
    weights: dict[str, int]

    def __post_init__(self):
        for name, w in self.weights.items():
            if not isinstance(w, int) or w < 1:
                raise ZnFreeError(f"weight of {name!r} must be a positive integer")

    def __getitem__(self, name: str) -> int:
        return self.weights[name]

    def to_json(self) -> dict[str, int]:
        return dict(self.weights)


def build_constraints(t: "TowerPresentation") -> ConstraintSystem:
    """One equation per associated pair; trivial equations (identical letter
    multisets, e.g. centralizer extensions) are dropped."""
    variables = tuple(t.generator_names())
    equations = []
    for lv in t.levels:
        for pair in lv.assoc:
            left = Counter(name for name, _ in pair.gen_word)
            right = Counter(name for name, _ in pair.image_word)
            if left != right:
                equations.append(
                    (tuple(sorted(left.items())), tuple(sorted(right.items()))),
                )
    return ConstraintSystem(variables, tuple(equations))


def solve_weights(cs: ConstraintSystem) -> WeightSystem:
    """Canonical positive integer solution, or Infeasible.

    Exact-rational elimination plus Fourier-Motzkin decides whether the
    nullspace meets {w >= 1}; a rational witness bounds the iterative
    deepening that returns the least-sum, lex-least integer point.
    """
    names = cs.variables
    n = len(names)
    if n == 0:
        return WeightSystem({})
    rows = cs.coefficient_rows()
    witness = _positive_point(rows, n)
    if witness is None:
        raise Infeasible("no strictly positive weight assignment satisfies the system")
    scale = 1
    for w in witness:
        scale = scale * w.denominator // _gcd(scale, w.denominator)
    integer_witness = [int(w * scale) for w in witness]
    best_sum = sum(integer_witness)

    int_rows = [tuple(int(c) for c in row) for row in rows]
    for total in range(n, best_sum + 1):
        found = _first_composition(total, n, int_rows)
        if found is not None:
            return WeightSystem(dict(zip(names, found)))
    return WeightSystem(dict(zip(names, integer_witness)))  # pragma: no cover


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _first_composition(total, n, rows):
    """Lex-least w in Z^n, w_i >= 1, sum w = total, all rows orthogonal to w."""

    def rec(prefix, remaining, k):
        if k == 1:
            w = prefix + [remaining]
            if all(sum(c * x for c, x in zip(row, w)) == 0 for row in rows):
                return w
            return None
        for v in range(1, remaining - (k - 1) + 1):
            res = rec(prefix + [v], remaining - v, k - 1)
            if res is not None:
                return res
        return None

    return rec([], total, n)


def _positive_point(rows, n):
    """A rational w >= 1 with every row orthogonal, or None.

    Gaussian elimination expresses pivot variables through free ones, the
    bounds w_i >= 1 become inequalities over the free variables, and
    Fourier-Motzkin elimination decides those exactly.
    """
    mat = [[Fraction(c) for c in row] for row in rows]
    pivots = {}
    r = 0
    for col in range(n):
        pivot_row = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        pv = mat[r][col]
        mat[r] = [c / pv for c in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots[col] = r
        r += 1
    free = [c for c in range(n) if c not in pivots]
    # w_col as an affine expression over free vars: (coeffs, constant=0)
    exprs = {}
    for col in range(n):
        if col in pivots:
            row = mat[pivots[col]]
            exprs[col] = [-row[f] for f in free]
        else:
            exprs[col] = [Fraction(1) if f == col else Fraction(0) for f in free]
    # constraints: expr(w_col) >= 1 for every col
    ineqs = [(list(exprs[col]), Fraction(1)) for col in range(n)]
    sol = _fourier_motzkin(ineqs, len(free))
    if sol is None:
        return None
    return [sum(c * v for c, v in zip(exprs[col], sol)) for col in range(n)]


def _fourier_motzkin(ineqs, k):
    """Solve {sum a_i x_i >= c}; returns a witness list of k Fractions or None."""
    if k == 0:
        return [] if all(c <= 0 for _, c in ineqs) else None
    lowers, uppers, rest = [], [], []
    for coeffs, c in ineqs:
        a = coeffs[k - 1]
        head = coeffs[: k - 1]
        if a > 0:
            lowers.append(([ci / a for ci in head], c / a))  # x >= c/a - head/a . x'
        elif a < 0:
            uppers.append(([ci / a for ci in head], c / a))  # x <= ...
        else:
            rest.append((head, c))
    projected = list(rest)
    for lo_h, lo_c in lowers:
        for up_h, up_c in uppers:
            # up bound >= lo bound:  (lo_h - up_h) . x' >= lo_c - up_c ... careful:
            # x >= lo_c - lo_h.x'   and   x <= up_c - up_h.x'
            # feasible iff (lo_h - up_h).x' >= lo_c - up_c
            projected.append(([lh - uh for lh, uh in zip(lo_h, up_h)], lo_c - up_c))
    sol = _fourier_motzkin(projected, k - 1)
    if sol is None:
        return None
    lo_vals = [c - sum(h * v for h, v in zip(head, sol)) for head, c in lowers]
    up_vals = [c - sum(h * v for h, v in zip(head, sol)) for head, c in uppers]
    if lo_vals:
        x = max(lo_vals)
    elif up_vals:
        x = min(up_vals) - 1
    else:
        x = Fraction(1)
    return sol + [x]


# --- Cayley-ball enumeration -------------------------------------------------

_WEIGHTS_CACHE: dict[int, tuple] = {}


def weights_for(t: "TowerPresentation") -> WeightSystem:
    """Canonical weight system for a tower (cached); raises Infeasible."""
    entry = _WEIGHTS_CACHE.get(id(t))
    if entry is not None and entry[0] is t:
        if isinstance(entry[1], Exception):
            raise entry[1]
        return entry[1]
    try:
        ws = solve_weights(build_constraints(t))
    except Infeasible as e:
        _WEIGHTS_CACHE[id(t)] = (t, e)
        raise
    _WEIGHTS_CACHE[id(t)] = (t, ws)
    return ws


_BALL_CACHE: dict = {}


def enumerate_wm_ball(t: "TowerPresentation", radius: int, ws: WeightSystem | None = None):
    """All group elements of weighted length <= radius, as a dict mapping the
    canonical word (integer form) to its wm distance from the identity."""
    sys_ = system_for(t)
    if ws is None:
        ws = weights_for(t)
    key = ("wm", id(t), radius, tuple(sorted(ws.weights.items())))
    hit = _BALL_CACHE.get(key)
    if hit is not None and hit[0] is t:
        return hit[1]
    letter_w = [None] + [ws[name] for name in sys_.names]
    letters = [i for i in range(1, len(sys_.names) + 1)]
    dist = {(): 0}
    heap = [(0, ())]
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist.get(v, -1):
            continue
        for a in letters:
            for letter in (a, -a):
                nd = d + letter_w[a]
                if nd > radius:
                    continue
                nb = sys_.canonical(v + (letter,))
                if nd < dist.get(nb, nd + 1):
                    dist[nb] = nd
                    heapq.heappush(heap, (nd, nb))
    _BALL_CACHE[key] = (t, dist)
    return dist


def lex_ball(t: "TowerPresentation", radius: int, ws: WeightSystem | None = None):
    """Lexicographic shortest-path distances (LexVec, as coordinate tuples)
    on the subgraph induced by the wm-ball of the given radius.

    Edge weights are the generators' length vectors; Dijkstra applies because
    they are positive and right-lex order is compatible with addition.  The
    distances are exact whenever some lex-geodesic stays inside the ball,
    which holds for towers with length-preserving isomorphisms.
    """
    sys_ = system_for(t)
    if ws is None:
        ws = weights_for(t)
    key = ("lex", id(t), radius, tuple(sorted(ws.weights.items())))
    hit = _BALL_CACHE.get(key)
    if hit is not None and hit[0] is t:
        return hit[1]
    verts = set(enumerate_wm_ball(t, radius, ws))
    letters = list(range(1, len(sys_.names) + 1))
    zero = (0,) * sys_.rank
    dist = {(): zero}
    heap = [((0,) * sys_.rank, ())]  # key is the reversed-coordinate tuple
    while heap:
        hkey, v = heapq.heappop(heap)
        dv = dist.get(v)
        if dv is None or tuple(reversed(dv)) < hkey:
            continue
        for a in letters:
            lv = sys_.length[a]
            for letter in (a, -a):
                nb = sys_.canonical(v + (letter,))
                if nb not in verts:
                    continue
                nd = tuple(x + y for x, y in zip(dv, lv))
                cur = dist.get(nb)
                if cur is None or tuple(reversed(nd)) < tuple(reversed(cur)):
                    dist[nb] = nd
                    heapq.heappush(heap, (tuple(reversed(nd)), nb))
    _BALL_CACHE[key] = (t, dist)
    return dist


def weighted_length(h: Word, ws: WeightSystem, t: "TowerPresentation", radius: int) -> int:
    """Shortest weighted distance from 1 to h in the Cayley graph, or
    BallExceeded when h lies outside the radius ball."""
    sys_ = system_for(t)
    ball = enumerate_wm_ball(t, radius, ws)
    target = sys_.canonical(sys_.to_i(h))
    if target not in ball:
        raise BallExceeded(radius)
    return ball[target]


def lex_shortest_length(h: Word, t: "TowerPresentation", radius: int) -> LexVec:
    """Lexicographic shortest-path distance from 1 to h (oracle for the
    rewriting length engine); BallExceeded when outside the ball."""
    sys_ = system_for(t)
    ball = lex_ball(t, radius)
    target = sys_.canonical(sys_.to_i(h))
    if target not in ball:
        raise BallExceeded(radius)
    return LexVec(ball[target])
