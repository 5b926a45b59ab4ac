"""Exact predicates on integer circles and extraction of their arrangement.

Crossing points of two integer circles have coordinates in a quadratic
field.  For circles ``i`` and ``j`` with ``d = c_j - c_i``, ``D2 = |d|^2``,
``L = D2 + r_i^2 - r_j^2`` and ``S = 4 r_i^2 D2 - L^2`` the two crossings are

    c_i + (L d + branch * sqrt(S) * n) / (2 D2)

where ``n`` is the left normal of ``d``.  The branch sign is always taken
relative to the pair ordered ``i < j``.  Angular comparisons reduce to signs
of ``p + q sqrt(s)`` and of ``P + sqrt(t) Q`` with ``P, Q`` in ``Z[sqrt(s)]``;
both are decided by a float filter with a proven error bound and, when the
filter is inconclusive, by sign-tracked squaring over the integers.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .maps import Arrangement, CanonicalCode, Disconnected, InvalidMap, TripleType, from_alpha

_U = 2.0 ** -53


class DegenerateScene(ValueError):
    pass


class DisconnectedScene(DegenerateScene):
    pass


class PairNotCrossing(ValueError):
    pass


class PrecondViolated(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Circle:
    a: int
    b: int
    r: int

    def __post_init__(self):
        for v in (self.a, self.b, self.r):
            if not isinstance(v, (int, np.integer)):
                raise TypeError("circle parameters must be integers")
        if self.r <= 0:
            raise ValueError("radius must be positive")


@dataclass(frozen=True)
class CircleArrangement:
    circles: tuple[Circle, ...]

    def __init__(self, circles: Sequence[Circle | tuple[int, int, int]]):
        object.__setattr__(self, "circles", tuple(
            c if isinstance(c, Circle) else Circle(*map(int, c)) for c in circles))

    def __len__(self) -> int:
        return len(self.circles)

    def __iter__(self):
        return iter(self.circles)

    def params(self) -> list[int]:
        return [x for c in self.circles for x in (c.a, c.b, c.r)]

    @classmethod
    def from_params(cls, params: Sequence[int]) -> "CircleArrangement":
        p = list(params)
        return cls([Circle(int(p[i]), int(p[i + 1]), int(p[i + 2])) for i in range(0, len(p), 3)])

    def scaled(self, k: int) -> "CircleArrangement":
        return CircleArrangement([Circle(c.a * k, c.b * k, c.r * k) for c in self.circles])

    def translated(self, dx: int, dy: int) -> "CircleArrangement":
        return CircleArrangement([Circle(c.a + dx, c.b + dy, c.r) for c in self.circles])

    def reflected(self) -> "CircleArrangement":
        return CircleArrangement([Circle(-c.a, c.b, c.r) for c in self.circles])

    def max_abs(self) -> int:
        return max(abs(x) for x in self.params()) if self.circles else 0


@dataclass(frozen=True, order=True)
class CrossingRef:
    pair: tuple[int, int]
    branch: int


class PairRelation(enum.Enum):
    CROSSING = "Crossing"
    DISJOINT_OUTSIDE = "Disjoint-outside"
    NESTED = "Nested"
    EXTERNALLY_TANGENT = "ExternallyTangent"
    INTERNALLY_TANGENT = "InternallyTangent"
    IDENTICAL = "Identical"


AT_INFINITY = None


def pair_relation(c1: Circle, c2: Circle) -> PairRelation:
    d2 = (c1.a - c2.a) ** 2 + (c1.b - c2.b) ** 2
    outer = (c1.r + c2.r) ** 2
    inner = (c1.r - c2.r) ** 2
    if d2 == 0 and c1.r == c2.r:
        return PairRelation.IDENTICAL
    if d2 > outer:
        return PairRelation.DISJOINT_OUTSIDE
    if d2 == outer:
        return PairRelation.EXTERNALLY_TANGENT
    if d2 > inner:
        return PairRelation.CROSSING
    if d2 == inner:
        return PairRelation.INTERNALLY_TANGENT
    return PairRelation.NESTED


def power(p: tuple[Fraction, Fraction], c: Circle) -> Fraction:
    return (p[0] - c.a) ** 2 + (p[1] - c.b) ** 2 - c.r * c.r


def radical_axis(c1: Circle, c2: Circle) -> tuple[int, int, int]:
    """Coefficients ``(A, B, C)`` of the line ``A x + B y = C``."""
    A = 2 * (c2.a - c1.a)
    B = 2 * (c2.b - c1.b)
    C = (c2.a ** 2 + c2.b ** 2 - c2.r ** 2) - (c1.a ** 2 + c1.b ** 2 - c1.r ** 2)
    return A, B, C


def radical_center(c1: Circle, c2: Circle, c3: Circle):
    """Common point of the three radical axes, or ``AT_INFINITY`` (None)."""
    A1, B1, C1 = radical_axis(c1, c2)
    A2, B2, C2 = radical_axis(c1, c3)
    det = A1 * B2 - A2 * B1
    if det == 0:
        return AT_INFINITY
    return (Fraction(C1 * B2 - C2 * B1, det), Fraction(A1 * C2 - A2 * C1, det))


def _require_crossing(*cs: Circle) -> None:
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            if pair_relation(cs[i], cs[j]) is not PairRelation.CROSSING:
                raise PairNotCrossing(f"circles {i} and {j} do not cross")


def triple_concurrent(c1: Circle, c2: Circle, c3: Circle) -> bool:
    _require_crossing(c1, c2, c3)
    rc = radical_center(c1, c2, c3)
    return rc is not AT_INFINITY and power(rc, c1) == 0


def krupp_predicate(c1: Circle, c2: Circle, c3: Circle) -> TripleType:
    """Krupp iff the radical center lies strictly inside the three circles."""
    _require_crossing(c1, c2, c3)
    rc = radical_center(c1, c2, c3)
    if rc is AT_INFINITY:
        return TripleType.NONKRUPP
    pw = power(rc, c1)
    if pw == 0:
        raise DegenerateScene("the three circles share a point")
    return TripleType.KRUPP if pw < 0 else TripleType.NONKRUPP


def check_radical_concurrency(c1: Circle, c2: Circle, c3: Circle,
                              axis: Callable[[Circle, Circle], tuple[int, int, int]] = radical_axis
                              ) -> bool:
    """The three pairwise radical axes are concurrent or all parallel."""
    _require_crossing(c1, c2, c3)
    rows = [axis(c1, c2), axis(c2, c3), axis(c3, c1)]
    (a1, b1, e1), (a2, b2, e2), (a3, b3, e3) = rows
    det = (a1 * (b2 * e3 - b3 * e2) - b1 * (a2 * e3 - a3 * e2) + e1 * (a2 * b3 - a3 * b2))
    return det == 0


# ------------------------------------------------------------ exact signs

def _sgn(x) -> int:
    return (x > 0) - (x < 0)


def sign_pq(p: int, q: int, s: int) -> int:
    """Sign of ``p + q sqrt(s)`` for integers with ``s >= 0``."""
    if q == 0 or s == 0:
        return _sgn(p)
    try:
        fq = q * math.sqrt(s)
        val = p + fq
        if abs(val) > 8 * _U * (abs(p) + abs(fq)) + 1e-300:
            return _sgn(val)
    except OverflowError:
        pass
    sp, sq = _sgn(p), _sgn(q)
    if sp == 0 or sp == sq:
        return sq if sp == 0 else sp
    return sp * _sgn(p * p - q * q * s)


def sign_two_roots(A: int, B: int, C: int, D: int, s1: int, s2: int) -> int:
    """Sign of ``A + B sqrt(s1) + C sqrt(s2) + D sqrt(s1 s2)``."""
    try:
        r1, r2 = math.sqrt(s1), math.sqrt(s2)
        terms = (A, B * r1, C * r2, D * r1 * r2)
        val = sum(terms)
        if abs(val) > 16 * _U * sum(abs(t) for t in terms) + 1e-300:
            return _sgn(val)
    except OverflowError:
        pass
    # (A + B sqrt s1) + sqrt(s2) (C + D sqrt s1)
    sP = sign_pq(A, B, s1)
    sQ = sign_pq(C, D, s1) if s2 else 0
    if sQ == 0:
        return sP
    if sP == 0:
        return sQ
    if sP == sQ:
        return sP
    diff = sign_pq(A * A + B * B * s1 - s2 * (C * C + D * D * s1), 2 * (A * B - s2 * C * D), s1)
    return sP * diff


# ------------------------------------------------------------ crossings

@dataclass(frozen=True)
class _Dir:
    """Direction ``(X, Y)`` from a center to a crossing, scaled by 2 D2 > 0."""

    xa: int
    xb: int
    ya: int
    yb: int
    s: int

    def half(self) -> int:
        sy = sign_pq(self.ya, self.yb, self.s)
        if sy > 0:
            return 0
        if sy < 0:
            return 1
        return 0 if sign_pq(self.xa, self.xb, self.s) > 0 else 1


def _pair_data(ci: Circle, cj: Circle) -> tuple[int, int, int, int, int]:
    dx, dy = cj.a - ci.a, cj.b - ci.b
    D2 = dx * dx + dy * dy
    L = D2 + ci.r * ci.r - cj.r * cj.r
    S = 4 * ci.r * ci.r * D2 - L * L
    return dx, dy, D2, L, S


def _direction(ci: Circle, cj: Circle, br: int) -> _Dir:
    dx, dy, D2, L, S = _pair_data(ci, cj)
    # L d + br sqrt(S) (-dy, dx)
    return _Dir(L * dx, -br * dy, L * dy, br * dx, S)


def _cmp_dir(u: _Dir, v: _Dir) -> int:
    hu, hv = u.half(), v.half()
    if hu != hv:
        return -1 if hu < hv else 1
    A = u.xa * v.ya - u.ya * v.xa
    B = u.xb * v.ya - u.yb * v.xa
    C = u.xa * v.yb - u.ya * v.xb
    D = u.xb * v.yb - u.yb * v.xb
    cr = sign_two_roots(A, B, C, D, u.s, v.s)
    return -cr


def _check_simple(scene: CircleArrangement) -> list[list[int]]:
    cs = scene.circles
    n = len(cs)
    partners = [[] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rel = pair_relation(cs[i], cs[j])
            if rel in (PairRelation.EXTERNALLY_TANGENT, PairRelation.INTERNALLY_TANGENT,
                       PairRelation.IDENTICAL):
                raise DegenerateScene(f"circles {i} and {j}: {rel.value}")
            if rel is PairRelation.CROSSING:
                partners[i].append(j)
                partners[j].append(i)
    return partners


def _order_on(scene: CircleArrangement, i: int, partners: Sequence[int]) -> list[CrossingRef]:
    ci = scene.circles[i]
    items = []
    for j in partners:
        for br in (1, -1):
            # branch is stored relative to the ordered pair (min, max)
            local = br if i < j else -br
            items.append((CrossingRef((min(i, j), max(i, j)), br),
                          _direction(ci, scene.circles[j], local)))

    def cmp(x, y):
        c = _cmp_dir(x[1], y[1])
        if c == 0:
            raise DegenerateScene(f"two crossings coincide on circle {i}")
        return c

    items.sort(key=functools.cmp_to_key(cmp))
    return [ref for ref, _ in items]


def crossing_order(scene: CircleArrangement, i: int) -> list[CrossingRef]:
    """Counterclockwise order of the crossings on circle ``i``.

    The cyclic sequence starts at the first crossing at or after angle zero.
    """
    partners = _check_simple(scene)
    if not partners[i]:
        raise PairNotCrossing(f"circle {i} crosses no other circle")
    return _order_on(scene, i, partners[i])


def extract_arrangement(scene: CircleArrangement) -> Arrangement:
    """Combinatorial arrangement realized by the scene, computed exactly.

    At a crossing of ``i < j`` on branch +1 the counterclockwise rotation is
    ``(i forward, j forward, i backward, j backward)``; on branch -1 the two
    ``j`` darts are swapped.  Forward means counterclockwise along the circle.
    """
    partners = _check_simple(scene)
    n = len(scene)
    for i in range(n):
        if not partners[i]:
            raise DisconnectedScene(f"circle {i} crosses no other circle")
    vid: dict[CrossingRef, int] = {}
    orders = [_order_on(scene, i, partners[i]) for i in range(n)]
    for order in orders:
        for ref in order:
            vid.setdefault(ref, len(vid))
    alpha = np.empty(4 * len(vid), dtype=np.int32)

    def dart(ref: CrossingRef, circle: int, forward: bool) -> int:
        base = 4 * vid[ref]
        i, j = ref.pair
        if circle == i:
            return base + (0 if forward else 2)
        if ref.branch > 0:
            return base + (1 if forward else 3)
        return base + (3 if forward else 1)

    for i, order in enumerate(orders):
        k = len(order)
        for t in range(k):
            a = dart(order[t], i, True)
            b = dart(order[(t + 1) % k], i, False)
            alpha[a] = b
            alpha[b] = a
    try:
        return from_alpha(alpha)
    except Disconnected as exc:
        raise DisconnectedScene(str(exc)) from None
    except InvalidMap as exc:
        raise DegenerateScene(f"extraction produced an invalid map: {exc}") from None


def extract_code(scene: CircleArrangement) -> CanonicalCode:
    return extract_arrangement(scene).code


# ------------------------------------------------------------ Miquel oracle

class _QS:
    """Element of a multi-quadratic field: ``sum c_m sqrt(m)`` over squarefree m."""

    __slots__ = ("t",)

    def __init__(self, terms=None):
        self.t = {m: c for m, c in (terms or {}).items() if c != 0}

    @staticmethod
    def rational(x) -> "_QS":
        return _QS({1: Fraction(x)})

    @staticmethod
    def sqrt_int(s: int) -> "_QS":
        k, m = _square_split(s)
        return _QS({m: Fraction(k)})

    def __add__(self, o: "_QS") -> "_QS":
        out = dict(self.t)
        for m, c in o.t.items():
            out[m] = out.get(m, 0) + c
        return _QS(out)

    def __neg__(self) -> "_QS":
        return _QS({m: -c for m, c in self.t.items()})

    def __sub__(self, o: "_QS") -> "_QS":
        return self + (-o)

    def __mul__(self, o: "_QS") -> "_QS":
        out: dict[int, Fraction] = {}
        for m1, c1 in self.t.items():
            for m2, c2 in o.t.items():
                g = math.gcd(m1, m2)
                m = (m1 // g) * (m2 // g)
                out[m] = out.get(m, 0) + c1 * c2 * g
        return _QS(out)

    def is_zero(self) -> bool:
        return not self.t


def _square_split(s: int) -> tuple[int, int]:
    """``s = k^2 m`` with ``m`` squarefree."""
    if s == 0:
        return 0, 1
    from sympy import factorint
    k, m = 1, 1
    for p, e in factorint(s).items():
        k *= p ** (e // 2)
        if e % 2:
            m *= p
    return k, m


def crossing_points(c1: Circle, c2: Circle) -> tuple[tuple[_QS, _QS], tuple[_QS, _QS]]:
    """Exact coordinates of the two crossings, branch +1 first."""
    _require_crossing(c1, c2)
    dx, dy, D2, L, S = _pair_data(c1, c2)
    root = _QS.sqrt_int(S)
    out = []
    for br in (1, -1):
        x = _QS.rational(c1.a + Fraction(L * dx, 2 * D2)) + root * _QS.rational(Fraction(-br * dy, 2 * D2))
        y = _QS.rational(c1.b + Fraction(L * dy, 2 * D2)) + root * _QS.rational(Fraction(br * dx, 2 * D2))
        out.append((x, y))
    return out[0], out[1]


def _on_circle(p, c: Circle) -> bool:
    x = p[0] - _QS.rational(c.a)
    y = p[1] - _QS.rational(c.b)
    return (x * x + y * y - _QS.rational(c.r * c.r)).is_zero()


def _same_point(p, q) -> bool:
    return (p[0] - q[0]).is_zero() and (p[1] - q[1]).is_zero()


def _det(m):
    if len(m) == 1:
        return m[0][0]
    total = _QS()
    for j in range(len(m)):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def concyclic(points) -> bool:
    """Exact test that four points lie on a common circle or line."""
    one = _QS.rational(1)
    rows = [[x, y, x * x + y * y, one] for x, y in points]
    return _det(rows).is_zero()


def check_miquel(c1: Circle, c2: Circle, c3: Circle, c4: Circle, witness: Circle) -> bool:
    """Miquel's theorem as an oracle for the exact point arithmetic.

    The witness passes through one crossing of each consecutive pair
    (1,2), (2,3), (3,4), (4,1); the result says whether the four remaining
    crossings are concyclic.
    """
    cs = (c1, c2, c3, c4)
    chosen, other = [], []
    for k in range(4):
        a, b = cs[k], cs[(k + 1) % 4]
        if pair_relation(a, b) is not PairRelation.CROSSING:
            raise PrecondViolated(f"pair ({k + 1},{(k + 1) % 4 + 1}) does not cross")
        p, q = crossing_points(a, b)
        on_p, on_q = _on_circle(p, witness), _on_circle(q, witness)
        if on_p == on_q:
            raise PrecondViolated("witness must pass through exactly one crossing of each pair")
        chosen.append(p if on_p else q)
        other.append(q if on_p else p)
    for i in range(4):
        for j in range(i + 1, 4):
            if _same_point(chosen[i], chosen[j]) or _same_point(other[i], other[j]):
                raise PrecondViolated("configuration is not simple")
    return concyclic(other)
