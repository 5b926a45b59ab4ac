"""Combinatorial maps of simple connected pseudocircle arrangements.

A map is given by two permutations of darts: ``sigma`` (counterclockwise
rotation at each crossing) and ``alpha`` (the fixed-point-free involution
pairing the two ends of every pseudo-arc).  Internally every validated map
is brought into vertex-major form, where crossing ``v`` owns the darts
``4v, 4v+1, 4v+2, 4v+3`` in rotation order.  Pseudocircles are never stored;
they are recovered by going straight through every crossing.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K


class InvalidMap(ValueError):
    """Base class for maps that do not encode a simple connected arrangement."""


class NotDegree4(InvalidMap):
    pass


class NotInvolution(InvalidMap):
    pass


class NotSpherical(InvalidMap):
    pass


class PairCrossesMoreThanTwice(InvalidMap):
    pass


class SelfCrossing(InvalidMap):
    pass


class Disconnected(InvalidMap):
    pass


class WouldDisconnect(ValueError):
    pass


class NotSimpleWiring(ValueError):
    pass


class TripleType(enum.Enum):
    KRUPP = "Krupp"
    NONKRUPP = "NonKrupp"
    CHAIN = "Chain"
    DISJOINT = "Disjoint-containing"


@dataclass(frozen=True)
class CombinatorialMap:
    sigma: tuple[int, ...]
    alpha: tuple[int, ...]

    @classmethod
    def from_vertex_major(cls, alpha: Sequence[int]) -> "CombinatorialMap":
        m = len(alpha)
        sigma = tuple((d & ~3) | ((d + 1) & 3) for d in range(m))
        return cls(sigma, tuple(int(a) for a in alpha))

    def relabel(self, perm: Sequence[int]) -> "CombinatorialMap":
        """Rename dart ``d`` to ``perm[d]``."""
        m = len(self.sigma)
        sigma = [0] * m
        alpha = [0] * m
        for d in range(m):
            sigma[perm[d]] = perm[self.sigma[d]]
            alpha[perm[d]] = perm[self.alpha[d]]
        return CombinatorialMap(tuple(sigma), tuple(alpha))

    def mirror(self) -> "CombinatorialMap":
        inv = [0] * len(self.sigma)
        for d, s in enumerate(self.sigma):
            inv[s] = d
        return CombinatorialMap(tuple(inv), self.alpha)


@dataclass(frozen=True)
class PropertyFlags:
    connected: bool
    intersecting: bool
    digon_free: bool
    cylindrical: bool
    great: bool
    cell_vector: tuple[int, ...]

    @property
    def p2(self) -> int:
        return self.cell_vector[0] if self.cell_vector else 0

    @property
    def p3(self) -> int:
        return self.cell_vector[1] if len(self.cell_vector) > 1 else 0


@dataclass(frozen=True, order=True)
class CanonicalCode:
    text: str

    PREFIX = "PC1"

    def __post_init__(self):
        parse_code(self.text)

    @property
    def n(self) -> int:
        return parse_code(self.text)[0]

    @property
    def sequence(self) -> tuple[int, ...]:
        return parse_code(self.text)[1]

    @property
    def key(self) -> bytes:
        return code_key(np.asarray(self.sequence, dtype=np.int32))

    def arrangement(self) -> "Arrangement":
        return from_code(self)

    def __str__(self) -> str:
        return self.text


def parse_code(text: str) -> tuple[int, tuple[int, ...]]:
    try:
        head, ntok, body = text.strip().split(":")
        if head != "PC1" or not ntok.startswith("n="):
            raise ValueError
        n = int(ntok[2:])
        seq = tuple(int(t) for t in body.split("."))
    except ValueError:
        raise ValueError(f"malformed canonical code: {text[:40]!r}") from None
    if len(seq) % 8 or not seq:
        raise ValueError(f"code length {len(seq)} is not a positive multiple of 8")
    return n, seq


def code_key(seq: np.ndarray) -> bytes:
    """Compact byte form of a code sequence (used for hashing)."""
    if seq.shape[0] <= 512:
        return seq.astype(np.uint8).tobytes()
    return seq.astype(np.uint16).tobytes()


def key_to_sequence(key: bytes) -> np.ndarray:
    arr = np.frombuffer(key, dtype=np.uint8)
    if arr.shape[0] > 512:
        arr = np.frombuffer(key, dtype=np.uint16)
    return arr.astype(np.int32)


def code_text(n: int, seq: Iterable[int]) -> str:
    return f"PC1:n={n}:" + ".".join(str(int(x)) for x in seq)


class Arrangement:
    """A validated arrangement in vertex-major form.

    Use :func:`validate` to build one from an arbitrary
    :class:`CombinatorialMap`; the constructor trusts its input.
    """

    def __init__(self, alpha: np.ndarray):
        a = np.ascontiguousarray(alpha, dtype=np.int32).copy()
        a.setflags(write=False)
        self.alpha = a
        cid, n = K.circles(a)
        cid.setflags(write=False)
        self.circle_of = cid
        self.n = int(n)

    @property
    def v(self) -> int:
        return self.alpha.shape[0] // 4

    @property
    def e(self) -> int:
        return 2 * self.v

    @property
    def f(self) -> int:
        return len(self.face_sizes)

    def to_map(self) -> CombinatorialMap:
        return CombinatorialMap.from_vertex_major(self.alpha)

    @cached_property
    def _faces(self):
        fid, sizes = K.faces(self.alpha)
        return fid, sizes

    @property
    def face_of(self) -> np.ndarray:
        return self._faces[0]

    @property
    def face_sizes(self) -> np.ndarray:
        return self._faces[1]

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        """Face boundary walks as dart cycles (orbits of sigma*alpha)."""
        out = []
        seen = set()
        a = self.alpha
        for d in range(a.shape[0]):
            if d in seen:
                continue
            cyc = []
            x = d
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = (int(a[x]) & ~3) | ((int(a[x]) + 1) & 3)
            out.append(tuple(cyc))
        return tuple(out)

    @cached_property
    def circles(self) -> tuple[tuple[int, ...], ...]:
        """For each pseudocircle, its darts in one traversal direction."""
        out: list[tuple[int, ...]] = [()] * self.n
        a = self.alpha
        for c in range(self.n):
            start = int(np.flatnonzero(self.circle_of == c)[0])
            cyc = []
            x = start
            while True:
                cyc.append(x)
                x = int(a[K.opp(x)])
                if x == start:
                    break
            out[c] = tuple(cyc)
        return tuple(out)

    @cached_property
    def crossings(self) -> np.ndarray:
        """Matrix of crossing counts between pairs of pseudocircles."""
        return K.crossing_pairs(self.alpha, self.circle_of, self.n)

    def vertex_circles(self, v: int) -> tuple[int, int]:
        return int(self.circle_of[4 * v]), int(self.circle_of[4 * v + 1])

    @cached_property
    def face_sides(self) -> np.ndarray:
        """Bitmask per face: bit ``c`` tells the side of pseudocircle ``c``."""
        fid = self.face_of
        nf = self.f
        side = np.full(nf, -1, dtype=np.int64)
        darts_of = [[] for _ in range(nf)]
        for d, f in enumerate(fid):
            darts_of[f].append(d)
        side[0] = 0
        stack = [0]
        while stack:
            f = stack.pop()
            for d in darts_of[f]:
                g = fid[self.alpha[d]]
                s = side[f] ^ (1 << int(self.circle_of[d]))
                if side[g] < 0:
                    side[g] = s
                    stack.append(g)
                elif side[g] != s:
                    raise NotSpherical("pseudocircle sides are inconsistent")
        return side

    def vertex_side(self, v: int, c: int) -> int:
        return int(self.face_sides[self.face_of[4 * v]] >> c) & 1

    @cached_property
    def flags(self) -> PropertyFlags:
        return properties(self)

    @cached_property
    def code(self) -> CanonicalCode:
        return canonical_code(self)

    def __repr__(self) -> str:
        return f"Arrangement(n={self.n}, v={self.v}, f={self.f})"


def _normalize(sigma: Sequence[int], alpha: Sequence[int]) -> np.ndarray:
    m = len(sigma)
    if len(alpha) != m or m == 0:
        raise NotDegree4("sigma and alpha must be permutations of one non-empty dart set")
    if sorted(sigma) != list(range(m)):
        raise NotDegree4("sigma is not a permutation")
    if sorted(alpha) != list(range(m)):
        raise NotInvolution("alpha is not a permutation")
    for d in range(m):
        if alpha[d] == d or alpha[alpha[d]] != d:
            raise NotInvolution(f"alpha is not a fixed-point-free involution at dart {d}")
    newid = [-1] * m
    k = 0
    for d in range(m):
        if newid[d] >= 0:
            continue
        orbit = [d]
        x = sigma[d]
        while x != d:
            orbit.append(x)
            x = sigma[x]
        if len(orbit) != 4:
            raise NotDegree4(f"crossing through dart {d} has degree {len(orbit)}")
        for j, x in enumerate(orbit):
            newid[x] = 4 * k + j
        k += 1
    out = np.empty(m, dtype=np.int32)
    for d in range(m):
        out[newid[d]] = newid[alpha[d]]
    return out


def check_vertex_major(alpha: np.ndarray) -> None:
    """Raise the matching :class:`InvalidMap` if ``alpha`` is not an arrangement."""
    if not K.connected(alpha):
        raise Disconnected("arrangement graph is not connected")
    v = alpha.shape[0] // 4
    _, sizes = K.faces(alpha)
    if v - 2 * v + len(sizes) != 2:
        raise NotSpherical(f"Euler characteristic {v - 2 * v + len(sizes)} != 2")
    cid, n = K.circles(alpha)
    for w in range(v):
        if cid[4 * w] == cid[4 * w + 1]:
            raise SelfCrossing(f"pseudocircle {cid[4 * w]} crosses itself at crossing {w}")
    cnt = K.crossing_pairs(alpha, cid, n)
    bad = np.argwhere((cnt != 0) & (cnt != 2))
    if bad.size:
        i, j = bad[0]
        raise PairCrossesMoreThanTwice(
            f"pseudocircles {i} and {j} cross {cnt[i, j]} times")


def validate(cmap: CombinatorialMap) -> Arrangement:
    alpha = _normalize(cmap.sigma, cmap.alpha)
    check_vertex_major(alpha)
    arr = Arrangement(alpha)
    arr.face_sides  # planarity of every pseudocircle
    return arr


def from_alpha(alpha: Sequence[int], check: bool = True) -> Arrangement:
    a = np.asarray(alpha, dtype=np.int32)
    if check:
        return validate(CombinatorialMap.from_vertex_major(a))
    return Arrangement(a)


# ---------------------------------------------------------------- properties


def properties(arr: Arrangement) -> PropertyFlags:
    sizes = arr.face_sizes
    top = int(sizes.max()) if sizes.size else 2
    cells = [0] * (top - 1)
    for s in sizes:
        cells[int(s) - 2] += 1
    n = arr.n
    intersecting = arr.v == n * (n - 1)
    sides = arr.face_sides
    full = (1 << n) - 1
    present = set(int(s) for s in sides)
    cylindrical = any((s ^ full) in present for s in present)
    great = intersecting and _all_krupp(arr)
    return PropertyFlags(
        connected=True,
        intersecting=intersecting,
        digon_free=cells[0] == 0,
        cylindrical=cylindrical,
        great=great,
        cell_vector=tuple(cells),
    )


def _pair_vertices(arr: Arrangement) -> dict[tuple[int, int], list[int]]:
    out: dict[tuple[int, int], list[int]] = {}
    for w in range(arr.v):
        a, b = arr.vertex_circles(w)
        out.setdefault((min(a, b), max(a, b)), []).append(w)
    return out


def _separated(arr: Arrangement, pv, i: int, j: int, k: int) -> bool:
    p, q = pv[(min(i, j), max(i, j))]
    return arr.vertex_side(p, k) != arr.vertex_side(q, k)


def triple_type(arr: Arrangement, i: int, j: int, k: int) -> TripleType:
    if len({i, j, k}) != 3:
        raise ValueError("circle ids must be distinct")
    cr = arr.crossings
    crossing = [cr[i, j] > 0, cr[j, k] > 0, cr[i, k] > 0]
    if all(crossing):
        pv = _pair_vertices(arr)
        if (_separated(arr, pv, i, j, k) and _separated(arr, pv, j, k, i)
                and _separated(arr, pv, i, k, j)):
            return TripleType.KRUPP
        return TripleType.NONKRUPP
    if sum(crossing) == 2:
        return TripleType.CHAIN
    return TripleType.DISJOINT


def _all_krupp(arr: Arrangement) -> bool:
    pv = _pair_vertices(arr)
    for i, j, k in itertools.combinations(range(arr.n), 3):
        if not (_separated(arr, pv, i, j, k) and _separated(arr, pv, j, k, i)
                and _separated(arr, pv, i, k, j)):
            return False
    return True


def is_great(arr: Arrangement) -> bool:
    return arr.flags.great


def triangle_triples(arr: Arrangement) -> list[tuple[int, int, int]]:
    """The three pseudocircles bounding each triangular cell."""
    out = []
    for cyc in arr.faces:
        if len(cyc) == 3:
            out.append(tuple(sorted(int(arr.circle_of[d]) for d in cyc)))
    return out


# ---------------------------------------------------------- canonical codes


def canonical_code(arr: Arrangement) -> CanonicalCode:
    seq, _ = K.canon(arr.alpha)
    return CanonicalCode(code_text(arr.n, seq))


def canonical_key(arr: Arrangement) -> bytes:
    seq, _ = K.canon(arr.alpha)
    return code_key(seq)


def automorphism_order(arr: Arrangement) -> int:
    _, ties = K.canon(arr.alpha)
    return int(ties)


def from_code(code: CanonicalCode | str) -> Arrangement:
    text = code.text if isinstance(code, CanonicalCode) else code
    n, seq = parse_code(text)
    m = len(seq) // 2
    sigma = seq[1::2]
    alpha = seq[0::2]
    if len(sigma) != m:
        raise ValueError("truncated code")
    arr = validate(CombinatorialMap(tuple(sigma), tuple(alpha)))
    if arr.n != n:
        raise ValueError(f"code declares n={n} but encodes {arr.n} pseudocircles")
    return arr


def from_key(key: bytes) -> Arrangement:
    """Rebuild a trusted arrangement from a byte key (no validation)."""
    return Arrangement(K.decode(key_to_sequence(key)))


def relabel_random(arr: Arrangement, rng: random.Random) -> CombinatorialMap:
    m = arr.alpha.shape[0]
    perm = list(range(m))
    rng.shuffle(perm)
    return arr.to_map().relabel(perm)


# ----------------------------------------------------- wiring constructions


def from_cylinder(n: int, swaps: Sequence[int]) -> Arrangement:
    """Closed wiring diagram on a cylinder.

    ``swaps`` lists adjacent transpositions by track position ``1..n-1``;
    the wires must return to their initial order so every wire closes up.
    """
    order = list(range(n))
    visits: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for t, p in enumerate(swaps):
        if not 1 <= p < n:
            raise NotSimpleWiring(f"swap position {p} out of range 1..{n - 1}")
        lo, hi = order[p - 1], order[p]
        visits[lo].append((4 * t + 0, 4 * t + 2))
        visits[hi].append((4 * t + 3, 4 * t + 1))
        order[p - 1], order[p] = hi, lo
    if order != list(range(n)):
        raise NotSimpleWiring("wires do not close up")
    m = 4 * len(swaps)
    alpha = [0] * m
    for seq in visits:
        if not seq:
            raise NotSimpleWiring("a wire has no crossing")
        for k, (fwd, _) in enumerate(seq):
            nxt_bwd = seq[(k + 1) % len(seq)][1]
            alpha[fwd] = nxt_bwd
            alpha[nxt_bwd] = fwd
    return from_alpha(alpha)


def check_simple_wiring(n: int, transpositions: Sequence[int]) -> None:
    order = list(range(n))
    count: dict[tuple[int, int], int] = {}
    for p in transpositions:
        if not 1 <= p < n:
            raise NotSimpleWiring(f"swap position {p} out of range 1..{n - 1}")
        a, b = order[p - 1], order[p]
        key = (min(a, b), max(a, b))
        count[key] = count.get(key, 0) + 1
        order[p - 1], order[p] = b, a
    for pair in itertools.combinations(range(n), 2):
        if count.get(pair, 0) != 1:
            raise NotSimpleWiring(f"pseudolines {pair} swap {count.get(pair, 0)} times")


def from_wiring(n: int, transpositions: Sequence[int]) -> Arrangement:
    """Great-pseudocircle arrangement from a simple Euclidean wiring diagram.

    The diagram is followed by its mirror image (positions ``p -> n - p``),
    which closes every wire on the cylinder.
    """
    check_simple_wiring(n, transpositions)
    swaps = list(transpositions) + [n - p for p in transpositions]
    return from_cylinder(n, swaps)


# ---------------------------------------------------------------- deletion


def delete_circles(arr: Arrangement, drop: Iterable[int]) -> Arrangement:
    """Sub-arrangement induced by all circles not in ``drop``."""
    drop = set(drop)
    keep_n = arr.n - len(drop)
    a = arr.alpha
    v = arr.v
    gone = [arr.vertex_circles(w)[0] in drop or arr.vertex_circles(w)[1] in drop
            for w in range(v)]
    newv = {}
    for w in range(v):
        if not gone[w]:
            newv[w] = len(newv)
    if not newv:
        raise WouldDisconnect("no crossings remain")
    out = np.empty(4 * len(newv), dtype=np.int32)
    for w, nw in newv.items():
        for j in range(4):
            y = int(a[4 * w + j])
            while gone[y >> 2]:
                y = int(a[K.opp(y)])
            out[4 * nw + j] = 4 * newv[y >> 2] + (y & 3)
    sub = Arrangement(out)
    if sub.n != keep_n or not K.connected(out):
        raise WouldDisconnect("remaining pseudocircles are not connected")
    return sub


def delete_circle(arr: Arrangement, i: int) -> Arrangement:
    if not 0 <= i < arr.n:
        raise IndexError(i)
    return delete_circles(arr, [i])


# ------------------------------------------------------------ named maps


def two_circles() -> Arrangement:
    return from_wiring(2, [1])


def krupp() -> Arrangement:
    return from_wiring(3, [1, 2, 1])


def nonkrupp() -> Arrangement:
    return from_cylinder(3, [1, 2, 1, 1, 2, 1])


def three_chain() -> Arrangement:
    # middle wire crosses both outer wires twice, outer wires stay disjoint
    return from_cylinder(3, [1, 1, 2, 2])
