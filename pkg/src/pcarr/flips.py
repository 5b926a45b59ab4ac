"""Triangle and digon flips, and breadth-first flip-graph closure."""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import _kernels as K
from .maps import (Arrangement, CanonicalCode, code_key, code_text, from_alpha,
                   from_key, key_to_sequence)


class BudgetExceeded(RuntimeError):
    """Raised when a search hits its node or time cap; carries partial output."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


def triangle_flips(arr: Arrangement) -> list[tuple[int, Arrangement]]:
    out = []
    for fi, cyc in enumerate(arr.faces):
        if len(cyc) == 3:
            out.append((fi, from_alpha(K.triangle_flip(arr.alpha, cyc[0]))))
    return out


def flip_triangle(arr: Arrangement, face: int) -> Arrangement:
    cyc = arr.faces[face]
    if len(cyc) != 3:
        raise ValueError(f"face {face} is a {len(cyc)}-cell, not a triangle")
    return from_alpha(K.triangle_flip(arr.alpha, cyc[0]))


def flipped_face(arr: Arrangement, face: int) -> int:
    """Index of the new triangle created by flipping ``face``."""
    d = K.opp(arr.faces[face][0])
    return int(flip_triangle(arr, face).face_of[d])


@dataclass
class DigonMoves:
    collapses: list[tuple[int, Arrangement]]
    creations: list[tuple[tuple[int, int], Arrangement]]
    rejected: Counter = field(default_factory=Counter)

    def all(self) -> list[tuple[object, Arrangement]]:
        return list(self.collapses) + list(self.creations)


def creation_sites(arr: Arrangement) -> list[tuple[int, int]]:
    """Dart pairs (one per boundary arc) where a digon can be created."""
    sites = []
    cr = arr.crossings
    cid = arr.circle_of
    for cyc in arr.faces:
        for i in range(len(cyc)):
            for j in range(i + 1, len(cyc)):
                a, b = int(cid[cyc[i]]), int(cid[cyc[j]])
                if a != b and cr[a, b] == 0:
                    sites.append((cyc[i], cyc[j]))
    return sites


def collapse_digon(arr: Arrangement, face: int) -> Arrangement | None:
    cyc = arr.faces[face]
    if len(cyc) != 2:
        raise ValueError(f"face {face} is not a digon")
    out = K.digon_collapse(arr.alpha, cyc[0])
    return from_alpha(out) if out.shape[0] else None


def create_digon(arr: Arrangement, d1: int, d2: int) -> Arrangement:
    return from_alpha(K.digon_create(arr.alpha, d1, d2))


def digon_flips(arr: Arrangement) -> DigonMoves:
    moves = DigonMoves([], [])
    for fi, cyc in enumerate(arr.faces):
        if len(cyc) != 2:
            continue
        res = collapse_digon(arr, fi)
        if res is None:
            moves.rejected["collapse-disconnects"] += 1
        else:
            moves.collapses.append((fi, res))
    for site in creation_sites(arr):
        moves.creations.append((site, create_digon(arr, *site)))
    cr = arr.crossings
    for cyc in arr.faces:
        for i in range(len(cyc)):
            for j in range(i + 1, len(cyc)):
                a, b = int(arr.circle_of[cyc[i]]), int(arr.circle_of[cyc[j]])
                if a == b:
                    moves.rejected["create-same-circle"] += 1
                elif cr[a, b]:
                    moves.rejected["create-already-crossing"] += 1
    return moves


# ---------------------------------------------------------------- closure

CLASSES = ("connected", "connected-digonfree", "intersecting", "intersecting-digonfree")


def _class_test(name: str, n: int) -> Callable[[int, int], bool]:
    full = n * (n - 1)
    tests = {
        "connected": lambda v, dig: True,
        "connected-digonfree": lambda v, dig: dig == 0,
        "intersecting": lambda v, dig: v == full,
        "intersecting-digonfree": lambda v, dig: v == full and dig == 0,
    }
    try:
        return tests[name]
    except KeyError:
        raise ValueError(f"unknown class {name!r}; expected one of {CLASSES}") from None


@dataclass
class FlipGraph:
    n: int
    keys: list[bytes]
    index: dict[bytes, int]
    adjacency: list[set[int]] | None

    def __len__(self) -> int:
        return len(self.keys)

    def codes(self) -> list[CanonicalCode]:
        return [CanonicalCode(code_text(self.n, key_to_sequence(k))) for k in self.keys]

    def arrangement(self, i: int) -> Arrangement:
        return from_key(self.keys[i])

    def edges(self) -> Iterable[tuple[int, int]]:
        if self.adjacency is None:
            raise ValueError("graph was built without adjacency")
        for i, nb in enumerate(self.adjacency):
            for j in nb:
                if i < j:
                    yield i, j

    def is_connected(self) -> bool:
        if not self.keys:
            return True
        if self.adjacency is None:
            # closure from seeds is connected when there is a single seed
            raise ValueError("graph was built without adjacency")
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for j in self.adjacency[i]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == len(self.keys)


def flip_graph(seeds: Sequence[Arrangement], moves: str = "t",
               class_filter: str = "intersecting-digonfree",
               extra_filter: Callable[[Arrangement], bool] | None = None,
               keep_edges: bool = True, max_nodes: int | None = None,
               max_seconds: float | None = None) -> FlipGraph:
    """Breadth-first closure of ``seeds`` under flips that stay in the class.

    ``moves`` is ``"t"`` (triangle flips only) or ``"td"`` (triangle and
    digon flips).  Both endpoints of every edge lie in the class.
    """
    if moves not in ("t", "td"):
        raise ValueError("moves must be 't' or 'td'")
    if not seeds:
        return FlipGraph(0, [], {}, [] if keep_edges else None)
    n = seeds[0].n
    test = _class_test(class_filter, n)
    use_digons = moves == "td"
    keys: list[bytes] = []
    index: dict[bytes, int] = {}
    adj: list[set[int]] | None = [] if keep_edges else None

    def admit(key: bytes) -> int:
        i = len(keys)
        keys.append(key)
        index[key] = i
        if adj is not None:
            adj.append(set())
        return i

    for s in seeds:
        if s.n != n:
            raise ValueError("all seeds must have the same number of pseudocircles")
        if not test(s.v, int(s.flags.cell_vector[0])):
            raise ValueError(f"seed is not in class {class_filter}")
        if extra_filter is not None and not extra_filter(s):
            raise ValueError("seed rejected by extra_filter")
        seq, _ = K.canon(s.alpha)
        key = code_key(seq)
        if key not in index:
            admit(key)

    start = time.monotonic()
    head = 0
    while head < len(keys):
        if max_seconds is not None and time.monotonic() - start > max_seconds:
            raise BudgetExceeded("flip graph time cap reached",
                                 FlipGraph(n, keys, index, adj))
        key = keys[head]
        src = head
        head += 1
        alpha = K.decode(key_to_sequence(key))
        v = alpha.shape[0] // 4
        tri, tri_d, col, col_d, cre, cre_d = K.expand(alpha, True, use_digons)
        for rows, digs, nv in ((tri, tri_d, v), (col, col_d, v - 2), (cre, cre_d, v + 2)):
            for r in range(rows.shape[0]):
                if not test(nv, digs[r]):
                    continue
                k2 = code_key(rows[r])
                j = index.get(k2)
                if j is None:
                    if extra_filter is not None and not extra_filter(from_key(k2)):
                        continue
                    if max_nodes is not None and len(keys) >= max_nodes:
                        raise BudgetExceeded("flip graph node cap reached",
                                             FlipGraph(n, keys, index, adj))
                    j = admit(k2)
                if adj is not None and j != src:
                    adj[src].add(j)
                    adj[j].add(src)
    return FlipGraph(n, keys, index, adj)


def flip_neighbours(key: bytes, moves: str = "td") -> set[bytes]:
    """Byte keys of all arrangements one flip away from ``key``."""
    alpha = K.decode(key_to_sequence(key))
    out: set[bytes] = set()
    for rows in K.expand(alpha, True, moves == "td")[0::2]:
        for r in range(rows.shape[0]):
            out.add(code_key(rows[r]))
    out.discard(key)
    return out


def induced_graph(keys: Iterable[bytes], moves: str = "td") -> FlipGraph:
    """Flip graph restricted to the given arrangements (all with equal n)."""
    ks = sorted(set(keys))
    index = {k: i for i, k in enumerate(ks)}
    adj: list[set[int]] = [set() for _ in ks]
    n = from_key(ks[0]).n if ks else 0
    for i, k in enumerate(ks):
        for k2 in flip_neighbours(k, moves):
            j = index.get(k2)
            if j is not None:
                adj[i].add(j)
                adj[j].add(i)
    return FlipGraph(n, ks, index, adj)
