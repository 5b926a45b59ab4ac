"""Exhaustive generation of arrangement classes.

Two independent generators are provided.  The extension method adds one
pseudocircle at a time as a closed walk in the dual graph of the parent.
The flip method takes the closure of a single seed under triangle (and
digon) flips.  The great class additionally has a third generator built
from commutation classes of wiring diagrams.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import _kernels as K
from .flips import BudgetExceeded, flip_graph
from .maps import (Arrangement, CanonicalCode, code_key, code_text, from_alpha,
                   from_key, from_wiring, key_to_sequence, two_circles)

CLASS_NAMES = (
    "connected", "connected-digonfree", "connected-cylindrical",
    "connected-cylindrical-digonfree", "intersecting", "intersecting-digonfree",
    "intersecting-cylindrical", "intersecting-cylindrical-digonfree", "great",
)

# desk-scale guard: largest n for which each base family runs by default
DESK_LIMIT = {"connected": 5, "intersecting": 5, "great": 7}
LONG_RUN_LIMIT = {"connected": 6, "intersecting": 6, "great": 7}


def extension_keys(arr: Arrangement, mode: str = "intersecting") -> set[bytes]:
    if mode not in ("intersecting", "connected"):
        raise ValueError("mode must be 'intersecting' or 'connected'")
    buf, offs = K.extension_codes(arr.alpha, mode == "intersecting")
    return {code_key(buf[offs[i]:offs[i + 1]]) for i in range(len(offs) - 1)}


def extensions(arr: Arrangement, mode: str = "intersecting") -> list[Arrangement]:
    """All arrangements with one more circle whose deletion gives ``arr``."""
    keys = extension_keys(arr, mode)
    return [from_key(k) for k in sorted(keys)]


@dataclass(frozen=True)
class Summary:
    n: int
    v: int
    p2: int
    p3: int
    intersecting: bool
    cylindrical: bool
    great: bool

    @property
    def digon_free(self) -> bool:
        return self.p2 == 0


def summarize_key(key: bytes) -> Summary:
    return Summary(*(int(x) if i < 4 else bool(x)
                     for i, x in enumerate(K.summary(K.decode(key_to_sequence(key))))))


def in_class(s: Summary, cls: str) -> bool:
    parts = cls.split("-")
    if parts[0] == "great":
        return s.great
    ok = True
    if parts[0] == "intersecting":
        ok = s.intersecting
    if "digonfree" in parts:
        ok = ok and s.digon_free
    if "cylindrical" in parts:
        ok = ok and s.cylindrical
    return ok


@dataclass
class Census:
    """Counts in the layout of the standard census table."""

    n: int
    counts: dict[str, int] = field(default_factory=dict)

    @classmethod
    def from_keys(cls, n: int, keys: Iterable[bytes]) -> "Census":
        out = cls(n, {name: 0 for name in CLASS_NAMES})
        for k in keys:
            s = summarize_key(k)
            for name in CLASS_NAMES:
                if in_class(s, name):
                    out.counts[name] += 1
        return out


class _Clock:
    def __init__(self, max_seconds):
        self.limit = max_seconds
        self.t0 = time.monotonic()

    def check(self, partial):
        if self.limit is not None and time.monotonic() - self.t0 > self.limit:
            raise BudgetExceeded("enumeration time cap reached", partial)


def _extend_chunk(args) -> set[bytes]:
    keys, mode = args
    out: set[bytes] = set()
    for k in keys:
        out |= extension_keys(from_key(k), mode)
    return out


def _extend_levels(n: int, mode: str, clock: _Clock, threads: int = 1) -> set[bytes]:
    level = {two_circles().code.key}
    for _ in range(3, n + 1):
        nxt: set[bytes] = set()
        parents = sorted(level)
        if threads > 1 and len(parents) > 64:
            from concurrent.futures import ProcessPoolExecutor
            chunks = [(parents[i::threads * 8], mode) for i in range(threads * 8)]
            with ProcessPoolExecutor(threads) as ex:
                for part in ex.map(_extend_chunk, chunks):
                    nxt |= part
                    clock.check(nxt)
        else:
            for k in parents:
                nxt |= extension_keys(from_key(k), mode)
                clock.check(nxt)
        level = nxt
    return level


def _seed(n: int) -> Arrangement:
    return from_wiring(n, [t for i in range(n) for t in range(1, n - i)])


def _guard(n: int, family: str, long_run: bool) -> None:
    if n < 2:
        raise ValueError("n must be at least 2")
    limit = (LONG_RUN_LIMIT if long_run else DESK_LIMIT)[family]
    if n > limit:
        hint = "" if long_run else " (pass long_run=True to raise the limit)"
        raise ValueError(f"{family} enumeration for n={n} is beyond desk scale{hint}")


def enumerate_keys(n: int, cls: str = "intersecting", method: str = "auto",
                   long_run: bool = False, max_seconds: float | None = None,
                   threads: int = 1) -> set[bytes]:
    """Byte keys of every arrangement of ``n`` pseudocircles in ``cls``.

    ``method`` is ``"extension"``, ``"flip"`` or ``"auto"``.  Connected
    classes use flip closure under auto, intersecting classes use
    extensions, great uses wiring diagrams.  ``threads`` > 1 spreads the
    extension method over worker processes.
    """
    if cls not in CLASS_NAMES:
        raise ValueError(f"unknown class {cls!r}; expected one of {CLASS_NAMES}")
    family = cls.split("-")[0]
    _guard(n, family, long_run)
    clock = _Clock(max_seconds)
    if n == 2:
        keys = {two_circles().code.key}
    elif family == "great" and method in ("auto", "wiring"):
        return great_keys(n, clock)
    elif family == "great":
        keys = enumerate_keys(n, "intersecting-digonfree", method, long_run, max_seconds, threads)
    elif family == "connected":
        if method == "extension":
            keys = _extend_levels(n, "connected", clock, threads)
        else:
            try:
                keys = set(flip_graph([_seed(n)], "td", "connected", keep_edges=False,
                                      max_seconds=max_seconds).keys)
            except BudgetExceeded as exc:
                raise BudgetExceeded(str(exc), set(exc.partial.keys)) from None
    else:
        if method == "flip":
            flt = "intersecting-digonfree" if cls == "intersecting-digonfree" else "intersecting"
            try:
                keys = set(flip_graph([_seed(n)], "t", flt, keep_edges=False,
                                      max_seconds=max_seconds).keys)
            except BudgetExceeded as exc:
                raise BudgetExceeded(str(exc), set(exc.partial.keys)) from None
        else:
            keys = _extend_levels(n, "intersecting", clock, threads)
    if cls == family and family != "great":
        return keys
    return {k for k in keys if in_class(summarize_key(k), cls)}


def enumerate_class(n: int, cls: str = "intersecting", method: str = "auto",
                    long_run: bool = False, max_seconds: float | None = None,
                    threads: int = 1) -> list[CanonicalCode]:
    """Sorted canonical codes of the class (see :func:`enumerate_keys`)."""
    keys = enumerate_keys(n, cls, method, long_run, max_seconds, threads)
    return sorted(CanonicalCode(code_text(n, key_to_sequence(k))) for k in keys)


# ------------------------------------------------------------ wiring route

def lex_normal_words(n: int) -> Iterable[list[int]]:
    """One reduced word per commutation class of the longest permutation.

    Words are the lexicographically smallest representatives: a letter may
    not be followed, across a run of letters commuting with it, by a
    smaller letter.  Positions are 1-based adjacent swaps.
    """
    total = n * (n - 1) // 2
    perm = list(range(n))
    word: list[int] = []

    def admissible(s: int) -> bool:
        if perm[s - 1] > perm[s]:
            return False
        for t in reversed(word):
            if abs(t - s) <= 1:
                return True
            if t > s:
                return False
        return True

    def rec():
        if len(word) == total:
            yield list(word)
            return
        for s in range(1, n):
            if admissible(s):
                perm[s - 1], perm[s] = perm[s], perm[s - 1]
                word.append(s)
                yield from rec()
                word.pop()
                perm[s - 1], perm[s] = perm[s], perm[s - 1]

    yield from rec()


def great_keys(n: int, clock: _Clock | None = None) -> set[bytes]:
    keys: set[bytes] = set()
    for w in lex_normal_words(n):
        arr = from_wiring(n, w)
        seq, _ = K.canon(arr.alpha)
        keys.add(code_key(seq))
        if clock is not None:
            clock.check(keys)
    return keys
