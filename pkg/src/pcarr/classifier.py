"""Decidable non-circularizability criteria and the classification step."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Mapping

from .maps import (Arrangement, CanonicalCode, TripleType, WouldDisconnect, delete_circles,
                   from_code, triangle_triples, triple_type)


class PrecondViolated(ValueError):
    pass


class Contradiction(RuntimeError):
    """A code is both certified and flagged non-circularizable."""


class Status(enum.Enum):
    REALIZED = "REALIZED"
    NONCIRC = "NONCIRC"
    OPEN = "OPEN"


@dataclass(frozen=True, order=True)
class ClassificationRecord:
    code: CanonicalCode
    status: Status
    reason: str

    def __post_init__(self):
        if self.status is Status.NONCIRC and not self.reason:
            raise ValueError("NONCIRC records need a reason")


def _triangle_types(arr: Arrangement) -> list[TripleType]:
    return [triple_type(arr, *t) for t in triangle_triples(arr)]


def filter_nonkrupp_triangles(arr: Arrangement) -> bool:
    """True when every triangle is bounded by a NonKrupp triple.

    Applies to connected digon-free arrangements; a true result proves
    that the arrangement has no circle representation.
    """
    if arr.flags.p2:
        raise PrecondViolated("arrangement has digons")
    types = _triangle_types(arr)
    return bool(types) and all(t is TripleType.NONKRUPP for t in types)


def filter_krupp_triangles(arr: Arrangement) -> bool:
    """True when every triangle is bounded by a Krupp triple.

    Applies to intersecting arrangements that are not great; a true result
    proves that the arrangement has no circle representation.
    """
    if not arr.flags.intersecting:
        raise PrecondViolated("arrangement is not intersecting")
    if arr.flags.great:
        raise PrecondViolated("arrangement is great")
    types = _triangle_types(arr)
    return bool(types) and all(t is TripleType.KRUPP for t in types)


def contains_subarrangement(arr: Arrangement, pattern: CanonicalCode) -> bool:
    """Some subset of circles induces a connected copy of ``pattern``."""
    k = pattern.n
    if k >= arr.n:
        raise PrecondViolated("pattern must have fewer circles than the arrangement")
    for keep in itertools.combinations(range(arr.n), k):
        drop = [c for c in range(arr.n) if c not in keep]
        try:
            sub = delete_circles(arr, drop)
        except WouldDisconnect:
            continue
        if sub.code == pattern:
            return True
    return False


def _safe(fn, arr) -> bool:
    try:
        return fn(arr)
    except PrecondViolated:
        return False


def noncirc_reason(arr: Arrangement, patterns: Mapping[CanonicalCode, str] = {},
                   fixtures: Mapping[CanonicalCode, str] = {}) -> str | None:
    """First applicable proof of non-circularizability, or None."""
    if _safe(filter_nonkrupp_triangles, arr):
        return "thm-nonkrupp-triangles"
    if _safe(filter_krupp_triangles, arr):
        return "thm-krupp-triangles"
    for pat, ref in sorted(patterns.items()):
        if pat.n < arr.n and contains_subarrangement(arr, pat):
            return f"contains-noncirc-subarrangement({ref})"
    name = fixtures.get(arr.code)
    if name is not None:
        return f"fixture-paper-proof({name})"
    return None


def classify(codes: Iterable[CanonicalCode], certs: Mapping,
             fixtures: Mapping[CanonicalCode, str],
             patterns: Mapping[CanonicalCode, str] | None = None) -> list[ClassificationRecord]:
    """One record per code, sorted by code.

    ``certs`` maps codes (or their byte keys) to verified certificates.
    ``patterns`` are known non-circularizable arrangements used for the
    sub-arrangement test; by default every fixture with fewer circles.
    """
    certified = {k if isinstance(k, bytes) else k.key for k in certs}
    if patterns is None:
        patterns = dict(fixtures)
    out = []
    for code in sorted(set(codes)):
        arr = from_code(code)
        pats = {p: r for p, r in patterns.items() if p.n < code.n}
        reason = noncirc_reason(arr, pats, fixtures)
        if code.key in certified:
            if reason is not None:
                raise Contradiction(f"{code} is certified but {reason}")
            out.append(ClassificationRecord(code, Status.REALIZED, "certificate-ref"))
        elif reason is not None:
            out.append(ClassificationRecord(code, Status.NONCIRC, reason))
        else:
            out.append(ClassificationRecord(code, Status.OPEN, "none"))
    return out


# ------------------------------------------------------------ fixtures

@dataclass(frozen=True)
class Fixture:
    name: str
    code: CanonicalCode
    annotations: tuple[tuple[str, str], ...]

    def get(self, key: str, default: str | None = None) -> str | None:
        return dict(self.annotations).get(key, default)


def load_fixtures() -> dict[str, Fixture]:
    """Named non-circularizable arrangements shipped with the package."""
    from .store import read_arrs
    text = resources.files("pcarr.data").joinpath("fixtures.arrs").read_text()
    out = {}
    for code, ann in read_arrs(text.splitlines()):
        name = ann.get("name")
        if name:
            out[name] = Fixture(name, code, tuple(sorted(ann.items())))
    return out


def fixture_names() -> dict[CanonicalCode, str]:
    return {f.code: name for name, f in load_fixtures().items()}
