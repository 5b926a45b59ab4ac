"""Heuristic search for integer circle certificates.

Every scene is screened in floating point first; only scenes whose screened
code is a wanted target are extracted exactly, and only exact matches become
certificates.

Uniform random scenes come first.  Scenes with rotational or mirror
symmetry catch codes with large automorphism groups.  Along flip-graph
edges, :func:`neighbor_seeded_search` starts from certified neighbours
and uses random walks, single-parameter sweeps and event moves that push
a circle through a crossing of two others.  :func:`realize_codes` is the
entry point used by the CLI.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from . import _kernels as K
from .flips import BudgetExceeded, FlipGraph
from .geometry import CircleArrangement, DegenerateScene, extract_arrangement
from .maps import CanonicalCode, code_key

TOL = 1e-12


@dataclass
class RealizationBudget:
    max_seconds: float = 60.0
    max_restarts: int = 2000
    K: int = 50
    S: int = 64

    def __post_init__(self):
        for name in ("max_seconds", "max_restarts", "K", "S"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


class NotVerified(ValueError):
    pass


@dataclass(frozen=True)
class Certificate:
    """An integer circle scene together with the code it realizes exactly."""

    code: CanonicalCode
    scene: CircleArrangement

    def __post_init__(self):
        try:
            got = extract_arrangement(self.scene).code
        except DegenerateScene as exc:
            raise NotVerified(f"scene is degenerate: {exc}") from None
        if got != self.code:
            raise NotVerified("scene realizes a different arrangement")

    @classmethod
    def of_scene(cls, scene: CircleArrangement) -> "Certificate":
        return cls(extract_arrangement(scene).code, scene)

    @property
    def key(self) -> bytes:
        return self.code.key


def screen(params) -> bytes | None:
    """Float-screened code key of a parameter vector, None if degenerate."""
    code = K.float_code(np.asarray(params, dtype=np.float64), TOL)
    return code_key(code) if code.shape[0] else None


def _certify(params, key: bytes) -> Certificate | None:
    scene = CircleArrangement.from_params(params)
    try:
        arr = extract_arrangement(scene)
    except DegenerateScene:
        return None
    if arr.code.key != key:
        return None
    return Certificate(arr.code, scene)


def _keys(targets: Iterable) -> set[bytes]:
    out = set()
    for t in targets:
        out.add(t if isinstance(t, bytes) else t.key)
    return out


def random_search(targets: Iterable, n: int, budget: RealizationBudget,
                  rng: random.Random | int = 0) -> list[Certificate]:
    """Uniform random scenes with parameters in ``1..K``."""
    rng = rng if isinstance(rng, random.Random) else random.Random(rng)
    want = _keys(targets)
    found: dict[bytes, Certificate] = {}
    deadline = time.monotonic() + budget.max_seconds
    K_ = budget.K
    while want - found.keys() and time.monotonic() < deadline:
        for _ in range(256):
            params = [rng.randint(1, K_) for _ in range(3 * n)]
            key = screen(params)
            if key is not None and key in want and key not in found:
                cert = _certify(params, key)
                if cert is not None:
                    found[key] = cert
    return [found[k] for k in sorted(found)]


def _symmetric_scene(n: int, rng: random.Random) -> list[float] | None:
    """Random float scene invariant under a rotation group, possibly with mirrors.

    Circles come in orbits: ``k`` rotated copies of one circle, ``2k`` when
    a mirror is added and the circle is off the mirror axes, and single
    circles centred at the origin.
    """
    k = rng.choice((1, 2, 3, 3, 4, 5, 6))
    mirror = k == 1 or rng.random() < 0.5
    out: list[float] = []
    left = n
    while left:
        big = 2 * k if mirror else k
        options = [s for s in {k, big} if 1 < s <= left]
        if not options or rng.random() < 0.15:
            size = 1
        else:
            size = rng.choice(options)
        rho = rng.uniform(0.05, 1.0) if size > 1 else 0.0
        r = rng.uniform(0.05, 1.5)
        if size == 1 and k == 1:
            rho = rng.uniform(-1.0, 1.0)  # on the mirror axis
        if size == 2 * k:
            th = rng.uniform(0.0, math.pi / k)
            angles = [2 * math.pi * j / k + s * th for j in range(k) for s in (1, -1)]
        elif size > 1:
            th = rng.choice((0.0, math.pi / k)) if mirror else rng.uniform(0.0, 2 * math.pi)
            angles = [th + 2 * math.pi * j / k for j in range(k)]
        else:
            angles = [math.pi / 2]
        for t in angles:
            out += [rho * math.cos(t), rho * math.sin(t), r]
        left -= size
    return out


def _integerize(params, key: bytes, scales=(10 ** 2, 10 ** 3, 10 ** 4, 10 ** 5)) -> Certificate | None:
    mx = max(abs(x) for x in params) or 1.0
    for s in scales:
        q = [int(round(x * s / mx)) for x in params]
        if any(q[i] <= 0 for i in range(2, len(q), 3)):
            continue
        if screen(q) == key:
            cert = _certify(q, key)
            if cert is not None:
                return compact(cert)
    return None


def symmetric_search(targets: Iterable, n: int, budget: RealizationBudget,
                     rng: random.Random | int = 0) -> list[Certificate]:
    """Random scenes with rotational or mirror symmetry, rounded to integers.

    Codes with large automorphism groups are rare among uniform scenes; a
    symmetric scene hits them far more often.  Rounding breaks the symmetry
    only slightly, and the result is certified exactly like any other hit.
    """
    rng = rng if isinstance(rng, random.Random) else random.Random(rng)
    want = _keys(targets)
    found: dict[bytes, Certificate] = {}
    deadline = time.monotonic() + budget.max_seconds
    while want - found.keys() and time.monotonic() < deadline:
        for _ in range(256):
            params = _symmetric_scene(n, rng)
            key = screen(params)
            if key is not None and key in want and key not in found:
                cert = _integerize(params, key)
                if cert is not None:
                    found[key] = cert
    return [found[k] for k in sorted(found)]


def _log_step(rng: random.Random, hi: int) -> int:
    return max(1, int(math.exp(rng.uniform(0.0, math.log(hi)))))


def perturb_search(seed: Certificate, targets: Iterable, budget: RealizationBudget,
                   rng: random.Random | int = 0, jitter: int = 1,
                   have: Iterable = ()) -> list[Certificate]:
    """Random walk of single-parameter steps from the seed scaled by ``S``.

    Each step changes one parameter by ``jitter`` times a log-uniform
    amount in ``1..S``; steps into degenerate or disconnected scenes are
    discarded.  Targets already in ``have`` are not reported again.
    """
    rng = rng if isinstance(rng, random.Random) else random.Random(rng)
    want = _keys(targets) - _keys(have) - {seed.key}
    found: dict[bytes, Certificate] = {}
    if jitter == 0 or not want:
        return []
    cur = [x * budget.S for x in seed.scene.params()]
    m = len(cur)
    deadline = time.monotonic() + budget.max_seconds
    for _ in range(budget.max_restarts):
        if time.monotonic() > deadline:
            break
        i = rng.randrange(m)
        cand = list(cur)
        cand[i] += rng.choice((-1, 1)) * jitter * _log_step(rng, budget.S)
        if i % 3 == 2 and cand[i] <= 0:
            continue
        key = screen(cand)
        if key is None:
            continue
        cur = cand
        if key in want and key not in found:
            cert = _certify(cand, key)
            if cert is not None:
                found[key] = cert
    return [found[k] for k in sorted(found)]


def sweep_search(seed: Certificate, targets: Iterable, budget: RealizationBudget,
                 have: Iterable = ()) -> list[Certificate]:
    """First combinatorial change along each single-parameter direction."""
    want = _keys(targets) - _keys(have)
    found: dict[bytes, Certificate] = {}
    base = [x * budget.S for x in seed.scene.params()]
    k0 = seed.key
    limit = 4 * budget.S * max(abs(x) for x in seed.scene.params())
    for i in range(len(base)):
        for sgn in (1, -1):
            def at(t):
                p = list(base)
                p[i] += sgn * t
                if i % 3 == 2 and p[i] <= 0:
                    return p, b""
                return p, screen(p)
            lo, hi = 0, 1
            p, key = at(hi)
            while key == k0 and hi < limit:
                lo, hi = hi, 2 * hi
                p, key = at(hi)
            if key == k0 or key == b"":
                continue
            while hi - lo > 1:
                mid = (lo + hi) // 2
                pm, km = at(mid)
                if km == k0:
                    lo = mid
                else:
                    hi, p, key = mid, pm, km
            # skip past a degenerate instant
            t = hi
            while key is None and t < hi + 4:
                t += 1
                p, key = at(t)
            if key and key in want and key not in found:
                cert = _certify(p, key)
                if cert is not None:
                    found[key] = cert
    return [found[k] for k in sorted(found)]


def compact(cert: Certificate, factor: float = 0.5, rounds: int = 40) -> Certificate:
    """Cheap shrink by repeated global rescaling, verified exactly."""
    best = cert
    for _ in range(rounds):
        params = [int(round(x * factor)) for x in best.scene.params()]
        if any(params[i] <= 0 for i in range(2, len(params), 3)):
            break
        if screen(params) != best.key:
            break
        nxt = _certify(params, best.key)
        if nxt is None:
            break
        best = nxt
    return best


@dataclass
class SearchState:
    """Certificates found so far plus a bounded pool of scenes per code."""

    certified: dict[bytes, Certificate] = field(default_factory=dict)
    pool: dict[bytes, list[Certificate]] = field(default_factory=dict)
    pool_size: int = 4

    def add(self, cert: Certificate) -> bool:
        new = cert.key not in self.certified
        if new:
            self.certified[cert.key] = cert
        lst = self.pool.setdefault(cert.key, [])
        if len(lst) < self.pool_size:
            lst.append(cert)
        return new


def explore_search(seed: Certificate, targets: Iterable, rng: random.Random,
                   steps: int = 3000, have: Iterable = (), every: int = 5,
                   deadline: float | None = None) -> list[Certificate]:
    """Walk inside the realization space of the seed's code.

    Single-parameter steps are kept only when the code is unchanged; every
    ``every`` accepted steps the current scene is compacted and
    :func:`event_search` is run from it.  Stops at the first hit.
    """
    want = _keys(targets) - _keys(have)
    if not want:
        return []
    cur = [x * 8 for x in seed.scene.params()]
    k0 = seed.key
    accepted = 0
    for _ in range(steps):
        if deadline is not None and time.monotonic() > deadline:
            break
        i = rng.randrange(len(cur))
        cand = list(cur)
        span = max(2, max(abs(x) for x in cur) // 4)
        cand[i] += rng.choice((-1, 1)) * _log_step(rng, span)
        if i % 3 == 2 and cand[i] <= 0:
            continue
        if screen(cand) != k0:
            continue
        cur = cand
        accepted += 1
        if accepted % every:
            continue
        here = _certify(cur, k0)
        if here is None:
            continue
        here = compact(here)
        cur = here.scene.params()
        hits = event_search(here, want)
        if hits:
            return hits
    return []


def neighbor_seeded_search(graph: FlipGraph, certified: Mapping, budget: RealizationBudget,
                           rng: random.Random | int = 0, targets: Iterable | None = None,
                           patience: int = 6, progress=None) -> list[Certificate]:
    """Spread certificates along flip-graph edges.

    Each round first runs sweeps and event moves from every pooled scene of
    a certified node with uncertified neighbours, then, for every open
    target, explores the realization space of a random certified
    neighbour; the walk length doubles after every round without progress.
    Stops when all targets are certified or after ``patience`` such rounds.  Returns certificates for targets not already
    in ``certified``; raises :class:`BudgetExceeded` carrying them as
    ``partial`` when the time budget runs out first.
    """
    rng = rng if isinstance(rng, random.Random) else random.Random(rng)
    if graph.adjacency is None:
        raise ValueError("flip graph must carry adjacency")
    nodes = set(graph.keys)
    want = nodes if targets is None else _keys(targets) & nodes
    state = SearchState()
    for k, c in certified.items():
        key = k if isinstance(k, bytes) else k.key
        if key in nodes:
            state.add(c)
    start = set(state.certified)
    deadline = time.monotonic() + budget.max_seconds
    sub = RealizationBudget(max_seconds=budget.max_seconds, max_restarts=budget.max_restarts,
                            K=budget.K, S=budget.S)

    def open_set():
        return want - state.certified.keys()

    def neighbours(key):
        return [graph.keys[j] for j in sorted(graph.adjacency[graph.index[key]])]

    def result():
        return [state.certified[x] for x in sorted(state.certified) if x not in start and x in want]

    def out_of_time():
        if time.monotonic() > deadline:
            raise BudgetExceeded("neighbour-seeded search time cap reached", result())

    swept: set[int] = set()
    stale = 0
    while open_set():
        before = len(state.certified)
        # cheap pass: sweeps and event moves from every fresh pooled scene
        for k in sorted(state.certified):
            if not any(x in open_set() for x in neighbours(k)):
                continue
            for cert in list(state.pool.get(k, [])):
                if id(cert) in swept:
                    continue
                out_of_time()
                swept.add(id(cert))
                hits = sweep_search(cert, open_set(), sub) + event_search(cert, open_set())
                for c in hits:
                    state.add(compact(c))
        # targeted pass: explore realization spaces next to each open target
        for t in sorted(open_set()):
            if t in state.certified:
                continue
            near = [x for x in neighbours(t) if x in state.certified]
            if not near:
                continue
            out_of_time()
            seed = state.certified[rng.choice(near)]
            for c in explore_search(seed, open_set(), rng, budget.max_restarts << stale,
                                    deadline=deadline):
                state.add(compact(c))
        if progress is not None:
            progress(sum(1 for x in state.certified if x in want), len(want))
        if len(state.certified) == before:
            stale += 1
            if stale >= patience:
                break
        else:
            stale = 0
    return result()


# ------------------------------------------------------------ minimization

def _measure(params) -> tuple[int, int]:
    return max(abs(x) for x in params), sum(abs(x) for x in params)


def _try(params, key) -> Certificate | None:
    if any(params[i] <= 0 for i in range(2, len(params), 3)):
        return None
    if screen(params) != key:
        return None
    return _certify(params, key)


def minimize_certificate(cert: Certificate, S: int = 64) -> Certificate:
    """Shrink parameters while keeping the code; deterministic fixpoint.

    Moves, each verified exactly and kept only when it lowers the pair
    (max |parameter|, sum |parameter|): rounded global rescaling by ratios
    down from ``1 - 1/S``, translation of all centers, single-parameter
    steps toward zero, and division by the gcd of all parameters.
    """
    best = cert
    key = cert.key
    while True:
        params = best.scene.params()
        score = _measure(params)
        cand: Certificate | None = None
        g = 0
        for x in params:
            g = math.gcd(g, x)
        if g > 1:
            cand = _try([x // g for x in params], key)
        if cand is None:
            for den in (2, 3, 4, 8, 16, S):
                for num in range(1, den):
                    p = [int(round(x * num / den)) for x in params]
                    c = _try(p, key)
                    if c is not None and _measure(p) < score:
                        cand = c
                        break
                if cand is not None:
                    break
        if cand is None:
            for axis in (0, 1):
                vals = [params[3 * i + axis] for i in range(len(params) // 3)]
                shift = -((max(vals) + min(vals)) // 2)
                if shift:
                    p = list(params)
                    for i in range(len(p) // 3):
                        p[3 * i + axis] += shift
                    c = _try(p, key)
                    if c is not None and _measure(p) < score:
                        cand = c
                        break
        if cand is None:
            order = sorted(range(len(params)), key=lambda i: -abs(params[i]))
            for i in order:
                x = params[i]
                step = abs(x)
                while step >= 1 and cand is None:
                    p = list(params)
                    p[i] = x - step if x > 0 else x + step
                    if _measure(p) < score:
                        cand = _try(p, key)
                    step //= 2
                if cand is not None:
                    break
        if cand is None:
            return best
        best = cand


# ------------------------------------------------------------ event moves

def _crossings_f(c1, c2):
    (a1, b1, r1), (a2, b2, r2) = c1, c2
    dx, dy = a2 - a1, b2 - b1
    D2 = dx * dx + dy * dy
    L = D2 + r1 * r1 - r2 * r2
    S = 4 * r1 * r1 * D2 - L * L
    if D2 == 0 or S <= 0:
        return []
    rs = math.sqrt(S)
    return [(a1 + (L * dx - br * rs * dy) / (2 * D2), b1 + (L * dy + br * rs * dx) / (2 * D2))
            for br in (1, -1)]


def _event_scenes(params, scale: float, overshoot: Iterable[float]):
    """Scenes that pass one circle just beyond a triple point or a tangency."""
    cs = [tuple(float(x) for x in params[i:i + 3]) for i in range(0, len(params), 3)]
    n = len(cs)
    out = []

    def emit(k, newc):
        p = [x * scale for c in cs for x in c]
        p[3 * k:3 * k + 3] = [x * scale for x in newc]
        q = [int(round(x)) for x in p]
        if all(q[i] > 0 for i in range(2, len(q), 3)):
            out.append(q)

    for i in range(n):
        for j in range(i + 1, n):
            pts = _crossings_f(cs[i], cs[j])
            for v in pts:
                for k in range(n):
                    if k in (i, j):
                        continue
                    a, b, r = cs[k]
                    dist = math.hypot(v[0] - a, v[1] - b)
                    if dist == 0:
                        continue
                    side = 1.0 if dist > r else -1.0
                    for e in overshoot:
                        # radius change through v
                        emit(k, (a, b, dist + side * e))
                        # translation of the center along the line to v
                        shift = (dist - r) + side * e
                        ux, uy = (v[0] - a) / dist, (v[1] - b) / dist
                        emit(k, (a + ux * shift, b + uy * shift, r))
            # tangencies of the pair, moving either circle
            for k, o in ((i, j), (j, i)):
                a, b, r = cs[k]
                oa, ob, orr = cs[o]
                d = math.hypot(a - oa, b - ob)
                for e in overshoot:
                    for sgn in (1.0, -1.0):
                        # radius at external or internal tangency
                        for rr in (d - orr, d + orr, orr - d):
                            if rr + sgn * e > 0:
                                emit(k, (a, b, rr + sgn * e))
                        if d > 0:
                            ux, uy = (a - oa) / d, (b - ob) / d
                            for dd in (r + orr, abs(r - orr)):
                                nd = dd + sgn * e
                                if nd > 0:
                                    emit(k, (oa + ux * nd, ob + uy * nd, r))
    return out


def invert_scene(params, center, R2, scale):
    """Image of a scene under inversion, rounded to integers after scaling."""
    ox, oy = center
    out = []
    for i in range(0, len(params), 3):
        a, b, r = params[i] - ox, params[i + 1] - oy, params[i + 2]
        den = a * a + b * b - r * r
        if abs(den) < 1e-9:
            return None
        k = R2 / den
        out += [int(round((ox + k * a) * scale)), int(round((oy + k * b) * scale)),
                int(round(abs(k) * r * scale))]
    if any(out[i] <= 0 for i in range(2, len(out), 3)):
        return None
    return out


def event_search(seed: Certificate, targets: Iterable, have: Iterable = (),
                 scale: int = 16) -> list[Certificate]:
    """Certificates reached by pushing one circle through a single event."""
    want = _keys(targets) - _keys(have)
    found: dict[bytes, Certificate] = {}
    params = seed.scene.params()
    mx = max(abs(x) for x in params)
    overs = [mx * f for f in (1e-3, 1e-2, 5e-2)]
    for p in _event_scenes(params, scale, overs):
        key = screen(p)
        if key is not None and key in want and key not in found:
            cert = _certify(p, key)
            if cert is not None:
                found[key] = cert
    return [found[k] for k in sorted(found)]


def diversify(seed: Certificate, rng: random.Random, count: int = 4,
              size: int = 2000) -> list[Certificate]:
    """Other realizations of the same code obtained by random inversions."""
    params = seed.scene.params()
    mx = max(abs(x) for x in params) or 1
    out = []
    for _ in range(8 * count):
        if len(out) >= count:
            break
        ctr = (rng.uniform(-2 * mx, 2 * mx), rng.uniform(-2 * mx, 2 * mx))
        img = invert_scene(params, ctr, float(mx * mx), 1.0)
        if img is None:
            continue
        m2 = max(abs(x) for x in img) or 1
        q = invert_scene(params, ctr, float(mx * mx), size / m2)
        if q is None or screen(q) != seed.key:
            continue
        cert = _certify(q, seed.key)
        if cert is not None:
            out.append(compact(cert))
    return out


# ------------------------------------------------------------ orchestration

@dataclass
class RealizeResult:
    certificates: list[Certificate]
    budget_exceeded: bool


def realize_codes(targets: Iterable, certified: Mapping, budget: RealizationBudget,
                  rng: random.Random | int = 0, random_share: float = 0.25,
                  progress=None) -> RealizeResult:
    """Random, then symmetric, then neighbour-seeded search, per circle count.

    ``certified`` holds certificates that are already known; their codes
    serve as seeds when they are one flip away from a target.  The time
    budget is split evenly over the circle counts present in ``targets``.
    """
    from .flips import induced_graph
    from .maps import from_key

    rng = rng if isinstance(rng, random.Random) else random.Random(rng)
    known = {(k if isinstance(k, bytes) else k.key): c for k, c in certified.items()}
    want = _keys(targets) - known.keys()
    by_n: dict[int, set[bytes]] = {}
    for k in want:
        by_n.setdefault(from_key(k).n, set()).add(k)
    found: dict[bytes, Certificate] = {}
    exceeded = False
    for i, n in enumerate(sorted(by_n)):
        share = budget.max_seconds / (len(by_n) - i)
        t0 = time.monotonic()
        group = by_n[n]
        sub = RealizationBudget(max_seconds=share * random_share, max_restarts=budget.max_restarts,
                                K=budget.K, S=budget.S)
        for c in random_search(group, n, sub, rng):
            found[c.key] = c
        left = group - found.keys()
        if left:
            sub.max_seconds = share * random_share / 2
            for c in symmetric_search(left, n, sub, rng):
                found[c.key] = c
        seeds = {k: c for k, c in known.items() if c.code.n == n}
        seeds.update({k: c for k, c in found.items() if k in group})
        graph = induced_graph(group | seeds.keys())
        sub.max_seconds = max(1e-3, share - (time.monotonic() - t0))
        try:
            new = neighbor_seeded_search(graph, seeds, sub, rng, targets=group, progress=progress)
        except BudgetExceeded as exc:
            new = exc.partial
            exceeded = bool(group - found.keys() - {c.key for c in new})
        for c in new:
            found[c.key] = c
        budget = RealizationBudget(max_seconds=max(1e-3, budget.max_seconds - (time.monotonic() - t0)),
                                   max_restarts=budget.max_restarts, K=budget.K, S=budget.S)
    return RealizeResult([found[k] for k in sorted(found)], exceeded)
