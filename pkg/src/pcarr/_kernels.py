"""Compiled kernels on vertex-major dart arrays.

Every map handled here is a 4-regular map in *vertex-major* form: crossing
``v`` owns darts ``4v .. 4v+3`` in counterclockwise order, so the rotation
``sigma`` is implicit (``d -> 4*(d//4) + (d+1) % 4``) and the map is fully
described by the fixed-point-free involution ``alpha``.  Dart ``d`` and
``opp(d) = sigma^2(d)`` lie on the same pseudocircle.
"""

import numpy as np
from numba import njit

EMPTY = np.zeros(0, dtype=np.int32)


@njit(cache=True, inline="always")
def rot(d, k):
    return (d & ~3) | ((d + k) & 3)


@njit(cache=True, inline="always")
def opp(d):
    return (d & ~3) | ((d + 2) & 3)


@njit(cache=True)
def canon(alpha):
    """Minimum BFS code over all roots and both orientations.

    Returns ``(code, ties)`` where ``code`` has length ``2m`` and ``ties`` is
    the number of rooted traversals reproducing it.
    """
    m = alpha.shape[0]
    best = np.empty(2 * m, dtype=np.int32)
    cur = np.empty(2 * m, dtype=np.int32)
    label = np.empty(m, dtype=np.int32)
    order = np.empty(m, dtype=np.int32)
    have = False
    ties = 0
    for orient in (1, 3):
        for root in range(m):
            for i in range(m):
                label[i] = -1
            label[root] = 0
            order[0] = root
            nxt = 1
            state = 0 if have else -1
            for i in range(m):
                d = order[i]
                s = (d & ~3) | ((d + orient) & 3)
                if label[s] < 0:
                    label[s] = nxt
                    order[nxt] = s
                    nxt += 1
                a = alpha[d]
                if label[a] < 0:
                    label[a] = nxt
                    order[nxt] = a
                    nxt += 1
                x = label[a]
                y = label[s]
                cur[2 * i] = x
                cur[2 * i + 1] = y
                if state == 0:
                    b0 = best[2 * i]
                    if x < b0:
                        state = -1
                    elif x > b0:
                        state = 1
                        break
                    else:
                        b1 = best[2 * i + 1]
                        if y < b1:
                            state = -1
                        elif y > b1:
                            state = 1
                            break
            if state == 1:
                continue
            if state == -1:
                best[:] = cur
                have = True
                ties = 1
            else:
                ties += 1
    return best, ties


@njit(cache=True)
def decode(seq):
    """Vertex-major alpha from a code sequence (alpha label, sigma label)*."""
    m = seq.shape[0] // 2
    newid = np.full(m, -1, dtype=np.int32)
    k = 0
    for d in range(m):
        if newid[d] >= 0:
            continue
        x = d
        for j in range(4):
            newid[x] = 4 * k + j
            x = seq[2 * x + 1]
        k += 1
    alpha = np.empty(m, dtype=np.int32)
    for d in range(m):
        alpha[newid[d]] = newid[seq[2 * d]]
    return alpha


@njit(cache=True)
def faces(alpha):
    """Face id per dart (orbits of sigma*alpha) and face sizes."""
    m = alpha.shape[0]
    fid = np.full(m, -1, dtype=np.int32)
    sizes = np.zeros(m, dtype=np.int32)
    nf = 0
    for d in range(m):
        if fid[d] >= 0:
            continue
        x = d
        c = 0
        while fid[x] < 0:
            fid[x] = nf
            c += 1
            x = rot(alpha[x], 1)
        sizes[nf] = c
        nf += 1
    return fid, sizes[:nf].copy()


@njit(cache=True)
def circles(alpha):
    """Circle id per dart: orbits of the group generated by opp and alpha."""
    m = alpha.shape[0]
    cid = np.full(m, -1, dtype=np.int32)
    n = 0
    for d in range(m):
        if cid[d] >= 0:
            continue
        x = d
        while cid[x] < 0:
            cid[x] = n
            cid[opp(x)] = n
            x = alpha[opp(x)]
        n += 1
    return cid, n


@njit(cache=True)
def connected(alpha):
    m = alpha.shape[0]
    if m == 0:
        return False
    seen = np.zeros(m // 4, dtype=np.uint8)
    stack = np.empty(m // 4, dtype=np.int32)
    seen[0] = 1
    stack[0] = 0
    top = 1
    cnt = 1
    while top > 0:
        top -= 1
        v = stack[top]
        for j in range(4):
            w = alpha[4 * v + j] >> 2
            if seen[w] == 0:
                seen[w] = 1
                stack[top] = w
                top += 1
                cnt += 1
    return cnt == m // 4


@njit(cache=True)
def triangle_flip(alpha, d0):
    """Flip the triangle whose face orbit contains ``d0``."""
    out = alpha.copy()
    x = d0
    for _ in range(3):
        y = alpha[x]
        ex = alpha[opp(x)]
        ey = alpha[opp(y)]
        out[x] = ey
        out[ey] = x
        out[y] = ex
        out[ex] = y
        out[opp(x)] = opp(y)
        out[opp(y)] = opp(x)
        x = rot(y, 1)
    return out


@njit(cache=True)
def _drop_vertices(alpha, p, q):
    # remove crossings p < q whose darts are already unlinked; compact ids
    m = alpha.shape[0]
    v = m // 4
    newv = np.empty(v, dtype=np.int32)
    k = 0
    for w in range(v):
        if w == p or w == q:
            newv[w] = -1
        else:
            newv[w] = k
            k += 1
    out = np.empty(m - 8, dtype=np.int32)
    for w in range(v):
        if newv[w] < 0:
            continue
        for j in range(4):
            a = alpha[4 * w + j]
            out[4 * newv[w] + j] = 4 * newv[a >> 2] + (a & 3)
    return out


@njit(cache=True)
def digon_collapse(alpha, d0):
    """Remove the digon whose face orbit contains ``d0``.

    Returns an empty array when the move would leave a crossing-free
    pseudocircle or a disconnected arrangement.
    """
    d1 = rot(alpha[d0], 1)
    p = d0 >> 2
    q = d1 >> 2
    if p == q or rot(alpha[d1], 1) != d0:
        return EMPTY
    work = alpha.copy()
    for x in (d0, d1):
        y = alpha[x]
        ex = alpha[opp(x)]
        ey = alpha[opp(y)]
        if (ex >> 2) == p or (ex >> 2) == q:
            return EMPTY
        work[ex] = ey
        work[ey] = ex
    lo = min(p, q)
    hi = max(p, q)
    out = _drop_vertices(work, lo, hi)
    if not connected(out):
        return EMPTY
    return out


@njit(cache=True)
def digon_create(alpha, d1, d2):
    """Push the edge of ``d1`` through the edge of ``d2``.

    Both darts must belong to the same face orbit and lie on disjoint
    pseudocircles.  Two crossings are appended at the end.
    """
    m = alpha.shape[0]
    out = np.empty(m + 8, dtype=np.int32)
    out[:m] = alpha
    P = m
    Q = m + 4
    a1 = alpha[d1]
    b2 = alpha[d2]
    out[d1] = P + 3
    out[P + 3] = d1
    out[P + 1] = Q + 1
    out[Q + 1] = P + 1
    out[Q + 3] = a1
    out[a1] = Q + 3
    out[d2] = Q + 2
    out[Q + 2] = d2
    out[Q + 0] = P + 2
    out[P + 2] = Q + 0
    out[P + 0] = b2
    out[b2] = P + 0
    return out


@njit(cache=True)
def crossing_pairs(alpha, cid, n):
    """Matrix of crossing counts between circles."""
    cnt = np.zeros((n, n), dtype=np.int32)
    for v in range(alpha.shape[0] // 4):
        a = cid[4 * v]
        b = cid[4 * v + 1]
        cnt[a, b] += 1
        cnt[b, a] += 1
    return cnt


@njit(cache=True)
def digon_count(alpha):
    fid, sizes = faces(alpha)
    c = 0
    for s in sizes:
        if s == 2:
            c += 1
    return c


@njit(cache=True)
def expand(alpha, use_triangles, use_digons):
    """Canonical codes of all flip neighbours.

    Returns three (codes, digon_counts) pairs for results with the same,
    two fewer and two more crossings respectively.
    """
    m = alpha.shape[0]
    fid, sizes = faces(alpha)
    nf = sizes.shape[0]
    cid, n = circles(alpha)
    pairs = crossing_pairs(alpha, cid, n)
    seen = np.zeros(nf, dtype=np.uint8)

    tri = np.empty((nf, 2 * m), dtype=np.int32)
    tri_d = np.empty(nf, dtype=np.int32)
    nt = 0
    col = np.empty((nf, max(2 * m - 16, 0)), dtype=np.int32)
    col_d = np.empty(nf, dtype=np.int32)
    nc = 0
    # creation candidates collected first
    cand1 = np.empty(0, dtype=np.int32)
    cand2 = np.empty(0, dtype=np.int32)
    for d in range(m):
        f = fid[d]
        if seen[f]:
            continue
        seen[f] = 1
        s = sizes[f]
        if s == 3 and use_triangles:
            b = triangle_flip(alpha, d)
            code, _ = canon(b)
            tri[nt] = code
            tri_d[nt] = digon_count(b)
            nt += 1
        if s == 2 and use_digons:
            b = digon_collapse(alpha, d)
            if b.shape[0] > 0:
                code, _ = canon(b)
                col[nc] = code
                col_d[nc] = digon_count(b)
                nc += 1
    ncr = 0
    if use_digons:
        # count creation sites
        for f in range(nf):
            seen[f] = 0
        total = 0
        for d in range(m):
            f = fid[d]
            if seen[f]:
                continue
            seen[f] = 1
            ring = np.empty(sizes[f], dtype=np.int32)
            x = d
            for k in range(sizes[f]):
                ring[k] = x
                x = rot(alpha[x], 1)
            for i in range(sizes[f]):
                for j in range(i + 1, sizes[f]):
                    ci = cid[ring[i]]
                    cj = cid[ring[j]]
                    if ci != cj and pairs[ci, cj] == 0:
                        total += 1
        cand1 = np.empty(total, dtype=np.int32)
        cand2 = np.empty(total, dtype=np.int32)
        for f in range(nf):
            seen[f] = 0
        for d in range(m):
            f = fid[d]
            if seen[f]:
                continue
            seen[f] = 1
            ring = np.empty(sizes[f], dtype=np.int32)
            x = d
            for k in range(sizes[f]):
                ring[k] = x
                x = rot(alpha[x], 1)
            for i in range(sizes[f]):
                for j in range(i + 1, sizes[f]):
                    ci = cid[ring[i]]
                    cj = cid[ring[j]]
                    if ci != cj and pairs[ci, cj] == 0:
                        cand1[ncr] = ring[i]
                        cand2[ncr] = ring[j]
                        ncr += 1
    cre = np.empty((ncr, 2 * m + 16), dtype=np.int32)
    cre_d = np.empty(ncr, dtype=np.int32)
    for k in range(ncr):
        b = digon_create(alpha, cand1[k], cand2[k])
        code, _ = canon(b)
        cre[k] = code
        cre_d[k] = digon_count(b)
    return (tri[:nt], tri_d[:nt], col[:nc], col_d[:nc], cre, cre_d)


@njit(cache=True)
def face_rings(alpha):
    """Face id, position in face cycle, ring start offsets and ring darts."""
    m = alpha.shape[0]
    fid, sizes = faces(alpha)
    nf = sizes.shape[0]
    start = np.zeros(nf + 1, dtype=np.int32)
    for f in range(nf):
        start[f + 1] = start[f] + sizes[f]
    ring = np.empty(m, dtype=np.int32)
    pos = np.empty(m, dtype=np.int32)
    done = np.zeros(nf, dtype=np.uint8)
    for d in range(m):
        f = fid[d]
        if done[f]:
            continue
        done[f] = 1
        x = d
        for k in range(sizes[f]):
            ring[start[f] + k] = x
            pos[x] = k
            x = rot(alpha[x], 1)
    return fid, pos, start, ring


@njit(cache=True)
def dual_distances(alpha, fid, nf):
    dist = np.full((nf, nf), 1 << 20, dtype=np.int32)
    queue = np.empty(nf, dtype=np.int32)
    m = alpha.shape[0]
    # adjacency through darts: face of d borders face of alpha[d]
    for s in range(nf):
        dist[s, s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            f = queue[head]
            head += 1
            for d in range(m):
                if fid[d] != f:
                    continue
                g = fid[alpha[d]]
                if dist[s, g] > dist[s, f] + 1:
                    dist[s, g] = dist[s, f] + 1
                    queue[tail] = g
                    tail += 1
    return dist


@njit(cache=True)
def _interleave(a, b, c, d):
    # chords (a,b) and (c,d) on a cycle with distinct endpoints
    if a > b:
        a, b = b, a
    ic = a < c and c < b
    jd = a < d and d < b
    return ic != jd


@njit(cache=True)
def _build_extension(alpha, walk, L, rank):
    """Insert the closed curve described by ``walk`` (crossed darts)."""
    m = alpha.shape[0]
    out = np.empty(m + 4 * L, dtype=np.int32)
    out[:m] = alpha
    # group points by edge, keyed on the reference dart min(d, alpha d)
    for i in range(L):
        d = walk[i]
        x = min(d, alpha[d])
        if rank[i] != 0:
            continue
        # collect points on this edge in order of rank along x
        pts = np.full(2, -1, dtype=np.int32)
        cnt = 0
        for j in range(L):
            dj = walk[j]
            if min(dj, alpha[dj]) == x:
                pts[rank[j]] = j
                cnt += 1
        y = alpha[x]
        prev = x
        for k in range(cnt):
            j = pts[k]
            base = m + 4 * j
            if walk[j] == x:
                back = base + 2
                fwd = base
            else:
                back = base
                fwd = base + 2
            out[prev] = back
            out[back] = prev
            prev = fwd
        out[prev] = y
        out[y] = prev
    for i in range(L):
        a = m + 4 * i + 1
        b = m + 4 * ((i + 1) % L) + 3
        out[a] = b
        out[b] = a
    return out


@njit(cache=True)
def _chords_ok(alpha, walk, L, rank, fid, pos):
    # point i sits on the edge of walk[i]; key along dart z of the edge
    keys_e = np.empty(L, dtype=np.int64)   # key of entry of chord in face f_{i+1}
    keys_x = np.empty(L, dtype=np.int64)   # key of exit of that chord
    face = np.empty(L, dtype=np.int32)
    for i in range(L):
        z = alpha[walk[i]]                 # entry point i seen from the next face
        cnt_i = 1
        for j in range(L):
            if j != i and min(walk[j], alpha[walk[j]]) == min(z, alpha[z]):
                cnt_i = 2
        r = rank[i]
        x = min(z, alpha[z])
        if z != x:
            r = cnt_i - 1 - r
        keys_e[i] = 2 * pos[z] + r
        k = (i + 1) % L
        z2 = walk[k]
        cnt_k = 1
        for j in range(L):
            if j != k and min(walk[j], alpha[walk[j]]) == min(z2, alpha[z2]):
                cnt_k = 2
        r2 = rank[k]
        x2 = min(z2, alpha[z2])
        if z2 != x2:
            r2 = cnt_k - 1 - r2
        keys_x[i] = 2 * pos[z2] + r2
        face[i] = fid[z2]
    for i in range(L):
        for j in range(i + 1, L):
            if face[i] == face[j]:
                if _interleave(keys_e[i], keys_x[i], keys_e[j], keys_x[j]):
                    return False
    return True


@njit(cache=True)
def extension_codes(alpha, intersecting):
    """Canonical codes of all one-circle extensions (with repetitions).

    The new curve is a closed walk in the dual graph.  Intersecting mode
    crosses every circle exactly twice; connected mode crosses each circle
    zero or two times and at least one.  The walk starts on the smallest
    circle it crosses, so every curve is produced a bounded number of times.
    Returns a flat code buffer plus offsets.
    """
    m = alpha.shape[0]
    fid, pos, start, ring = face_rings(alpha)
    nf = start.shape[0] - 1
    cid, n = circles(alpha)
    dist = dual_distances(alpha, fid, nf)
    Lmax = 2 * n
    walk = np.empty(Lmax, dtype=np.int32)
    choice = np.empty(Lmax + 1, dtype=np.int32)
    count = np.zeros(n, dtype=np.int32)
    rank = np.zeros(Lmax, dtype=np.int32)
    buf = np.empty(1 << 16, dtype=np.int32)
    offs = np.zeros(1025, dtype=np.int64)
    nout = 0
    used = 0
    for d0 in range(m):
        c0 = cid[d0]
        if intersecting and c0 != 0:
            continue
        f0 = fid[d0]
        walk[0] = d0
        count[c0] = 1
        depth = 1
        choice[1] = -1
        while depth >= 1:
            # try to close the walk first time we arrive at a depth
            if choice[depth] == -1:
                cur = fid[alpha[walk[depth - 1]]]
                if cur == f0 and ((intersecting and depth == Lmax) or
                                  (not intersecting and depth >= 2)):
                    # enumerate orderings of doubly used edges
                    L = depth
                    dbl = np.empty(L, dtype=np.int32)
                    nd = 0
                    okc = True
                    for i in range(L):
                        rank[i] = 0
                    for i in range(L):
                        ei = min(walk[i], alpha[walk[i]])
                        for j in range(i + 1, L):
                            if min(walk[j], alpha[walk[j]]) == ei:
                                dbl[nd] = i * 64 + j
                                nd += 1
                    for mask in range(1 << nd):
                        for t in range(nd):
                            i = dbl[t] // 64
                            j = dbl[t] % 64
                            b = (mask >> t) & 1
                            rank[i] = b
                            rank[j] = 1 - b
                        if not _chords_ok(alpha, walk, L, rank, fid, pos):
                            continue
                        new = _build_extension(alpha, walk, L, rank)
                        code, _ = canon(new)
                        ln = code.shape[0]
                        if used + ln > buf.shape[0]:
                            nb = np.empty(2 * buf.shape[0] + ln, dtype=np.int32)
                            nb[:used] = buf[:used]
                            buf = nb
                        buf[used:used + ln] = code
                        used += ln
                        nout += 1
                        if nout + 1 > offs.shape[0]:
                            no = np.zeros(2 * offs.shape[0], dtype=np.int64)
                            no[:nout] = offs[:nout]
                            offs = no
                        offs[nout] = used
                    for i in range(L):
                        rank[i] = 0
                    if intersecting:
                        # no further steps possible at full length
                        choice[depth] = 1 << 30
            if depth == Lmax:
                choice[depth] = 1 << 30
            # advance to next admissible exit dart in the current face
            cur = fid[alpha[walk[depth - 1]]]
            k = choice[depth] + 1
            sz = start[cur + 1] - start[cur]
            found = -1
            while k < sz:
                z = ring[start[cur] + k]
                cz = cid[z]
                if cz >= c0 and count[cz] < 2:
                    g = fid[alpha[z]]
                    if dist[g, f0] <= Lmax - depth - 1:
                        found = k
                        break
                k += 1
            if found < 0:
                # backtrack
                depth -= 1
                if depth >= 1:
                    count[cid[walk[depth]]] -= 1
                continue
            choice[depth] = found
            z = ring[start[cur] + found]
            walk[depth] = z
            count[cid[z]] += 1
            depth += 1
            choice[depth] = -1
        count[c0] = 0
    return buf[:used].copy(), offs[:nout + 1].copy()


@njit(cache=True)
def side_masks(alpha, fid, nf, cid):
    """Per-face bitmask of circle sides; -1 marks an inconsistent labelling."""
    m = alpha.shape[0]
    mask = np.full(nf, -1, dtype=np.int64)
    mask[0] = 0
    queue = np.empty(nf, dtype=np.int32)
    queue[0] = 0
    head = 0
    tail = 1
    # darts grouped by face for the sweep
    order = np.argsort(fid)
    first = np.zeros(nf + 1, dtype=np.int32)
    for d in range(m):
        first[fid[d] + 1] += 1
    for f in range(nf):
        first[f + 1] += first[f]
    while head < tail:
        f = queue[head]
        head += 1
        for k in range(first[f], first[f + 1]):
            d = order[k]
            g = fid[alpha[d]]
            want = mask[f] ^ (np.int64(1) << cid[d])
            if mask[g] < 0:
                mask[g] = want
                queue[tail] = g
                tail += 1
            elif mask[g] != want:
                mask[0] = -1
                return mask
    return mask


@njit(cache=True)
def summary(alpha):
    """(n, v, p2, p3, intersecting, cylindrical, great) of a valid map."""
    v = alpha.shape[0] // 4
    fid, sizes = faces(alpha)
    nf = sizes.shape[0]
    cid, n = circles(alpha)
    p2 = 0
    p3 = 0
    for s in sizes:
        if s == 2:
            p2 += 1
        elif s == 3:
            p3 += 1
    intersecting = v == n * (n - 1)
    mask = side_masks(alpha, fid, nf, cid)
    full = (np.int64(1) << n) - 1
    srt = np.sort(mask)
    cyl = False
    for f in range(nf):
        want = full ^ mask[f]
        i = np.searchsorted(srt, want)
        if i < nf and srt[i] == want:
            cyl = True
            break
    great = intersecting
    if great and n >= 3:
        # every pair's two crossings must be separated by every other circle
        first = np.full((n, n), -1, dtype=np.int32)
        for w in range(v):
            a = cid[4 * w]
            b = cid[4 * w + 1]
            if first[a, b] < 0:
                first[a, b] = w
                first[b, a] = w
                continue
            m1 = mask[fid[4 * first[a, b]]]
            m2 = mask[fid[4 * w]]
            diff = m1 ^ m2
            for k in range(n):
                if k != a and k != b and ((diff >> k) & 1) == 0:
                    great = False
                    break
            if not great:
                break
    return n, v, p2, p3, intersecting, cyl, great


@njit(cache=True)
def float_alpha(params, tol):
    """Vertex-major map of a circle scene in floating point.

    ``params`` holds ``(a, b, r)`` triples.  Returns an empty array when the
    scene is close to degenerate (relative tolerance ``tol``), when some
    circle crosses nothing, or when the arrangement is disconnected.  This is
    only a screen; certificates are always re-derived exactly.
    """
    n = params.shape[0] // 3
    npair = 0
    cross = np.zeros((n, n), dtype=np.int32)
    for i in range(n):
        for j in range(i + 1, n):
            dx = params[3 * j] - params[3 * i]
            dy = params[3 * j + 1] - params[3 * i + 1]
            d2 = dx * dx + dy * dy
            ri = params[3 * i + 2]
            rj = params[3 * j + 2]
            outer = (ri + rj) * (ri + rj)
            inner = (ri - rj) * (ri - rj)
            scale = outer + d2
            if abs(d2 - outer) <= tol * scale or abs(d2 - inner) <= tol * scale:
                return EMPTY
            if inner < d2 < outer:
                cross[i, j] = 1
                cross[j, i] = 1
                npair += 1
    nv = 2 * npair
    # vertex data: circles (i, j), angle on i, angle on j
    vi = np.empty(nv, dtype=np.int32)
    vj = np.empty(nv, dtype=np.int32)
    vbr = np.empty(nv, dtype=np.int32)
    ang_i = np.empty(nv)
    ang_j = np.empty(nv)
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if cross[i, j] == 0:
                continue
            ai = params[3 * i]
            bi = params[3 * i + 1]
            dx = params[3 * j] - ai
            dy = params[3 * j + 1] - bi
            D2 = dx * dx + dy * dy
            ri = params[3 * i + 2]
            rj = params[3 * j + 2]
            L = D2 + ri * ri - rj * rj
            S = 4.0 * ri * ri * D2 - L * L
            if S <= 0.0:
                return EMPTY
            rs = np.sqrt(S)
            for br in (1, -1):
                px = (L * dx - br * rs * dy) / (2.0 * D2)
                py = (L * dy + br * rs * dx) / (2.0 * D2)
                vi[k] = i
                vj[k] = j
                vbr[k] = br
                ang_i[k] = np.arctan2(py, px)
                ang_j[k] = np.arctan2(py - dy, px - dx)
                k += 1
    # per-circle ordered crossing lists
    cnt = np.zeros(n, dtype=np.int32)
    for v in range(nv):
        cnt[vi[v]] += 1
        cnt[vj[v]] += 1
    for i in range(n):
        if cnt[i] == 0:
            return EMPTY
    alpha = np.empty(4 * nv, dtype=np.int32)
    for c in range(n):
        m = cnt[c]
        ids = np.empty(m, dtype=np.int32)
        angs = np.empty(m)
        t = 0
        for v in range(nv):
            if vi[v] == c:
                ids[t] = v
                angs[t] = ang_i[v]
                t += 1
            elif vj[v] == c:
                ids[t] = v
                angs[t] = ang_j[v]
                t += 1
        order = np.argsort(angs)
        for t in range(m):
            a0 = angs[order[t]]
            a1 = angs[order[(t + 1) % m]]
            gap = a1 - a0
            if t == m - 1:
                gap += 2.0 * np.pi
            if gap <= tol * 1e3:
                return EMPTY
        for t in range(m):
            v = ids[order[t]]
            w = ids[order[(t + 1) % m]]
            if vi[v] == c:
                fd = 4 * v
            elif vbr[v] > 0:
                fd = 4 * v + 1
            else:
                fd = 4 * v + 3
            if vi[w] == c:
                bd = 4 * w + 2
            elif vbr[w] > 0:
                bd = 4 * w + 3
            else:
                bd = 4 * w + 1
            alpha[fd] = bd
            alpha[bd] = fd
    if not connected(alpha):
        return EMPTY
    return alpha


@njit(cache=True)
def float_code(params, tol):
    alpha = float_alpha(params, tol)
    if alpha.shape[0] == 0:
        return EMPTY
    code, _ = canon(alpha)
    return code
