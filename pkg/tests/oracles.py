"""Slow reference implementations used to cross-check the kernels."""

from pcarr.maps import CombinatorialMap


def brute_automorphisms(cmap: CombinatorialMap) -> int:
    """Count dart permutations commuting with alpha and with sigma or its inverse."""
    sigma, alpha = cmap.sigma, cmap.alpha
    m = len(sigma)
    inv = [0] * m
    for d, s in enumerate(sigma):
        inv[s] = d
    count = 0
    for target_sigma in (sigma, inv):
        for image in range(m):
            phi = {0: image}
            stack = [0]
            ok = True
            while stack and ok:
                d = stack.pop()
                for src, dst in ((sigma[d], target_sigma[phi[d]]), (alpha[d], alpha[phi[d]])):
                    if src in phi:
                        if phi[src] != dst:
                            ok = False
                            break
                    else:
                        phi[src] = dst
                        stack.append(src)
            if ok and len(set(phi.values())) == m:
                count += 1
    return count


def euler_ok(arr) -> bool:
    return arr.v - arr.e + arr.f == 2
