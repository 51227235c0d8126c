"""Brute-force k-hole counting."""

from __future__ import annotations

from functools import cmp_to_key
from itertools import combinations

from .geometry import convex_hull, orient

DEFAULT_MAX_POINTS = 24


class BudgetExceeded(ValueError):
    pass


def _inside_convex(p, poly) -> bool:
    # poly counterclockwise; strict interior (general position rules out the boundary)
    L = len(poly)
    for i in range(L):
        if orient(poly[i], poly[(i + 1) % L], p) <= 0:
            return False
    return True


def count_k_holes(points, k: int, max_points: int = DEFAULT_MAX_POINTS) -> int:
    """Number of k-subsets in convex position with no other point in their hull.

    Every subset is charged to its lexicographically least point ``a``; the rest
    of the subset, sorted by angle around ``a``, must form a strictly convex
    chain, so the enumeration extends chains in angular order and drops a
    prefix as soon as it stops turning left.  Completed subsets are then tested
    for emptiness against every other point.

    ``max_points`` is the brute-force budget; pass a larger value to run bigger
    inputs deliberately.
    """
    if not 3 <= k <= 7:
        raise ValueError("k must be between 3 and 7")
    pts = sorted(tuple(p) for p in points)
    N = len(pts)
    if N > max_points:
        raise BudgetExceeded(
            f"count_k_holes: {N} points exceeds the brute-force limit of {max_points}"
        )
    total = 0
    for ai in range(N):
        a = pts[ai]
        cand = sorted(pts[ai + 1:],
                      key=cmp_to_key(lambda u, v: -orient(a, u, v)))
        L = len(cand)
        if L < k - 1:
            continue
        others = cand  # interior points of such a hull are lexicographically above a

        def closes(chain) -> bool:
            return (orient(chain[-2], chain[-1], a) > 0
                    if len(chain) >= 2 else True)

        def extend(chain: list, start: int) -> int:
            if len(chain) == k - 1:
                if not closes(chain):
                    return 0
                poly = [a] + chain
                members = set(chain)
                for q in others:
                    if q not in members and _inside_convex(q, poly):
                        return 0
                return 1
            found = 0
            need = k - 1 - len(chain)
            for idx in range(start, L - need + 1):
                q = cand[idx]
                if len(chain) >= 2 and orient(chain[-2], chain[-1], q) <= 0:
                    continue
                if len(chain) >= 1 and orient(chain[-1], q, a) <= 0:
                    continue
                chain.append(q)
                found += extend(chain, idx + 1)
                chain.pop()
            return found

        total += extend([], 0)
    return total


def count_k_holes_naive(points, k: int) -> int:
    """Reference counter over itertools.combinations; for tests on small inputs."""
    pts = [tuple(p) for p in points]
    total = 0
    for sub in combinations(range(len(pts)), k):
        sp = [pts[i] for i in sub]
        hull = convex_hull(sp)
        if len(hull) != k:
            continue
        if any(_inside_convex(pts[q], hull) for q in range(len(pts)) if q not in sub):
            continue
        total += 1
    return total
