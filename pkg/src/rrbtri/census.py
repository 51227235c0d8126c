"""Empty-triangle enumeration and classification by color."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from itertools import combinations
from collections import deque

from .geometry import orient
from .pointset import ColoredPointSet
from .regions import require_convex

CLASSES = ("rrr", "rrb", "rbb", "bbb")
LIST_LIMIT = 200


@dataclass
class Census:
    """Empty-triangle counts per color class.

    ``triangles`` optionally holds the empty triangles as sorted index triples
    (global indices, reds first), in sorted order.
    """

    rrr: int = 0
    rrb: int = 0
    rbb: int = 0
    bbb: int = 0
    triangles: list | None = None

    @property
    def total(self) -> int:
        return self.rrr + self.rrb + self.rbb + self.bbb

    def counts(self) -> dict:
        return {"rrr": self.rrr, "rrb": self.rrb, "rbb": self.rbb, "bbb": self.bbb}

    def __eq__(self, other) -> bool:
        if not isinstance(other, Census):
            return NotImplemented
        if self.counts() != other.counts():
            return False
        if self.triangles is not None and other.triangles is not None:
            return self.triangles == other.triangles
        return True

    def of_class(self, cls: str, s: ColoredPointSet) -> list:
        if self.triangles is None:
            raise ValueError("census was computed without a triangle list")
        want = CLASSES.index(cls)
        n = s.n
        return [t for t in self.triangles if (t[0] >= n) + (t[1] >= n) + (t[2] >= n) == want]


def triangle_class(t, n: int) -> str:
    """Class of an index triple: the number of blue vertices picks rrr/rrb/rbb/bbb."""
    return CLASSES[(t[0] >= n) + (t[1] >= n) + (t[2] >= n)]


def _from_list(tris: list, n: int, keep: bool) -> Census:
    cnt = [0, 0, 0, 0]
    for t in tris:
        cnt[(t[0] >= n) + (t[1] >= n) + (t[2] >= n)] += 1
    return Census(*cnt, triangles=sorted(tris) if keep else None)


def census_oracle(s: ColoredPointSet, keep_triangles: bool = True) -> Census:
    """Brute force: test every other point against every vertex triple. O(N^4)."""
    pts = s.points
    N = len(pts)
    tris = []
    for i, j, k in combinations(range(N), 3):
        a, b, c = pts[i], pts[j], pts[k]
        o = orient(a, b, c)
        empty = True
        for q in range(N):
            if q == i or q == j or q == k:
                continue
            p = pts[q]
            if orient(a, b, p) == o and orient(b, c, p) == o and orient(c, a, p) == o:
                empty = False
                break
        if empty:
            tris.append((i, j, k))
    return _from_list(tris, s.n, keep_triangles)


def _apex_edges(pts, apex: int, rest: list) -> list:
    """Visibility pairs (i, j) in the star polygon around ``apex``.

    ``rest`` holds the point indices lexicographically greater than the apex,
    sorted counterclockwise around it.  A pair of positions (i, j), i < j, is
    reported iff the triangle apex, rest[i], rest[j] is empty.
    """
    P = [pts[r] for r in rest]
    L = len(P)
    queues = [deque() for _ in range(L)]
    edges = []
    for i in range(L - 1):
        j = i + 1
        pj = P[j]
        stack = [i]
        while stack:
            k = stack[-1]
            q = queues[k]
            if q:
                f = q[0]
                pf, pk = P[f], P[k]
                # p_f sees p_j through p_k iff the chain turns left at p_k
                if (pk[0] - pf[0]) * (pj[1] - pf[1]) - (pk[1] - pf[1]) * (pj[0] - pf[0]) > 0:
                    stack.append(f)
                    continue
            stack.pop()
            edges.append((k, j))
            queues[j].append(k)
            if stack:
                queues[stack[-1]].popleft()
    return edges


def census_fast(s: ColoredPointSet, keep_triangles: bool | None = None) -> Census:
    """Radial-sweep census; same result as :func:`census_oracle`.

    Each empty triangle is charged to its lexicographically least vertex.  Around
    that apex the remaining candidates (all lexicographically greater) span less
    than a half-turn, so they sort by cross product alone, and the empty
    triangles at the apex are exactly the visibility edges of the resulting star
    polygon, found in time linear in their number.
    """
    pts = s.points
    N = len(pts)
    n = s.n
    if keep_triangles is None:
        keep_triangles = N <= LIST_LIMIT
    order = sorted(range(N), key=lambda i: pts[i])
    cnt = [0, 0, 0, 0]
    tris = [] if keep_triangles else None
    blue = [0] * n + [1] * (N - n)
    for t, a in enumerate(order):
        pa = pts[a]
        ax, ay = pa

        def cmp(u, v, ax=ax, ay=ay):
            pu, pv = pts[u], pts[v]
            c = (pu[0] - ax) * (pv[1] - ay) - (pu[1] - ay) * (pv[0] - ax)
            return -1 if c > 0 else (1 if c < 0 else 0)

        rest = sorted(order[t + 1:], key=cmp_to_key(cmp))
        if len(rest) < 2:
            continue
        ba = blue[a]
        for i, j in _apex_edges(pts, a, rest):
            u, v = rest[i], rest[j]
            cnt[ba + blue[u] + blue[v]] += 1
            if tris is not None:
                tris.append(tuple(sorted((a, u, v))))
    return Census(*cnt, triangles=sorted(tris) if tris is not None else None)


def witness_for_pair(s: ColoredPointSet, r_index: int, b_index: int) -> tuple:
    """Empty triangle through red ``r_index`` and blue ``b_index``.

    The third vertex minimizes |cross(b - r, c - r)|, i.e. the distance to the
    line rb; ties go to the smallest global index.  Returns global indices
    ``(r, b, c)``.
    """
    pts = s.points
    if len(pts) < 3:
        raise ValueError("need at least three points")
    if not (0 <= r_index < s.n and 0 <= b_index < s.m):
        raise IndexError("red or blue index out of range")
    ri, bi = r_index, s.n + b_index
    r, b = pts[ri], pts[bi]
    ux, uy = b[0] - r[0], b[1] - r[1]
    best, best_c = None, None
    for c, p in enumerate(pts):
        if c == ri or c == bi:
            continue
        v = abs(ux * (p[1] - r[1]) - uy * (p[0] - r[0]))
        if best is None or v < best:
            best, best_c = v, c
    return (ri, bi, best_c)


def region_members(s: ColoredPointSet, region) -> list[bool]:
    return [region.contains(p) for p in s.points]


def rrb_in_region(s: ColoredPointSet, region, census: Census | None = None) -> int:
    """Empty rrb triangles with all three vertices in the closed convex region.

    For a convex region, emptiness among region points equals global emptiness,
    so this filters the global triangle list (or, when few points fall inside,
    looks their triples up in it).  Reflex sectors raise RegionError.
    """
    require_convex(region)
    if census is None or census.triangles is None:
        census = census_fast(s, keep_triangles=True)
    inside = region_members(s, region)
    idx = [i for i, f in enumerate(inside) if f]
    n = s.n
    if len(idx) < 3:
        return 0
    reds_in = [i for i in idx if i < n]
    blues_in = [i for i in idx if i >= n]
    pairs = len(reds_in) * (len(reds_in) - 1) // 2 * len(blues_in)
    if pairs == 0:
        return 0
    tris = census.triangles
    if pairs < len(tris) // 4:
        lookup = _triangle_set(census)
        count = 0
        for r1, r2 in combinations(reds_in, 2):
            for b in blues_in:
                if (r1, r2, b) in lookup:
                    count += 1
        return count
    return sum(1 for t in tris
               if t[0] < n and t[1] < n and t[2] >= n
               and inside[t[0]] and inside[t[1]] and inside[t[2]])


def _triangle_set(census: Census) -> frozenset:
    cache = getattr(census, "_set_cache", None)
    if cache is None:
        cache = frozenset(census.triangles)
        census._set_cache = cache
    return cache


def is_empty_triangle(s: ColoredPointSet, t) -> bool:
    pts = s.points
    a, b, c = (pts[i] for i in t)
    o = orient(a, b, c)
    if o == 0:
        return False
    for q, p in enumerate(pts):
        if q in t:
            continue
        if orient(a, b, p) == o and orient(b, c, p) == o and orient(c, a, p) == o:
            return False
    return True
