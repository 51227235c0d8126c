"""Exact integer predicates.

Everything here works on plain integer coordinates.  No floating point is
used in any predicate; angular comparisons reduce to signs of cross and dot
products.
"""

from __future__ import annotations

from functools import cmp_to_key
from math import gcd
from operator import itemgetter
from typing import Iterable, Sequence

COORD_LIMIT = 1 << 30


class GeometryError(ValueError):
    """Raised when a predicate's precondition is violated."""


class Point(tuple):
    """Integer point with |x|, |y| <= 2**30."""

    __slots__ = ()

    def __new__(cls, x: int, y: int) -> "Point":
        if type(x) is not int or type(y) is not int:
            try:
                if x != int(x) or y != int(y):
                    raise TypeError
                x, y = int(x), int(y)
            except (TypeError, ValueError):
                raise GeometryError(f"non-integer coordinates ({x!r}, {y!r})") from None
        if not (-COORD_LIMIT <= x <= COORD_LIMIT and -COORD_LIMIT <= y <= COORD_LIMIT):
            raise GeometryError(f"coordinates ({x}, {y}) exceed the bound 2**30")
        return tuple.__new__(cls, (x, y))

    x = property(itemgetter(0))
    y = property(itemgetter(1))

    def __repr__(self) -> str:
        return f"Point({self[0]}, {self[1]})"

    def __getnewargs__(self):
        return (self[0], self[1])


class Direction(tuple):
    """Non-zero integer direction vector, stored unreduced.

    Two directions are equal when they point the same way (cross product zero,
    dot product positive); the hash uses the gcd-reduced vector to agree.
    """

    __slots__ = ()

    def __new__(cls, dx: int, dy: int) -> "Direction":
        dx, dy = int(dx), int(dy)
        if dx == 0 and dy == 0:
            raise GeometryError("zero direction")
        return tuple.__new__(cls, (dx, dy))

    dx = property(itemgetter(0))
    dy = property(itemgetter(1))

    @classmethod
    def between(cls, a: Sequence[int], b: Sequence[int]) -> "Direction":
        return cls(b[0] - a[0], b[1] - a[1])

    def reduced(self) -> tuple[int, int]:
        g = gcd(self[0], self[1])
        return (self[0] // g, self[1] // g)

    def __neg__(self) -> "Direction":
        return Direction(-self[0], -self[1])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Direction):
            return NotImplemented
        return (self[0] * other[1] - self[1] * other[0] == 0
                and self[0] * other[0] + self[1] * other[1] > 0)

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self) -> int:
        return hash(self.reduced())

    def __repr__(self) -> str:
        return f"Direction({self[0]}, {self[1]})"

    def __getnewargs__(self):
        return (self[0], self[1])


def cross(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def dot(u, v) -> int:
    return u[0] * v[0] + u[1] * v[1]


def orient(a, b, c) -> int:
    """Sign of (b - a) x (c - a): +1 counterclockwise, 0 collinear, -1 clockwise."""
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def point_in_triangle_strict(p, a, b, c) -> bool:
    """True iff ``p`` is strictly inside triangle ``abc``."""
    o = orient(a, b, c)
    if o == 0:
        raise GeometryError(f"degenerate triangle {a}, {b}, {c}")
    return orient(a, b, p) == o and orient(b, c, p) == o and orient(c, a, p) == o


def _half(start, v) -> int:
    # 0 for angles in [0, pi) measured counterclockwise from start, else 1
    c = cross(start, v)
    if c > 0 or (c == 0 and dot(start, v) > 0):
        return 0
    return 1


def angle_cmp(start, u, v) -> int:
    """Compare the counterclockwise angles of vectors u, v measured from ``start``.

    Returns -1, 0 or +1.  Angles live in [0, 2*pi); equal directions compare 0.
    """
    hu, hv = _half(start, u), _half(start, v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = cross(u, v)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def ccw_compare(apex, u, v, start) -> int:
    """Order points u, v by counterclockwise angle around ``apex`` from ``start``.

    Ties in angle are broken by distance from the apex (closer first).
    """
    if tuple(u) == tuple(apex) or tuple(v) == tuple(apex):
        raise GeometryError("ccw_compare: point coincides with apex")
    du = (u[0] - apex[0], u[1] - apex[1])
    dv = (v[0] - apex[0], v[1] - apex[1])
    c = angle_cmp(start, du, dv)
    if c:
        return c
    lu, lv = dot(du, du), dot(dv, dv)
    return (lu > lv) - (lu < lv)


def sort_ccw(apex, points: Iterable, start=(1, 0)) -> list:
    """Sort points counterclockwise around ``apex`` starting at direction ``start``."""
    return sorted(points, key=cmp_to_key(lambda u, v: ccw_compare(apex, u, v, start)))


def in_ccw_span(start, end, v) -> bool:
    """True iff direction ``v`` lies in the closed counterclockwise sweep start -> end.

    When start and end point the same way the sweep is the single ray.
    """
    return angle_cmp(start, v, end) <= 0


def _primitive_line(dx: int, dy: int) -> tuple[int, int]:
    g = gcd(dx, dy)
    dx, dy = dx // g, dy // g
    if dx < 0 or (dx == 0 and dy < 0):
        dx, dy = -dx, -dy
    return dx, dy


def collinear_with(p, others: Iterable) -> bool:
    """True iff ``p`` coincides with a point of ``others`` or is collinear with two of them."""
    seen = set()
    for q in others:
        dx, dy = q[0] - p[0], q[1] - p[1]
        if dx == 0 and dy == 0:
            return True
        key = _primitive_line(dx, dy)
        if key in seen:
            return True
        seen.add(key)
    return False


def find_degeneracy(points: Sequence) -> tuple | None:
    """Return indices witnessing a violation of general position, or None.

    A duplicate gives a pair ``(i, j)``; a collinear triple gives ``(i, j, k)``.
    Runs in O(N^2) by hashing primitive line directions around each point.
    """
    n = len(points)
    for i in range(n):
        p = points[i]
        seen: dict[tuple[int, int], int] = {}
        for j in range(i + 1, n):
            q = points[j]
            dx, dy = q[0] - p[0], q[1] - p[1]
            if dx == 0 and dy == 0:
                return (i, j)
            key = _primitive_line(dx, dy)
            if key in seen:
                return (i, seen[key], j)
            seen[key] = j
    return None


def is_general_position(points: Sequence) -> bool:
    """All points distinct and no three collinear."""
    return find_degeneracy(points) is None


def convex_position(points: Sequence) -> bool:
    """True iff the points are the vertices of a convex polygon (strictly)."""
    n = len(points)
    if n <= 2:
        return len(set(map(tuple, points))) == n
    if not is_general_position(points):
        return False
    hull = convex_hull(points)
    return len(hull) == n


def convex_hull(points: Sequence) -> list:
    """Strict convex hull in counterclockwise order (monotone chain)."""
    pts = sorted(set(map(tuple, points)))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out: list = []
        for p in seq:
            while len(out) >= 2 and orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


def angle_le_pi_cmp(u1, v1, u2, v2) -> int:
    """Compare the unsigned angles angle(u1, v1) and angle(u2, v2), both in [0, pi].

    Uses cos = dot / (|u||v|), compared exactly after squaring with signs.
    """
    d1, d2 = dot(u1, v1), dot(u2, v2)
    n1 = dot(u1, u1) * dot(v1, v1)
    n2 = dot(u2, u2) * dot(v2, v2)
    # cos1 ? cos2  <=>  d1*sqrt(n2) ? d2*sqrt(n1)
    s1 = (d1 > 0) - (d1 < 0)
    s2 = (d2 > 0) - (d2 < 0)
    if s1 != s2:
        cos_cmp = 1 if s1 > s2 else -1
    else:
        lhs, rhs = d1 * d1 * n2, d2 * d2 * n1
        mag = (lhs > rhs) - (lhs < rhs)
        cos_cmp = mag if s1 >= 0 else -mag
    # larger cosine means smaller angle
    return -cos_cmp
