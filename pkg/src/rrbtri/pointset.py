"""Bicolored point sets and the generators used throughout the package."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .geometry import (
    COORD_LIMIT,
    GeometryError,
    Point,
    collinear_with,
    convex_position,
    find_degeneracy,
)

RED, BLUE = 0, 1


class PointSetError(ValueError):
    pass


class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class ColoredPointSet:
    """Red points R and blue points B, jointly in general position.

    Points are indexed globally with reds first: index ``i < n`` is ``reds[i]``
    and index ``n + j`` is ``blues[j]``.
    """

    reds: tuple
    blues: tuple
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "reds", tuple(p if isinstance(p, Point) else Point(*p) for p in self.reds))
        object.__setattr__(self, "blues", tuple(p if isinstance(p, Point) else Point(*p) for p in self.blues))
        if self.validate:
            bad = find_degeneracy(self.points)
            if bad is not None:
                pts = [self.points[i] for i in bad]
                if len(bad) == 2:
                    raise PointSetError(f"duplicate point {pts[0]}")
                raise PointSetError(f"collinear points {pts[0]}, {pts[1]}, {pts[2]}")

    @property
    def n(self) -> int:
        return len(self.reds)

    @property
    def m(self) -> int:
        return len(self.blues)

    @property
    def points(self) -> tuple:
        return self.reds + self.blues

    @property
    def colors(self) -> tuple:
        return (RED,) * len(self.reds) + (BLUE,) * len(self.blues)

    def __len__(self) -> int:
        return len(self.reds) + len(self.blues)

    def canonical(self) -> "ColoredPointSet":
        """Same set with reds and blues each sorted lexicographically."""
        return ColoredPointSet(tuple(sorted(self.reds)), tuple(sorted(self.blues)), validate=False)

    def swapped(self) -> "ColoredPointSet":
        return ColoredPointSet(self.blues, self.reds, validate=False)

    def same_as(self, other: "ColoredPointSet") -> bool:
        return set(self.reds) == set(other.reds) and set(self.blues) == set(other.blues)


@dataclass(frozen=True)
class ColoringScheme:
    """One of ``alternating`` (by index), ``random`` (balanced, seeded) or ``x-parity``."""

    tag: str
    seed: int | None = None

    def __post_init__(self):
        if self.tag not in ("alternating", "random", "x-parity"):
            raise ValueError(f"unknown coloring scheme {self.tag!r}")
        if self.tag == "random" and self.seed is None:
            raise ValueError("random coloring needs a seed")

    @classmethod
    def parse(cls, text: str) -> "ColoringScheme":
        """Parse ``alternating``, ``x-parity`` or ``random:SEED``."""
        if text.startswith("random"):
            _, _, seed = text.partition(":")
            return cls("random", int(seed or 0))
        return cls(text)

    def __str__(self) -> str:
        return f"random:{self.seed}" if self.tag == "random" else self.tag


def gen_random_gp(n: int, m: int, box: int, seed: int, budget: int | None = None) -> ColoredPointSet:
    """Sample n reds and m blues uniformly on [-box, box]^2 in general position."""
    if n < 0 or m < 0:
        raise ValueError("counts must be non-negative")
    if box <= 0 or box > COORD_LIMIT:
        raise ValueError(f"box half-width must be in 1..2**30, got {box}")
    total = n + m
    if (2 * box + 1) ** 2 < 4 * total:
        raise GenerationError(f"box {box} too small for {total} points")
    rng = random.Random(seed)
    if budget is None:
        budget = 1000 + 200 * total
    pts: list = []
    tries = 0
    while len(pts) < total:
        tries += 1
        if tries > budget:
            raise GenerationError(
                f"rejection budget {budget} exhausted after placing {len(pts)} of {total} points"
            )
        p = (rng.randint(-box, box), rng.randint(-box, box))
        if not collinear_with(p, pts):
            pts.append(p)
    return ColoredPointSet(tuple(pts[:n]), tuple(pts[n:]), validate=False)


def gen_clustered(n: int, m: int, box: int, seed: int, clusters: int = 2,
                  spread: int | None = None, budget: int | None = None) -> ColoredPointSet:
    """Uniform reds with the blues packed into a few tight clusters.

    Clustering the blues leaves most fan gaps blue-free, so p stays small and
    the good-sector machinery is exercised.
    """
    if clusters < 1:
        raise ValueError("need at least one cluster")
    if spread is None:
        spread = max(2, box // 50)
    rng = random.Random(seed)
    total = n + m
    if budget is None:
        budget = 1000 + 200 * total
    pts: list = []
    centers = [(rng.randint(-box, box), rng.randint(-box, box)) for _ in range(clusters)]
    tries = 0
    while len(pts) < total:
        tries += 1
        if tries > budget:
            raise GenerationError(f"rejection budget {budget} exhausted after {len(pts)} of {total} points")
        if len(pts) < n:
            p = (rng.randint(-box, box), rng.randint(-box, box))
        else:
            cx, cy = centers[rng.randrange(clusters)]
            p = (min(box, max(-box, cx + rng.randint(-spread, spread))),
                 min(box, max(-box, cy + rng.randint(-spread, spread))))
        if not collinear_with(p, pts):
            pts.append(p)
    return ColoredPointSet(tuple(pts[:n]), tuple(pts[n:]), validate=False)


def default_shrink(n: int) -> tuple[int, int]:
    """Shrink factor 1 - 1/(1000 n) as (numerator, denominator)."""
    return 1000 * n - 1, 1000 * n


def gen_circle_pair(n: int, radius: int = 10**7, shrink_num: int | None = None,
                    shrink_den: int | None = None, max_doublings: int = 8) -> ColoredPointSet:
    """n reds on a circle and n blues just inside, one blue next to each red.

    Red j sits at radius*(cos t_j, sin t_j) with t_j = 2*pi*j/n.  Blue j sits at
    radius*shrink in direction t_j + phi, where the small phase phi keeps the
    configuration in general position for even n (otherwise red j, blue j and
    the antipodal pair are collinear).  Coordinates are rounded to the grid; if
    rounding breaks general position, convex position of the reds or the
    radial separation, the radius is doubled.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    if shrink_num is None or shrink_den is None:
        shrink_num, shrink_den = default_shrink(n)
    if not 0 < shrink_num < shrink_den:
        raise ValueError("need 0 < shrink_num < shrink_den")
    s = shrink_num / shrink_den
    # tangential offset of a blue is an eighth of the red-blue gap times pi/n
    phi = (1 - s) * math.pi / (8 * n) / s
    r = int(radius)
    for _ in range(max_doublings + 1):
        if r > COORD_LIMIT:
            break
        reds = [(round(r * math.cos(2 * math.pi * j / n)), round(r * math.sin(2 * math.pi * j / n)))
                for j in range(n)]
        rb = r * s
        blues = [(round(rb * math.cos(2 * math.pi * j / n + phi)),
                  round(rb * math.sin(2 * math.pi * j / n + phi))) for j in range(n)]
        if _circle_ok(reds, blues, r, shrink_num, shrink_den):
            return ColoredPointSet(tuple(reds), tuple(blues))
        r *= 2
    raise GenerationError(f"circle construction for n={n} failed up to radius {r}")


def _circle_ok(reds, blues, r, num, den) -> bool:
    if find_degeneracy(reds + blues) is not None:
        return False
    if not convex_position(reds):
        return False
    # reds outside radius*shrink + 2, blues inside radius - 2 (exact, squared)
    inner = Fraction(r * num, den) + 2
    outer = r - 2
    if any(x * x + y * y <= inner * inner for x, y in reds):
        return False
    if any(x * x + y * y >= outer * outer for x, y in blues):
        return False
    return True


def _horton_offset(pts: Sequence[tuple[int, int]]) -> int:
    """Smallest d >= 1 putting the odd copy strictly above every line through two
    even-copy points, and the even copy strictly below every odd-copy line."""
    s = len(pts)
    if s < 2:
        return 1
    x = np.array([p[0] for p in pts], dtype=np.int64)
    y = np.array([p[1] for p in pts], dtype=np.int64)
    lx, ux = 2 * x, 2 * x + 1
    best = None
    for i in range(s):
        for j in range(s):
            if x[j] <= x[i]:
                continue
            dy = y[j] - y[i]
            # lower line through (lx_i, y_i), (lx_j, y_j); need y_u + d > line(ux_u)
            den = lx[j] - lx[i]
            need_up = (dy * (ux - lx[i])) // den + y[i] - y
            # upper line through (ux_i, y_i+d), (ux_j, y_j+d); need y_l < line(lx_l)
            den = ux[j] - ux[i]
            ceil_q = -((-(dy * (lx - ux[i]))) // den)
            need_low = y - y[i] - ceil_q
            cand = int(max(need_up.max(), need_low.max()))
            best = cand if best is None or cand > best else best
    return max(best + 1, 1)


def horton_separated(pts: Sequence[tuple[int, int]]) -> bool:
    """Exact check of the recursive Horton separation on a set sorted by x.

    At every level the even-indexed half must lie strictly below every line
    through two odd-indexed points, and the odd half strictly above every line
    through two even-indexed points.
    """
    pts = sorted(pts)
    if len(pts) <= 2:
        return True
    lo, hi = pts[0::2], pts[1::2]
    for a_i in range(len(lo)):
        for b_i in range(a_i + 1, len(lo)):
            a, b = lo[a_i], lo[b_i]
            for c in hi:
                if (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) <= 0:
                    return False
    for a_i in range(len(hi)):
        for b_i in range(a_i + 1, len(hi)):
            a, b = hi[a_i], hi[b_i]
            for c in lo:
                if (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) >= 0:
                    return False
    return horton_separated(lo) and horton_separated(hi)


def gen_horton(k: int) -> list[Point]:
    """Horton set with 2**k points, sorted by x.

    Built by recursive doubling: the even-x copy is the previous set with x
    doubled, the odd-x copy is shifted to x*2+1 and lifted by the smallest
    offset that separates the two copies.
    """
    if not 0 <= k <= 12:
        raise ValueError("need 0 <= k <= 12")
    pts = [(0, 0)]
    for level in range(k):
        d = _horton_offset(pts)
        top = max(p[1] for p in pts) + d
        if top > COORD_LIMIT:
            raise GenerationError(
                f"Horton set with k={k} exceeds the coordinate bound at level {level + 1} (y={top})"
            )
        pts = [(2 * x, y) for x, y in pts] + [(2 * x + 1, y + d) for x, y in pts]
    pts.sort()
    return [Point(x, y) for x, y in pts]


def bicolor(points: Sequence, scheme: ColoringScheme) -> ColoredPointSet:
    """Split points into reds and blues according to ``scheme``."""
    pts = [p if isinstance(p, Point) else Point(*p) for p in points]
    if scheme.tag == "alternating":
        if len(pts) % 2:
            raise ValueError(f"alternating coloring needs an even count, got {len(pts)}")
        reds, blues = pts[0::2], pts[1::2]
    elif scheme.tag == "x-parity":
        reds = [p for p in pts if p[0] % 2 == 0]
        blues = [p for p in pts if p[0] % 2 != 0]
    else:
        order = list(range(len(pts)))
        random.Random(scheme.seed).shuffle(order)
        red_idx = set(order[: len(pts) // 2])
        reds = [p for i, p in enumerate(pts) if i in red_idx]
        blues = [p for i, p in enumerate(pts) if i not in red_idx]
    return ColoredPointSet(tuple(reds), tuple(blues))


def from_points(reds: Iterable, blues: Iterable) -> ColoredPointSet:
    return ColoredPointSet(tuple(reds), tuple(blues))
