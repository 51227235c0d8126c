"""Closed planar regions used by the discrepancy bounds."""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import Direction, angle_cmp, cross, dot


class RegionError(ValueError):
    pass


@dataclass(frozen=True)
class Plane:
    def contains(self, p) -> bool:
        return True

    @property
    def is_reflex(self) -> bool:
        return False

    def to_dict(self) -> dict:
        return {"kind": "plane"}


@dataclass(frozen=True)
class HalfPlane:
    """Points p with dot(p - anchor, normal) >= 0 (or > 0 when open)."""

    anchor: tuple
    normal: Direction
    closed: bool = True

    def contains(self, p) -> bool:
        d = dot((p[0] - self.anchor[0], p[1] - self.anchor[1]), self.normal)
        return d >= 0 if self.closed else d > 0

    @property
    def is_reflex(self) -> bool:
        return False

    @classmethod
    def left_of(cls, anchor, direction) -> "HalfPlane":
        """Closed half-plane to the left of the directed line through anchor."""
        return cls(tuple(anchor), Direction(-direction[1], direction[0]))

    def to_dict(self) -> dict:
        return {"kind": "halfplane", "anchor": list(self.anchor),
                "normal": list(self.normal), "closed": self.closed}


@dataclass(frozen=True)
class Sector:
    """Closed sector swept counterclockwise from ``start`` to ``end`` around ``apex``.

    Contains the apex and both bounding rays.  Equal start and end directions
    give a single ray.  A sweep larger than a half-turn is reflex, and therefore
    not convex.
    """

    apex: tuple
    start: Direction
    end: Direction

    def contains(self, p) -> bool:
        v = (p[0] - self.apex[0], p[1] - self.apex[1])
        if v == (0, 0):
            return True
        return angle_cmp(self.start, v, self.end) <= 0

    @property
    def is_reflex(self) -> bool:
        c = cross(self.start, self.end)
        return c < 0

    @property
    def is_ray(self) -> bool:
        return self.start == self.end

    def to_dict(self) -> dict:
        return {"kind": "sector", "apex": list(self.apex),
                "start": list(self.start), "end": list(self.end)}


def region_from_dict(d: dict):
    kind = d["kind"]
    if kind == "plane":
        return Plane()
    if kind == "halfplane":
        return HalfPlane(tuple(d["anchor"]), Direction(*d["normal"]), d.get("closed", True))
    if kind == "sector":
        return Sector(tuple(d["apex"]), Direction(*d["start"]), Direction(*d["end"]))
    raise RegionError(f"unknown region kind {kind!r}")


def require_convex(region) -> None:
    if region.is_reflex:
        raise RegionError(f"region {region} is reflex, not convex")
