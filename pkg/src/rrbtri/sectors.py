"""Sector fans, discrepancy bounds and the good-sector scan.

Indices are global (reds first, then blues) unless a name says otherwise.
All bounds are exact integers or Fractions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key

from .geometry import Direction, angle_cmp, angle_le_pi_cmp, ccw_compare, cross
from .pointset import ColoredPointSet
from .regions import HalfPlane, Sector, require_convex

X_AXIS = (1, 0)


class SectorError(ValueError):
    pass


class StructuralError(AssertionError):
    """An invariant the proof guarantees failed; indicates a bug, never a counterexample."""

    def __init__(self, message: str, dump: dict | None = None):
        super().__init__(message)
        self.dump = dump or {}

    def __str__(self) -> str:
        text = super().__str__()
        if self.dump:
            text += "\n" + json.dumps(self.dump, indent=1, default=str)
        return text


def _ccw_sorted(pts, apex_idx, indices, start=X_AXIS):
    apex = pts[apex_idx]
    return sorted(indices, key=cmp_to_key(lambda u, v: ccw_compare(apex, pts[u], pts[v], start)))


def _gap_split(pts, apex_idx, rays, items):
    """Assign ``items`` (point indices) to the gaps between consecutive ``rays``.

    Gap i runs counterclockwise from rays[i] to rays[(i+1) % len(rays)].  Returns
    per-gap lists of items in counterclockwise order within the gap.
    """
    L = len(rays)
    order = _ccw_sorted(pts, apex_idx, list(rays) + list(items))
    ray_set = set(rays)
    gaps: list[list[int]] = [[] for _ in range(L)]
    head: list[int] = []  # items before the first ray wrap into the last gap
    g = -1
    for i in order:
        if i in ray_set:
            g += 1
        elif g < 0:
            head.append(i)
        else:
            gaps[g].append(i)
    gaps[L - 1].extend(head)
    return gaps


@dataclass
class SectorFan:
    """Rays from a red apex to every other red, with the blues in each gap.

    ``ray_reds[i]`` is the red hit by ray i (counterclockwise from the +x
    axis); gap i lies between ray i and ray i+1 (cyclically) and holds the
    blues listed in ``gap_blues[i]``.
    """

    apex_index: int
    apex: tuple
    ray_reds: list
    rays: list
    gap_blues: list

    @property
    def blue_sector_flags(self) -> list[bool]:
        return [bool(g) for g in self.gap_blues]

    @property
    def p_of_r(self) -> int:
        return sum(1 for g in self.gap_blues if g)

    @property
    def red_sectors(self) -> list[tuple[int, int]]:
        """Merged runs between consecutive blue gaps, as (first_ray, last_ray).

        The rays run counterclockwise and cyclically from first to last; a pair
        with first == last is a single ray.  Empty when no gap holds a blue.
        """
        L = len(self.rays)
        blue = [i for i in range(L) if self.gap_blues[i]]
        out = []
        for t, g in enumerate(blue):
            nxt = blue[(t + 1) % len(blue)]
            out.append(((g + 1) % L, nxt))
        return out

    def red_sector_of_ray(self) -> dict[int, int]:
        """Map ray index -> index of the red sector containing it."""
        L = len(self.rays)
        out = {}
        for s, (a, b) in enumerate(self.red_sectors):
            i = a
            while True:
                out[i] = s
                if i == b:
                    break
                i = (i + 1) % L
        return out

    def gap_is_reflex(self, i: int) -> bool:
        L = len(self.rays)
        if L == 1:
            return True
        return cross(self.rays[i], self.rays[(i + 1) % L]) < 0

    def gap_region(self, i: int) -> Sector:
        L = len(self.rays)
        return Sector(self.apex, self.rays[i], self.rays[(i + 1) % L])


def build_sector_fan(s: ColoredPointSet, r: int) -> SectorFan:
    if s.n < 2:
        raise SectorError("a sector fan needs at least two reds")
    if not 0 <= r < s.n:
        raise IndexError(f"red index {r} out of range")
    pts = s.points
    other = [i for i in range(s.n) if i != r]
    rays = _ccw_sorted(pts, r, other)
    gaps = _gap_split(pts, r, rays, range(s.n, s.n + s.m))
    return SectorFan(
        apex_index=r,
        apex=pts[r],
        ray_reds=rays,
        rays=[Direction.between(pts[r], pts[i]) for i in rays],
        gap_blues=gaps,
    )


def p_min(s: ColoredPointSet) -> tuple[int, int]:
    """Minimum blue-sector count over reds, with its smallest argmin."""
    if s.n < 2:
        raise SectorError("p_min needs at least two reds")
    best = None
    for r in range(s.n):
        p = build_sector_fan(s, r).p_of_r
        if best is None or p < best[0]:
            best = (p, r)
    return best


def discrepancy(s: ColoredPointSet, region) -> int:
    require_convex(region)
    reds = sum(1 for p in s.reds if region.contains(p))
    blues = sum(1 for p in s.blues if region.contains(p))
    return reds - blues


def region_counts(s: ColoredPointSet, region) -> tuple[int, int]:
    return (sum(1 for p in s.reds if region.contains(p)),
            sum(1 for p in s.blues if region.contains(p)))


def lemma1_bound(s: ColoredPointSet, region) -> int:
    """max(0, |B(C)| * disc(C)); a lower bound on the empty rrb triangles inside C."""
    require_convex(region)
    reds, blues = region_counts(s, region)
    return max(0, blues * (reds - blues))


@dataclass
class BlueSector:
    r1: int
    r2: int
    blues: int
    reflex: bool

    @property
    def empty(self) -> bool:
        return self.blues == 0


def empty_sectors(s: ColoredPointSet, region, b: int) -> list[BlueSector]:
    """Sectors around blue ``b`` (blue-local index) cut by rays to the reds in the region."""
    require_convex(region)
    pts = s.points
    bi = s.n + b
    if not 0 <= b < s.m or not region.contains(pts[bi]):
        raise SectorError(f"blue {b} is not in the region")
    reds = [i for i in range(s.n) if region.contains(pts[i])]
    if not reds:
        raise SectorError("region holds no red point")
    blues = [i for i in range(s.n, s.n + s.m) if i != bi and region.contains(pts[i])]
    rays = _ccw_sorted(pts, bi, reds)
    gaps = _gap_split(pts, bi, rays, blues)
    L = len(rays)
    out = []
    for i in range(L):
        r1, r2 = rays[i], rays[(i + 1) % L]
        if L == 1:
            reflex = True
        else:
            reflex = cross(Direction.between(pts[bi], pts[r1]), Direction.between(pts[bi], pts[r2])) < 0
        out.append(BlueSector(r1, r2, len(gaps[i]), reflex))
    return out


def empty_sector_count(s: ColoredPointSet, region, b: int) -> int:
    """Number of sectors around blue ``b`` holding no other blue of the region.

    Includes the (at most one) reflex sector; drop it to get the sectors that
    yield an empty rrb triangle.
    """
    return sum(1 for sec in empty_sectors(s, region, b) if sec.empty)


def _sweep_cmp(u, v, w, z) -> int:
    """Compare the counterclockwise sweep angles u->v and w->z."""
    big1 = cross(u, v) < 0
    big2 = cross(w, z) < 0
    if big1 != big2:
        return 1 if big1 else -1
    if big1:
        # both exceed a half-turn: compare the complementary sweeps v->u, z->w
        return -angle_le_pi_cmp(v, u, z, w)
    return angle_le_pi_cmp(u, v, w, z)


def lemma2_witnesses(s: ColoredPointSet) -> list[tuple[int, int, int]]:
    """Distinct empty rrb triangles, at least p*n/2 of them.

    For each red r and each blue sector of its fan bounded by rays to r1, r2,
    take the blue making the smallest angle with a bounding ray and join it to
    r and that ray's red.  Ties go to the r1 side.
    """
    if s.n < 2 or s.m < 1:
        raise SectorError("witnesses need n >= 2 and m >= 1")
    pts = s.points
    out = set()
    for r in range(s.n):
        fan = build_sector_fan(s, r)
        L = len(fan.rays)
        apex = pts[r]
        for g, blues in enumerate(fan.gap_blues):
            if not blues:
                continue
            r1, r2 = fan.ray_reds[g], fan.ray_reds[(g + 1) % L]
            b_first, b_last = blues[0], blues[-1]
            u1 = fan.rays[g]
            v1 = Direction.between(apex, pts[b_first])
            u2 = Direction.between(apex, pts[b_last])
            v2 = fan.rays[(g + 1) % L]
            if _sweep_cmp(u1, v1, u2, v2) <= 0:
                tri = (r, r1, b_first)
            else:
                tri = (r, r2, b_last)
            out.add(tuple(sorted(tri)))
    return sorted(out)


@dataclass
class BisectingLine:
    """Line through red ``r0`` with direction ``axis``; ``half`` = +1 picks the
    closed half-plane to the left of the axis, -1 the one to the right."""

    r0: int
    axis: Direction
    half: int
    reds_left: int
    reds_right: int
    reds_on: int
    blues_left: int
    blues_right: int

    @property
    def oriented_axis(self) -> Direction:
        return self.axis if self.half > 0 else -self.axis

    def halfplanes(self, s: ColoredPointSet) -> tuple[HalfPlane, HalfPlane]:
        """(H, complement), both closed."""
        d = self.oriented_axis
        apex = s.points[self.r0]
        return HalfPlane.left_of(apex, d), HalfPlane.left_of(apex, -d)


def _upper(v):
    # representative of the undirected line direction with angle in [0, pi)
    if v[1] < 0 or (v[1] == 0 and v[0] < 0):
        return (-v[0], -v[1])
    return (v[0], v[1])


def _side_counts(s, r0, d):
    pts = s.points
    o = pts[r0]
    rl = rr = ron = bl = br = bon = 0
    for i, p in enumerate(pts):
        if i == r0:
            continue
        c = cross(d, (p[0] - o[0], p[1] - o[1]))
        if i < s.n:
            if c > 0:
                rl += 1
            elif c < 0:
                rr += 1
            else:
                ron += 1
        else:
            if c > 0:
                bl += 1
            elif c < 0:
                br += 1
            else:
                bon += 1
    return rl, rr, ron, bl, br, bon


def bisecting_line(s: ColoredPointSet, r0: int) -> BisectingLine:
    """A line through red r0 leaving ceil((n+1)/2) reds in each closed half.

    For odd n the line avoids every point: its direction is the sum of two
    angularly consecutive point directions (taken modulo a half-turn).  For
    even n it passes through one other red.  ``half`` selects the side holding
    at least ceil(m/2) blues.
    """
    n, m = s.n, s.m
    if n < 5:
        raise SectorError("bisecting_line needs n >= 5; use the p*n/2 bound for smaller n")
    pts = s.points
    o = pts[r0]
    target = (n + 2) // 2  # ceil((n+1)/2)
    others = [i for i in range(len(pts)) if i != r0]
    ups = {i: _upper((pts[i][0] - o[0], pts[i][1] - o[1])) for i in others}
    order = sorted(others, key=cmp_to_key(lambda u, v: angle_cmp(X_AXIS, ups[u], ups[v])))
    if n % 2:
        cands = []
        for t in range(len(order)):
            a = ups[order[t]]
            if t + 1 < len(order):
                b = ups[order[t + 1]]
            else:
                b = (-ups[order[0]][0], -ups[order[0]][1])
            cands.append((a[0] + b[0], a[1] + b[1]))
    else:
        cands = [ups[i] for i in order if i < n]
    for d in cands:
        rl, rr, ron, bl, br, bon = _side_counts(s, r0, d)
        if bon or rl + ron + 1 != target or rr + ron + 1 != target:
            continue
        axis = Direction(*d)
        half = 1 if bl >= (m + 1) // 2 else -1
        return BisectingLine(r0, axis, half, rl, rr, ron, bl, br)
    raise StructuralError("no bisecting line found", {"r0": r0, "n": n, "m": m})


@dataclass
class GoodSector:
    v_minus: Direction
    v_plus: Direction
    v_minus_index: int
    v_plus_index: int
    reds_in: int
    blues_in: int


@dataclass
class TerminalSector:
    """Leftover sector from ``start`` to the far end of the axis.

    ``start_index`` is None when no red remained, in which case the sector is
    just the far axis ray (containing r0 only).
    """

    start: Direction
    start_index: int | None
    reds_in: int
    blues_in: int


@dataclass
class GoodSectorRun:
    r0: int
    apex: tuple
    axis: Direction          # oriented: H is the closed half-plane to its left
    reflected: bool
    reds_in_h: int
    blues_in_h: int
    steps: list = field(default_factory=list)
    terminal: TerminalSector | None = None

    @property
    def k(self) -> int:
        return len(self.steps)

    def step_region(self, i: int) -> Sector:
        g = self.steps[i]
        if self.reflected:
            return Sector(self.apex, g.v_plus, g.v_minus)
        return Sector(self.apex, g.v_minus, g.v_plus)

    def terminal_region(self) -> Sector:
        t = self.terminal
        if self.reflected:
            return Sector(self.apex, self.axis, t.start)
        return Sector(self.apex, t.start, -self.axis)

    def regions(self) -> list[Sector]:
        return [self.step_region(i) for i in range(self.k)] + [self.terminal_region()]

    def to_dict(self) -> dict:
        return {
            "r0": self.r0,
            "axis": list(self.axis),
            "reflected": self.reflected,
            "reds_in_h": self.reds_in_h,
            "blues_in_h": self.blues_in_h,
            "steps": [
                {"v_minus": list(g.v_minus), "v_plus": list(g.v_plus),
                 "v_minus_index": g.v_minus_index, "v_plus_index": g.v_plus_index,
                 "reds_in": g.reds_in, "blues_in": g.blues_in}
                for g in self.steps
            ],
            "terminal": {"start": list(self.terminal.start), "start_index": self.terminal.start_index,
                         "reds_in": self.terminal.reds_in, "blues_in": self.terminal.blues_in},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GoodSectorRun":
        run = cls(d["r0"], None, Direction(*d["axis"]), d["reflected"], d["reds_in_h"], d["blues_in_h"])
        run.steps = [GoodSector(Direction(*g["v_minus"]), Direction(*g["v_plus"]), g["v_minus_index"],
                                g["v_plus_index"], g["reds_in"], g["blues_in"]) for g in d["steps"]]
        t = d["terminal"]
        run.terminal = TerminalSector(Direction(*t["start"]), t["start_index"], t["reds_in"], t["blues_in"])
        return run


def good_sector_run(s: ColoredPointSet, r0: int, axis, half: int = 1,
                    reflected: bool = False) -> GoodSectorRun:
    """Rotate a ray around r0 through the closed half-plane H, cutting good sectors.

    H lies to the left of ``axis`` when ``half`` is +1 (right when -1).  The
    forward run starts on the positive axis and turns counterclockwise; the
    reflected run starts on the negative axis and turns clockwise, which is the
    forward run of the mirror image.  Red and blue counts always include r0.
    """
    pts = s.points
    o = pts[r0]
    d = Direction(*axis) if half > 0 else -Direction(*axis)
    events = []
    for i, p in enumerate(pts):
        if i == r0:
            continue
        v = (p[0] - o[0], p[1] - o[1])
        c = cross(d, v)
        if c < 0:
            continue
        if c == 0 and i >= s.n:
            raise SectorError(f"blue point {p} lies on the axis")
        events.append(i)
    events = _ccw_sorted(pts, r0, events, start=d)
    if reflected:
        events.reverse()
    reds_h = 1 + sum(1 for i in events if i < s.n)
    blues_h = len(events) - (reds_h - 1)
    run = GoodSectorRun(r0, o, d, reflected, reds_h, blues_h)
    far = d if reflected else -d
    L = len(events)
    pos = 0
    while True:
        while pos < L and events[pos] >= s.n:
            pos += 1
        if pos == L:
            run.terminal = TerminalSector(far, None, 1, 0)
            break
        vm = events[pos]
        reds, blues = 2, 0
        pos += 1
        vp = None
        while pos < L:
            e = events[pos]
            pos += 1
            if e < s.n:
                reds += 1
            else:
                blues += 1
                if 3 * blues >= reds:
                    vp = e
                    break
        if vp is None:
            run.terminal = TerminalSector(Direction.between(o, pts[vm]), vm, reds, blues)
            break
        run.steps.append(GoodSector(Direction.between(o, pts[vm]), Direction.between(o, pts[vp]),
                                    vm, vp, reds, blues))
    return run


def run_violations(run: GoodSectorRun, fan: SectorFan | None = None) -> list[str]:
    """Structural invariants of a good-sector run that the proof guarantees."""
    bad = []
    for i, g in enumerate(run.steps):
        if g.reds_in < 2:
            bad.append(f"G_{i + 1}: fewer than two reds")
        if g.blues_in != -(-g.reds_in // 3):
            bad.append(f"G_{i + 1}: blues {g.blues_in} != ceil({g.reds_in}/3)")
    t = run.terminal
    if t.reds_in < 1 or not 3 * t.blues_in < t.reds_in:
        bad.append(f"T: blues {t.blues_in} not below reds {t.reds_in}/3")
    total = sum(g.reds_in for g in run.steps) + t.reds_in
    if total != run.reds_in_h + run.k:
        bad.append(f"red count {total} != |R(H)| + k = {run.reds_in_h + run.k}")
    if fan is not None:
        if run.k > fan.p_of_r:
            bad.append(f"k = {run.k} exceeds p(r0) = {fan.p_of_r}")
        where = fan.red_sector_of_ray()
        ray_of = {red: i for i, red in enumerate(fan.ray_reds)}
        secs = [where.get(ray_of[g.v_minus_index]) for g in run.steps]
        if len(set(secs)) != len(secs):
            bad.append(f"v_i^- share a red sector: {secs}")
    return bad


def terminals_disjoint(forward: GoodSectorRun, backward: GoodSectorRun) -> bool:
    """True iff T and T' meet only at r0 (forward T starts strictly after T' ends)."""
    d = forward.axis
    return angle_cmp(d, backward.terminal.start, forward.terminal.start) < 0


def theorem_floor_holds(n: int, count) -> bool:
    """count >= n**1.5 / 72, checked as n**3 <= (72 * count)**2 exactly."""
    c = Fraction(count)
    if c < 0:
        return False
    return n ** 3 * c.denominator ** 2 <= (72 * c.numerator) ** 2


@dataclass
class Certificate:
    n: int
    m: int
    p: int
    r0: int
    branch: str                      # "lemma2" or "good-sector"
    lower_bound: Fraction
    lemma2_bound: Fraction
    bisector: BisectingLine | None = None
    forward: GoodSectorRun | None = None
    reflected: GoodSectorRun | None = None
    chosen: str | None = None        # "forward" or "reflected"
    good_sum: int | None = None      # sum of |R(G_i)| over the chosen run
    good_bound: Fraction | None = None

    @property
    def chosen_run(self) -> GoodSectorRun | None:
        if self.chosen == "forward":
            return self.forward
        if self.chosen == "reflected":
            return self.reflected
        return None

    @property
    def theorem_floor(self) -> bool:
        return theorem_floor_holds(self.n, self.lower_bound)


class CertificateError(ValueError):
    pass


def assemble_certificate(s: ColoredPointSet) -> Certificate:
    """Exact lower bound on the empty rrb triangles of ``s`` (needs m >= n >= 2)."""
    n, m = s.n, s.m
    if n < 2 or m < n:
        raise CertificateError(f"need m >= n >= 2, got n={n}, m={m}; swap colors explicitly if intended")
    p, r0 = p_min(s)
    l2 = Fraction(p * n, 2)
    if p * p > n or n < 5:
        return Certificate(n, m, p, r0, "lemma2", l2, l2)
    line = bisecting_line(s, r0)
    fwd = good_sector_run(s, r0, line.axis, line.half)
    rev = good_sector_run(s, r0, line.axis, line.half, reflected=True)
    fan = build_sector_fan(s, r0)

    def fail(msg):
        raise StructuralError(msg, {
            "reds": s.reds, "blues": s.blues, "r0": r0, "p": p,
            "axis": line.oriented_axis, "forward": fwd.to_dict(), "reflected": rev.to_dict(),
        })

    for name, run in (("forward", fwd), ("reflected", rev)):
        bad = run_violations(run, fan)
        if bad:
            fail(f"{name} run: " + "; ".join(bad))
    if not terminals_disjoint(fwd, rev):
        fail("terminal sectors T and T' overlap beyond r0")
    rh = fwd.reds_in_h
    if 2 * fwd.terminal.reds_in <= rh + 1:
        chosen, run = "forward", fwd
    elif 2 * rev.terminal.reds_in <= rh + 1:
        chosen, run = "reflected", rev
    else:
        fail("neither terminal sector holds at most (|R(H)|+1)/2 reds")
    good_sum = sum(g.reds_in for g in run.steps)
    if run.k < 1:
        fail("chosen run has no good sector")
    if 4 * good_sum < n:
        fail(f"sum of |R(G_i)| = {good_sum} below n/4")
    gb = sum((Fraction(2, 9) * g.reds_in ** 2 for g in run.steps), Fraction(0))
    return Certificate(n, m, p, r0, "good-sector", max(l2, gb), l2, line, fwd, rev, chosen, good_sum, gb)
