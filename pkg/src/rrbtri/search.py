"""Empirical probes of the quadratic conjecture: annealing and Horton bicolorings.

Nothing here claims a minimum.  The annealer reports the best configuration it
found; the Horton scan reports ratios without asserting a constant.
"""

from __future__ import annotations

import csv
import logging
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key

from .census import census_fast
from .sectors import assemble_certificate
from .geometry import COORD_LIMIT, collinear_with
from .pointset import ColoredPointSet, ColoringScheme, bicolor, gen_horton, gen_random_gp

log = logging.getLogger(__name__)

SCAN_LIMIT = 1 << 10


class SearchError(RuntimeError):
    pass


def _star_counts(x, x_blue: int, pts, blue, others) -> tuple[int, int]:
    """(vert, cont) for a point at ``x`` added to the points ``others``.

    vert: empty rrb triangles having x as a vertex.
    cont: empty rrb triangles of ``others`` that contain x.

    Around x, call (u, v) an edge when v follows u counterclockwise by less than
    a half-turn and triangle x u v is empty.  A triangle u v w of ``others``
    contains x and is empty exactly when u -> v -> w -> u is a directed 3-cycle
    of edges.
    """
    xx, xy = x

    def cmp(a, b):
        pa, pb = pts[a], pts[b]
        ha = 0 if (pa[1] > xy or (pa[1] == xy and pa[0] > xx)) else 1
        hb = 0 if (pb[1] > xy or (pb[1] == xy and pb[0] > xx)) else 1
        if ha != hb:
            return ha - hb
        c = (pa[0] - xx) * (pb[1] - xy) - (pa[1] - xy) * (pb[0] - xx)
        return -1 if c > 0 else (1 if c < 0 else 0)

    order = sorted(others, key=cmp_to_key(cmp))
    L = len(order)
    succ: dict[int, set] = {}
    vert = 0
    for i in range(L):
        u = order[i]
        pu = pts[u]
        ux, uy = pu[0] - xx, pu[1] - xy
        best = None
        out = set()
        for step in range(1, L):
            v = order[(i + step) % L]
            pv = pts[v]
            vx, vy = pv[0] - xx, pv[1] - xy
            if ux * vy - uy * vx <= 0:
                break
            dx, dy = pv[0] - pu[0], pv[1] - pu[1]
            if best is None or best[0] * dy - best[1] * dx > 0:
                out.add(v)
                if x_blue + blue[u] + blue[v] == 1:
                    vert += 1
            if best is None or best[0] * dy - best[1] * dx > 0:
                best = (dx, dy)
        succ[u] = out
    cont = 0
    for u in order:
        for v in succ[u]:
            if v < u:
                continue
            for w in succ[v]:
                if w > u and u in succ[w] and blue[u] + blue[v] + blue[w] == 1:
                    cont += 1
    return vert, cont


def rrb_count(s: ColoredPointSet) -> int:
    return census_fast(s, keep_triangles=False).rrb


def move_delta(pts, blue, q: int, new) -> int:
    """Change in the empty rrb count when point ``q`` moves to ``new``."""
    others = [i for i in range(len(pts)) if i != q]
    v_old, c_old = _star_counts(pts[q], blue[q], pts, blue, others)
    v_new, c_new = _star_counts(new, blue[q], pts, blue, others)
    return (v_new - c_new) - (v_old - c_old)


@dataclass
class Schedule:
    """Geometric cooling: t0 * ratio ** (iteration // period).

    ``t0`` of None means initial count / 10.
    """

    t0: float | None = None
    ratio: float = 0.999
    period: int = 100

    def temperature(self, t0: float, it: int) -> float:
        return t0 * self.ratio ** (it // self.period)


@dataclass
class SearchResult:
    best: ColoredPointSet
    best_count: int
    initial_count: int
    trace: list = field(default_factory=list)  # (iteration, count, temperature, accepted)
    moves: int = 0
    accepted: int = 0
    restart: int = 0
    seed: int = 0


def _anneal(n, m, box, seed, iterations, schedule, step, restart, audit_every, keep_trace):
    rng = random.Random(f"rrbtri:{seed}:{restart}")
    s = gen_random_gp(n, m, box, rng.randrange(1 << 62))
    pts = list(s.points)
    blue = [0] * n + [1] * m
    count = rrb_count(s)
    initial = count
    t0 = schedule.t0 if schedule.t0 is not None else count / 10
    best_pts, best = list(pts), count
    trace = []
    accepted = 0
    N = n + m
    for it in range(1, iterations + 1):
        temp = schedule.temperature(t0, it)
        q = rng.randrange(N)
        dx, dy = rng.randint(-step, step), rng.randint(-step, step)
        new = (pts[q][0] + dx, pts[q][1] + dy)
        ok = False
        if (dx or dy) and -box <= new[0] <= box and -box <= new[1] <= box:
            others = pts[:q] + pts[q + 1:]
            if not collinear_with(new, others):
                delta = move_delta(pts, blue, q, new)
                if delta <= 0 or (temp > 0 and rng.random() < math.exp(-delta / temp)):
                    ok = True
                    pts[q] = new
                    count += delta
                    accepted += 1
                    if count < best:
                        best, best_pts = count, list(pts)
        if keep_trace:
            trace.append((it, count, temp, ok))
        if audit_every and it % audit_every == 0:
            full = rrb_count(ColoredPointSet(tuple(pts[:n]), tuple(pts[n:]), validate=False))
            if full != count:
                raise SearchError(f"incremental count {count} != recount {full} at iteration {it}")
    best_set = ColoredPointSet(tuple(best_pts[:n]), tuple(best_pts[n:]))
    return SearchResult(best_set, best, initial, trace, iterations, accepted, restart, seed)


def _anneal_job(args):
    return _anneal(*args)


def minimize_rrb(n: int, m: int, box: int, seed: int, iterations: int,
                 schedule: Schedule | None = None, step: int | None = None,
                 restarts: int = 1, workers: int = 1, audit_every: int = 1000,
                 keep_trace: bool = True) -> SearchResult:
    """Simulated annealing over single-point moves, minimizing the empty rrb count.

    Each restart owns the random stream seeded by (seed, restart index), so the
    result does not depend on ``workers``.  The best restart wins; ties go to
    the lower restart index.
    """
    if n < 2 or m < 2:
        raise ValueError("need n >= 2 and m >= 2")
    if box <= 0 or box > COORD_LIMIT:
        raise ValueError("box must be in 1..2**30")
    if (2 * box + 1) ** 2 < 4 * (n + m):
        raise SearchError(f"box {box} too small to keep {n + m} points in general position")
    schedule = schedule or Schedule()
    if step is None:
        step = max(1, box // 10)
    jobs = [(n, m, box, seed, iterations, schedule, step, r, audit_every, keep_trace)
            for r in range(restarts)]
    if workers > 1 and restarts > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_anneal_job, jobs))
    else:
        results = [_anneal_job(j) for j in jobs]
    return min(results, key=lambda r: (r.best_count, r.restart))


def certificate_consistent(s: ColoredPointSet) -> tuple[bool, str]:
    """Check that a configuration does not undercut its own certificate.

    With fewer blues than reds the colors are swapped first, so the bound
    applies to the original rbb count.
    """
    if min(s.n, s.m) < 2:
        return True, "certificate not applicable"
    c = census_fast(s, keep_triangles=False)
    if s.m >= s.n:
        cert = assemble_certificate(s)
        return c.rrb >= cert.lower_bound, f"rrb {c.rrb} >= {cert.lower_bound}"
    cert = assemble_certificate(s.swapped())
    return c.rbb >= cert.lower_bound, f"colors swapped: rbb {c.rbb} >= {cert.lower_bound}"


def write_trace_csv(result: SearchResult, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["iteration", "count", "temperature", "accepted"])
    for it, count, temp, ok in result.trace:
        w.writerow([it, count, repr(temp), int(ok)])


@dataclass
class ScanRow:
    k: int
    size: int
    scheme: str
    reds: int
    blues: int
    count_rrb: int
    ratio: Fraction
    decreasing: bool = False


def horton_bicoloring_scan(k_range, schemes) -> list[ScanRow]:
    """Empty rrb counts of bicolored Horton sets, with the ratio count / n^2."""
    rows = []
    for scheme in schemes:
        if isinstance(scheme, str):
            scheme = ColoringScheme.parse(scheme)
        prev = None
        for k in k_range:
            if (1 << k) > SCAN_LIMIT:
                raise SearchError(f"Horton scan limited to {SCAN_LIMIT} points, got 2^{k}")
            s = bicolor(gen_horton(k), scheme)
            c = census_fast(s, keep_triangles=False).rrb
            ratio = Fraction(c, s.n * s.n) if s.n else Fraction(0)
            row = ScanRow(k, 1 << k, str(scheme), s.n, s.m, c, ratio)
            if prev is not None and ratio < prev:
                row.decreasing = True
                log.warning("Horton scan: ratio drops from %s to %s at k=%d (%s)",
                            float(prev), float(ratio), k, scheme)
            prev = ratio
            rows.append(row)
    return rows


def write_scan_csv(rows, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["k", "size", "scheme", "reds", "blues", "count_rrb", "ratio", "ratio_float", "decreasing"])
    for r in rows:
        w.writerow([r.k, r.size, r.scheme, r.reds, r.blues, r.count_rrb,
                    f"{r.ratio.numerator}/{r.ratio.denominator}", f"{float(r.ratio):.6f}", int(r.decreasing)])
