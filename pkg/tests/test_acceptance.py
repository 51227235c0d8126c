"""Acceptance gate: the eleven criteria, each at its stated scale and time limit.

Every criterion prints one PASS/FAIL line (collected into the pytest terminal
summary).  Run directly with ``python3 tests/test_acceptance.py`` for the same
lines without pytest.
"""

import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
import conftest  # noqa: E402

from rrbtri.census import census_fast, census_oracle, rrb_in_region, witness_for_pair  # noqa: E402
from rrbtri.geometry import collinear_with  # noqa: E402
from rrbtri.holes import count_k_holes  # noqa: E402
from rrbtri.pointset import (  # noqa: E402
    ColoredPointSet,
    ColoringScheme,
    gen_circle_pair,
    gen_clustered,
    gen_horton,
    gen_random_gp,
)
from rrbtri.search import certificate_consistent, horton_bicoloring_scan, minimize_rrb  # noqa: E402
from rrbtri.sectors import (  # noqa: E402
    assemble_certificate,
    bisecting_line,
    build_sector_fan,
    lemma1_bound,
    lemma2_witnesses,
    p_min,
    run_violations,
    terminals_disjoint,
    theorem_floor_holds,
)
from rrbtri.verify import ceiling_fact_scan, lemma1_regions  # noqa: E402

pytestmark = pytest.mark.acceptance


def report(number, passed, seconds, limit, detail):
    ok = passed and (limit is None or seconds <= limit)
    budget = f" (limit {limit:.0f}s)" if limit is not None else ""
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {seconds:7.1f}s{budget}  {detail}"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert passed, detail
    assert limit is None or seconds <= limit, f"took {seconds:.1f}s, limit {limit}s"


def theorem_instance(i, n_max):
    """Seeded instance with 5 <= n <= m <= n_max.  Odd seeds are uniform; even
    seeds cluster the blues so that the good-sector branch is exercised too."""
    rng = random.Random(1000 + i)
    n = rng.randint(5, n_max)
    m = rng.randint(n, n_max)
    if i % 2:
        return gen_random_gp(n, m, 10**4, i)
    return gen_clustered(n, m, 10**4, i, clusters=rng.randint(1, 4))


# -- 1. oracle equivalence -----------------------------------------------------

GRID = 5


def _grid_images(pts):
    t = GRID - 1
    maps = (
        lambda x, y: (x, y), lambda x, y: (t - x, y), lambda x, y: (x, t - y), lambda x, y: (t - x, t - y),
        lambda x, y: (y, x), lambda x, y: (t - y, x), lambda x, y: (y, t - x), lambda x, y: (t - y, t - x),
    )
    return [tuple(sorted(f(*p) for p in pts)) for f in maps]


def grid_sets(max_size=7):
    """Every general-position subset of the 5x5 grid with at most max_size
    points, one representative per orbit of the square's symmetry group."""
    cells = [(x, y) for x in range(GRID) for y in range(GRID)]
    out = []

    def grow(start, cur):
        key = tuple(sorted(cur))
        if key == min(_grid_images(cur)):
            out.append(key)
        if len(cur) == max_size:
            return
        for i in range(start, len(cells)):
            if not collinear_with(cells[i], cur):
                cur.append(cells[i])
                grow(i + 1, cur)
                cur.pop()

    grow(0, [])
    return out


def test_criterion_01_oracle_equivalence():
    t0 = time.perf_counter()
    sets = grid_sets()
    bad = 0
    for j, pts in enumerate(sets):
        # rotate through colorings; triangle lists are compared in full as well
        mask = j % (1 << max(len(pts), 1))
        reds = tuple(p for i, p in enumerate(pts) if mask >> i & 1)
        blues = tuple(p for i, p in enumerate(pts) if not mask >> i & 1)
        s = ColoredPointSet(reds, blues, validate=False)
        if census_fast(s, keep_triangles=True) != census_oracle(s):
            bad += 1
    grid_count = len(sets)
    for seed in range(500):
        rng = random.Random(seed)
        total = rng.randint(3, 40)
        n = rng.randint(0, total)
        s = gen_random_gp(n, total - n, rng.choice([50, 1000, 10**6]), seed)
        if census_fast(s, keep_triangles=True) != census_oracle(s):
            bad += 1
    dt = time.perf_counter() - t0
    report(1, bad == 0, dt, 300, f"{grid_count} grid sets (up to symmetry) + 500 random sets, {bad} mismatches")


# -- 2. circle construction ----------------------------------------------------

def test_criterion_02_circle_has_no_rrr():
    t0 = time.perf_counter()
    bad = [n for n in range(3, 41) if census_fast(gen_circle_pair(n)).rrr != 0]
    report(2, not bad, time.perf_counter() - t0, 60, f"n = 3..40, rrr > 0 for {bad or 'none'}")


# -- 3. pair witnesses ---------------------------------------------------------

def test_criterion_03_pair_witnesses():
    t0 = time.perf_counter()
    pairs = bad = 0
    for seed in range(200):
        rng = random.Random(seed)
        s = gen_random_gp(rng.randint(1, 25), rng.randint(1, 25), 10**5, seed)
        empty = set(census_oracle(s).triangles)
        for r in range(s.n):
            for b in range(s.m):
                pairs += 1
                if tuple(sorted(witness_for_pair(s, r, b))) not in empty:
                    bad += 1
    report(3, bad == 0, time.perf_counter() - t0, 120, f"{pairs} red-blue pairs on 200 sets, {bad} non-empty witnesses")


# -- 4 and 5. discrepancy bound and pair-counting bound on 200 runs ---------

_LEMMA_RUNS = {}


def lemma_runs():
    if not _LEMMA_RUNS:
        t0 = time.perf_counter()
        regions = viol1 = lem2_count = lem2_wit = 0
        for i in range(200):
            s = theorem_instance(i, 30)
            census = census_fast(s, keep_triangles=True)
            cert = assemble_certificate(s)
            line = cert.bisector or bisecting_line(s, cert.r0)
            for _, reg in lemma1_regions(s, cert, line):
                regions += 1
                if rrb_in_region(s, reg, census) < lemma1_bound(s, reg):
                    viol1 += 1
            p, _ = p_min(s)
            rhs = Fraction(p * s.n, 2)
            if census.rrb < rhs:
                lem2_count += 1
            if len(lemma2_witnesses(s)) < rhs:
                lem2_wit += 1
        _LEMMA_RUNS.update(seconds=time.perf_counter() - t0, regions=regions, viol1=viol1,
                           lem2_count=lem2_count, lem2_wit=lem2_wit)
    return _LEMMA_RUNS


def test_criterion_04_lemma1():
    r = lemma_runs()
    report(4, r["viol1"] == 0, r["seconds"], 300,
           f"{r['regions']} convex regions over 200 runs, {r['viol1']} below |B(C)|*disc(C)")


def test_criterion_05_lemma2():
    r = lemma_runs()
    report(5, r["lem2_count"] == 0 and r["lem2_wit"] == 0, r["seconds"], None,
           f"200 runs: {r['lem2_count']} counts and {r['lem2_wit']} witness lists below p*n/2")


# -- 6, 7 and 8. the certificate on 500 runs -----------------------------------

_CERT_RUNS = {}


def certificate_runs():
    if not _CERT_RUNS:
        t0 = time.perf_counter()
        unsound = floor = structural = oracle_checked = oracle_bad = 0
        branches = {"lemma2": 0, "good-sector": 0}
        min_ratio = None
        for i in range(500):
            s = theorem_instance(10_000 + i, 60)
            census = census_fast(s)
            if len(s) <= 40:
                oracle_checked += 1
                if census_oracle(s, keep_triangles=False) != census:
                    oracle_bad += 1
            cert = assemble_certificate(s)
            branches[cert.branch] += 1
            if census.rrb < cert.lower_bound:
                unsound += 1
            ratio = Fraction(census.rrb) / cert.lower_bound
            min_ratio = ratio if min_ratio is None else min(min_ratio, ratio)
            if not theorem_floor_holds(s.n, census.rrb):
                floor += 1
            if cert.forward is not None:
                fan = build_sector_fan(s, cert.r0)
                bad = run_violations(cert.forward, fan) + run_violations(cert.reflected, fan)
                if not terminals_disjoint(cert.forward, cert.reflected):
                    bad.append("T and T' overlap")
                run = cert.chosen_run
                if run.k < 1 or 4 * sum(g.reds_in for g in run.steps) < s.n:
                    bad.append("good sectors cover fewer than n/4 reds")
                structural += len(bad)
        _CERT_RUNS.update(seconds=time.perf_counter() - t0, unsound=unsound, floor=floor,
                          structural=structural, branches=branches, oracle_checked=oracle_checked,
                          oracle_bad=oracle_bad, min_ratio=min_ratio)
    return _CERT_RUNS


def test_criterion_06_certificate_soundness():
    r = certificate_runs()
    ok = r["unsound"] == 0 and r["oracle_bad"] == 0
    report(6, ok, r["seconds"], 600,
           f"500 runs {r['branches']}, {r['unsound']} unsound, oracle spot-checks "
           f"{r['oracle_checked']} ({r['oracle_bad']} mismatches), min count/bound {float(r['min_ratio']):.2f}")


def test_criterion_07_theorem_floor():
    r = certificate_runs()
    report(7, r["floor"] == 0, r["seconds"], None, f"500 runs, {r['floor']} with n^3 > (72 N_rrb)^2")


def test_criterion_08_structural_invariants():
    r = certificate_runs()
    report(8, r["structural"] == 0 and r["branches"]["good-sector"] > 0, r["seconds"], None,
           f"{r['branches']['good-sector']} good-sector runs, {r['structural']} invariant violations")


# -- 9. ceiling fact -----------------------------------------------------------

def test_criterion_09_ceiling_fact():
    t0 = time.perf_counter()
    ok = ceiling_fact_scan(10**6)
    report(9, ok, time.perf_counter() - t0, 10, "ceil(x/3)(x - ceil(x/3)) >= 2x^2/9 for 2 <= x <= 10^6")


# -- 10. Horton sets have no 7-hole --------------------------------------------

def test_criterion_10_horton_seven_holes():
    t0 = time.perf_counter()
    c16 = count_k_holes(gen_horton(4), 7)
    c32 = count_k_holes(gen_horton(5), 7, max_points=32)
    report(10, c16 == 0 and c32 == 0, time.perf_counter() - t0, 600,
           f"7-holes: {c16} in 16 points, {c32} in 32 points")


# -- 11. conjecture probe ------------------------------------------------------

def test_criterion_11_conjecture_probe():
    t0 = time.perf_counter()
    rows = horton_bicoloring_scan(range(4, 9), [ColoringScheme("alternating")])
    positive = all(r.ratio > 0 for r in rows)
    consistent = True
    for seed in range(3):
        res = minimize_rrb(6, 6, 200, seed, 400)
        consistent = consistent and certificate_consistent(res.best)[0]
    table = ", ".join(f"{r.size}:{r.count_rrb} ({float(r.ratio):.3f})" for r in rows)
    report(11, positive and consistent, time.perf_counter() - t0, None,
           f"Horton alternating count_rrb (ratio to n^2) {table}; search bests certificate-consistent: {consistent}")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
