import math
from fractions import Fraction

import pytest

from rrbtri.census import census_fast, census_oracle, rrb_in_region
from rrbtri.geometry import Direction
from rrbtri.pointset import ColoredPointSet, gen_clustered, gen_random_gp
from rrbtri.regions import HalfPlane, Plane, RegionError, Sector, region_from_dict, require_convex
from rrbtri.sectors import (
    CertificateError,
    GoodSectorRun,
    SectorError,
    assemble_certificate,
    bisecting_line,
    build_sector_fan,
    discrepancy,
    empty_sector_count,
    empty_sectors,
    good_sector_run,
    lemma1_bound,
    lemma2_witnesses,
    p_min,
    run_violations,
    terminals_disjoint,
    theorem_floor_holds,
)

# apex red with four reds around it; (1,10) and (-1,-9) avoid a collinear triple through the apex
FAN = ColoredPointSet(((0, 0), (10, 1), (1, 10), (-10, 1), (-1, -9)), ((5, 5),))


def p_by_angles(s, r):
    """Independent p(r): the number of distinct next-red-ccw targets over all blues."""
    apex = s.reds[r]

    def ang(p):
        return math.atan2(p[1] - apex[1], p[0] - apex[0]) % (2 * math.pi)

    reds = [(ang(q), i) for i, q in enumerate(s.reds) if i != r]
    hits = set()
    for b in s.blues:
        a = ang(b)
        hits.add(min(reds, key=lambda t: (t[0] - a) % (2 * math.pi))[1])
    return len(hits)


def test_region_membership(square):
    assert discrepancy(square, Plane()) == 0
    s = ColoredPointSet(((0, 0), (5, 1), (2, 7)), ((1, 2),))
    assert discrepancy(s, Plane()) == 2
    assert discrepancy(square, HalfPlane((0, 100), Direction(0, 1))) == 0
    assert discrepancy(square, HalfPlane((0, 5), Direction(0, 1))) == 0


def test_region_dict_roundtrip():
    for reg in (Plane(), HalfPlane((1, 2), Direction(3, -1)), Sector((0, 0), Direction(1, 0), Direction(0, 1))):
        assert region_from_dict(reg.to_dict()) == reg
    with pytest.raises(RegionError):
        region_from_dict({"kind": "disk"})


def test_sector_reflex_and_ray():
    assert Sector((0, 0), Direction(0, 1), Direction(1, 0)).is_reflex
    assert not Sector((0, 0), Direction(1, 0), Direction(-1, 0)).is_reflex
    assert Sector((0, 0), Direction(1, 1), Direction(2, 2)).is_ray
    with pytest.raises(RegionError):
        require_convex(Sector((0, 0), Direction(0, 1), Direction(1, 0)))


def test_lemma1_bound_examples():
    pent = ColoredPointSet(((0, 10), (9, 3), (6, -8), (-6, -8), (-9, 3)), ((0, 1),))
    assert lemma1_bound(pent, Plane()) == 4
    assert census_oracle(pent).rrb >= 4
    no_blue = ColoredPointSet(((0, 0), (1, 3), (4, 1)), ())
    assert lemma1_bound(no_blue, Plane()) == 0
    negative = ColoredPointSet(((0, 0),), ((1, 3), (4, 1)))
    assert lemma1_bound(negative, Plane()) == 0


def test_empty_sectors_diamond():
    d = ColoredPointSet(((10, 0), (0, 10), (-10, 0), (0, -10)), ((1, 2),))
    assert empty_sector_count(d, Plane(), 0) == 4
    secs = empty_sectors(d, Plane(), 0)
    assert all(x.empty for x in secs) and not any(x.reflex for x in secs)
    assert census_oracle(d).rrb >= 4


def test_empty_sectors_single_red():
    s = ColoredPointSet(((0, 0),), ((3, 1), (1, 4)))
    secs = empty_sectors(s, Plane(), 0)
    assert len(secs) == 1 and not secs[0].empty


def test_fan_examples():
    fan = build_sector_fan(FAN, 0)
    assert fan.p_of_r == 1
    bare = ColoredPointSet(FAN.reds, ())
    assert build_sector_fan(bare, 0).p_of_r == 0


def test_fan_partitions_blues():
    s = gen_random_gp(8, 8, 1000, 11)
    for r in range(s.n):
        fan = build_sector_fan(s, r)
        assert sorted(b for g in fan.gap_blues for b in g) == list(range(s.n, s.n + s.m))
        assert len(fan.rays) == s.n - 1


def test_p_matches_independent_recount():
    s = gen_random_gp(12, 12, 10**5, 6)
    p, r0 = p_min(s)
    by_angle = [p_by_angles(s, r) for r in range(s.n)]
    assert p == min(by_angle) and by_angle[r0] == p
    assert p_min(ColoredPointSet(s.reds, ()))[0] == 0
    assert p_min(ColoredPointSet(s.reds, ((123457, -3),)))[0] == 1


def test_fan_needs_two_reds():
    with pytest.raises(SectorError):
        build_sector_fan(ColoredPointSet(((0, 0),), ((1, 1),)), 0)


def test_lemma2_witnesses_examples(lone_blue):
    assert lemma2_witnesses(lone_blue) == [(0, 1, 2)]
    wit = lemma2_witnesses(FAN)
    assert any(w[0] == 0 and w[1] in (1, 2) and w[2] == 5 for w in wit)
    empty = set(census_oracle(FAN).triangles)
    assert all(w in empty for w in wit)


def test_lemma2_witnesses_random():
    s = gen_random_gp(10, 12, 1000, 8)
    p, _ = p_min(s)
    wit = lemma2_witnesses(s)
    assert len(set(wit)) == len(wit)
    assert 2 * len(wit) >= p * s.n
    empty = set(census_oracle(s).triangles)
    assert all(w in empty for w in wit)


def test_bisecting_line_symmetric_example():
    s = ColoredPointSet(((0, 0), (2, 1), (3, -1), (-2, 1), (-3, -2)), ((1, 5), (-2, -5), (7, 2)))
    line = bisecting_line(s, 0)
    for h in line.halfplanes(s):
        assert sum(h.contains(r) for r in s.reds) == 3  # ceil((n + 1) / 2)
    assert not any(line.halfplanes(s)[0].contains(b) and line.halfplanes(s)[1].contains(b) for b in s.blues)


def test_bisecting_line_postconditions_random():
    for seed in range(10):
        s = gen_random_gp(11 + seed % 2, 13, 10**4, seed)
        r0 = p_min(s)[1]
        line = bisecting_line(s, r0)
        need = -(-(s.n + 1) // 2)
        h1, h2 = line.halfplanes(s)
        assert sum(h1.contains(r) for r in s.reds) == need
        assert sum(h2.contains(r) for r in s.reds) == need
        # no blue on the line
        assert all(not (h1.contains(b) and h2.contains(b)) for b in s.blues)
        assert line.blues_left + line.blues_right == s.m


def test_good_sector_run_hand_example():
    s = ColoredPointSet(((0, 0), (5, 1), (4, 3)), ((5, 2),))
    run = good_sector_run(s, 0, Direction(1, 0))
    assert run.k == 1
    g = run.steps[0]
    assert (g.reds_in, g.blues_in) == (2, 1)
    assert (run.terminal.reds_in, run.terminal.blues_in) == (2, 0)
    assert run_violations(run) == []


def test_good_sector_run_without_blues():
    s = ColoredPointSet(((0, 0), (5, 1), (4, 3), (-3, 2)), ((1, -5),))
    run = good_sector_run(s, 0, Direction(1, 0))
    assert run.k == 0
    assert run.terminal.reds_in == 4
    assert run.terminal.start == Direction(5, 1)


def test_good_sector_runs_random_invariants():
    for seed in range(15):
        s = gen_clustered(9 + seed % 6, 12 + seed % 6, 500, seed)
        r0 = p_min(s)[1]
        line = bisecting_line(s, r0)
        fan = build_sector_fan(s, r0)
        fwd = good_sector_run(s, r0, line.axis, line.half)
        rev = good_sector_run(s, r0, line.axis, line.half, reflected=True)
        assert run_violations(fwd, fan) == []
        assert run_violations(rev, fan) == []
        assert terminals_disjoint(fwd, rev)
        census = census_fast(s, keep_triangles=True)
        for reg, g in zip(fwd.regions(), fwd.steps):
            assert rrb_in_region(s, reg, census) >= Fraction(2, 9) * g.reds_in ** 2


def test_run_dict_roundtrip():
    s = gen_clustered(10, 12, 500, 2)
    r0 = p_min(s)[1]
    line = bisecting_line(s, r0)
    run = good_sector_run(s, r0, line.axis, line.half)
    back = GoodSectorRun.from_dict(run.to_dict())
    assert back.to_dict() == run.to_dict()


def test_certificate_rejects_bad_sizes():
    with pytest.raises(CertificateError):
        assemble_certificate(ColoredPointSet(((0, 0), (5, 1), (2, 7)), ()))
    with pytest.raises(CertificateError):
        assemble_certificate(ColoredPointSet(((0, 0), (5, 1), (2, 7)), ((1, 2),)))


def test_certificate_lemma2_branch_dense_blues():
    reds = ((0, 0), (100, 3), (7, 100), (-95, 40))
    pool = gen_random_gp(4, 40, 120, 5).blues
    s = ColoredPointSet(reds, tuple(p for p in pool if p not in reds))
    cert = assemble_certificate(s)
    assert cert.branch == "lemma2"
    assert cert.p * cert.p > s.n
    assert cert.lower_bound == Fraction(cert.p * s.n, 2)
    assert census_fast(s).rrb >= cert.lower_bound


def test_certificate_sound_on_seed_sweep():
    branches = set()
    for seed in range(12):
        s = gen_random_gp(20, 20, 10**4, seed) if seed % 2 else gen_clustered(20, 20, 10**4, seed)
        cert = assemble_certificate(s)
        branches.add(cert.branch)
        assert census_fast(s).rrb >= cert.lower_bound
    assert branches == {"lemma2", "good-sector"}


def test_theorem_floor():
    assert theorem_floor_holds(5, 1)
    assert not theorem_floor_holds(72 ** 2 + 1, 0)
    # n^3 = (72 c)^2 at n = 72^2, c = 72^2: boundary holds
    assert theorem_floor_holds(72 ** 2, 72 ** 2)
    assert not theorem_floor_holds(72 ** 2, 72 ** 2 - 1)
    assert theorem_floor_holds(4, Fraction(1, 9))
