"""Check every inequality of the argument against ground-truth counts on one instance."""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .census import Census, census_fast, census_oracle, is_empty_triangle, rrb_in_region, witness_for_pair
from .pointset import ColoredPointSet
from .regions import Plane
from .sectors import (
    CertificateError,
    StructuralError,
    assemble_certificate,
    bisecting_line,
    build_sector_fan,
    empty_sectors,
    lemma1_bound,
    lemma2_witnesses,
    p_min,
    region_counts,
    run_violations,
    terminals_disjoint,
    theorem_floor_holds,
)

QUICK_ORACLE_LIMIT = 60
FULL_ORACLE_LIMIT = 40


@dataclass
class CheckRecord:
    name: str
    anchor: str
    lhs: object
    rhs: object
    passed: bool
    instances: int = 1
    note: str = ""


@dataclass
class VerificationReport:
    fingerprint: str
    n: int
    m: int
    depth: str
    records: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    census: Census | None = None
    certificate: object = None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def record(self, name, anchor, lhs, rhs, passed, instances=1, note=""):
        self.records.append(CheckRecord(name, anchor, lhs, rhs, bool(passed), instances, note))

    def get(self, name: str) -> CheckRecord:
        for r in self.records:
            if r.name == name:
                return r
        raise KeyError(name)


def ceiling_fact(x: int) -> bool:
    """ceil(x/3) * (x - ceil(x/3)) >= 2 x^2 / 9, exactly."""
    c = -(-x // 3)
    return 9 * c * (x - c) >= 2 * x * x


def ceiling_fact_scan(limit: int) -> bool:
    if limit < 2:
        raise ValueError("limit must be at least 2")
    for x in range(2, limit + 1):
        c = -(-x // 3)
        if 9 * c * (x - c) < 2 * x * x:
            return False
    return True


def fingerprint(s: ColoredPointSet) -> str:
    from .io import format_point_file
    return hashlib.sha256(format_point_file(s).encode()).hexdigest()


class _Worst:
    """Keeps the instance with the least slack lhs - rhs across a family of checks;
    a failing instance always wins."""

    def __init__(self):
        self.count = 0
        self.ok = True
        self.lhs = self.rhs = None
        self._key = None

    def add(self, lhs, rhs, ok=None):
        self.count += 1
        passed = lhs >= rhs if ok is None else bool(ok)
        self.ok = self.ok and passed
        key = (passed, Fraction(lhs) - Fraction(rhs))
        if self._key is None or key < self._key:
            self._key, self.lhs, self.rhs = key, lhs, rhs

    def emit(self, report, name, anchor, note=""):
        if self.count:
            report.record(name, anchor, self.lhs, self.rhs, self.ok, self.count, note)


def lemma1_regions(s, cert, line):
    """Every region the pipeline generates: non-reflex fan gaps, both bisector halves,
    and the good and terminal sectors of both runs."""
    regions = []
    if s.n >= 2:
        for r in range(s.n):
            fan = build_sector_fan(s, r)
            for g in range(len(fan.rays)):
                if not fan.gap_is_reflex(g):
                    regions.append(("fan", fan.gap_region(g)))
    if line is not None:
        for h in line.halfplanes(s):
            regions.append(("halfplane", h))
    if cert is not None and cert.forward is not None:
        for run in (cert.forward, cert.reflected):
            for reg in run.regions():
                regions.append(("good-sector", reg))
    return regions


def verify_all(s: ColoredPointSet, depth: str = "quick") -> VerificationReport:
    """Run the whole battery of checks on ``s`` and return the report.

    ``quick`` uses the oracle census up to 60 points and the fast path above;
    ``full`` cross-checks fast against oracle up to 40 points and adds the
    per-blue empty-sector inequality in every tested region.
    """
    if depth not in ("quick", "full"):
        raise ValueError("depth must be 'quick' or 'full'")
    if not isinstance(s, ColoredPointSet):
        raise TypeError("verify_all needs a ColoredPointSet")
    ColoredPointSet(s.reds, s.blues)  # re-validate general position
    n, m = s.n, s.m
    N = n + m
    rep = VerificationReport(fingerprint(s), n, m, depth)
    t0 = time.perf_counter()

    if depth == "quick":
        census = census_oracle(s) if N <= QUICK_ORACLE_LIMIT else census_fast(s, keep_triangles=True)
    else:
        census = census_fast(s, keep_triangles=True)
        if N <= FULL_ORACLE_LIMIT:
            oracle = census_oracle(s)
            rep.record("census-cross-check", "definition of an empty triangle",
                       census.total, oracle.total, census == oracle)
    rep.census = census
    rep.timings["census"] = time.perf_counter() - t0
    rep.record("census-sum", "class counts add up", census.total,
               len(census.triangles), census.total == len(census.triangles))

    t = time.perf_counter()
    empty = set(census.triangles)
    if n >= 1 and m >= 1 and N >= 3:
        ok = 0
        for r in range(n):
            for b in range(m):
                if tuple(sorted(witness_for_pair(s, r, b))) in empty:
                    ok += 1
        rep.record("pair-witness", "closest point to the line", ok, n * m, ok == n * m, n * m)
    rep.timings["witness"] = time.perf_counter() - t

    t = time.perf_counter()
    cert = None
    line = None
    if n >= 2 and m >= n:
        try:
            cert = assemble_certificate(s)
        except StructuralError as exc:
            rep.record("certificate-structure", "good-sector invariants", str(exc), "", False)
        else:
            line = cert.bisector
    if line is None and n >= 5 and m >= 1:
        try:
            line = bisecting_line(s, p_min(s)[1])
        except StructuralError as exc:
            rep.record("bisecting-line", "a line through r0 bisecting R", str(exc), "", False)
    rep.certificate = cert
    rep.timings["certificate"] = time.perf_counter() - t

    t = time.perf_counter()
    lem1 = _Worst()
    sect = _Worst()
    sect_tri = _Worst()
    trivial = 0
    for kind, reg in lemma1_regions(s, cert, line):
        reds, blues = region_counts(s, reg)
        bound = lemma1_bound(s, reg)
        if bound > 0:
            lem1.add(rrb_in_region(s, reg, census), bound)
        else:
            trivial += 1
        if depth == "full" and reds >= 1:
            for b in range(m):
                if not reg.contains(s.blues[b]):
                    continue
                secs = empty_sectors(s, reg, b)
                cnt = sum(1 for x in secs if x.empty)
                sect.add(cnt, max(0, reds - (blues - 1)))
                good = [x for x in secs if x.empty and not x.reflex and x.r1 != x.r2]
                all_empty = all(tuple(sorted((x.r1, x.r2, n + b))) in empty for x in good)
                sect_tri.add(len(good), max(0, reds - blues), ok=all_empty and len(good) >= reds - blues)
    if lem1.count:
        lem1.emit(rep, "lemma1", "N_rrb(C) >= |B(C)| disc(C) for convex C",
                  note=f"{trivial} further regions with a non-positive bound")
    else:
        rep.record("lemma1", "N_rrb(C) >= |B(C)| disc(C) for convex C", 0, 0, True, trivial,
                   note="every region has a non-positive bound")
    sect.emit(rep, "empty-sectors", "at least |R(C)| - (|B(C)| - 1) empty sectors around each blue")
    sect_tri.emit(rep, "empty-sector-triangles", "each non-reflex empty sector gives an empty rrb triangle")
    rep.timings["lemma1"] = time.perf_counter() - t

    t = time.perf_counter()
    if n >= 2:
        p, _ = p_min(s)
        rhs = Fraction(p * n, 2)
        rep.record("lemma2", "N_rrb >= p n / 2", census.rrb, rhs, census.rrb >= rhs)
        if m >= 1:
            wit = lemma2_witnesses(s)
            inside = all(w in empty and is_empty_triangle(s, w) for w in wit)
            rep.record("lemma2-witnesses", "distinct witnesses, each empty", len(wit), rhs,
                       len(wit) >= rhs and inside, note="" if inside else "a witness is not empty")
    rep.timings["lemma2"] = time.perf_counter() - t

    if cert is not None:
        rep.record("certificate", "N_rrb >= certificate lower bound", census.rrb, cert.lower_bound,
                   census.rrb >= cert.lower_bound, note=cert.branch)
        if cert.forward is not None:
            fan = build_sector_fan(s, cert.r0)
            bad = run_violations(cert.forward, fan) + run_violations(cert.reflected, fan)
            if not terminals_disjoint(cert.forward, cert.reflected):
                bad.append("T and T' overlap")
            rep.record("good-sector-invariants", "ceil(|R|/3) blues, multiplicity k+1, k <= p",
                       len(bad), 0, not bad, note="; ".join(bad))
            run = cert.chosen_run
            rep.record("good-sector-coverage", "sum |R(G_i)| >= n/4 with k >= 1",
                       Fraction(cert.good_sum), Fraction(n, 4), 4 * cert.good_sum >= n and run.k >= 1)
            for i, reg in enumerate(run.regions()[:-1]):
                got = rrb_in_region(s, reg, census)
                want = Fraction(2, 9) * run.steps[i].reds_in ** 2
                if got < want:
                    rep.record(f"good-sector-G{i + 1}", "N_rrb(G_i) >= 2|R(G_i)|^2/9", got, want, False)
        if n >= 5:
            rep.record("theorem-floor", "n^3 <= (72 N_rrb)^2", (72 * census.rrb) ** 2, n ** 3,
                       theorem_floor_holds(n, census.rrb))
    else:
        rep.record("certificate", "N_rrb >= certificate lower bound", census.rrb, None, True,
                   note=f"skipped: theorem needs m >= n >= 2 (n={n}, m={m})")

    region = Plane()
    if n >= 1 and m >= 1:
        rep.record("plane-region", "rrb in the whole plane equals the census",
                   rrb_in_region(s, region, census), census.rrb,
                   rrb_in_region(s, region, census) == census.rrb)
    rep.timings["total"] = time.perf_counter() - t0
    return rep
