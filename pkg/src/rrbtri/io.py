"""Point files and JSON report documents.

Point file: one point per line, ``x y c`` with ``c`` in {r, b}; blank lines and
lines starting with ``#`` are ignored.  Reports are JSON with every rational
written as a ``"numerator/denominator"`` string.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .census import Census
from .geometry import GeometryError, Point, find_degeneracy
from .pointset import ColoredPointSet

SCHEMA_VERSION = "1"
_RATIONAL = re.compile(r"^-?\d+/\d+$")


class PointFileError(ValueError):
    pass


def parse_point_file(text: str, source: str = "<string>") -> ColoredPointSet:
    reds, blues = [], []
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3 or parts[2] not in ("r", "b"):
            raise PointFileError(f"{source}:{lineno}: expected 'x y r|b', got {raw!r}")
        try:
            p = Point(int(parts[0]), int(parts[1]))
        except ValueError as exc:
            raise PointFileError(f"{source}:{lineno}: {exc}") from None
        (reds if parts[2] == "r" else blues).append(p)
        lines.append(lineno)
    pts = reds + blues
    bad = find_degeneracy(pts)
    if bad is not None:
        where = ", ".join(f"({pts[i][0]}, {pts[i][1]})" for i in bad)
        kind = "duplicate point" if len(bad) == 2 else "collinear points"
        raise PointFileError(f"{source}: general position violated: {kind} {where}")
    return ColoredPointSet(tuple(reds), tuple(blues), validate=False)


def read_point_file(path) -> ColoredPointSet:
    path = Path(path)
    return parse_point_file(path.read_text(), str(path))


def format_point_file(s: ColoredPointSet, comment: str | None = None) -> str:
    """Canonical text: reds then blues, each sorted lexicographically."""
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.extend(f"{x} {y} r" for x, y in sorted(s.reds))
    out.extend(f"{x} {y} b" for x, y in sorted(s.blues))
    return "\n".join(out) + "\n" if out else ""


def write_point_file(s: ColoredPointSet, path, comment: str | None = None) -> None:
    Path(path).write_text(format_point_file(s, comment))


def _enc(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, dict):
        return {k: _enc(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_enc(x) for x in v]
    return v


def _dec_rational(v):
    if isinstance(v, str) and _RATIONAL.match(v):
        num, den = v.split("/")
        return Fraction(int(num), int(den))
    return v


@dataclass
class ReportDocument:
    """Versioned JSON report; ``parse(serialize(doc)) == doc``."""

    instance: dict
    census: dict | None = None
    certificate: dict | None = None
    verification: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "instance": _enc(self.instance),
            "census": _enc(self.census),
            "certificate": _enc(self.certificate),
            "verification": _enc(self.verification),
            "timing": _enc(self.timing),
        }

    def serialize(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def parse(cls, text: str) -> "ReportDocument":
        d = json.loads(text)
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema_version')!r}")
        cert = d.get("certificate")
        if cert is not None:
            for key in ("lower_bound", "lemma2_bound", "good_bound"):
                if key in cert:
                    cert[key] = _dec_rational(cert[key])
        recs = []
        for r in d.get("verification") or []:
            r = dict(r)
            r["lhs"] = _dec_rational(r.get("lhs"))
            r["rhs"] = _dec_rational(r.get("rhs"))
            recs.append(r)
        return cls(
            instance=d["instance"],
            census=d.get("census"),
            certificate=cert,
            verification=recs,
            timing=d.get("timing") or {},
            schema_version=d["schema_version"],
        )


def census_block(c: Census, path: str | None = None) -> dict:
    out = c.counts()
    out["total"] = c.total
    if path:
        out["path"] = path
    return out


def certificate_block(cert) -> dict:
    out = {
        "n": cert.n,
        "m": cert.m,
        "p": cert.p,
        "r0": cert.r0,
        "branch": cert.branch,
        "lower_bound": cert.lower_bound,
        "lemma2_bound": cert.lemma2_bound,
        "theorem_floor": cert.theorem_floor,
    }
    if cert.forward is not None:
        out["axis"] = list(cert.forward.axis)
        out["chosen"] = cert.chosen
        out["good_sum"] = cert.good_sum
        out["good_bound"] = cert.good_bound
        out["forward"] = cert.forward.to_dict()
        out["reflected"] = cert.reflected.to_dict()
        run = cert.chosen_run
        out["good_sectors"] = [{"i": i + 1, "reds": g.reds_in, "blues": g.blues_in}
                               for i, g in enumerate(run.steps)]
        out["terminal"] = {"reds": run.terminal.reds_in, "blues": run.terminal.blues_in}
    return out


def records_block(report) -> list:
    return [
        {"name": r.name, "anchor": r.anchor, "lhs": _jsonable(r.lhs), "rhs": _jsonable(r.rhs),
         "passed": r.passed, "instances": r.instances, "note": r.note}
        for r in report.records
    ]


def _jsonable(v):
    if v is None or isinstance(v, (bool, int, str, Fraction)):
        return v
    return str(v)


def report_document(s: ColoredPointSet, params: dict | None = None, census: Census | None = None,
                    cert=None, verification=None, timing: dict | None = None) -> ReportDocument:
    from .verify import fingerprint
    instance = {"n": s.n, "m": s.m, "fingerprint": fingerprint(s), "params": params or {}}
    doc = ReportDocument(instance)
    if census is not None:
        doc.census = census_block(census)
    if cert is not None:
        doc.certificate = certificate_block(cert)
    if verification is not None:
        doc.verification = records_block(verification)
        instance["passed"] = verification.passed
    doc.timing = dict(timing or {})
    return doc


__all__ = [
    "GeometryError",
    "PointFileError",
    "ReportDocument",
    "certificate_block",
    "census_block",
    "format_point_file",
    "parse_point_file",
    "read_point_file",
    "records_block",
    "report_document",
    "write_point_file",
]
