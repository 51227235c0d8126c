"""Command-line interface: ``rrbtri <command> ...``.

Exit status: 0 on success, 1 when ``verify`` finds a failing check, 2 on usage
errors and 3 on bad input (unreadable or degenerate point files, failed
generation).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from pathlib import Path

from .census import census_fast, census_oracle
from .geometry import GeometryError
from .io import PointFileError, ReportDocument, census_block, certificate_block, format_point_file, \
    read_point_file, report_document
from .pointset import ColoringScheme, GenerationError, PointSetError, bicolor, gen_circle_pair, \
    gen_clustered, gen_horton, gen_random_gp
from .render import render_svg
from .search import Schedule, SearchError, certificate_consistent, horton_bicoloring_scan, minimize_rrb, \
    write_scan_csv, write_trace_csv
from .sectors import GoodSectorRun, StructuralError, assemble_certificate, build_sector_fan, p_min
from .verify import fingerprint, verify_all

log = logging.getLogger("rrbtri")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def load_config(path) -> dict:
    """Read ``key = value`` lines; ``#`` starts a comment.  Dashes in keys become underscores."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_generate(a) -> int:
    if a.kind == "random":
        s = gen_random_gp(a.n, a.m, a.box, a.seed)
    elif a.kind == "clustered":
        s = gen_clustered(a.n, a.m, a.box, a.seed, clusters=a.clusters)
    elif a.kind == "circle":
        s = gen_circle_pair(a.n)
    else:
        s = bicolor(gen_horton(a.k), ColoringScheme.parse(a.scheme))
    comment = f"kind={a.kind} n={s.n} m={s.m}"
    if a.kind in ("random", "clustered"):
        comment += f" box={a.box} seed={a.seed}"
    elif a.kind == "horton":
        comment += f" k={a.k} scheme={a.scheme}"
    _emit(format_point_file(s, comment), a.out)
    log.info("wrote %d points", len(s))
    return EXIT_OK


def cmd_census(a) -> int:
    s = read_point_file(a.file)
    timing = {}
    fast = oracle = None
    if a.method in ("fast", "both"):
        t = time.perf_counter()
        fast = census_fast(s, keep_triangles=False)
        timing["fast"] = round(time.perf_counter() - t, 6)
    if a.method in ("oracle", "both"):
        t = time.perf_counter()
        oracle = census_oracle(s, keep_triangles=False)
        timing["oracle"] = round(time.perf_counter() - t, 6)
    census = fast if fast is not None else oracle
    agree = None if fast is None or oracle is None else fast == oracle
    if a.format == "csv":
        row = [s.n, s.m, census.rrr, census.rrb, census.rbb, census.bbb, census.total]
        header = ["n", "m", "rrr", "rrb", "rbb", "bbb", "total"]
        if agree is not None:
            header.append("agree")
            row.append(int(agree))
        _emit(_csv_text(header, [row]), a.out)
    else:
        doc = report_document(s, {"file": str(a.file), "method": a.method}, census=census, timing=timing)
        if agree is not None:
            doc.census["oracle_agrees"] = agree
        _emit(doc.serialize() + "\n", a.out)
    if agree is False:
        log.error("fast and oracle census disagree: %s vs %s", fast.counts(), oracle.counts())
        return EXIT_FAIL
    return EXIT_OK


def _analysis(s) -> dict:
    out = {"n": s.n, "m": s.m, "fingerprint": fingerprint(s)}
    if s.n >= 2:
        fans = []
        for r in range(s.n):
            fan = build_sector_fan(s, r)
            fans.append({"red": r, "apex": list(fan.apex), "rays": len(fan.rays), "p": fan.p_of_r,
                         "gap_blues": [list(g) for g in fan.gap_blues]})
        out["fans"] = fans
        out["p"], out["r0"] = p_min(s)
    if s.n >= 2 and s.m >= s.n:
        out["certificate"] = certificate_block(assemble_certificate(s))
    else:
        out["certificate"] = None
        out["note"] = "certificate needs m >= n >= 2"
    return out


def cmd_analyze(a) -> int:
    s = read_point_file(a.file)
    doc = ReportDocument({"n": s.n, "m": s.m, "fingerprint": fingerprint(s), "params": {"file": str(a.file)}})
    data = _analysis(s)
    doc.certificate = data.pop("certificate")
    body = doc.to_dict()
    body["analysis"] = data
    _emit(json.dumps(body, indent=2, sort_keys=True) + "\n", a.out)
    return EXIT_OK


def cmd_verify(a) -> int:
    s = read_point_file(a.file)
    rep = verify_all(s, a.depth)
    if a.format == "csv":
        rows = [[r.name, r.lhs, r.rhs, int(r.passed), r.instances, r.note] for r in rep.records]
        _emit(_csv_text(["check", "lhs", "rhs", "passed", "instances", "note"], rows), a.out)
    else:
        timing = {k: round(v, 6) for k, v in rep.timings.items()}
        doc = report_document(s, {"file": str(a.file), "depth": a.depth}, census=rep.census,
                              cert=rep.certificate, verification=rep, timing=timing)
        _emit(doc.serialize() + "\n", a.out)
    for r in rep.records:
        if not r.passed:
            log.error("FAILED %s: %s vs %s %s", r.name, r.lhs, r.rhs, r.note)
    log.info("overall: %s", "pass" if rep.passed else "FAIL")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_search(a) -> int:
    schedule = Schedule(t0=a.t0, ratio=a.ratio, period=a.period)
    res = minimize_rrb(a.n, a.m, a.box, a.seed, a.iterations, schedule=schedule, step=a.step,
                       restarts=a.restarts, workers=a.workers, audit_every=a.audit_every)
    ok, note = certificate_consistent(res.best)
    if a.best:
        Path(a.best).write_text(format_point_file(res.best, f"search seed={a.seed} rrb={res.best_count}"))
    if a.trace:
        with open(a.trace, "w", newline="") as fh:
            write_trace_csv(res, fh)
    summary = {"n": a.n, "m": a.m, "box": a.box, "seed": a.seed, "iterations": a.iterations,
               "restarts": a.restarts, "best_restart": res.restart, "initial_count": res.initial_count,
               "best_count": res.best_count, "accepted": res.accepted,
               "certificate_consistent": ok, "certificate_note": note,
               "fingerprint": fingerprint(res.best)}
    if a.format == "csv":
        _emit(_csv_text(list(summary), [list(summary.values())]), a.out)
    else:
        _emit(json.dumps(summary, indent=2, sort_keys=True) + "\n", a.out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_scan(a) -> int:
    schemes = a.scheme or ["alternating"]
    rows = horton_bicoloring_scan(range(a.k_min, a.k_max + 1), schemes)
    buf = io.StringIO()
    write_scan_csv(rows, buf)
    _emit(buf.getvalue(), a.out)
    return EXIT_OK


def cmd_render(a) -> int:
    s = read_point_file(a.file)
    fan = run = None
    if a.mode == "fan":
        red = a.red
        if red is None:
            red = p_min(s)[1]
        if not 0 <= red < s.n:
            raise UsageError(f"red index {red} out of range 0..{s.n - 1}")
        fan = build_sector_fan(s, red)
    else:
        block = None
        if a.analysis:
            block = json.loads(Path(a.analysis).read_text()).get("certificate")
        if block is None:
            block = certificate_block(assemble_certificate(s))
        if "forward" not in block:
            raise UsageError("certificate took the lemma2 branch; no good-sector run to draw")
        run = GoodSectorRun.from_dict(block[block.get("chosen") or "forward"])
    _emit(render_svg(s, fan=fan, run=run, size=a.size), a.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--quiet", action="store_true", help="suppress progress messages")
    common.add_argument("--config", help="key=value file supplying defaults")

    p = argparse.ArgumentParser(prog="rrbtri", description="Empty red-red-blue triangles in bicolored point sets.")
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True

    g = sub.add_parser("generate", parents=[common], help="write a point file")
    g.add_argument("--kind", choices=["random", "clustered", "circle", "horton"], default="random")
    g.add_argument("--n", type=int, default=10, help="reds (circle: reds and blues)")
    g.add_argument("--m", type=int, default=10, help="blues")
    g.add_argument("--box", type=int, default=1000)
    g.add_argument("--clusters", type=int, default=2)
    g.add_argument("--k", type=int, default=4, help="Horton set has 2^k points")
    g.add_argument("--scheme", default="alternating", help="alternating, x-parity or random:SEED")
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("census", parents=[common], help="count empty triangles by color class")
    c.add_argument("file")
    grp = c.add_mutually_exclusive_group()
    grp.add_argument("--oracle", dest="method", action="store_const", const="oracle")
    grp.add_argument("--fast", dest="method", action="store_const", const="fast")
    grp.add_argument("--both", dest="method", action="store_const", const="both")
    c.set_defaults(func=cmd_census, method="fast")

    an = sub.add_parser("analyze", parents=[common], help="sector fans, p and the certificate")
    an.add_argument("file")
    an.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", parents=[common], help="check every inequality; exit 0 iff all pass")
    v.add_argument("file")
    v.add_argument("--depth", choices=["quick", "full"], default="full")
    v.set_defaults(func=cmd_verify)

    se = sub.add_parser("search", parents=[common], help="anneal toward few empty rrb triangles")
    se.add_argument("--n", type=int, default=10)
    se.add_argument("--m", type=int, default=10)
    se.add_argument("--box", type=int, default=1000)
    se.add_argument("--iterations", type=int, default=10000)
    se.add_argument("--restarts", type=int, default=1)
    se.add_argument("--workers", type=int, default=1)
    se.add_argument("--step", type=int, default=None)
    se.add_argument("--t0", type=float, default=None, help="initial temperature (default count/10)")
    se.add_argument("--ratio", type=float, default=0.999)
    se.add_argument("--period", type=int, default=100)
    se.add_argument("--audit-every", type=int, default=1000)
    se.add_argument("--best", help="write the best set to this point file")
    se.add_argument("--trace", help="write the trace CSV here")
    se.set_defaults(func=cmd_search)

    sc = sub.add_parser("scan-horton", parents=[common], help="rrb counts of bicolored Horton sets (CSV)")
    sc.add_argument("--k-min", type=int, default=4)
    sc.add_argument("--k-max", type=int, default=8)
    sc.add_argument("--scheme", action="append", help="repeatable; default alternating")
    sc.set_defaults(func=cmd_scan)

    r = sub.add_parser("render", parents=[common], help="SVG of a sector fan or good-sector run")
    r.add_argument("file")
    r.add_argument("--analysis", help="JSON from 'analyze' to draw instead of recomputing")
    r.add_argument("--mode", choices=["fan", "run"], default="fan")
    r.add_argument("--red", type=int, default=None, help="apex red index for fan mode (default r0)")
    r.add_argument("--size", type=int, default=600)
    r.set_defaults(func=cmd_render)

    p._subs = sub.choices
    return p


def _parse(parser, argv):
    args = parser.parse_args(argv)
    if args.config:
        try:
            cfg = load_config(args.config)
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
        sp = parser._subs[args.command]
        known = {act.dest for act in sp._actions}
        unknown = sorted(set(cfg) - known)
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(unknown)}")
        sp.set_defaults(**cfg)
        args = parser.parse_args(argv)
    return args


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = _parse(parser, argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"rrbtri: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(levelname)s: %(message)s", stream=sys.stderr, force=True)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"rrbtri: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PointFileError, PointSetError, GeometryError, GenerationError, SearchError,
            StructuralError, OSError, ValueError) as exc:
        print(f"rrbtri: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
