"""Command-line front end.

Exit codes: 0 success, 1 domain failure (not integral, not realizable,
construction precondition, nothing found), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import constructions as C
from . import search as S
from . import tables as T
from .core import NotRealizable, certify, realize_coordinates, scale
from .errors import IntegralPointSetError, ParseError, SearchError
from .pointfile import format_point_set, read_point_set

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2

PLANAR_MAX_N, PLANAR_MAX_CAP = 8, 25
LINE_APEX_MAX_N = 20
TRUNCATION_MAX_LIMIT = 10 ** 6


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


def _rationals(tokens: list[str]) -> list[Fraction]:
    out = []
    for tok in tokens:
        out += [_rational(x) for x in tok.split(",") if x]
    return out


def _cert_line(cert) -> str:
    if cert.integral:
        return f"dim={cert.dim} integral diameter={cert.diameter}"
    return f"dim={cert.dim} integral=false diameter_squared={cert.diameter_squared}"


def _emit(args, sdm, header: list[str]) -> int:
    cert = certify(sdm)
    text = format_point_set(sdm, header, cert)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        print(f"wrote {args.output}: n={sdm.n} {_cert_line(cert)}")
    return EXIT_OK


def _line_config(args) -> C.LineApexConfig:
    if args.line:
        return C.line_apex_from_sdm(read_point_set(args.line).sdm)
    if args.h2 is None or not args.offsets:
        raise ParseError("give either --line FILE or both --h2 and --offsets")
    return C.LineApexConfig(_rational(args.h2), tuple(_rationals(args.offsets)))


def cmd_verify(args) -> int:
    psf = read_point_set(args.input)
    try:
        cert = certify(psf.sdm, args.expected_dim)
    except NotRealizable as exc:
        if args.json:
            print(json.dumps({"n": psf.sdm.n, "realizable": False, "error": str(exc)}))
        else:
            print(f"n={psf.sdm.n} not realizable: {exc}")
        return EXIT_DOMAIN
    if args.json:
        print(json.dumps({
            "n": psf.sdm.n, "realizable": True, "dim": cert.dim,
            "integral": cert.integral, "diameter_squared": cert.diameter_squared,
            "diameter": cert.diameter, "expected_dim": cert.expected_dim,
            "dim_matches": cert.dim_matches,
        }))
    else:
        line = f"n={psf.sdm.n} {_cert_line(cert)}"
        if cert.dim_matches is False:
            line += f" (expected dim {cert.expected_dim})"
        print(line)
    return EXIT_OK if cert.ok else EXIT_DOMAIN


def cmd_construct(args) -> int:
    kind = args.construction
    if kind == "simplex":
        sdm = C.regular_simplex(args.points, args.edge)
        header = [f"construction: regular simplex, points={args.points} edge={args.edge}"]
    elif kind == "blowup-apex":
        cfg = _line_config(args)
        sdm = C.blow_up_apex(cfg, args.dim, args.edge)
        header = [f"construction: apex blow-up, dim={args.dim} edge={args.edge}",
                  f"h2={cfg.h2} offsets={' '.join(map(str, cfg.offsets))}"]
    elif kind == "blowup-parallel":
        cfg = C.TwoLineConfig(tuple(_rationals(args.line_positions)),
                              _rational(args.p1), _rational(args.p2), _rational(args.h2))
        sdm = C.blow_up_parallel(cfg, args.dim, args.v)
        header = [f"construction: parallel blow-up, dim={args.dim} v={args.v}",
                  f"line={' '.join(map(str, cfg.line_positions))} p1={cfg.p1_position} "
                  f"p2={cfg.p2_position} h2={cfg.h2}"]
    elif kind == "truncated":
        sdm = C.truncated_simplex(C.TruncationParams(args.dim, args.corner, args.middle))
        header = [f"construction: truncated simplex, dim={args.dim} "
                  f"corner_edge={args.corner} middle_edge={args.middle}"]
    elif kind == "combine":
        cfg = _line_config(args)
        sphere = read_point_set(args.sphere).sdm
        sdm = C.line_circle_combine(cfg, sphere, args.dim)
        header = [f"construction: line plus sphere, dim={args.dim}",
                  f"h2={cfg.h2} offsets={' '.join(map(str, cfg.offsets))}",
                  f"sphere points from {args.sphere}"]
    else:  # scale
        psf = read_point_set(args.input)
        sdm = scale(psf.sdm, args.factor)
        header = [f"construction: scaled by {args.factor} from {args.input}"]
    return _emit(args, sdm, header)


def cmd_search(args) -> int:
    kind = args.search
    if kind == "line-apex":
        if args.n > LINE_APEX_MAX_N and not args.force:
            raise ParseError(f"--n above {LINE_APEX_MAX_N} needs --force")
        w = S.search_line_apex(args.n, args.cap, args.max_denominator, jobs=args.jobs)
        print(f"n={w.n} diameter={w.diameter} h2={w.config.h2} "
              f"offsets={' '.join(map(str, w.config.offsets))}")
    elif kind == "planar-exact":
        if (args.n > PLANAR_MAX_N or args.cap > PLANAR_MAX_CAP) and not args.force:
            raise ParseError(
                f"planar-exact is limited to n <= {PLANAR_MAX_N}, cap <= {PLANAR_MAX_CAP}; "
                "use --force"
            )
        w = S.enumerate_planar_min(args.n, args.cap)
        print(f"n={w.n} diameter={w.diameter} distances={' '.join(map(str, w.sdm.distances()))}")
    else:
        if args.limit > TRUNCATION_MAX_LIMIT and not args.force:
            raise ParseError(f"--limit above {TRUNCATION_MAX_LIMIT} needs --force")
        pairs = S.scan_truncation_pairs(args.limit)
        print(f"limit={args.limit} pairs={len(pairs)}")
        for a, b in pairs:
            print(f"corner_edge={a} middle_edge={b}")
        return EXIT_OK
    if args.witness:
        with open(args.witness, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(format_point_set(
                w.to_sdm(), [f"search {kind}: n={w.n} diameter={w.diameter}"],
                certify(w.to_sdm())))
    return EXIT_OK


def cmd_tables(args) -> int:
    if args.table == "audit":
        rep = T.audit()
        print("\n".join(rep.lines()))
        return EXIT_OK if rep.ok else EXIT_DOMAIN
    if args.m is not None and args.n is not None:
        e = T.lookup(args.m, args.n)
        rows = [e] if e is not None else []
        if not rows:
            print(f"d({args.m},{args.n}) unknown")
            return EXIT_DOMAIN
    else:
        rows = T.TABLE.rows(args.m, args.n)
    if args.format == "json":
        print(json.dumps([{"m": e.m, "n": e.n, "d": e.d, "provenance": list(e.provenance)}
                          for e in rows]))
    elif args.format == "csv":
        print("m,n,d,provenance")
        for e in rows:
            print(f"{e.m},{e.n},{e.d},\"{'; '.join(e.provenance)}\"")
    else:
        for e in rows:
            print(f"{e.m} {e.n} {e.d} {'; '.join(e.provenance)}")
    return EXIT_OK


def cmd_export(args) -> int:
    psf = read_point_set(args.input)
    try:
        real = realize_coordinates(psf.sdm)
    except NotRealizable as exc:
        print(f"not realizable: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    dim = len(real.coordinates[0])
    lines = [f"# residual={real.residual:.3e}",
             ",".join(f"x{i}" for i in range(dim)) if dim else "point"]
    for row in real.coordinates:
        lines.append(",".join(f"{x:.12g}" for x in row) if dim else "0")
    text = "\n".join(lines) + "\n"
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    from .reproduce import run_all

    failures = 0
    for name, ok, detail in run_all(long=args.long):
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    return EXIT_OK if failures == 0 else EXIT_DOMAIN


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ipsets", description="Integral point sets in exact arithmetic.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="certify a point-set file")
    v.add_argument("input")
    v.add_argument("--expected-dim", type=int)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("construct", help="build a point set and write it as a file")
    csub = c.add_subparsers(dest="construction", required=True)

    def out(q):
        q.add_argument("-o", "--output", help="output path (default: stdout)")

    def line_source(q):
        q.add_argument("--line", help="point-set file with n-1 collinear points and an apex")
        q.add_argument("--h2", help="squared apex height (rational)")
        q.add_argument("--offsets", nargs="+", help="signed offsets from the apex foot")

    q = csub.add_parser("simplex")
    q.add_argument("--points", type=int, required=True)
    q.add_argument("--edge", type=int, default=1)
    out(q)
    q = csub.add_parser("blowup-apex")
    line_source(q)
    q.add_argument("--dim", type=int, required=True)
    q.add_argument("--edge", type=int, default=1)
    out(q)
    q = csub.add_parser("blowup-parallel")
    q.add_argument("--line-positions", nargs="+", required=True)
    q.add_argument("--p1", required=True)
    q.add_argument("--p2", required=True)
    q.add_argument("--h2", required=True)
    q.add_argument("--dim", type=int, required=True)
    q.add_argument("--v", type=int, required=True)
    out(q)
    q = csub.add_parser("truncated")
    q.add_argument("--dim", type=int, required=True)
    q.add_argument("--corner", type=int, required=True)
    q.add_argument("--middle", type=int, required=True)
    out(q)
    q = csub.add_parser("combine")
    line_source(q)
    q.add_argument("--sphere", required=True)
    q.add_argument("--dim", type=int, required=True)
    out(q)
    q = csub.add_parser("scale")
    q.add_argument("--input", required=True)
    q.add_argument("--factor", type=int, required=True)
    out(q)
    c.set_defaults(func=cmd_construct)

    s = sub.add_parser("search", help="search for small-diameter sets")
    ssub = s.add_subparsers(dest="search", required=True)
    q = ssub.add_parser("line-apex")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--cap", type=int, required=True)
    q.add_argument("--max-denominator", type=int, default=2)
    q.add_argument("--jobs", type=int, default=1)
    q.add_argument("--witness")
    q.add_argument("--force", action="store_true")
    q = ssub.add_parser("planar-exact")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--cap", type=int, required=True)
    q.add_argument("--witness")
    q.add_argument("--force", action="store_true")
    q = ssub.add_parser("truncation-pairs")
    q.add_argument("--limit", type=int, required=True)
    q.add_argument("--force", action="store_true")
    s.set_defaults(func=cmd_search)

    t = sub.add_parser("tables", help="known values of d(m,n)")
    tsub = t.add_subparsers(dest="table", required=True)
    q = tsub.add_parser("show")
    q.add_argument("--m", type=int)
    q.add_argument("--n", type=int)
    q.add_argument("--format", choices=["text", "csv", "json"], default="text")
    tsub.add_parser("audit")
    t.set_defaults(func=cmd_tables)

    e = sub.add_parser("export", help="floating-point coordinates as CSV")
    e.add_argument("input")
    e.add_argument("--format", choices=["csv"], default="csv")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_export)

    r = sub.add_parser("reproduce", help="re-derive the headline results")
    r.add_argument("--long", action="store_true", help="include slow checks")
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SearchError, IntegralPointSetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
