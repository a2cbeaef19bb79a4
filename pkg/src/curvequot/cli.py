"""Command-line front end: ``python -m curvequot <subcommand> ...``.

Every run is a pure function of its arguments.  CSV output starts with a
``#`` comment line carrying the package version, the seed and a digest of
the configuration, so two runs with the same configuration produce the
same bytes.

Exit codes: 0 success, 2 bad input, 3 the induction stopped at a saddle
connection.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__, farey, ncie, orbifolds
from .errors import CapExceeded, CurvequotError, SaddleConnection
from .graphcore import (
    VertexMap,
    delta_four_point,
    electrify,
    load_graph,
    projection_diameter,
    wpd_census,
)
from .graphcore.io import dump_graph

EXIT_OK, EXIT_INPUT, EXIT_SADDLE = 0, 2, 3


class Output:
    """Rows plus column order; rendered once the subcommand returns."""

    def __init__(self, columns, rows=None, note=""):
        self.columns = list(columns)
        self.rows = list(rows or [])
        self.note = note
        self.raw_json = None   # set when a subcommand emits a native JSON document


def _digest(args) -> str:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in {"out", "trace_out", "func"}}
    blob = json.dumps(cfg, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()


def _meta(args) -> dict:
    return {"version": __version__, "command": args.command, "seed": args.seed, "config_sha256": _digest(args)}


def render(out: Output, args) -> str:
    meta = _meta(args)
    if args.format == "json":
        doc = {"meta": meta, "rows": out.rows}
        if out.note:
            doc["note"] = out.note
        if out.raw_json is not None:
            doc["data"] = out.raw_json
        return json.dumps(doc, sort_keys=True, indent=1, default=str) + "\n"
    buf = io.StringIO()
    buf.write("# " + " ".join(f"{k}={v}" for k, v in meta.items()) + "\n")
    if out.note:
        buf.write(f"# note: {out.note}\n")
    w = csv.DictWriter(buf, fieldnames=out.columns, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for row in out.rows:
        w.writerow({k: _cell(row.get(k, "")) for k in out.columns})
    return buf.getvalue()


def _cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


# -- covers ---------------------------------------------------------------------


def _surface(text: str) -> orbifolds.SurfaceSig:
    try:
        g, n = (int(x) for x in text.split(","))
        return orbifolds.SurfaceSig(g, n)
    except (ValueError, TypeError):
        raise argparse.ArgumentTypeError(f"surface must be 'g,n' with g, n >= 0, got {text!r}") from None


COVER_COLUMNS = ["genus", "punctures", "degree", "order_counts", "chi_total", "chi_base",
                 "feasible", "rejection_reason", "base", "equation"]


def cmd_covers(args) -> tuple[Output, int]:
    s = args.surface
    out = Output(COVER_COLUMNS)
    if not s.supports_pseudo_anosov:
        out.note = "no pseudo-Anosov support"
        return out, EXIT_OK
    if orbifolds.is_exceptional(s):
        c = orbifolds.exceptional_cover(s)
        dt, db = orbifolds.teich_dim(s), orbifolds.teich_dim(c.base)
        counts = c.base.counts()
        out.rows.append({
            "genus": s.g, "punctures": s.n, "degree": c.degree,
            "order_counts": ";".join(f"{orbifolds.format_order(k)}:{v}" for k, v in sorted(
                counts.items(), key=lambda kv: orbifolds._order_key(kv[0]))),
            "chi_total": orbifolds.euler_char(s), "chi_base": orbifolds.orb_euler_char(c.base),
            "feasible": c.valid and dt == db, "rejection_reason": "", "base": str(c.base),
            "equation": f"teich {dt}={db}",
        })
        out.note = "exceptional surface: hyperelliptic quotient"
        return out, EXIT_OK
    rep = orbifolds.irregular_same_signature_search(s, args.max_degree)
    for r in rep.rows:
        out.rows.append({
            "genus": r.genus, "punctures": r.punctures, "degree": r.degree, "order_counts": r.counts_str(),
            "chi_total": r.chi_total, "chi_base": r.chi_base, "feasible": r.feasible,
            "rejection_reason": r.rejection_reason, "base": str(r.base) if r.base else "",
            "equation": r.equation,
        })
    return out, EXIT_OK


# -- electrify ------------------------------------------------------------------


def cmd_electrify(args) -> tuple[Output, int]:
    g, fam = load_graph(args.graph)
    eg = electrify(g, fam)
    out = Output(["query", "subject", "base", "electrified"])
    for u, v in args.dist or []:
        out.rows.append({"query": "distance", "subject": f"{u}|{v}",
                         "base": g.distance(u, v), "electrified": eg.distance(u, v)})
    if args.delta:
        kw = dict(samples=args.cap_samples, seed=args.seed)
        out.rows.append({"query": "delta", "subject": "all",
                         "base": delta_four_point(g, **kw), "electrified": delta_four_point(eg, **kw)})
    if args.scan_axis:
        axis = args.scan_axis.split(",")
        for k, m in enumerate(fam):
            label = fam.labels[k] or f"Y{k}"
            out.rows.append({"query": "projection_diameter", "subject": label,
                             "base": projection_diameter(g, axis, m),
                             "electrified": projection_diameter(eg, axis, m)})
    return out, EXIT_OK


# -- walk -----------------------------------------------------------------------

LETTERS = "TtUu"


def sample_words(seed: int, length: int, samples: int) -> list[str]:
    rng = np.random.default_rng(np.random.SeedSequence([seed, length]))
    draws = rng.integers(0, 4, size=(samples, length))
    return ["".join(LETTERS[i] for i in row) for row in draws]


def cmd_walk(args) -> tuple[Output, int]:
    if args.samples < 1 or any(L < 1 for L in args.length):
        raise ValueError("length and samples must be at least 1")
    if args.samples > args.cap_samples:
        raise CapExceeded(f"{args.samples} samples exceed --cap-samples {args.cap_samples}")
    origin = farey.Slope(0, 1)
    ball = None
    if args.records and args.distances:
        ball = farey.farey_ball(origin, args.cap_radius, max_height=args.max_height)
        dist = ball.distances_from(str(origin))
    if args.records:
        out = Output(["length", "sample", "word", "trace", "class", "distance"])
    else:
        out = Output(["length", "samples", "pseudo_anosov", "fraction"])
    for L in args.length:
        words = sample_words(args.seed, L, args.samples)
        n_pa = 0
        for k, w in enumerate(words):
            m = farey.word_to_map(w)
            cls = farey.classify(m)
            n_pa += cls == farey.PSEUDO_ANOSOV
            if args.records:
                row = {"length": L, "sample": k, "word": w, "trace": m.trace, "class": cls, "distance": ""}
                if ball is not None:
                    img = str(farey.act(m, origin))
                    row["distance"] = dist[ball.index(img)] if img in ball else "cap_exceeded"
                out.rows.append(row)
        if not args.records:
            out.rows.append({"length": L, "samples": args.samples, "pseudo_anosov": n_pa,
                             "fraction": n_pa / args.samples})
    return out, EXIT_OK


# -- rauzy ----------------------------------------------------------------------


def _stop_rule(text: str, cap: int):
    if text is None:
        return ncie.max_steps(cap)
    kind, _, val = text.partition(":")
    if kind == "max_steps":
        return ncie.max_steps(int(val))
    if kind == "length_below":
        return ncie.length_below(Fraction(val))
    if kind in {"passages", "all_passages_at_least"}:
        return ncie.all_passages_at_least(int(val))
    raise ValueError(f"unknown stop rule {text!r}")


def cmd_rauzy(args) -> tuple[Output, int]:
    x = ncie.Ncie.load(args.fixture)
    stop = _stop_rule(args.stop, args.cap_steps)
    code = EXIT_OK
    try:
        trace = ncie.rauzy_until(x, stop, cap=args.cap_steps)
    except SaddleConnection as e:
        trace, code = e.trace, EXIT_SADDLE
    out = Output(["steps", "base_length", "widths", "stopped_by", "passage", "twice_cover_index"])
    twice = ""
    if args.twice:
        try:
            twice = ncie.twice_cover_index(x, cap=args.cap_steps)
        except SaddleConnection:
            twice = "saddle_connection"
    P = ncie.passage_product(trace)
    out.rows.append({
        "steps": len(trace), "base_length": trace.final.base_length,
        "widths": " ".join(str(w) for w in trace.final.widths), "stopped_by": trace.stopped_by,
        "passage": json.dumps(P.tolist()), "twice_cover_index": twice,
    })
    target = args.trace_out or (f"{args.out}.trace.jsonl" if args.out else None)
    if target:
        Path(target).write_text(trace.to_jsonl(), encoding="utf-8")
    return out, code


# -- wpd ------------------------------------------------------------------------


def _farey_census_inputs(args):
    ball = farey.farey_ball(farey.Slope.parse(args.x), args.cap_radius, max_height=args.max_height,
                            cap=max(args.cap_radius, farey.RADIUS_CAP))
    a, b, c, d = (int(t) for t in args.mover.split(","))
    mover = farey.vertex_map(farey.FareyMapClass(a, b, c, d), ball, "mover")
    names, maps = [], []
    for word, m in farey.words_up_to(args.word_length):
        names.append(word or "1")
        maps.append(farey.vertex_map(m, ball, word or "1"))
    return ball, mover, names, maps, str(farey.Slope.parse(args.x))


def _file_census_inputs(args):
    g, _ = load_graph(args.graph)
    data = json.loads(Path(args.maps).read_text(encoding="utf-8"))
    mover = VertexMap(data["mover"], label="mover")
    names = sorted(data["candidates"])
    maps = [VertexMap(data["candidates"][k], label=k) for k in names]
    return g, mover, names, maps, args.x


def cmd_wpd(args) -> tuple[Output, int]:
    if args.graph:
        g, mover, names, maps, x = _file_census_inputs(args)
    else:
        g, mover, names, maps, x = _farey_census_inputs(args)
    for h in maps + [mover]:
        h.validate(g)
    out = Output(["n", "r", "count", "escaped", "witnesses"])
    lo, hi = args.n
    for n in range(lo, hi + 1):
        c = wpd_census(g, maps, mover, x, args.r, n, validate=False)
        out.rows.append({"n": n, "r": args.r, "count": c.count, "escaped": len(c.escaped),
                         "witnesses": " ".join(names[k] for k in c.witnesses)})
    return out, EXIT_OK


# -- farey-ball -----------------------------------------------------------------


def cmd_farey_ball(args) -> tuple[Output, int]:
    centre = farey.Slope.parse(args.center)
    g = farey.farey_ball(centre, args.cap_radius, max_height=args.max_height)
    dist = g.distances_from(str(centre))
    out = Output(["slope", "distance"])
    for v in g.vertices:
        out.rows.append({"slope": v, "distance": int(dist[g.index(v)]) // 2})
    out.raw_json = dump_graph(g)
    return out, EXIT_OK


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write here instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--cap-radius", type=int, default=6)
    common.add_argument("--cap-steps", type=int, default=ncie.HARD_CAP)
    common.add_argument("--cap-samples", type=int, default=10_000)

    p = argparse.ArgumentParser(prog="curvequot", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"curvequot {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("covers", parents=[common], help="orbifold cover case analysis")
    s.add_argument("--surface", type=_surface, required=True, help="g,n")
    s.add_argument("--max-degree", type=int, default=orbifolds.DEGREE_CAP)
    s.set_defaults(func=cmd_covers)

    s = sub.add_parser("electrify", parents=[common], help="distances before and after coning off")
    s.add_argument("graph")
    s.add_argument("--dist", nargs=2, action="append", metavar=("U", "V"))
    s.add_argument("--delta", action="store_true")
    s.add_argument("--scan-axis", help="comma-separated axis vertices")
    s.set_defaults(func=cmd_electrify)

    s = sub.add_parser("walk", parents=[common], help="random words in the twist generators")
    s.add_argument("--length", type=int, nargs="+", required=True)
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--records", action="store_true", help="one row per sample")
    s.add_argument("--distances", action="store_true", help="with --records, d(0/1, w 0/1) in a Farey ball")
    s.add_argument("--max-height", type=int, default=farey.DEFAULT_HEIGHT)
    s.set_defaults(func=cmd_walk)

    s = sub.add_parser("rauzy", parents=[common], help="Rauzy induction on an exchange fixture")
    s.add_argument("fixture")
    s.add_argument("--stop", help="max_steps:N, length_below:X or passages:K")
    s.add_argument("--twice", action="store_true", help="also report the twice-cover index")
    s.add_argument("--trace-out")
    s.set_defaults(func=cmd_rauzy)

    s = sub.add_parser("wpd", parents=[common], help="WPD census over a range of powers")
    s.add_argument("--graph", help="graph JSON; needs --maps")
    s.add_argument("--maps", help='JSON {"mover": {...}, "candidates": {name: {...}}}')
    s.add_argument("--mover", default="2,1,1,1", help="a,b,c,d for the Farey model")
    s.add_argument("--word-length", type=int, default=4)
    s.add_argument("--max-height", type=int, default=150)
    s.add_argument("--x", default="0/1")
    s.add_argument("--r", type=int, default=4, help="radius in half-units")
    s.add_argument("--n", type=int, nargs=2, default=(1, 4), metavar=("LO", "HI"))
    s.set_defaults(func=cmd_wpd)

    s = sub.add_parser("farey-ball", parents=[common], help="Farey ball around a slope")
    s.add_argument("--center", default="0/1")
    s.add_argument("--max-height", type=int, default=farey.DEFAULT_HEIGHT)
    s.set_defaults(func=cmd_farey_ball)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "wpd" and bool(args.graph) != bool(args.maps):
        parser.error("--graph and --maps go together")
    try:
        out, code = args.func(args)
    except SaddleConnection as e:
        print(f"curvequot: saddle connection: {e}", file=sys.stderr)
        return EXIT_SADDLE
    except (CurvequotError, ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        print(f"curvequot: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT
    text = render(out, args)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
