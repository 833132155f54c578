"""Command-line interface.

Subcommands:
  generate    sample a random complex and write it as JSON
  degrees     edge-degree histogram of a complex (CSV: k, observed, expected)
  collapse    collapse a complex; JSON trace, optionally per-triangle details
  mu          density invariants of a complex
  catalog     enumerate a forbidden catalog; JSON members + CSV summary
  embed       test whether one complex embeds into another
  experiment  run a config-driven sweep or a threshold scan

All file formats are documented in the README.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

from .catalog import embedding_minimal_flags, enumerate_forbidden, star_surface
from .collapse import (
    accessible_boundary,
    accessible_boundary_via,
    collapse_sequence,
    collapse_step_tracked,
    collapsing_paths,
)
from .complexes import INF, Complex2, complex_from_json, tri_edges
from .density import is_balanced, mu, mu_tilde
from .embedding import embeds
from .experiments import (
    ConsistencyError,
    load_config,
    run_experiment,
    threshold_scan,
    write_scan_csv,
)
from .random_model import ModelParams, degree_histogram, expected_degree_count, sample


def _load_complex(path: str) -> Complex2:
    with open(path, "r", encoding="utf-8") as fh:
        return complex_from_json(json.load(fh))


def _dump_json(data, path: str | None) -> None:
    text = json.dumps(data, indent=2)
    if path is None:
        print(text)
    else:
        Path(path).write_text(text + "\n", encoding="utf-8")


def _write_csv(path, header, rows) -> None:
    if path is None:
        writer = csv.writer(sys.stdout)
        writer.writerow(header)
        writer.writerows(rows)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)


def _depth_value(d):
    return "inf" if d == INF else int(d)


def _tri_arg(text: str) -> tuple[int, int, int]:
    parts = tuple(int(x) for x in text.split(","))
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("triangle must be i,j,k")
    return parts  # type: ignore[return-value]


def _cmd_generate(args) -> int:
    if args.p is None and args.alpha is None:
        raise ValueError("pass either --p or --alpha (p = c * n^-alpha)")
    p = args.p if args.p is not None else min(1.0, args.c * args.n ** (-args.alpha))
    y = sample(ModelParams(args.n, p, args.seed))
    _dump_json(y.to_json_dict(), args.out)
    return 0


def _cmd_degrees(args) -> int:
    c = _load_complex(args.infile)
    hist = degree_histogram(c)
    top = max(hist.counts) if hist.counts else 0
    rows = []
    for k in range(max(top, c.n_vertices - 2) + 1):
        expected = ""
        if args.p is not None and k <= c.n_vertices - 2:
            expected = repr(expected_degree_count(c.n_vertices, args.p, k))
        rows.append([k, hist.observed(k), expected])
    _write_csv(args.out, ["k", "observed", "expected"], rows)
    return 0


def _cmd_collapse(args) -> int:
    c = _load_complex(args.infile)
    trace = collapse_sequence(c)
    out = {
        "stages": [[list(t) for t in sorted(stage)] for stage in trace.stages],
        "depths": {",".join(map(str, t)): _depth_value(d) for t, d in sorted(trace.depths.items())},
        "terminal": trace.terminal,
        "steps": trace.steps,
    }
    if args.track_edges:
        cur = c
        while True:
            nxt = collapse_step_tracked(cur)
            if nxt.triangles == cur.triangles:
                break
            cur = nxt
        out["remainder_edges"] = [list(e) for e in sorted(cur.edges())]
    if args.sigma is not None:
        t = tuple(sorted(args.sigma))
        depth = trace.depths.get(t)
        if depth is None:
            print(f"error: {t} is not a triangle of the complex", file=sys.stderr)
            return 2
        detail = {"triangle": list(t), "depth": _depth_value(depth)}
        if depth != INF:
            search = collapsing_paths(c, t, limit=args.path_limit)
            detail["paths"] = [[list(x) for x in p] for p in search.paths]
            detail["paths_truncated"] = search.truncated
        detail["accessible_boundary"] = [list(e) for e in sorted(accessible_boundary(c, t))]
        if depth != INF and depth >= 1:
            detail["accessible_boundary_via"] = {
                ",".join(map(str, e)): [list(x) for x in sorted(accessible_boundary_via(c, t, e))]
                for e in tri_edges(t)
            }
        out["sigma"] = detail
    _dump_json(out, args.out)
    return 0


def _cmd_mu(args) -> int:
    c = _load_complex(args.infile)
    result = mu_tilde(c, method=args.method)
    print(f"mu        = {mu(c)}")
    print(f"mu_tilde  = {result.value}   ({result.method})")
    print(f"balanced  = {is_balanced(c)}")
    print("witness   =", " ".join(",".join(map(str, t)) for t in sorted(result.witness)))
    return 0


def _cmd_catalog(args) -> int:
    cat = enumerate_forbidden(args.k, args.r, args.max_faces, args.max_vertices)
    minimal = embedding_minimal_flags(cat)
    rows = []
    for idx, member in enumerate(cat.members):
        c = member.complex
        mt = mu_tilde(c)
        rows.append(
            {
                "index": idx,
                "v": len(c.incident_vertices()),
                "f": c.f,
                "mu_tilde": str(mt.value),
                "balanced": is_balanced(c),
                "closed": c.is_closed(),
                "minimal": minimal[idx],
            }
        )
        if args.out_dir is not None:
            data = c.to_json_dict()
            data["center"] = list(member.center)
            data["k"], data["r"] = args.k, args.r
            data.update({k: v for k, v in rows[-1].items() if k != "index"})
            path = Path(args.out_dir) / f"catalog_k{args.k}_r{args.r}_{idx:03d}.json"
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
    columns = ["index", "v", "f", "mu_tilde", "balanced", "closed", "minimal"]
    _write_csv(args.summary, columns, [[row[c] for c in columns] for row in rows])
    best = max((Fraction(r["mu_tilde"]) for r in rows), default=None)
    conjectured = 1 + Fraction(1, 3 * 2 ** (args.k - 1) - 1) if args.k >= 1 else Fraction(3)
    print(f"# members={len(rows)} unanchored_types={cat.unanchored_type_count} "
          f"truncated={cat.truncated}", file=sys.stderr)
    print(f"# mu_tilde_max={best} (conjectured {conjectured})", file=sys.stderr)
    return 0


def _cmd_embed(args) -> int:
    pattern = _load_complex(args.pattern)
    host = _load_complex(args.host)
    witness = embeds(pattern, host)
    if witness is None:
        print("none")
    else:
        _dump_json({"vertex_map": {str(k): v for k, v in witness.items()}}, args.out)
    return 0


def _cmd_experiment_run(args) -> int:
    config = load_config(args.config)
    try:
        run_experiment(config, out_path=args.out)
    except ConsistencyError as exc:
        print(f"consistency violation: {exc}", file=sys.stderr)
        return 1
    return 0


def _cmd_experiment_scan(args) -> int:
    alphas = [float(a) for a in args.alphas.split(",")]
    result = threshold_scan(args.n, args.k, alphas, args.trials, args.seed)
    if args.out is not None:
        write_scan_csv(result, args.out)
    else:
        for row in result.rows:
            print(f"alpha={row.alpha}  p={row.p:.6g}  fraction={row.fraction:.3f}")
        print(f"# collapse exponent {result.alpha_collapse}, "
              f"obstruction exponent {result.alpha_obstruct}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plex2", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="sample a random complex")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p", type=float)
    g.add_argument("--c", type=float, default=1.0)
    g.add_argument("--alpha", type=float)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=_cmd_generate)

    d = sub.add_parser("degrees", help="edge-degree histogram")
    d.add_argument("infile")
    d.add_argument("--p", type=float, help="model probability, for the expected column")
    d.add_argument("--out")
    d.set_defaults(func=_cmd_degrees)

    co = sub.add_parser("collapse", help="collapse a complex")
    co.add_argument("infile")
    co.add_argument("--sigma", type=_tri_arg, help="triangle i,j,k to report on")
    co.add_argument("--path-limit", type=int, default=10**6)
    co.add_argument("--track-edges", action="store_true",
                    help="also report the leftover 1-skeleton")
    co.add_argument("--out")
    co.set_defaults(func=_cmd_collapse)

    m = sub.add_parser("mu", help="density invariants")
    m.add_argument("infile")
    m.add_argument("--method", default="auto",
                   choices=["auto", "exhaustive", "branch_and_bound", "mincut"])
    m.set_defaults(func=_cmd_mu)

    ca = sub.add_parser("catalog", help="enumerate a forbidden catalog")
    ca.add_argument("--k", type=int, required=True)
    ca.add_argument("--r", type=int, required=True)
    ca.add_argument("--max-faces", type=int)
    ca.add_argument("--max-vertices", type=int)
    ca.add_argument("--out-dir")
    ca.add_argument("--summary", help="write the summary CSV here instead of stdout")
    ca.set_defaults(func=_cmd_catalog)

    e = sub.add_parser("embed", help="simplicial embedding test")
    e.add_argument("--pattern", required=True)
    e.add_argument("--host", required=True)
    e.add_argument("--out")
    e.set_defaults(func=_cmd_embed)

    x = sub.add_parser("experiment", help="Monte Carlo sweeps")
    xsub = x.add_subparsers(dest="subcommand", required=True)
    xr = xsub.add_parser("run", help="run a config-driven grid")
    xr.add_argument("--config", required=True)
    xr.add_argument("--out", required=True)
    xr.set_defaults(func=_cmd_experiment_run)
    xs = xsub.add_parser("scan", help="collapsibility fraction across p = n^-alpha")
    xs.add_argument("--n", type=int, required=True)
    xs.add_argument("--k", type=int, required=True)
    xs.add_argument("--alphas", required=True, help="comma-separated ascending list")
    xs.add_argument("--trials", type=int, default=200)
    xs.add_argument("--seed", type=int, default=0)
    xs.add_argument("--out")
    xs.set_defaults(func=_cmd_experiment_scan)

    s = sub.add_parser("star", help="write the k-th iterated star surface as JSON")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=_cmd_star)

    return parser


def _cmd_star(args) -> int:
    surface = star_surface(args.k)
    data = surface.complex.to_json_dict()
    data["center"] = list(surface.center)
    _dump_json(data, args.out)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
