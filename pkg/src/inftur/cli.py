"""Command-line front end: ``inftur {construct,certify,density,feasibility,bounds}``.

Exit codes: 0 success or feasible, 1 usage/input error, 2 certification
failure, 3 numerically infeasible, 4 undecided feasibility.
"""
from __future__ import annotations

import argparse
import math
import sys

from . import analysis, feasibility, layered
from .errors import InfTuranError, PartitionViolation, SpectrumViolation
from .furedi import build_furedi, load_graph, write_graph
from .numbers import is_prime
from .records import format_record, write_manifest, write_record

EXIT_OK, EXIT_USAGE, EXIT_CERT, EXIT_INFEASIBLE, EXIT_UNDECIDED = 0, 1, 2, 3, 4
LOWER_RATIO = 3.58


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def cmd_construct(args) -> int:
    if not is_prime(args.p) or args.p < 3:
        print(f"error: p must be prime (and at least 3), got {args.p}", file=sys.stderr)
        return EXIT_USAGE
    G = build_furedi(args.p, args.t)
    write_graph(G, args.out)
    degs = {len(row) for row in G.neighbors}
    summary = {"p": G.p, "t": G.t, "V": G.n, "E": G.edge_count, "loops": G.loop_count,
               "degree": degs.pop() if len(degs) == 1 else "irregular"}
    summary_path = f"{args.out}.summary"
    write_record(summary_path, summary)
    write_manifest(args.out, "construct", {"p": args.p, "t": args.t}, args.seed, [args.out, summary_path])
    sys.stdout.write(format_record(summary))
    return EXIT_OK


def _certify_checks(path, t):
    G = load_graph(path)
    simple = G.simple()
    results = []
    best, u, v = analysis.codegree_witness(simple)
    results.append(("k2_free", best <= t, f"max codegree {best} (pair {u},{v}), allowed {t}"))
    q = G.p
    furedi_like = q >= 3 and is_prime(q) and (q - 1) % t == 0 and G.n == (q * q - 1) // t
    if not furedi_like:
        reason = f"header p={q} with t={t}, V={G.n} is not a Furedi parameter set"
        results.append(("codegree_partition", None, reason))
        results.append(("spectrum", None, reason))
        return results
    try:
        rep = analysis.codegree_partition(G, t)
        results.append(("codegree_partition", True, f"{len(rep.classes)} classes of size {rep.class_sizes[0]}"))
    except PartitionViolation as exc:
        results.append(("codegree_partition", False, str(exc)))
    if G.n > analysis.SPECTRAL_SIZE_CAP:
        results.append(("spectrum", None, f"V={G.n} above cap {analysis.SPECTRAL_SIZE_CAP}"))
    else:
        try:
            rep = analysis.spectrum(G, 1e-6)
            mult = " ".join(f"{k}={v}" for k, v in rep.multiplicities.items())
            results.append(("spectrum", True, f"max distance {rep.max_distance:.3g}; {mult}"))
        except SpectrumViolation as exc:
            results.append(("spectrum", False, str(exc)))
    return results


def cmd_certify(args) -> int:
    results = _certify_checks(args.graph, args.t)
    rec = {}
    for name, ok, detail in results:
        verdict = "skip" if ok is None else ("pass" if ok else "fail")
        rec[name] = f"{verdict} ({detail})"
    sys.stdout.write(format_record(rec))
    if args.out:
        write_record(args.out, rec)
        write_manifest(args.out, "certify", {"graph": str(args.graph), "t": args.t}, args.seed, [args.out])
    return EXIT_CERT if any(ok is False for _, ok, _ in results) else EXIT_OK


def cmd_density(args) -> int:
    spec = layered.LayeredSpec(args.n, args.c, args.t, args.layers, args.seed, args.labeling)
    G = layered.build_layered(spec)
    curve = layered.density_curve(G, layered.default_sample(spec.block_sizes()))
    with open(args.out, "w", encoding="ascii", newline="\n") as fh:
        fh.write(curve.to_csv())
    params = {"n": args.n, "c": args.c, "t": args.t, "layers": args.layers, "labeling": args.labeling}
    write_manifest(args.out, "density", params, args.seed, [args.out])
    print(f"blocks: {' '.join(map(str, spec.block_sizes()))}")
    print(f"min_ratio: {curve.min_ratio:.12g} at N={curve.argmin} ({len(curve.points)} samples)")
    return EXIT_OK


def cmd_feasibility(args) -> int:
    sys_ = feasibility.build_system(args.k, args.t, args.c, args.delta)
    rep = feasibility.solve_feasibility(sys_, args.tol, args.restarts, seed=args.seed,
                                       max_sweeps=args.max_sweeps, workers=args.workers)
    rec = rep.to_record()
    write_record(args.out, rec)
    params = {"k": args.k, "t": args.t, "c": args.c, "delta": args.delta, "tol": args.tol,
              "restarts": args.restarts, "max_sweeps": args.max_sweeps}
    write_manifest(args.out, "feasibility", params, args.seed, [args.out])
    print(f"status: {rep.status}")
    print(f"max_violation: {rep.max_violation:.6g}")
    return {feasibility.FEASIBLE: EXIT_OK, feasibility.INFEASIBLE: EXIT_INFEASIBLE}.get(rep.status, EXIT_UNDECIDED)


def bounds_record(t: int) -> dict[str, object]:
    eps, fmin = layered.f_min(LOWER_RATIO)
    lower = fmin * math.sqrt(t)
    upper = feasibility.upper_constant(t)
    return {
        "t": t,
        "lower": f"{lower:.12g}",
        "lower_eps": f"{eps:.12g}",
        "upper": f"{upper:.12g}",
        "upper_over_sqrt_t": f"{upper / math.sqrt(t):.12g}",
        "lower_lt_upper": lower < upper,
        "upper_lt_0.471sqrt_t": upper < 0.471 * math.sqrt(t),
    }


def cmd_bounds(args) -> int:
    rec = bounds_record(args.t)
    sys.stdout.write(format_record(rec))
    if args.out:
        write_record(args.out, rec)
        write_manifest(args.out, "bounds", {"t": args.t}, args.seed, [args.out])
    return EXIT_OK if rec["lower_lt_upper"] and rec["upper_lt_0.471sqrt_t"] else EXIT_CERT


def _positive_int(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="inftur", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--seed", type=int, default=0, help="single source of randomness (default 0)")

    p = sub.add_parser("construct", help="build H_{p,t} and write it as a graph file")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--t", type=_positive_int, required=True)
    p.add_argument("--out", required=True)
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("certify", help="check K_{2,t+1}-freeness, codegree classes and spectrum")
    p.add_argument("--graph", required=True)
    p.add_argument("--t", type=_positive_int, required=True)
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("density", help="prefix density curve of the layered construction")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--t", type=_positive_int, required=True)
    p.add_argument("--layers", type=_positive_int, required=True)
    p.add_argument("--labeling", choices=["random", "lex"], default="random")
    p.add_argument("--out", required=True)
    common(p)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("feasibility", help="decide the 2k-inequality system numerically")
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--t", type=_positive_int, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--tol", type=float, default=feasibility.DEFAULT_FEAS_TOL)
    p.add_argument("--restarts", type=_positive_int, default=feasibility.DEFAULT_RESTARTS)
    p.add_argument("--max-sweeps", type=_positive_int, default=feasibility.DEFAULT_MAX_SWEEPS)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--out", required=True)
    common(p)
    p.set_defaults(func=cmd_feasibility)

    p = sub.add_parser("bounds", help="print the lower and upper constants for ex(inf, K_{2,t+1})")
    p.add_argument("--t", type=_positive_int, required=True)
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InfTuranError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
