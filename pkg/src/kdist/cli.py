"""Command-line interface: ``kdist <subcommand> ...``.

Exit status is 0 on success (including a negative squared distance, which is
a legitimate answer for an indefinite similarity), 1 on domain errors and 2
on usage, I/O or parse errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

from kdist import _core
from kdist.bench import bench, records_to_csv
from kdist.collection import ShapeCollection, distance_matrix, nearest_neighbor
from kdist.currents import curve_atoms, current_self_similarities, mesh_atoms
from kdist.errors import KdistError, ParseError
from kdist.exact import DistanceResult, default_clamp_tolerance, kernel_distance
from kdist.features import approx_distance_sq, embed_current, embed_measure, sample_feature_map
from kdist.ipm import ipm_lower_bound, tv_distance
from kdist.kernels import KernelSpec, check_positive_definite, gram_matrix
from kdist.shapes import parse_curve, parse_mesh, parse_points
from kdist.spectral import spectral_lift

EXTENSIONS = {"points": ".csv", "curves": ".poly", "surfaces": ".off"}


class UsageError(Exception):
    pass


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror or e}") from None


def _load(kind: str, path: str):
    """Parse a file into the object the distance routines consume."""
    data = _read(path)
    if kind == "points":
        return parse_points(data)
    if kind == "curves":
        return curve_atoms(parse_curve(data))
    return mesh_atoms(parse_mesh(data))


def _kernel(args) -> KernelSpec:
    if args.kernel == "gaussian":
        return KernelSpec.gaussian(args.sigma)
    return KernelSpec.box(args.width)


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _feature_map_for(args, k: KernelSpec, d: int):
    if k.kind != "gaussian":
        raise KdistError("no unbiased feature map implemented for the box kernel")
    return sample_feature_map(k.sigma, d, args.features, args.seed)


def cmd_distance(args) -> int:
    kind = args.command
    k = _kernel(args)
    A, B = _load(kind, args.a), _load(kind, args.b)
    t0 = time.perf_counter()
    if args.features is not None:
        f = _feature_map_for(args, k, A.dimension)
        embed = embed_measure if kind == "points" else embed_current
        if A.dimension != B.dimension:
            raise KdistError(f"dimension mismatch between inputs: {A.dimension} vs {B.dimension}")
        d_sq = approx_distance_sq(embed(f, A), embed(f, B))
        result = DistanceResult.from_square(d_sq, 0.0)
    elif kind == "points":
        result = kernel_distance(k, A, B, args.clamp_tolerance)
    else:
        kss, ktt, kst = current_self_similarities(k, A, B)
        tol = args.clamp_tolerance
        if tol is None:
            tol = default_clamp_tolerance(kss, ktt)
        result = DistanceResult.from_square((kss + ktt) - 2.0 * kst, tol)
    elapsed = (time.perf_counter() - t0) * 1e3

    out = result.to_dict()
    out["method"] = "exact" if args.features is None else "features"
    out["time_ms"] = elapsed
    if args.features is not None:
        out["rho"] = args.features
        out["seed"] = args.seed
    if kind != "points":
        out["atoms"] = [len(A), len(B)]
    _emit_json(out)
    return 0


def cmd_gram_check(args) -> int:
    P = parse_points(_read(args.file))
    report = check_positive_definite(gram_matrix(_kernel(args), P.points), args.tolerance)
    _emit_json(report.to_dict())
    return 0


def cmd_lift(args) -> int:
    k = _kernel(args)
    P = parse_points(_read(args.file))
    L = spectral_lift(k, P.points)
    report = check_positive_definite(gram_matrix(k, P.points), args.tolerance)
    out = {
        "n": L.n,
        "rank": int(L.B.shape[0]),
        "eigenvalues": L.eigenvalues.tolist(),
        "dropped_negative": L.dropped_negative,
    }
    out.update(report.to_dict())
    _emit_json(out)
    return 0


def cmd_ipm(args) -> int:
    k = _kernel(args)
    P, Q = parse_points(_read(args.a)), parse_points(_read(args.b))
    tv = tv_distance(P, Q)
    d = kernel_distance(k, P, Q).d
    lower = ipm_lower_bound(k, P, Q, args.trials, args.seed)
    _emit_json({"d_k": d, "lower_bound": lower, "tv": tv})
    return 0


def _collection(args, k: KernelSpec):
    folder = Path(args.dir)
    if not folder.is_dir():
        raise UsageError(f"not a directory: {folder}")
    files = sorted(folder.glob("*" + EXTENSIONS[args.kind]))
    if not files:
        raise KdistError(f"no {EXTENSIONS[args.kind]} files in {folder}")
    shapes = [(p.stem, _load(args.kind, str(p))) for p in files]
    f = _feature_map_for(args, k, shapes[0][1].dimension)
    c = ShapeCollection(f)
    for name, shape in shapes:
        c.add(name, shape)
    return c, f


def cmd_matrix(args) -> int:
    c, _ = _collection(args, _kernel(args))
    D = distance_matrix(c)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", *c.names])
    for name, row in zip(c.names, D):
        w.writerow([name, *(repr(float(x)) for x in row)])
    sys.stdout.write(buf.getvalue())
    return 0


def cmd_nn(args) -> int:
    c, f = _collection(args, _kernel(args))
    q = _load(args.kind, args.query)
    emb = embed_measure(f, q) if args.kind == "points" else embed_current(f, q)
    i, dist = nearest_neighbor(c, emb)
    _emit_json({"name": c.names[i], "index": i, "distance": dist})
    return 0


def cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"bad --sizes {args.sizes!r}") from None
    if not sizes or min(sizes) < 2:
        raise UsageError("--sizes needs integers >= 2")
    methods = tuple(m.strip() for m in args.methods.split(","))
    recs = bench(sizes, args.rho, args.seed, args.sigma, args.dim, args.repeats, methods)
    sys.stdout.write(records_to_csv(recs))
    return 0


def _positive_int(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kdist", description="Kernel distance between shapes.")
    parser.add_argument("--threads", type=_positive_int, default=None,
                        help="worker threads for the double sums (env KDIST_THREADS)")
    sub = parser.add_subparsers(dest="command", required=True)

    kern = argparse.ArgumentParser(add_help=False)
    kern.add_argument("--kernel", choices=("gaussian", "box"), default="gaussian")
    kern.add_argument("--sigma", type=float, default=1.0, help="gaussian bandwidth")
    kern.add_argument("--width", type=float, default=2.0, help="box cutoff radius")
    kern.add_argument("--threads", type=_positive_int, default=argparse.SUPPRESS)

    feats = argparse.ArgumentParser(add_help=False)
    feats.add_argument("--features", type=_positive_int, metavar="RHO", default=None,
                       help="use RHO random Fourier features instead of the exact sum")
    feats.add_argument("--seed", type=int, default=0)

    for name, what in (("points", "point sets"), ("curves", "polylines"), ("surfaces", "OFF meshes")):
        p = sub.add_parser(name, parents=[kern, feats], help=f"distance between two {what}")
        p.add_argument("a")
        p.add_argument("b")
        p.add_argument("--clamp-tolerance", type=float, default=None)
        p.add_argument("--json", action="store_true", help="JSON output (the default)")
        p.set_defaults(func=cmd_distance)

    p = sub.add_parser("gram-check", parents=[kern], help="PSD check of a Gram matrix")
    p.add_argument("file")
    p.add_argument("--tolerance", type=float, default=None)
    p.set_defaults(func=cmd_gram_check)

    p = sub.add_parser("lift", parents=[kern], help="Gram eigenvalue spectrum")
    p.add_argument("file")
    p.add_argument("--tolerance", type=float, default=None)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("ipm", parents=[kern], help="kernel distance, sampled lower bound and TV")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--trials", type=_positive_int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_ipm)

    for name, func in (("matrix", cmd_matrix), ("nn", cmd_nn)):
        p = sub.add_parser(name, parents=[kern],
                           help="distance matrix" if name == "matrix" else "nearest neighbour")
        p.add_argument("--dir", required=True)
        p.add_argument("--kind", choices=tuple(EXTENSIONS), default="points")
        p.add_argument("--features", type=_positive_int, metavar="RHO", default=256)
        p.add_argument("--seed", type=int, default=0)
        if name == "nn":
            p.add_argument("--query", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("bench", help="exact vs random-feature timings (CSV)")
    p.add_argument("--sizes", default="4096,8192")
    p.add_argument("--rho", type=_positive_int, default=256)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--dim", type=_positive_int, default=3)
    p.add_argument("--repeats", type=_positive_int, default=5)
    p.add_argument("--methods", default="exact,features")
    p.add_argument("--threads", type=_positive_int, default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    _core.set_threads(args.threads)
    try:
        return args.func(args)
    except (UsageError, ParseError) as e:
        print(f"kdist: error: {e}", file=sys.stderr)
        return 2
    except (KdistError, ValueError) as e:
        print(f"kdist: {e}", file=sys.stderr)
        return 1
    finally:
        _core.set_threads(None)


if __name__ == "__main__":
    sys.exit(main())
