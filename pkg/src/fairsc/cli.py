"""Command-line interface.

Subcommands: ``generate``, ``cluster``, ``experiment`` and ``spectrum-check``.
Exit codes: 0 success, 1 failed self-check, 2 invalid input or configuration,
3 I/O failure, 4 algorithmic precondition failure (e.g. isolated vertices).
"""
from __future__ import annotations

import argparse
import csv
import math
import sys
import time
from pathlib import Path

import numpy as np
import scipy.linalg

from . import __version__
from .errors import (
    ConvergenceFailure,
    FairSCError,
    GraphFormatError,
    IsolatedVertex,
    NotPositiveDefinite,
    ZeroVolume,
)
from .fairness import GroupAssignment, fairness_matrix
from .graph import Clustering, format_edges, format_labels, largest_component, parse_graph, parse_labels
from .linalg import nullspace_basis
from .metrics import report
from .sbm import (
    FairSbmConfig,
    expected_adjacency,
    expected_laplacian,
    perturb_groups,
    sample_fair_sbm,
    theoretical_spectrum,
)
from .spectral import ALGORITHMS, cluster

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_IO, EXIT_ALGORITHM = 0, 1, 2, 3, 4
ALGORITHMIC_ERRORS = (IsolatedVertex, ZeroVolume, NotPositiveDefinite, ConvergenceFailure)
SPECTRUM_TOL = 1e-8
SPECTRUM_MAX_N = 500

CLUSTER_COLUMNS = ["algo", "k", "h", "n", "error", "balance_avg", "ratiocut", "ncut", "runtime_ms"]
EXPERIMENT_COLUMNS = ["sweep_var", "value", "trial", "algo", "error", "balance_avg",
                      "ratiocut", "ncut", "runtime_ms"]


class UsageError(FairSCError):
    pass


def _fmt(x):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.12g}"


def _floats(text):
    return [float(v) for v in text.split(",") if v.strip()]


def _ints(text):
    return [int(v) for v in text.split(",") if v.strip()]


def _config(args, n=None, k=None) -> FairSbmConfig:
    """Model config from flags; ``n``/``k`` override the flags during sweeps."""
    probs = (args.a, args.b, args.c, args.d)
    strict = not getattr(args, "no_validate", False)
    eta = tuple(_floats(args.eta)) if args.eta else None
    if args.cluster_sizes and n is None and k is None:
        if eta is None:
            eta = (1.0 / args.h,) * args.h
        return FairSbmConfig(tuple(_ints(args.cluster_sizes)), eta, *probs, strict=strict)
    n = args.n if n is None else n
    k = args.k if k is None else k
    if n is None or k is None:
        raise UsageError("either --n and --k or --cluster-sizes is required")
    if eta is None:
        return FairSbmConfig.balanced(n, k, args.h, *probs, strict=strict)
    if n % k:
        raise UsageError(f"--n {n} is not divisible by --k {k}")
    return FairSbmConfig((n // k,) * k, eta, *probs, strict=strict)


def _add_model_flags(p, probs_required=True):
    p.add_argument("--n", type=int, help="number of vertices")
    p.add_argument("--k", type=int, help="number of planted clusters")
    p.add_argument("--h", type=int, default=2, help="number of groups (default 2)")
    for name in "abcd":
        p.add_argument(f"--{name}", type=float, required=probs_required,
                       help=f"edge probability {name}")
    p.add_argument("--eta", help="comma-separated group fractions (default uniform)")
    p.add_argument("--cluster-sizes", help="comma-separated cluster sizes (overrides --n/--k)")


def _write(path, text):
    Path(path).write_text(text, encoding="utf-8")


def _read(path):
    return Path(path).read_bytes()


def cmd_generate(args, out):
    cfg = _config(args)
    graph, truth, groups = sample_fair_sbm(cfg, np.random.default_rng([args.seed, 0]))
    if args.perturb_p:
        groups = perturb_groups(groups, args.perturb_p, np.random.default_rng([args.seed, 1]))
    prefix = args.out
    _write(f"{prefix}.edges", format_edges(graph))
    _write(f"{prefix}.groups", format_labels(groups.labels))
    _write(f"{prefix}.truth", format_labels(truth.labels))
    print(f"n={graph.n} edges={graph.n_edges}", file=out)
    return EXIT_OK


def _load_labels(path, n):
    try:
        return parse_labels(_read(path), n)
    except GraphFormatError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _max_vertex_id(text):
    top = -1
    for line in text.decode("utf-8").splitlines():
        parts = line.split()
        if len(parts) >= 2 and not line.lstrip().startswith("#"):
            try:
                top = max(top, int(parts[0]), int(parts[1]))
            except ValueError:
                pass
    return top + 1


def cmd_cluster(args, out):
    if args.algo not in ALGORITHMS:
        raise UsageError(f"--algo must be one of {', '.join(ALGORITHMS)}")
    if args.algo.startswith("fair") and not args.groups:
        raise UsageError(f"{args.algo} requires --groups")
    edge_text = _read(args.graph)
    group_labels = None
    n = args.n
    if args.groups:
        group_labels = _load_labels(args.groups, None)
        n = n or len(group_labels)
    n = n or _max_vertex_id(edge_text)
    try:
        graph = parse_graph(edge_text, n)
    except GraphFormatError as exc:
        raise UsageError(f"{args.graph}: {exc}") from exc
    if group_labels is not None and len(group_labels) != n:
        raise UsageError(f"{args.groups}: expected {n} labels, found {len(group_labels)}")
    truth_labels = _load_labels(args.truth, n) if args.truth else None

    if args.largest_component:
        graph, keep = largest_component(graph)
        if graph.n < n:
            print(f"kept largest component: {graph.n} of {n} vertices", file=sys.stderr)
        if group_labels is not None:
            group_labels = group_labels[keep]
        if truth_labels is not None:
            truth_labels = truth_labels[keep]

    groups = GroupAssignment.from_labels(group_labels) if group_labels is not None else None
    truth = Clustering(truth_labels, args.k) if truth_labels is not None else None

    start = time.perf_counter()
    clustering, _ = cluster(graph, args.k, args.algo, groups, np.random.default_rng(args.seed))
    runtime = (time.perf_counter() - start) * 1e3

    if args.out:
        _write(args.out, format_labels(clustering.labels))
    rep = report(graph, clustering, groups or GroupAssignment(np.zeros(graph.n, int)), truth)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CLUSTER_COLUMNS)
    writer.writerow([
        args.algo, args.k, groups.h if groups else 1, graph.n, _fmt(rep.error),
        _fmt(rep.balance_avg) if groups else "", _fmt(rep.ratio_cut), _fmt(rep.ncut),
        "" if args.no_runtime else _fmt(runtime),
    ])
    return EXIT_OK


def _sweep_points(args):
    values = _floats(args.values) if args.sweep == "p" else _ints(args.values)
    if not values:
        raise UsageError("--values must not be empty")
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    points = []
    for v in values:
        if args.sweep == "n":
            points.append((v, _config(args, n=v), args.perturb_p))
        elif args.sweep == "k":
            if args.n is None:
                raise UsageError("--sweep k needs a target --n")
            kh = v * args.h
            points.append((v, _config(args, n=kh * math.ceil(args.n / kh), k=v), args.perturb_p))
        else:
            if not 0.0 <= v <= 1.0:
                raise UsageError(f"perturbation p={v} outside [0, 1]")
            points.append((v, _config(args), v))
    return points


def cmd_experiment(args, out):
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    bad = [a for a in algos if a not in ALGORITHMS]
    if bad or not algos:
        raise UsageError(f"--algos must be a non-empty subset of {', '.join(ALGORITHMS)}")
    points = _sweep_points(args)

    rows = []
    for value, cfg, p in points:
        for trial in range(args.trials):
            seed = args.seed + trial
            graph, truth, groups = sample_fair_sbm(cfg, np.random.default_rng([seed, 0]))
            if p:
                groups = perturb_groups(groups, p, np.random.default_rng([seed, 1]))
            for algo in algos:
                start = time.perf_counter()
                try:
                    clustering, _ = cluster(graph, cfg.k, algo, groups,
                                            np.random.default_rng([seed, 2]))
                    runtime = (time.perf_counter() - start) * 1e3
                    rep = report(graph, clustering, groups, truth)
                    metrics = [_fmt(rep.error), _fmt(rep.balance_avg), _fmt(rep.ratio_cut),
                               _fmt(rep.ncut), "" if args.no_runtime else _fmt(runtime)]
                except ALGORITHMIC_ERRORS as exc:
                    print(f"{args.sweep}={value} trial={trial} {algo}: {exc}", file=sys.stderr)
                    metrics = [""] * 5
                rows.append([args.sweep, _fmt(value), trial, algo, *metrics])

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            _write_rows(fh, EXPERIMENT_COLUMNS, rows)
    else:
        _write_rows(out, EXPERIMENT_COLUMNS, rows)
    return EXIT_OK


def _write_rows(fh, header, rows):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def spectrum_deviation(cfg: FairSbmConfig):
    """Largest gaps between dense and closed-form spectra of the expected matrices.

    Returns (adjacency deviation, constrained Laplacian deviation).
    """
    oracle = theoretical_spectrum(cfg)
    dense = scipy.linalg.eigvalsh(expected_adjacency(cfg) + cfg.a * np.eye(cfg.n))
    dev_adj = float(np.abs(np.sort(dense) - np.sort(oracle.adjacency)).max())

    truth, group_labels = cfg.canonical_labels()
    groups = GroupAssignment(group_labels, cfg.h)
    Z = nullspace_basis(fairness_matrix(groups).T) if cfg.h > 1 else np.eye(cfg.n)
    ZLZ = Z.T @ expected_laplacian(cfg) @ Z
    dense_c = scipy.linalg.eigvalsh((ZLZ + ZLZ.T) / 2)
    dev_con = float(np.abs(np.sort(dense_c) - np.sort(oracle.constrained_laplacian)).max())
    return dev_adj, dev_con


def cmd_spectrum_check(args, out):
    cfg = _config(args)
    if cfg.n > SPECTRUM_MAX_N:
        raise UsageError(f"spectrum-check is limited to n <= {SPECTRUM_MAX_N}")
    dev_adj, dev_con = spectrum_deviation(cfg)
    worst = max(dev_adj, dev_con)
    ok = worst <= SPECTRUM_TOL
    print(f"adjacency max deviation: {dev_adj:.3e}", file=out)
    print(f"constrained laplacian max deviation: {dev_con:.3e}", file=out)
    print(f"{'PASS' if ok else 'FAIL'} (tolerance {SPECTRUM_TOL:g})", file=out)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fairsc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="sample a fair SBM graph to files")
    _add_model_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--perturb-p", type=float, default=0.0,
                   help="move group-0 vertices to group 1 with this probability")
    p.add_argument("--out", required=True, help="output prefix for .edges/.groups/.truth")
    p.add_argument("--no-validate", action="store_true",
                   help="allow probabilities that violate a > b > c > d")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("cluster", help="cluster an edge-list graph")
    p.add_argument("--graph", required=True, help="edge-list file")
    p.add_argument("--groups", help="group-label file")
    p.add_argument("--truth", help="ground-truth label file (enables the error column)")
    p.add_argument("--algo", required=True, help=f"one of {', '.join(ALGORITHMS)}")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, help="vertex count (default: from --groups or edges)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="where to write one cluster label per line")
    p.add_argument("--largest-component", action="store_true",
                   help="restrict to the largest connected component first")
    p.add_argument("--no-runtime", action="store_true", help="leave runtime_ms empty")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("experiment", help="run a parameter sweep on sampled graphs")
    _add_model_flags(p)
    p.add_argument("--sweep", choices=["n", "k", "p"], required=True)
    p.add_argument("--values", required=True, help="comma-separated sweep values")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--algos", default=",".join(ALGORITHMS))
    p.add_argument("--seed", type=int, default=0, help="trial t uses seed + t")
    p.add_argument("--perturb-p", type=float, default=0.0)
    p.add_argument("--out", help="CSV destination (default stdout)")
    p.add_argument("--no-runtime", action="store_true", help="leave runtime_ms empty")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("spectrum-check", help="compare dense and closed-form spectra")
    _add_model_flags(p)
    p.set_defaults(func=cmd_spectrum_check)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except ALGORITHMIC_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ALGORITHM
    except FairSCError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
