"""Command-line surface.

Exit codes: 0 success, 1 usage error, 2 data/file error.

Subcommands: exact, estimate, cluster-baseline, roc, mcr, synth,
theoretical. Set PRD_TIMESTAMP=1 to embed a wall-clock timestamp in the
output metadata; it is off by default so identical runs stay
byte-identical.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

from . import clustering, estimator, fileio, measures, rocmcr, synth
from .data import SampleSet
from .ensemble import TrainingConfig
from .errors import PRDError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _metadata(command: str, seed, params: dict) -> dict:
    canon = json.dumps(params, sort_keys=True)
    meta = {
        "command": command,
        "seed": seed,
        "config_hash": hashlib.sha256(canon.encode()).hexdigest(),
    }
    if os.environ.get("PRD_TIMESTAMP") == "1":
        meta["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    return meta


def _grid(args) -> measures.LambdaGrid:
    return estimator.default_lambda_grid(args.lambdas)


def _add_out(p, default_format="json"):
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.add_argument("--format", choices=["json", "csv"], default=default_format)


def _emit_curve(curve, meta, args):
    out = fileio.CurveOutput(curve, meta)
    if args.out == "-":
        text = (fileio.curve_json(out) if args.format == "json"
                else fileio.curve_csv(out))
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        fileio.save_curve(out, args.out, args.format)


def _emit_pairs(pairs, header, args):
    if args.out == "-":
        if args.format == "csv":
            lines = [header] + [
                f"{fileio._fmt(float(x))},{fileio._fmt(float(y))}"
                for x, y in pairs]
            sys.stdout.write("\n".join(lines) + "\n")
        else:
            xname, yname = header.split(",")
            xs = ",".join(fileio._fmt(float(x)) for x, _ in pairs)
            ys = ",".join(fileio._fmt(float(y)) for _, y in pairs)
            sys.stdout.write(f'{{"{xname}":[{xs}],"{yname}":[{ys}]}}\n')
    else:
        fileio.save_pairs(pairs, args.out, header, args.format)


def build_parser() -> _Parser:
    parser = _Parser(prog="prd", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="exact curve of two histogram CSVs")
    p.add_argument("p_hist")
    p.add_argument("q_hist")
    p.add_argument("--lambdas", type=int, default=1001)
    p.add_argument("--endpoints", action="store_true",
                   help="append the lambda=0 and lambda=inf points")
    _add_out(p)

    p = sub.add_parser("estimate",
                       help="classifier-based curve of two feature files")
    p.add_argument("real")
    p.add_argument("fake")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lambdas", type=int, default=1001)
    p.add_argument("--members", type=int, default=10)
    p.add_argument("--epochs", type=int, default=50)
    p.add_argument("--lr", type=float, default=1e-3)
    p.add_argument("--weight-decay", type=float, default=0.1)
    p.add_argument("--batch", type=int, default=64)
    p.add_argument("--emit-scores", metavar="PATH",
                   help="also write the held-out scores as CSV")
    p.add_argument("--emit-model", metavar="PATH",
                   help="also write the trained ensemble as JSON")
    _add_out(p)

    p = sub.add_parser("cluster-baseline",
                       help="k-means discretization baseline curve")
    p.add_argument("real")
    p.add_argument("fake")
    p.add_argument("--clusters", type=int, default=20)
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lambdas", type=int, default=1001)
    _add_out(p)

    p = sub.add_parser("roc", help="ROC frontier from a score CSV")
    p.add_argument("scores")
    _add_out(p)

    p = sub.add_parser("mcr",
                       help="mode-collapse-region frontier of two histograms")
    p.add_argument("p_hist")
    p.add_argument("q_hist")
    p.add_argument("--resolution", type=int, default=0,
                   help="cap on returned points, 0 = full frontier")
    _add_out(p)

    p = sub.add_parser("theoretical", help="rectangular reference curve")
    p.add_argument("--max-precision", type=float, required=True)
    p.add_argument("--max-recall", type=float, required=True)
    p.add_argument("--lambdas", type=int, default=1001)
    _add_out(p)

    p = sub.add_parser("synth", help="synthetic benchmark generators")
    gsub = p.add_subparsers(dest="generator", required=True)

    def add_common(g):
        g.add_argument("--seed", type=int, default=0)
        g.add_argument("--out-real", required=True)
        g.add_argument("--out-fake", required=True)
        g.add_argument("--feature-format", choices=["binary", "csv"],
                       default="binary")
        g.add_argument("--sidecar",
                       help="path for the theoretical-curve JSON "
                            "(default: <out-real>.theory.json)")

    g = gsub.add_parser("class-subset")
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--per-class", type=int, default=400)
    add_common(g)

    g = gsub.add_parser("class-overlap")
    g.add_argument("--classes", type=int, default=80)
    g.add_argument("--ratio", type=float, required=True)
    g.add_argument("--per-class", type=int, default=25)
    add_common(g)

    g = gsub.add_parser("reweight")
    g.add_argument("--weight-a", type=float, required=True)
    g.add_argument("--per-side", type=int, default=2000)
    add_common(g)

    g = gsub.add_parser("disjoint-split")
    g.add_argument("--clusters", type=int, default=80)
    g.add_argument("--per-side", type=int, default=2000)
    add_common(g)

    return parser


def _cmd_exact(args) -> int:
    p = fileio.load_histogram(args.p_hist)
    q = fileio.load_histogram(args.q_hist)
    grid = _grid(args)
    if args.endpoints:
        grid = measures.LambdaGrid(grid.values, include_endpoints=True)
    curve = measures.exact_pr_curve(p, q, grid)
    meta = _metadata("exact", None, {"lambdas": args.lambdas,
                                     "endpoints": args.endpoints})
    _emit_curve(curve, meta, args)
    return EXIT_OK


def _cmd_estimate(args) -> int:
    real = fileio.load_features(args.real)
    fake = fileio.load_features(args.fake)
    data = estimator.PairedDataset(real.features, fake.features)
    config = TrainingConfig(member_count=args.members, epochs=args.epochs,
                            initial_learning_rate=args.lr,
                            weight_decay=args.weight_decay,
                            batch_size=args.batch, seed=args.seed)
    curve, model, scored = estimator.estimate_pr_curve(data, config,
                                                       _grid(args))
    if args.emit_scores:
        fileio.save_scores(scored.scores, scored.origins, args.emit_scores)
    if args.emit_model:
        fileio._atomic_write(args.emit_model, model.to_json().encode())
    meta = _metadata("estimate", args.seed,
                     {"lambdas": args.lambdas, **config.to_dict()})
    _emit_curve(curve, meta, args)
    return EXIT_OK


def _cmd_cluster_baseline(args) -> int:
    real = fileio.load_features(args.real)
    fake = fileio.load_features(args.fake)
    curve = clustering.histogram_prd(real, fake, args.clusters, _grid(args),
                                     args.seed, restarts=args.restarts)
    meta = _metadata("cluster-baseline", args.seed,
                     {"clusters": args.clusters, "restarts": args.restarts,
                      "lambdas": args.lambdas})
    _emit_curve(curve, meta, args)
    return EXIT_OK


def _cmd_roc(args) -> int:
    scores, origins = fileio.load_scores(args.scores)
    scored = estimator.ScoredTestSet(scores, origins)
    points = rocmcr.roc_from_scores(scored)
    _emit_pairs([(pt.fpr, pt.tpr) for pt in points], "fpr,tpr", args)
    return EXIT_OK


def _cmd_mcr(args) -> int:
    p = fileio.load_histogram(args.p_hist)
    q = fileio.load_histogram(args.q_hist)
    pairs = rocmcr.mcr_frontier_discrete(p, q, resolution=args.resolution)
    _emit_pairs(pairs, "epsilon,delta", args)
    return EXIT_OK


def _cmd_theoretical(args) -> int:
    spec = synth.TheoreticalCurveSpec(args.max_precision, args.max_recall)
    curve = synth.theoretical_rectangle_curve(spec, _grid(args))
    meta = _metadata("theoretical", None,
                     {"max_precision": args.max_precision,
                      "max_recall": args.max_recall,
                      "lambdas": args.lambdas})
    _emit_curve(curve, meta, args)
    return EXIT_OK


def _cmd_synth(args) -> int:
    if args.generator == "class-subset":
        data, spec = synth.class_subset_experiment(args.q, args.per_class,
                                                   args.seed)
        params = {"q": args.q, "per_class": args.per_class}
    elif args.generator == "class-overlap":
        data, spec = synth.class_overlap_experiment(args.classes, args.ratio,
                                                    args.per_class, args.seed)
        params = {"classes": args.classes, "ratio": args.ratio,
                  "per_class": args.per_class}
    elif args.generator == "reweight":
        data, spec = synth.reweighting_experiment(args.weight_a,
                                                  args.per_side, args.seed)
        params = {"weight_a": args.weight_a, "per_side": args.per_side}
    else:
        data, spec = synth.disjoint_split_experiment(args.clusters,
                                                     args.per_side, args.seed)
        params = {"clusters": args.clusters, "per_side": args.per_side}
    fileio.save_features(SampleSet(data.real_features), args.out_real,
                         args.feature_format)
    fileio.save_features(SampleSet(data.fake_features), args.out_fake,
                         args.feature_format)
    sidecar = args.sidecar or (args.out_real + ".theory.json")
    payload = {
        "generator": args.generator,
        "seed": args.seed,
        "max_precision": spec.max_precision,
        "max_recall": spec.max_recall,
        **params,
    }
    fileio._atomic_write(sidecar,
                         json.dumps(payload, sort_keys=True).encode())
    return EXIT_OK


_COMMANDS = {
    "exact": _cmd_exact,
    "estimate": _cmd_estimate,
    "cluster-baseline": _cmd_cluster_baseline,
    "roc": _cmd_roc,
    "mcr": _cmd_mcr,
    "theoretical": _cmd_theoretical,
    "synth": _cmd_synth,
}


def cli_dispatch(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except PRDError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
