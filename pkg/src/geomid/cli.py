"""Command line entry point: ``geomid {id,nid,select,sweep,oracle,ontology}``.

Exit codes: 0 success, 2 usage or input error, 3 degenerate result (infinite
intrinsic dimension) that was still reported.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from geomid import _kernels, approx, dataio, features, oracle, ontology, selection, sweep
from geomid.core import DatasetMatrix, delta_exact

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DEGENERATE = 3


def _common(p: argparse.ArgumentParser, data: bool = True) -> None:
    p.add_argument("--threads", type=int, default=None, help="cap on worker threads")
    if data:
        p.add_argument("--input", required=True, help="CSV or GDM1 matrix")
        p.add_argument("--format", choices=("csv", "bin"), default=None,
                       help="input format (default: by extension)")


def _scoring(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=("auto", "exact", "support"), default="auto")
    p.add_argument("--threshold", type=int, default=approx.DEFAULT_THRESHOLD,
                   help="row count at which auto mode switches to support sequences")
    p.add_argument("--support-length", type=int, default=approx.DEFAULT_LENGTH)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geomid", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("id", help="intrinsic dimension of a data set")
    _common(p)
    _scoring(p)
    p.add_argument("--output", default="-")
    p.add_argument("--report", choices=("json", "csv"), default="json")

    p = sub.add_parser("nid", help="per-feature normalized intrinsic dimensionality")
    _common(p)
    _scoring(p)
    p.add_argument("--curve-out", help="ranked NID curve (CSV)")
    p.add_argument("--scores-out", help="per-feature scores (CSV)")

    p = sub.add_parser("select", help="discard features by NID")
    _common(p)
    _scoring(p)
    p.add_argument("--policy", choices=selection.POLICIES, default="top")
    p.add_argument("--fraction", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="reduced matrix (.csv or GDM1)")
    p.add_argument("--plan-out", help="selection plan (JSON)")

    p = sub.add_parser("sweep", help="discard sweep over a fraction grid")
    _common(p, data=False)
    _scoring(p)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input")
    src.add_argument("--synthetic", metavar="N,SIGNAL,NOISE",
                     help="generate a labeled synthetic data set instead of reading one")
    p.add_argument("--format", choices=("csv", "bin"), default=None)
    p.add_argument("--data-seed", type=int, default=0, help="seed of the synthetic generator")
    p.add_argument("--labels-column", help="name or index of the label column in --input")
    p.add_argument("--grid", default=sweep.DEFAULT_GRID)
    p.add_argument("--policies", default=",".join(selection.POLICIES))
    p.add_argument("--seeds", type=int, default=10, help="number of seeds, 0..N-1")
    p.add_argument("--evaluate", action="store_true", help="record nearest-centroid accuracy")
    p.add_argument("--measure", choices=("discriminability", "nid"), default="discriminability",
                   help="quantity summed for the remaining share")
    p.add_argument("--out", default="-")
    p.add_argument("--report", choices=("csv", "json"), default="csv")

    p = sub.add_parser("oracle", help="compare fast kernels with brute-force enumeration")
    _common(p, data=False)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input")
    src.add_argument("--random", metavar="N,D", help="uniform [0,1) matrix of this shape")
    p.add_argument("--format", choices=("csv", "bin"), default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", type=float, default=1e-12)

    p = sub.add_parser("ontology", help="reproducibility ontology tools")
    osub = p.add_subparsers(dest="action", required=True)
    osub.add_parser("list", help="print the attribute schema")
    q = osub.add_parser("validate", help="check a records file against the schema")
    q.add_argument("--records", help="records file (default: bundled records)")
    q = osub.add_parser("export", help="write the formal context as .cxt")
    q.add_argument("--records", help="records file (default: bundled records)")
    q.add_argument("--out", default="-")
    return parser


def _load(path, fmt) -> DatasetMatrix:
    return dataio.read_matrix(path, fmt)


def _ints(text: str, count: int, what: str):
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError:
        raise ValueError(f"{what} must be {count} comma-separated integers") from None
    if len(vals) != count:
        raise ValueError(f"{what} must be {count} comma-separated integers")
    return vals


def cmd_id(args) -> int:
    data = _load(args.input, args.format)
    est = approx.estimate(data, args.mode, args.threshold, args.support_length)
    dataio.write_report(est, args.output, args.report)
    return EXIT_DEGENERATE if est.infinite else EXIT_OK


def cmd_nid(args) -> int:
    data = _load(args.input, args.format)
    scores = features.score_features(data, args.mode, args.threshold, args.support_length)
    curve = features.nid_curve(scores)
    if args.scores_out:
        dataio.write_report(scores, args.scores_out, "csv", names=data.names)
    if args.curve_out:
        dataio.write_report(curve, args.curve_out, "csv")
    summary = {
        "features": data.d,
        "points": data.n,
        "approximated": scores[0].approximated,
        "clamped_infinite": curve.clamped_infinite,
        "ranking": [p.feature_index for p in curve.points],
    }
    print(dataio.dumps_json(summary))
    return EXIT_DEGENERATE if curve.clamped_infinite == data.d else EXIT_OK


def cmd_select(args) -> int:
    data = _load(args.input, args.format)
    scores = features.score_features(data, args.mode, args.threshold, args.support_length)
    plan = selection.plan_selection(scores, args.policy, args.fraction, args.seed)
    dataio.write_matrix(selection.apply_selection(data, plan), args.out)
    if args.plan_out:
        dataio.write_report(plan, args.plan_out, "json")
    return EXIT_OK


def _split_labels(data: DatasetMatrix, column: str):
    if data.names is not None and column in data.names:
        j = data.names.index(column)
    else:
        try:
            j = int(column)
        except ValueError:
            raise ValueError(f"no label column {column!r}") from None
        if not 0 <= j < data.d:
            raise ValueError(f"label column index {j} out of range")
    if data.d < 2:
        raise ValueError("need at least one feature besides the label column")
    keep = [c for c in range(data.d) if c != j]
    names = None if data.names is None else tuple(data.names[c] for c in keep)
    return DatasetMatrix(data.values[:, keep], names), data.values[:, j].copy()


def cmd_sweep(args) -> int:
    grid = sweep.parse_grid(args.grid)
    policies = [p.strip() for p in args.policies.split(",") if p.strip()]
    if args.seeds < 1:
        raise ValueError("--seeds must be at least 1")
    labels = None
    if args.synthetic:
        n, d_sig, d_noise = _ints(args.synthetic, 3, "--synthetic")
        data, labels = sweep.generate_synthetic(n, d_sig, d_noise, args.data_seed)
    else:
        data = _load(args.input, args.format)
        if args.labels_column is not None:
            data, labels = _split_labels(data, args.labels_column)
    if args.evaluate and labels is None:
        raise ValueError("--evaluate needs --labels-column or --synthetic")
    result = sweep.run_sweep(
        data, grid, policies, range(args.seeds),
        evaluate=args.evaluate, labels=labels, measure=args.measure,
        threads=args.threads or 1,
        mode=args.mode, threshold=args.threshold, length=args.support_length,
    )
    dataio.write_report(result, args.out, args.report)
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.random:
        n, d = _ints(args.random, 2, "--random")
        rng = np.random.default_rng(args.seed)
        data = DatasetMatrix(rng.random((n, d)))
    else:
        data = _load(args.input, args.format)
    fast_delta = delta_exact(data)
    slow_delta = oracle.brute_delta(data)
    fast = features.score_features_exact(data)
    slow = oracle.brute_feature_scores(data)
    diff = abs(fast_delta - slow_delta)
    for a, b in zip(fast, slow):
        diff = max(diff, abs(a.delta_star - b.delta_star), abs(a.delta_norm - b.delta_norm))
    match = diff <= args.tolerance
    print(dataio.dumps_json({
        "n": data.n,
        "d": data.d,
        "delta_fast": fast_delta,
        "delta_oracle": slow_delta,
        "max_abs_diff": diff,
        "match": match,
    }))
    return EXIT_OK if match else 1


def _records(path):
    if path is None:
        return ontology.bundled_records()
    with open(path, encoding="utf-8") as fh:
        return ontology.parse_records(fh.read())


def cmd_ontology(args) -> int:
    schema = ontology.builtin_schema()
    if args.action == "list":
        for a in schema:
            print(f"{a.id}\t{a.category}\t{a.question}")
        return EXIT_OK
    records = _records(args.records)
    if args.action == "validate":
        bad = 0
        for rec in records:
            unknown = ontology.validate_record(rec, schema)
            if unknown:
                bad += 1
                print(f"{rec.label}: unknown {', '.join(unknown)}")
            else:
                print(f"{rec.label}: ok")
        return EXIT_INPUT if bad else EXIT_OK
    ctx = ontology.build_context(records, schema)
    dataio.atomic_write(args.out, ontology.export_cxt(ctx))
    return EXIT_OK


COMMANDS = {
    "id": cmd_id,
    "nid": cmd_nid,
    "select": cmd_select,
    "sweep": cmd_sweep,
    "oracle": cmd_oracle,
    "ontology": cmd_ontology,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    _kernels.set_threads(getattr(args, "threads", None))
    try:
        return COMMANDS[args.command](args)
    except (ValueError, IndexError, OSError) as exc:
        print(f"geomid: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
