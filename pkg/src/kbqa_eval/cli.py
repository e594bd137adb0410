"""Command-line entry points.

Exit codes: 0 success, 2 usage/config/environment problem, 3 completed
with partial data (some rows skipped). Errors print as a single
machine-parseable line on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .checklist import write_battery
from .config import BATTERIES, ConfigError, apply_overrides, load_config
from .gateway import ConfigurationError
from .ingest import READERS, IngestError, StoreError, ingest_dataset, read_store, write_store
from .matching import SweepSample, sweep_threshold, write_curve_csv
from .pipeline import build_battery, evaluate_runs, report_from_dir, run_pipeline
from .report import FORMATS

PROG = "kbqa-eval"


def _fail(message: str) -> int:
    print(f"{PROG}: error: {message}", file=sys.stderr)
    return 2


def _partial(message: str) -> int:
    print(f"{PROG}: warning: {message}", file=sys.stderr)
    return 3


def cmd_ingest(args: argparse.Namespace) -> int:
    result = ingest_dataset(args.dataset, args.in_path)
    write_store(result.records, args.out)
    print(f"records={len(result.records)} skipped={result.skipped} store={args.out}")
    if result.skipped:
        return _partial(f"skipped {result.skipped} malformed rows")
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    config = apply_overrides(config, args.model, args.battery)
    for spec in config.models:
        if spec.is_mock:
            continue
        env = spec.resolved_auth_env()
        if not os.environ.get(env):
            return _fail(f"missing API key: set {env} for model {spec.model_id}")
    meta = run_pipeline(config)
    print(
        f"runs={meta['runs']} models={len(meta['models'])} "
        f"batteries={','.join(meta['batteries'])} out={config.out_dir}"
    )
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    meta = evaluate_runs(args.store, args.runs, args.tau)
    print(f"verdicts={meta['verdicts']} tau={args.tau}")
    if meta["unknown_rows"]:
        return _partial(f"{meta['unknown_rows']} run rows had no matching record")
    return 0


def _load_labels(path: Path) -> list[SweepSample]:
    with path.open("r", encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        data = data.get("samples")
    if not isinstance(data, list):
        raise ValueError("labels file must hold a list of samples")
    return [
        SweepSample(
            similarity=float(row["similarity"]),
            human_correct=bool(row["human_correct"]),
            model_id=str(row["model_id"]),
        )
        for row in data
    ]


def cmd_sweep(args: argparse.Namespace) -> int:
    labels_path = Path(args.labels)
    samples = _load_labels(labels_path)
    result = sweep_threshold(samples, lower=args.lower, step=args.step)
    curve_path = labels_path.parent / "curves" / "threshold_curve.csv"
    write_curve_csv(result, curve_path)
    print(f"tau_star={result.tau_star:.2f}")
    print(f"mean_false_rate={result.mean_false_rates[result.tau_star]:.6f}")
    print(f"curve={curve_path}")
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    paths = report_from_dir(args.in_dir, args.format)
    for path in paths:
        print(path)
    return 0


def cmd_checklist(args: argparse.Namespace) -> int:
    records = read_store(args.store)
    if args.battery == "mft":
        from .checklist import mft_partition

        single, multiple = mft_partition(records)
        payload = {
            "single": [r.id for r in single],
            "multiple": [r.id for r in multiple],
        }
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(json.dumps(payload, sort_keys=True, indent=1) + "\n",
                       encoding="utf-8")
        print(f"single={len(single)} multiple={len(multiple)} out={out}")
        return 0
    cases = build_battery(records, args.battery, seed=args.seed,
                          paraphrase_file=args.paraphrases)
    if cases is None:
        return _fail(f"battery {args.battery!r} runs the original questions; "
                     "nothing to generate")
    write_battery(cases, args.out)
    print(f"cases={len(cases)} out={args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Black-box behavioural evaluation of KB question answering models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="normalize one dataset into a record store")
    p.add_argument("--dataset", required=True, choices=sorted(READERS))
    p.add_argument("--in", dest="in_path", required=True, help="source data path")
    p.add_argument("--out", required=True, help="store file to write")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("run", help="query models over the configured batteries")
    p.add_argument("--config", required=True, help="TOML run configuration")
    p.add_argument("--model", action="append", default=None,
                   help="restrict to this model id (repeatable)")
    p.add_argument("--battery", action="append", default=None, choices=BATTERIES,
                   help="restrict to this battery (repeatable)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("eval", help="score model outputs against the store")
    p.add_argument("--store", required=True)
    p.add_argument("--runs", required=True, help="runs.jsonl from the run step")
    p.add_argument("--tau", required=True, type=float,
                   help="fuzzy-match similarity threshold")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="pick the threshold from labeled similarities")
    p.add_argument("--labels", required=True, help="JSON file of labeled samples")
    p.add_argument("--lower", type=float, default=0.38)
    p.add_argument("--step", type=float, default=0.01)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("report", help="render tables from an evaluation directory")
    p.add_argument("--in", dest="in_dir", required=True)
    p.add_argument("--format", required=True, choices=FORMATS)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("checklist", help="generate perturbation batteries offline")
    p.add_argument("--store", required=True)
    p.add_argument("--battery", required=True, choices=BATTERIES)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--paraphrases", default=None,
                   help="fixture file for paraphrase generation")
    p.set_defaults(func=cmd_checklist)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ConfigError, ConfigurationError, IngestError, StoreError) as exc:
        return _fail(str(exc))
    except FileNotFoundError as exc:
        return _fail(f"file not found: {exc.filename or exc}")
    except ValueError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    raise SystemExit(main())
