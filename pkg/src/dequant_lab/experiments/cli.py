"""``dequant-lab`` command line.

Exit codes: 0 when every check passes, 2 when a metric check fails, 1 on any
error (bad config, I/O, numerical failure).
"""

from __future__ import annotations

import argparse
import json
import sys

from pydantic import ValidationError

from dequant_lab.experiments.config import EXPERIMENT_IDS, load_config, params_schema
from dequant_lab.experiments.report import emit_report
from dequant_lab.experiments.runners import run_experiment

EXIT_OK, EXIT_ERROR, EXIT_METRIC = 0, 1, 2


def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dequant-lab", description="Run Fourier dequantization experiments.")
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run one experiment from a JSON config")
    run.add_argument("--config", required=True)
    run.add_argument("--seed", type=_u64, help="override the config seed")
    run.add_argument("--out", help="override the output directory")
    ls = sub.add_parser("list", help="print experiment ids and parameter schemas")
    ls.add_argument("--brief", action="store_true", help="ids only")
    val = sub.add_parser("validate", help="check a config without running it")
    val.add_argument("--config", required=True)
    return ap


def _load(path: str):
    try:
        return load_config(path)
    except ValidationError as exc:
        lines = [f"invalid config {path}:"]
        for err in exc.errors():
            loc = ".".join(str(x) for x in err["loc"])
            lines.append(f"  {loc}: {err['msg']}")
        raise SystemExit("\n".join(lines)) from None
    except (OSError, json.JSONDecodeError) as exc:
        raise SystemExit(f"cannot read config {path}: {exc}") from None


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "list":
            for eid in EXPERIMENT_IDS:
                print(eid)
                if not args.brief:
                    print(json.dumps(params_schema(eid), indent=2, sort_keys=True))
            return EXIT_OK
        config = _load(args.config)
        if args.command == "validate":
            print(f"{args.config}: valid {config.experiment} config")
            return EXIT_OK
        updates = {}
        if args.seed is not None:
            updates["seed"] = args.seed
        if args.out is not None:
            updates["out"] = args.out
        config = config.model_copy(update=updates)
        report = run_experiment(config)
        target = emit_report(report, config.out)
    except SystemExit as exc:
        print(exc, file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # surfaced as exit 1 with a message
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR

    for c in report.checks + report.runtime_checks:
        tag = "PASS" if c.passed else "FAIL"
        crit = f"[{c.criterion}] " if c.criterion else ""
        print(f"{tag} {crit}{c.name}: value={c.value} threshold={c.threshold}")
    print(f"wrote {target}")
    return EXIT_OK if report.passed else EXIT_METRIC


if __name__ == "__main__":
    sys.exit(main())
