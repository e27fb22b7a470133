#!/usr/bin/env python3
"""
PRNG command-line tool.

Subcommands:
    gen        write bits from a generator to a file
    nist       run the statistical test suite on a generator or bit files
    period     measure rho lengths of the raw digitized logistic map
    reproduce  run the generator comparison from the reference seeds

Exit codes: 0 success, 1 usage or validation error, 2 statistical gate
failure, 3 I/O error.
"""

import argparse
import json
import logging
import sys
import time
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from .bitio import read_corpus, write_bits
from .config import get_settings
from .errors import BitstreamParseError, FxRangeError, PrngError, SeedValidationError, StatisticalGateError
from .fxp import parse_raw
from .generators import REFERENCE_MASTER_SEED, build_generator, reference_spec, resolve_spec
from .metrics import get_metrics_collector
from .models import BitFormat, GeneratorName, GeneratorSpec, GlibcMode, RunManifest, SeedConfig
from .period import period_experiment
from .reproduce import TARGETS, dry_run_document, run_reproduction
from .run_logging import log_run_to_cloud
from .sts import FAMILIES, SuiteReport, run_suite, run_suite_on_streams

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_GATE = 2
EXIT_IO = 3

DEFAULT_LENGTH = 1_000_000
DEFAULT_SEQUENCES = 100


class UsageError(PrngError):
    """Invalid command-line usage."""


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits with status 2, which is reserved for the statistical gate
    def error(self, message: str) -> None:
        raise UsageError(message)


# region helpers

def _seed_file_fields(path: str) -> Dict[str, Any]:
    raw = json.loads(Path(path).read_text())
    if not isinstance(raw, dict):
        raise SeedValidationError("seedFile", "must hold a JSON object")
    if "masterSeed" in raw and "x0" not in raw:
        return {"master_seed": raw["masterSeed"]}
    if "state" in raw and "x0" not in raw:
        return {"state": raw["state"]}
    return {"seed": SeedConfig.model_validate(raw)}


def spec_from_args(args: argparse.Namespace) -> GeneratorSpec:
    """Generator spec from a seed file plus flag overrides; flags win."""
    fields: Dict[str, Any] = {}
    if args.seed_file:
        fields.update(_seed_file_fields(args.seed_file))
    if args.master_seed is not None:
        fields.pop("seed", None)
        fields["master_seed"] = parse_raw(args.master_seed)
    if args.state is not None:
        fields["state"] = parse_raw(args.state)
    if not fields:
        logger.info(f"No seed given; using the reference master seed {REFERENCE_MASTER_SEED:#x}")
        fields["master_seed"] = REFERENCE_MASTER_SEED
    name = GeneratorName(args.generator)
    mode = GlibcMode(args.glibc_mode) if args.glibc_mode else reference_spec(name).glibc_mode
    spec = GeneratorSpec(
        name=name,
        glibc_mode=mode,
        bits_per_element=args.bits_per_element,
        **fields,
    )
    return resolve_spec(spec)


def _families(value: Optional[str]) -> List[str]:
    if not value:
        return [f.name for f in FAMILIES]
    return [name.strip() for name in value.split(",") if name.strip()]


def _note_absorption(generator: Any) -> None:
    if getattr(generator, "absorbed", False):
        logger.warning(f"⚠️  {generator.name} state reached the zero fixed point; output is constant from there")
        get_metrics_collector().increment_zero_absorption(generator.name)


def _report_summary(report: SuiteReport) -> Dict[str, Any]:
    return {
        "averagePassingRate": report.average_passing_rate,
        "familyAveragePassingRate": report.family_average_passing_rate,
        "threshold": report.threshold,
        "familiesBelowThreshold": report.families_below_threshold(),
    }

# endregion


# region commands

def cmd_gen(args: argparse.Namespace) -> int:
    started = time.monotonic()
    spec = spec_from_args(args)
    if args.count < 1:
        raise UsageError(f"--count must be at least 1, got {args.count}")
    generator = build_generator(spec)
    stream = generator.fill(args.count)
    _note_absorption(generator)
    fmt = BitFormat(args.format)
    out = write_bits(args.out, stream, fmt)
    get_metrics_collector().increment_sequences_generated()

    manifest = RunManifest(
        command="gen",
        config={"count": args.count, "format": fmt.value},
        generator=spec,
        outputs=[str(out)],
        elapsed_seconds=round(time.monotonic() - started, 3),
    )
    print(manifest.model_dump_json(by_alias=True, indent=2))
    log_run_to_cloud(manifest)
    return EXIT_OK


def execute_nist(manifest: RunManifest, jobs: int) -> SuiteReport:
    """Run the suite as described by a manifest (fresh runs and replays alike)."""
    config = manifest.config
    families = config["families"]
    alpha = config["alpha"]
    length = config["length"]
    if manifest.generator is not None:
        generator = build_generator(manifest.generator)
        report = run_suite(generator, config["sequences"], length, alpha, jobs=jobs, families=families)
        _note_absorption(generator)
    else:
        sequences = config["sequences"]
        corpus = read_corpus(manifest.inputs, BitFormat(config["format"]), used=sequences * length)
        if corpus.length < sequences * length:
            raise UsageError(f"input holds {corpus.length} bits, {sequences} x {length} requested")
        report = run_suite_on_streams(corpus.split(length, sequences), alpha, jobs=jobs, families=families)
    report.manifest = manifest
    return report


def _finish_nist(report: SuiteReport, report_path: Path, floor: float) -> int:
    report_path.parent.mkdir(parents=True, exist_ok=True)
    report_path.write_text(report.to_json())
    print(
        f"average passing rate {report.average_passing_rate:.4f} "
        f"(families {report.family_average_passing_rate:.4f}, threshold {report.threshold:.4f}) -> {report_path}"
    )
    log_run_to_cloud(report.manifest, _report_summary(report))
    if report.average_passing_rate < floor:
        raise StatisticalGateError(report.average_passing_rate, floor)
    return EXIT_OK


def cmd_nist(args: argparse.Namespace) -> int:
    settings = get_settings()
    jobs = args.jobs or settings.jobs
    floor = settings.pass_floor if args.pass_floor is None else args.pass_floor

    if args.replay:
        original = SuiteReport.model_validate_json(Path(args.replay).read_text())
        if original.manifest is None:
            raise UsageError(f"{args.replay} has no embedded manifest")
        out = Path(args.report) if args.report else Path(args.replay).with_suffix(".replay.json")
        manifest = original.manifest.model_copy(
            update={"outputs": [str(out)], "started_at": datetime.now(), "elapsed_seconds": None}
        )
        started = time.monotonic()
        report = execute_nist(manifest, jobs)
        manifest.elapsed_seconds = round(time.monotonic() - started, 3)
        identical = report.body_json() == original.body_json()
        print(f"{'✅' if identical else '❌'} replayed report body {'matches' if identical else 'differs from'} {args.replay}")
        return _finish_nist(report, out, floor)

    if not args.report:
        raise UsageError("--report is required")
    if bool(args.input) == bool(args.generator):
        raise UsageError("give either --generator or --input files")
    config: Dict[str, Any] = {
        "length": args.length,
        "alpha": args.alpha,
        "families": _families(args.families),
    }
    if args.input:
        fmt = BitFormat(args.format)
        config["format"] = fmt.value
        if args.sequences is None:
            total = read_corpus(args.input, fmt).length
            args.sequences = total // args.length
            if args.sequences < 1:
                raise UsageError(f"input holds {total} bits, fewer than one sequence of {args.length}")
        config["sequences"] = args.sequences
        manifest = RunManifest(command="nist", config=config, inputs=[str(p) for p in args.input],
                               outputs=[args.report])
    else:
        config["sequences"] = args.sequences or DEFAULT_SEQUENCES
        manifest = RunManifest(command="nist", config=config, generator=spec_from_args(args),
                               outputs=[args.report])
    if config["sequences"] < 1 or args.length < 1:
        raise UsageError("--sequences and --length must be positive")

    started = time.monotonic()
    report = execute_nist(manifest, jobs)
    manifest.elapsed_seconds = round(time.monotonic() - started, 3)
    return _finish_nist(report, Path(args.report), floor)


def cmd_period(args: argparse.Namespace) -> int:
    started = time.monotonic()
    master = parse_raw(args.master_seed) if args.master_seed is not None else REFERENCE_MASTER_SEED
    jobs = args.jobs or get_settings().jobs
    summary = period_experiment(args.word_length, args.trials, master, jobs=jobs)
    summary.manifest = RunManifest(
        command="period",
        config={"wordLength": args.word_length, "trials": args.trials, "masterSeed": f"{master:#x}"},
        outputs=[args.report] if args.report else [],
        elapsed_seconds=round(time.monotonic() - started, 3),
    )
    document = summary.to_json()
    if args.report:
        Path(args.report).parent.mkdir(parents=True, exist_ok=True)
        Path(args.report).write_text(document)
    print(
        f"n={summary.word_length}: median rho {summary.median_rho:g}, "
        f"min {summary.min_rho}, max {summary.max_rho} over {summary.trials} trials"
    )
    log_run_to_cloud(summary.manifest, {"medianRho": summary.median_rho})
    return EXIT_OK


def cmd_reproduce(args: argparse.Namespace) -> int:
    workdir = Path(args.workdir)
    jobs = args.jobs or get_settings().jobs
    if args.dry_run:
        print(dry_run_document(args.target, workdir, args.reduced, jobs))
        return EXIT_OK
    comparison = run_reproduction(args.target, workdir, reduced=args.reduced, jobs=jobs)
    print(comparison.table())
    log_run_to_cloud(comparison.manifest, {"passed": comparison.passed})
    return EXIT_OK if comparison.passed else EXIT_GATE

# endregion


def _add_generator_args(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--generator", required=required, choices=[g.value for g in GeneratorName])
    p.add_argument("--seed-file", help="JSON seed (SeedConfig fields, or masterSeed / state)")
    p.add_argument("--master-seed", help="64-bit master seed (0x... or decimal)")
    p.add_argument("--state", help="Initial state for lfsr32, glibc or splitmix64")
    p.add_argument("--glibc-mode", choices=[m.value for m in GlibcMode],
                   help="glibc bit extraction (default: word32, the reference packing)")
    p.add_argument("--bits-per-element", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="prng", description="Chaotic PRNG and statistical test suite")
    subparsers = parser.add_subparsers(dest="command", help="Commands")

    gen = subparsers.add_parser("gen", help="Write generator output to a bit file")
    _add_generator_args(gen, required=True)
    gen.add_argument("--count", type=int, required=True, help="Number of bits")
    gen.add_argument("--out", required=True)
    gen.add_argument("--format", default=BitFormat.ASCII.value, choices=[f.value for f in BitFormat])
    gen.set_defaults(handler=cmd_gen)

    nist = subparsers.add_parser("nist", help="Run the statistical test suite")
    _add_generator_args(nist, required=False)
    nist.add_argument("--input", nargs="+", help="Bit files, concatenated in order")
    nist.add_argument("--format", default=BitFormat.ASCII.value, choices=[f.value for f in BitFormat])
    nist.add_argument("--sequences", type=int)
    nist.add_argument("--length", type=int, default=DEFAULT_LENGTH)
    nist.add_argument("--alpha", type=float, default=0.01)
    nist.add_argument("--families", help="Comma-separated subset of test families")
    nist.add_argument("--report", help="Report JSON path")
    nist.add_argument("--replay", help="Re-run from the manifest embedded in a report")
    nist.add_argument("--pass-floor", type=float, help="Minimum average passing rate for exit 0")
    nist.add_argument("--jobs", type=int)
    nist.set_defaults(handler=cmd_nist)

    period = subparsers.add_parser("period", help="Rho lengths of the raw logistic map")
    period.add_argument("--word-length", type=int, required=True)
    period.add_argument("--trials", type=int, default=200)
    period.add_argument("--master-seed")
    period.add_argument("--report")
    period.add_argument("--jobs", type=int)
    period.set_defaults(handler=cmd_period)

    reproduce = subparsers.add_parser("reproduce", help="Compare all generators from reference seeds")
    reproduce.add_argument("target", nargs="?", default="all", choices=list(TARGETS))
    reproduce.add_argument("--workdir", default="runs/reproduce")
    reproduce.add_argument("--dry-run", action="store_true", help="Print planned manifests only")
    reproduce.add_argument("--reduced", action="store_true", help="20 x 10^5 bits with relaxed thresholds")
    reproduce.add_argument("--jobs", type=int)
    reproduce.set_defaults(handler=cmd_reproduce)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    settings = get_settings()
    logging.basicConfig(level=settings.log_level, format="%(asctime)s | %(levelname)s | %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            parser.print_help()
            return EXIT_USAGE
        return args.handler(args)
    except StatisticalGateError as e:
        logger.error(f"❌ {e}")
        return EXIT_GATE
    except (BitstreamParseError, OSError) as e:
        logger.error(f"❌ I/O error: {e}")
        return EXIT_IO
    except (UsageError, SeedValidationError, FxRangeError, ValidationError, ValueError) as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
