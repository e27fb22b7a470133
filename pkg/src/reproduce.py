"""
Comparison runs of the chaotic generators and the baselines.

Each generator runs the full corpus protocol from its reference seed. The
per-generator reports and a running comparison file are written after every
run, so a failure part way through leaves the finished results on disk.
"""

import json
import logging
import time
from pathlib import Path
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from .generators import build_generator, reference_spec, resolve_spec
from .models import GeneratorName, RunManifest
from .sts import SuiteReport, run_suite
from .sts.suite import proportion_threshold

logger = logging.getLogger(__name__)

TARGETS: Dict[str, List[GeneratorName]] = {
    "table1": [GeneratorName.DYNAMICAL, GeneratorName.LOGISTIC64, GeneratorName.LOGISTIC32],
    "baselines": [GeneratorName.LFSR32, GeneratorName.GLIBC],
}
TARGETS["all"] = TARGETS["table1"] + TARGETS["baselines"]

# Published average passing rates the runs are shown against
PUBLISHED_RATES = {
    GeneratorName.DYNAMICAL: 0.989,
    GeneratorName.LOGISTIC64: 0.979,
    GeneratorName.LOGISTIC32: 0.252,
    GeneratorName.LFSR32: 0.978,
    GeneratorName.GLIBC: 0.350,
}

FULL_PROTOCOL = {"sequences": 100, "length": 1_000_000, "alpha": 0.01}
REDUCED_PROTOCOL = {"sequences": 20, "length": 100_000, "alpha": 0.01}
REDUCED_SLACK = 0.05


class GeneratorRun(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    generator: GeneratorName
    average_passing_rate: float = Field(..., alias="averagePassingRate")
    family_average_passing_rate: float = Field(..., alias="familyAveragePassingRate")
    published: Optional[float] = None
    families_below_threshold: List[str] = Field(default_factory=list, alias="familiesBelowThreshold")
    failing_families: List[str] = Field(default_factory=list, alias="failingFamilies")
    report: str


class Check(BaseModel):
    name: str
    passed: bool
    detail: str
    gating: bool = True


class ComparisonReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    target: str
    reduced: bool = False
    complete: bool = False
    runs: List[GeneratorRun] = Field(default_factory=list)
    checks: List[Check] = Field(default_factory=list)
    manifest: Optional[RunManifest] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.gating)

    def table(self) -> str:
        lines = [f"{'generator':<12} {'average':>8} {'families':>9} {'published':>9}  below threshold"]
        for run in self.runs:
            published = f"{run.published:.3f}" if run.published is not None else "-"
            lines.append(
                f"{run.generator.value:<12} {run.average_passing_rate:>8.3f} "
                f"{run.family_average_passing_rate:>9.3f} {published:>9}  {len(run.families_below_threshold)}"
            )
        for check in self.checks:
            mark = "✅" if check.passed else ("❌" if check.gating else "⚠️ ")
            lines.append(f"{mark} {check.name}: {check.detail}")
        return "\n".join(lines)


def protocol(reduced: bool) -> Dict[str, float]:
    return dict(REDUCED_PROTOCOL if reduced else FULL_PROTOCOL)


def planned_manifests(target: str, workdir: Path, reduced: bool = False, jobs: int = 1) -> List[RunManifest]:
    """Manifests of every run `target` would perform, without generating anything."""
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}; choose from {', '.join(TARGETS)}")
    config = {**protocol(reduced), "jobs": jobs, "reduced": reduced}
    return [
        RunManifest(
            command="reproduce",
            config=config,
            generator=resolve_spec(reference_spec(name)),
            outputs=[str(workdir / f"{name.value}.json")],
        )
        for name in TARGETS[target]
    ]


def _family_proportion(report: SuiteReport, name: str) -> Optional[float]:
    try:
        return report.family(name).proportion
    except KeyError:
        return None


def evaluate_checks(runs: Dict[GeneratorName, SuiteReport], reduced: bool) -> List[Check]:
    """
    Acceptance checks over whichever generators were run.

    Args:
        runs: Suite report per generator
        reduced: Relax floors and ceilings by REDUCED_SLACK, drop the family
            count check and stop gating on the logistic32 ceiling

    Returns:
        Checks in a fixed order; only gating checks decide ComparisonReport.passed
    """
    slack = REDUCED_SLACK if reduced else 0.0
    avg = {name: r.average_passing_rate for name, r in runs.items()}
    checks: List[Check] = []

    dyn = runs.get(GeneratorName.DYNAMICAL)
    if dyn is not None:
        floor = 0.97 - slack
        checks.append(Check(name="dynamical average", passed=avg[GeneratorName.DYNAMICAL] >= floor,
                            detail=f"{avg[GeneratorName.DYNAMICAL]:.4f} >= {floor:.2f}"))
        subtests = [s for s in dyn.subtests() if s.proportion is not None]
        threshold = proportion_threshold(dyn.alpha, dyn.corpus.sequences)
        share = sum(s.proportion >= threshold for s in subtests) / len(subtests) if subtests else 0.0
        checks.append(Check(name="dynamical subtests at threshold", passed=share >= 0.90 - slack,
                            detail=f"{share:.3f} of subtests >= {threshold:.4f}"))
    if GeneratorName.LOGISTIC64 in avg:
        floor = 0.95 - slack
        checks.append(Check(name="logistic64 average", passed=avg[GeneratorName.LOGISTIC64] >= floor,
                            detail=f"{avg[GeneratorName.LOGISTIC64]:.4f} >= {floor:.2f}"))
    if GeneratorName.LOGISTIC32 in avg:
        # the reference orbit is periodic (tail 3096, cycle 6413); at 10^5 bits a
        # template block spans two cycles and the repetition barely shows
        ceiling = 0.55 + slack
        checks.append(Check(name="logistic32 average", passed=avg[GeneratorName.LOGISTIC32] <= ceiling,
                            gating=not reduced,
                            detail=f"{avg[GeneratorName.LOGISTIC32]:.4f} <= {ceiling:.2f}"))
        if not reduced:
            below = len(runs[GeneratorName.LOGISTIC32].families_below_threshold())
            checks.append(Check(name="logistic32 families below threshold", passed=below >= 7,
                                detail=f"{below} of 15 families (need >= 7)"))
    lfsr = runs.get(GeneratorName.LFSR32)
    if lfsr is not None:
        ceiling = 0.05 + slack
        for family in ("linear_complexity", "rank"):
            p = _family_proportion(lfsr, family)
            checks.append(Check(name=f"lfsr32 {family}", passed=p is not None and p <= ceiling,
                                detail=f"proportion {p} <= {ceiling:.2f}"))
        rest = [f.proportion for f in lfsr.families
                if f.name not in ("linear_complexity", "rank") and f.proportion is not None]
        rest_avg = sum(rest) / len(rest) if rest else 0.0
        checks.append(Check(name="lfsr32 remaining families", passed=rest_avg >= 0.90 - slack,
                            detail=f"{rest_avg:.4f} >= {0.90 - slack:.2f}"))
    if GeneratorName.GLIBC in avg:
        glibc = avg[GeneratorName.GLIBC]
        ceiling = 0.60 + slack
        # the absolute level depends on bit extraction; the ordering checks gate
        checks.append(Check(name="glibc average", passed=glibc < ceiling, gating=False,
                            detail=f"{glibc:.4f} < {ceiling:.2f}"))
        others = [n for n in (GeneratorName.DYNAMICAL, GeneratorName.LOGISTIC64) if n in avg]
        checks.append(Check(name="glibc below chaotic generators", passed=all(glibc < avg[n] for n in others),
                            detail=", ".join(f"{n.value} {avg[n]:.4f}" for n in others) or "no chaotic runs"))
    for weak in (GeneratorName.GLIBC, GeneratorName.LOGISTIC32):
        if GeneratorName.DYNAMICAL in avg and weak in avg:
            checks.append(Check(name=f"dynamical above {weak.value}",
                                passed=avg[GeneratorName.DYNAMICAL] > avg[weak],
                                detail=f"{avg[GeneratorName.DYNAMICAL]:.4f} > {avg[weak]:.4f}"))

    order = [n for n in (GeneratorName.DYNAMICAL, GeneratorName.LOGISTIC64, GeneratorName.LFSR32,
                         GeneratorName.GLIBC, GeneratorName.LOGISTIC32) if n in avg]
    if len(order) > 1:
        ordered = all(avg[a] >= avg[b] for a, b in zip(order, order[1:]))
        checks.append(Check(name="published ordering", passed=ordered, gating=False,
                            detail=" >= ".join(f"{n.value} {avg[n]:.3f}" for n in order)))
    return checks


def run_reproduction(target: str, workdir: Path, reduced: bool = False, jobs: int = 1) -> ComparisonReport:
    workdir.mkdir(parents=True, exist_ok=True)
    manifests = planned_manifests(target, workdir, reduced, jobs)
    params = protocol(reduced)
    comparison = ComparisonReport(target=target, reduced=reduced, manifest=RunManifest(
        command="reproduce", config={**params, "target": target, "jobs": jobs},
        outputs=[str(workdir / "comparison.json")],
    ))
    comparison_path = workdir / "comparison.json"
    reports: Dict[GeneratorName, SuiteReport] = {}

    for manifest in manifests:
        name = manifest.generator.name
        logger.info(f"Running {name.value} ({params['sequences']} x {params['length']} bits)")
        started = time.monotonic()
        report = run_suite(
            build_generator(manifest.generator),
            int(params["sequences"]), int(params["length"]), params["alpha"], jobs=jobs,
        )
        manifest.elapsed_seconds = round(time.monotonic() - started, 3)
        report.manifest = manifest
        report_path = Path(manifest.outputs[0])
        report_path.write_text(report.to_json())
        reports[name] = report
        comparison.runs.append(GeneratorRun(
            generator=name,
            average_passing_rate=report.average_passing_rate,
            family_average_passing_rate=report.family_average_passing_rate,
            published=PUBLISHED_RATES.get(name),
            families_below_threshold=report.families_below_threshold(),
            failing_families=report.failing_families,
            report=str(report_path),
        ))
        comparison_path.write_text(comparison.model_dump_json(by_alias=True, indent=2))

    comparison.checks = evaluate_checks(reports, reduced)
    comparison.complete = True
    comparison_path.write_text(comparison.model_dump_json(by_alias=True, indent=2))
    return comparison


def dry_run_document(target: str, workdir: Path, reduced: bool = False, jobs: int = 1) -> str:
    manifests = planned_manifests(target, workdir, reduced, jobs)
    return json.dumps([m.model_dump(mode="json", by_alias=True) for m in manifests], indent=2)
