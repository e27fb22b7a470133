"""
Corpus-level runner: evaluate s sequences against every test family and
reduce the p-values to passing proportions.

Sequences are evaluated independently (optionally in a process pool); the
reduction walks them in corpus order so the report is deterministic.
"""

import hashlib
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from itertools import repeat
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from ..bitio import BitStream
from ..generators.base import BitSource
from ..metrics import get_metrics_collector
from .common import chi_square, igamc
from .models import (
    DEFAULT_ALPHA,
    CorpusDescriptor,
    FamilySummary,
    SequenceNote,
    SubtestSummary,
    SuiteReport,
    TestResult,
)
from .registry import FAMILIES, get_family, run_test

logger = logging.getLogger(__name__)

FAILING_FAMILY_PROPORTION = 0.05
UNIFORMITY_BINS = 10

FamilyParams = Dict[str, Dict[str, Any]]


def proportion_threshold(alpha: float, sequences: int) -> float:
    """Lower end of the acceptable passing-proportion interval."""
    if sequences < 1:
        raise ValueError(f"sequence count must be at least 1, got {sequences}")
    p_hat = 1.0 - alpha
    return p_hat - 3.0 * math.sqrt(alpha * (1.0 - alpha) / sequences)


def p_value_uniformity(p_values: Sequence[float], bins: int = UNIFORMITY_BINS) -> float:
    """Chi-square p-value for the p-values being uniform over `bins` equal bins.

    Args:
        p_values: One p-value per sequence for a single subtest.
        bins: Number of equal-width bins on [0, 1]; the last bin includes 1.

    Returns:
        Q((bins - 1) / 2, chi2 / 2).
    """
    if not p_values:
        raise ValueError("no p-values to bin")
    counts, _ = np.histogram(np.clip(p_values, 0.0, 1.0), bins=bins, range=(0.0, 1.0))
    expected = len(p_values) / bins
    return igamc((bins - 1) / 2.0, chi_square(counts, np.full(bins, expected)) / 2.0)


def _failed_result(name: str, params: Optional[Dict[str, Any]], alpha: float, error: Exception) -> TestResult:
    family = get_family(name)
    merged = {**family.defaults, **(params or {})}
    return TestResult(
        name, family.subtest_ids(merged), applicable=False,
        reason=f"error: {type(error).__name__}: {error}", parameters=merged, alpha=alpha,
    )


def evaluate_sequence(
    packed: bytes,
    length: int,
    families: Sequence[str],
    params: Optional[FamilyParams] = None,
    alpha: float = DEFAULT_ALPHA,
) -> List[TestResult]:
    """Run the selected families on one packed sequence.

    Picklable for worker processes. A family that raises is recorded as an
    inapplicable result carrying the error; the remaining families still run.

    Args:
        packed: The sequence packed MSB first.
        length: Number of bits in the sequence.
        families: Family names in report order.
        params: Per-family parameter overrides.
        alpha: Significance level.

    Returns:
        One TestResult per family, in the order given.
    """
    stream = BitStream.from_packed(packed, length)
    params = params or {}
    results = []
    for name in families:
        try:
            results.append(run_test(name, stream, params.get(name), alpha))
        except Exception as e:
            logger.error(f"❌ {name} failed on a {length}-bit sequence: {e}", exc_info=True)
            results.append(_failed_result(name, params.get(name), alpha, e))
    return results


def corpus_digest(streams: Iterable[BitStream], length: int) -> str:
    """SHA-256 over the sequence length and each packed sequence in order."""
    h = hashlib.sha256(length.to_bytes(8, "big"))
    for stream in streams:
        h.update(stream.packed())
    return h.hexdigest()


def _evaluate_all(
    streams: Sequence[BitStream],
    families: Sequence[str],
    params: Optional[FamilyParams],
    alpha: float,
    jobs: int,
) -> List[List[TestResult]]:
    length = streams[0].length
    packed = [s.packed() for s in streams]
    args = (packed, repeat(length), repeat(list(families)), repeat(params), repeat(alpha))
    if jobs <= 1 or len(streams) == 1:
        return [evaluate_sequence(*a) for a in zip(*args)]
    logger.info(f"Evaluating {len(streams)} sequences on {jobs} worker processes")
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(evaluate_sequence, *args))


def build_report(
    per_sequence: List[List[TestResult]],
    families: Sequence[str],
    corpus: CorpusDescriptor,
    alpha: float,
    params: Optional[FamilyParams] = None,
) -> SuiteReport:
    """Reduce per-sequence results to the suite report.

    A result with p-values counts toward its subtests' denominators; a result
    without any (length minimum, cycle gate) is excluded and noted.
    """
    params = params or {}
    applicable: Dict[str, int] = {}
    passed: Dict[str, int] = {}
    p_values: Dict[str, List[float]] = {}
    notes: List[SequenceNote] = []
    for index, results in enumerate(per_sequence):
        for result in results:
            if not result.applicable:
                notes.append(SequenceNote(sequence=index, test=result.test_id, reason=result.reason or "inapplicable"))
            for sid, p, ok in zip(result.subtest_ids, result.p_values, result.passed()):
                applicable[sid] = applicable.get(sid, 0) + 1
                passed[sid] = passed.get(sid, 0) + int(ok)
                p_values.setdefault(sid, []).append(p)

    overall_threshold = proportion_threshold(alpha, corpus.sequences)
    summaries: List[FamilySummary] = []
    all_proportions: List[float] = []
    for name in families:
        family = get_family(name)
        subtests = []
        for sid in family.subtest_ids(params.get(name)):
            count = applicable.get(sid, 0)
            if count:
                proportion = passed[sid] / count
                below = proportion < proportion_threshold(alpha, count)
                uniformity = p_value_uniformity(p_values[sid])
                all_proportions.append(proportion)
            else:
                proportion, below, uniformity = None, None, None
            subtests.append(SubtestSummary(
                id=sid, proportion=proportion, applicable_count=count,
                passed_count=passed.get(sid, 0), below_threshold=below, uniformity=uniformity,
            ))
        values = [s.proportion for s in subtests if s.proportion is not None]
        family_proportion = sum(values) / len(values) if values else None
        summaries.append(FamilySummary(
            name=name,
            title=family.title,
            subtests=subtests,
            proportion=family_proportion,
            below_threshold=None if family_proportion is None else family_proportion < overall_threshold,
        ))

    family_values = [f.proportion for f in summaries if f.proportion is not None]
    report = SuiteReport(
        corpus=corpus,
        alpha=alpha,
        threshold=overall_threshold,
        families=summaries,
        average_passing_rate=sum(all_proportions) / len(all_proportions) if all_proportions else 0.0,
        family_average_passing_rate=sum(family_values) / len(family_values) if family_values else 0.0,
        failing_families=[
            f.name for f in summaries if f.proportion is not None and f.proportion <= FAILING_FAMILY_PROPORTION
        ],
        notes=notes,
    )
    return report


def run_suite_on_streams(
    streams: Sequence[BitStream],
    alpha: float = DEFAULT_ALPHA,
    jobs: int = 1,
    families: Optional[Sequence[str]] = None,
    params: Optional[FamilyParams] = None,
) -> SuiteReport:
    """
    Test a corpus of equal-length sequences and aggregate the proportions.

    Args:
        streams: Sequences under test, all of one length
        alpha: Significance level
        jobs: Worker processes; 1 runs in this process
        families: Family names to run (default: all 15)
        params: Per-family parameter overrides keyed by family name

    Returns:
        SuiteReport with per-subtest, per-family and average passing rates

    Raises:
        ValueError: empty corpus, mixed lengths or an unknown family
    """
    if not streams:
        raise ValueError("corpus is empty")
    length = streams[0].length
    if any(s.length != length for s in streams):
        raise ValueError("all sequences in a corpus must have the same length")
    families = list(families or [f.name for f in FAMILIES])
    for name in families:
        get_family(name)

    logger.info(f"Running {len(families)} test families on {len(streams)} sequences of {length} bits")
    per_sequence = _evaluate_all(streams, families, params, alpha, jobs)
    corpus = CorpusDescriptor(sequences=len(streams), length=length, digest=corpus_digest(streams, length))
    report = build_report(per_sequence, families, corpus, alpha, params)

    metrics = get_metrics_collector()
    metrics.increment_sequences_tested(len(streams))
    metrics.increment_inapplicable(sum(1 for results in per_sequence for r in results if not r.applicable))
    metrics.increment_suite_completed()
    logger.info(
        f"✅ Suite done: average passing rate {report.average_passing_rate:.4f} "
        f"(threshold {report.threshold:.4f}, {len(report.families_below_threshold())} families below)"
    )
    return report


def run_suite(
    source: BitSource,
    sequences: int,
    length: int,
    alpha: float = DEFAULT_ALPHA,
    jobs: int = 1,
    families: Optional[Sequence[str]] = None,
    params: Optional[FamilyParams] = None,
) -> SuiteReport:
    """Draw `sequences` consecutive blocks of `length` bits from the source and test them."""
    if sequences < 1:
        raise ValueError(f"sequence count must be at least 1, got {sequences}")
    streams = [source.fill(length) for _ in range(sequences)]
    get_metrics_collector().increment_sequences_generated(sequences)
    return run_suite_on_streams(streams, alpha=alpha, jobs=jobs, families=families, params=params)
