"""
Cycle detection on the digitized logistic map.

`brent_cycle` finds the exact tail length mu and cycle length lambda of an
orbit; `period_experiment` runs it over seeded (x0, gamma) pairs on the raw
single-gamma map and summarises the rho = mu + lambda lengths.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .errors import SeedValidationError
from .generators.splitmix import SplitMix64
from .maps import StepFn, chaotic_range, logistic_stepper
from .models import RunManifest

logger = logging.getLogger(__name__)

MIN_PERIOD_WORD_LENGTH = 8
MAX_PERIOD_WORD_LENGTH = 28


@dataclass(frozen=True)
class RhoResult:
    mu: int
    lam: int

    @property
    def rho(self) -> int:
        return self.mu + self.lam


def brent_cycle(step: StepFn, x0: int) -> RhoResult:
    """Brent's cycle detection; exact and minimal (mu, lambda)."""
    power = lam = 1
    tortoise = x0
    hare = step(x0)
    while tortoise != hare:
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = step(hare)
        lam += 1

    tortoise = hare = x0
    for _ in range(lam):
        hare = step(hare)
    mu = 0
    while tortoise != hare:
        tortoise = step(tortoise)
        hare = step(hare)
        mu += 1
    return RhoResult(mu, lam)


def iterate(step: StepFn, x0: int, count: int) -> int:
    x = x0
    for _ in range(count):
        x = step(x)
    return x


class PeriodTrial(BaseModel):
    x0: int
    gamma: int
    mu: int
    lam: int = Field(..., alias="lambda")
    rho: int

    model_config = ConfigDict(populate_by_name=True)


class PeriodSummary(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    word_length: int = Field(..., alias="wordLength")
    trials: int
    master_seed: str = Field(..., alias="masterSeed")
    median_rho: float = Field(..., alias="medianRho")
    min_rho: int = Field(..., alias="minRho")
    max_rho: int = Field(..., alias="maxRho")
    histogram: Dict[str, int] = Field(
        default_factory=dict, description='"2^k" counts rho in [2^k, 2^(k+1))'
    )
    results: List[PeriodTrial] = Field(default_factory=list)
    manifest: Optional[RunManifest] = None

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)


def draw_trials(word_length: int, trials: int, master_seed: int) -> List[Tuple[int, int]]:
    """(x0, gamma) pairs: per trial one nonzero top-n draw, then one gamma draw."""
    rng = SplitMix64(master_seed)
    bounds = chaotic_range(word_length)
    pairs = []
    for _ in range(trials):
        x0 = 0
        while x0 == 0:
            x0 = rng.draw_bits(word_length)
        gamma = bounds.g_min + rng.draw() % bounds.size
        pairs.append((x0, gamma))
    return pairs


def _run_trial(args: Tuple[int, int, int]) -> RhoResult:
    x0, gamma, word_length = args
    return brent_cycle(logistic_stepper(gamma, word_length), x0)


def rho_histogram(rhos: List[int]) -> Dict[str, int]:
    histogram: Dict[str, int] = {}
    for rho in sorted(rhos):
        key = f"2^{rho.bit_length() - 1}"
        histogram[key] = histogram.get(key, 0) + 1
    return histogram


def period_experiment(word_length: int, trials: int, master_seed: int, jobs: int = 1) -> PeriodSummary:
    if not MIN_PERIOD_WORD_LENGTH <= word_length <= MAX_PERIOD_WORD_LENGTH:
        raise SeedValidationError(
            "wordLength", f"must be in [{MIN_PERIOD_WORD_LENGTH}, {MAX_PERIOD_WORD_LENGTH}], got {word_length}"
        )
    if trials < 1:
        raise SeedValidationError("trials", f"must be at least 1, got {trials}")

    pairs = draw_trials(word_length, trials, master_seed)
    tasks = [(x0, g, word_length) for x0, g in pairs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_trial, tasks))
    else:
        results = [_run_trial(t) for t in tasks]

    rhos = [r.rho for r in results]
    summary = PeriodSummary(
        word_length=word_length,
        trials=trials,
        master_seed=f"{master_seed:#x}",
        median_rho=float(np.median(rhos)),
        min_rho=min(rhos),
        max_rho=max(rhos),
        histogram=rho_histogram(rhos),
        results=[
            PeriodTrial(x0=x0, gamma=g, mu=r.mu, lam=r.lam, rho=r.rho) for (x0, g), r in zip(pairs, results)
        ],
    )
    logger.info(
        f"✅ n={word_length}: median rho {summary.median_rho:g} over {trials} trials "
        f"(min {summary.min_rho}, max {summary.max_rho})"
    )
    return summary
