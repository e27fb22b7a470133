"""
Non-overlapping and overlapping template matching tests, and the aperiodic
template table they use.

The table for a template length m is read from
data/templates/aperiodic_m<m>.txt (written by scripts/build_template_table.py)
and computed directly when the file is missing.
"""

import logging
import math
from functools import lru_cache
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np
from scipy.special import comb, factorial

from .common import BitsLike, as_bits, chi_square, igamc, require_length, window_codes
from .models import DEFAULT_ALPHA, TestResult

logger = logging.getLogger(__name__)

TEMPLATE_DIR = Path(__file__).resolve().parents[2] / "data" / "templates"

NON_OVERLAPPING_M = 9
NON_OVERLAPPING_BLOCKS = 8
OVERLAPPING_M = 9
OVERLAPPING_BLOCK = 1032
OVERLAPPING_K = 5
OVERLAPPING_MIN_LENGTH = 1_000_000

# Class probabilities for m=9, M=1032, K=5 from the corrected reference suite
OVERLAPPING_PI_9_1032 = [0.364091, 0.185659, 0.139381, 0.100571, 0.070432, 0.139865]


def is_aperiodic(template: int, m: int) -> bool:
    """True when no proper prefix of the template equals its suffix."""
    for length in range(1, m):
        if template >> (m - length) == template & ((1 << length) - 1):
            return False
    return True


def aperiodic_templates(m: int) -> List[int]:
    """Every m-bit template that cannot overlap a shifted copy of itself, ascending."""
    return [t for t in range(1 << m) if is_aperiodic(t, m)]


def template_string(template: int, m: int) -> str:
    return format(template, f"0{m}b")


def template_table_path(m: int, directory: Path = TEMPLATE_DIR) -> Path:
    return directory / f"aperiodic_m{m}.txt"


@lru_cache(maxsize=None)
def load_templates(m: int, directory: Path = TEMPLATE_DIR) -> List[int]:
    """
    Aperiodic templates for m, read from data/templates when the table exists.

    Args:
        m: Template length, 2..10 in the shipped tables
        directory: Where aperiodic_m<m>.txt lives

    Returns:
        Templates as integers, first bit most significant, in table order
    """
    path = template_table_path(m, directory)
    if not path.exists():
        logger.info(f"template table {path.name} not found, computing aperiodic templates for m={m}")
        return aperiodic_templates(m)
    templates = [int(line.strip(), 2) for line in path.read_text().splitlines() if line.strip()]
    logger.info(f"✅ Loaded {len(templates)} templates from {path.name}")
    return templates


def write_template_table(m: int, directory: Path = TEMPLATE_DIR) -> Path:
    """Write aperiodic_m<m>.txt, one template per line; returns its path."""
    directory.mkdir(parents=True, exist_ok=True)
    path = template_table_path(m, directory)
    path.write_text("".join(template_string(t, m) + "\n" for t in aperiodic_templates(m)))
    return path


def non_overlapping_subtest_ids(m: int = NON_OVERLAPPING_M) -> List[str]:
    return [f"non_overlapping_template/{template_string(t, m)}" for t in load_templates(m)]


def _greedy_count(positions: np.ndarray, m: int) -> int:
    count, next_free = 0, -1
    for pos in positions:
        if pos >= next_free:
            count += 1
            next_free = pos + m
    return count


def non_overlapping_template_test(
    bits: BitsLike,
    m: int = NON_OVERLAPPING_M,
    blocks: int = NON_OVERLAPPING_BLOCKS,
    templates: Optional[Sequence[int]] = None,
    *,
    enforce_minimum: bool = True,
    alpha: float = DEFAULT_ALPHA,
) -> TestResult:
    """Count non-overlapping occurrences of each template in N blocks.

    After a match the window skips m bits. For aperiodic templates no two
    matches can overlap, so a histogram of window codes gives the same counts.
    """
    x = as_bits(bits)
    n = x.size
    require_length("non_overlapping_template", n, blocks * 100, enforce_minimum)
    block_size = n // blocks
    if block_size < m:
        require_length("non_overlapping_template", n, blocks * m, True)
    templates = list(load_templates(m) if templates is None else templates)

    windows = block_size - m + 1
    codes = window_codes(x[: blocks * block_size], m)
    per_block = np.stack([codes[j * block_size: j * block_size + windows] for j in range(blocks)])
    histogram = np.stack([np.bincount(row, minlength=1 << m) for row in per_block])

    mu = windows / 2.0 ** m
    var = block_size * (1.0 / 2.0 ** m - (2.0 * m - 1.0) / 2.0 ** (2 * m))
    ids, p_values = [], []
    for t in templates:
        if is_aperiodic(t, m):
            counts = histogram[:, t]
        else:
            counts = np.array([_greedy_count(np.flatnonzero(row == t), m) for row in per_block])
        chi2 = float(np.sum((counts - mu) ** 2) / var)
        ids.append(f"non_overlapping_template/{template_string(t, m)}")
        p_values.append(igamc(blocks / 2.0, chi2 / 2.0))
    return TestResult(
        "non_overlapping_template", ids, p_values,
        parameters={"m": m, "blocks": blocks, "block_size": block_size}, alpha=alpha,
    )


def overlapping_probabilities(eta: float, k: int = OVERLAPPING_K) -> List[float]:
    """Class probabilities of overlapping all-ones matches for rate eta."""
    pi = [math.exp(-eta)]
    for u in range(1, k):
        l = np.arange(1, u + 1)
        total = float(np.sum(comb(u - 1, l - 1) * eta ** l / factorial(l)))
        pi.append(math.exp(-eta) / 2.0 ** u * total)
    pi.append(1.0 - sum(pi))
    return pi


def overlapping_template_test(
    bits: BitsLike,
    m: int = OVERLAPPING_M,
    block_size: int = OVERLAPPING_BLOCK,
    k: int = OVERLAPPING_K,
    template: Optional[int] = None,
    *,
    enforce_minimum: bool = True,
    alpha: float = DEFAULT_ALPHA,
) -> TestResult:
    """
    Overlapping occurrences of an m-bit template (all ones by default) per
    block, binned into K + 1 classes.

    Args:
        bits: Sequence under test
        m: Template length (default 9)
        block_size: Block length M (default 1032)
        k: Degrees of freedom K (default 5)
        template: Template as an integer; None means m ones
        enforce_minimum: Require n >= 10^6
        alpha: Significance level recorded on the result

    Returns:
        TestResult with one p-value; (m, M) = (9, 1032) uses the corrected
        class probabilities, any other pair the closed form
    """
    x = as_bits(bits)
    n = x.size
    require_length("overlapping_template", n, OVERLAPPING_MIN_LENGTH, enforce_minimum)
    blocks = n // block_size
    if blocks < 1:
        require_length("overlapping_template", n, block_size, True)
    template = (1 << m) - 1 if template is None else template

    windows = block_size - m + 1
    codes = window_codes(x[: blocks * block_size], m)
    hits = np.stack([codes[j * block_size: j * block_size + windows] == template for j in range(blocks)])
    counts = np.bincount(np.minimum(hits.sum(axis=1), k), minlength=k + 1)

    if (m, block_size, k) == (OVERLAPPING_M, OVERLAPPING_BLOCK, OVERLAPPING_K):
        pi = OVERLAPPING_PI_9_1032
    else:
        pi = overlapping_probabilities(windows / 2.0 ** m / 2.0, k)
    chi2 = chi_square(counts, blocks * np.asarray(pi))
    p = igamc(k / 2.0, chi2 / 2.0)
    return TestResult(
        "overlapping_template", ["overlapping_template"], [p],
        parameters={"m": m, "block_size": block_size, "k": k},
        statistics={"chi2": chi2}, alpha=alpha,
    )
