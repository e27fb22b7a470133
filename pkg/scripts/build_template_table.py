#!/usr/bin/env python3
"""
Write the aperiodic template tables used by the non-overlapping template test.

Usage: python scripts/build_template_table.py [m ...]   (default: 2..10)
"""

import argparse
import logging
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from src.sts.templates import TEMPLATE_DIR, write_template_table  # noqa: E402

logging.basicConfig(level=logging.INFO, format="%(asctime)s | %(levelname)s | %(message)s")
logger = logging.getLogger(__name__)


def main() -> int:
    parser = argparse.ArgumentParser(description="Build aperiodic template tables")
    parser.add_argument("lengths", nargs="*", type=int, default=list(range(2, 11)))
    parser.add_argument("--out-dir", default=str(TEMPLATE_DIR))
    args = parser.parse_args()

    for m in args.lengths:
        path = write_template_table(m, Path(args.out_dir))
        count = sum(1 for _ in path.open())
        logger.info(f"✅ m={m}: {count} templates -> {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
