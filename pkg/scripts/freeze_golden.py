#!/usr/bin/env python3
"""
Freeze golden regression vectors into tests/fixtures/golden.json.

For every generator the 256-bit prefix from its reference seed is recorded
with the resolved spec it came from. The dynamical entry also holds its first
raw x values and the digest of its first 10^6 bits. Re-run only when an
output change is intended; the committed file is the regression baseline
the tests compare against.
"""

import json
import logging
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT))

from src.generators import build_generator, dynamical_next_element, initial_state, reference_spec, resolve_spec  # noqa: E402
from src.models import GeneratorName  # noqa: E402

logging.basicConfig(level=logging.INFO, format="%(asctime)s | %(levelname)s | %(message)s")
logger = logging.getLogger(__name__)

GOLDEN_PATH = ROOT / "tests" / "fixtures" / "golden.json"
PREFIX_BITS = 256
DYNAMICAL_ELEMENTS = 20
DIGEST_BITS = 1_000_000


def _dynamical_elements() -> list:
    s = initial_state(resolve_spec(reference_spec(GeneratorName.DYNAMICAL)).seed)
    elements = []
    for _ in range(DYNAMICAL_ELEMENTS):
        x, s = dynamical_next_element(s)
        elements.append(f"{x.raw:#x}")
    return elements


def main() -> int:
    golden = {"prefixBits": PREFIX_BITS, "generators": {}}
    for name in GeneratorName:
        spec = resolve_spec(reference_spec(name))
        bits = build_generator(spec).fill(PREFIX_BITS).to_ascii()
        golden["generators"][name.value] = {
            "spec": spec.model_dump(mode="json", by_alias=True),
            "prefix": bits,
        }
        logger.info(f"✅ {name.value}: {bits[:32]}...")
    dynamical = golden["generators"][GeneratorName.DYNAMICAL.value]
    dynamical["elements"] = _dynamical_elements()
    stream = build_generator(reference_spec(GeneratorName.DYNAMICAL)).fill(DIGEST_BITS)
    dynamical["fill"] = {"bits": DIGEST_BITS, "ones": stream.ones(), "sha256": stream.digest()}
    GOLDEN_PATH.parent.mkdir(parents=True, exist_ok=True)
    GOLDEN_PATH.write_text(json.dumps(golden, indent=2) + "\n")
    logger.info(f"Wrote {GOLDEN_PATH}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
