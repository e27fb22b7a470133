# Bit generators: dynamical PRNG, baselines, seeding and the bit-source contract

# region imports
import itertools
import json
from fractions import Fraction
from math import floor
from pathlib import Path

import pytest
from pydantic import ValidationError

from src.errors import SeedValidationError
from src.fxp import FxWord, gamma_format, state_format
from src.generators import (
    REFERENCE_MASTER_SEED,
    DynamicalGenerator,
    GlibcLcgGenerator,
    Lfsr32Generator,
    LogisticGenerator,
    PartitionLcg,
    SplitMix64,
    SplitMix64Generator,
    build_generator,
    derive_seed,
    draw_k,
    dynamical_next_bit,
    dynamical_next_element,
    fill_bits,
    glibc_lcg_next_bits,
    initial_state,
    lcg_next,
    lfsr32_next_bit,
    logistic_raw_next_bit,
    reference_spec,
    resolve_spec,
    splitmix64_next,
)
from src.maps import chaotic_range
from src.models import GeneratorName, GeneratorSpec, GlibcMode, SeedConfig
from src.sts import berlekamp_massey
# endregion

GOLDEN_PATH = Path(__file__).parent / "fixtures" / "golden.json"


# region oracles
def oracle_step(x, g, n):
    xv = Fraction(x, 1 << n)
    t = floor(xv * (1 - xv) * (1 << n)) if x else 0
    return floor(Fraction(g, 1 << (n - 2)) * Fraction(t, 1 << n) * (1 << n))


def oracle_dynamical(config, count):
    """Elements of the dynamical generator recomputed on exact rationals."""
    span = config.k_max - config.k_min + 1
    lcg = config.partition_seed

    def draw():
        nonlocal lcg
        lcg = (1103515245 * lcg + 12345) % 2 ** 31
        return config.k_min + (lcg // 2 ** 16) % span

    x, index, remaining = config.x0, 0, draw()
    elements = []
    for _ in range(count):
        x = oracle_step(x, config.gammas[index], config.word_length)
        elements.append(x)
        remaining -= 1
        if remaining == 0:
            index = (index + 1) % config.m
            remaining = draw()
    return elements
# endregion


# region fixtures
@pytest.fixture
def small_seed():
    return SeedConfig(word_length=16, x0=0x1234, gammas=[0xE800, 0xF000, 0xFF00], k_min=2, k_max=4,
                      partition_seed=777)


def all_reference_generators():
    return [build_generator(reference_spec(name)) for name in GeneratorName]
# endregion


class TestPartitionLcg:
    def test_state_one(self):
        output, lcg = lcg_next(PartitionLcg(1))
        assert output == 1103527590
        assert lcg.state == output

    def test_state_12345(self):
        output, _ = lcg_next(PartitionLcg(12345))
        assert output == (1103515245 * 12345 + 12345) % 2 ** 31

    def test_draw_k_from_high_bits(self):
        k, lcg = draw_k(PartitionLcg(1), 9, 11)
        assert k == 9 + ((1103527590 >> 16) % 3) == 11
        assert lcg.state == 1103527590

    def test_degenerate_range(self):
        lcg = PartitionLcg(99)
        for _ in range(50):
            k, lcg = draw_k(lcg, 9, 9)
            assert k == 9

    def test_draw_k_rejects_inverted_range(self):
        with pytest.raises(ValueError):
            draw_k(PartitionLcg(1), 11, 9)

    def test_k_is_roughly_uniform(self):
        lcg = PartitionLcg(12345)
        counts = {9: 0, 10: 0, 11: 0}
        draws = 200_000
        for _ in range(draws):
            k, lcg = draw_k(lcg, 9, 11)
            counts[k] += 1
        for count in counts.values():
            assert abs(count / draws - 1 / 3) < 0.01

    def test_state_must_be_31_bit(self):
        with pytest.raises(SeedValidationError):
            PartitionLcg(2 ** 31)


class TestDynamical:
    def test_schedule_follows_drawn_run_lengths(self, reference_seed):
        config = reference_seed.model_copy(update={"gammas": reference_seed.gammas[:2]})
        ks = itertools.cycle([9, 10])

        def draw(lcg, k_min, k_max):
            return next(ks), lcg

        s = initial_state(config, draw)
        used = []
        for _ in range(38):
            used.append(s.gamma_index)
            _, s = dynamical_next_element(s, draw)
        assert used == [0] * 9 + [1] * 10 + [0] * 9 + [1] * 10

    def test_rotation_wraps_after_last_gamma(self, small_seed):
        s = initial_state(small_seed)
        seen = []
        for _ in range(60):
            if not seen or seen[-1] != s.gamma_index:
                seen.append(s.gamma_index)
            _, s = dynamical_next_element(s)
        assert seen[:7] == [0, 1, 2, 0, 1, 2, 0]

    def test_run_lengths_within_bounds(self, small_seed):
        s = initial_state(small_seed)
        runs, current, length = [], s.gamma_index, 0
        for _ in range(500):
            _, s = dynamical_next_element(s)
            length += 1
            if s.gamma_index != current:
                runs.append(length)
                current, length = s.gamma_index, 0
        assert runs and all(2 <= r <= 4 for r in runs)

    def test_single_gamma_collapses_to_logistic_map(self, reference_seed):
        config = reference_seed.model_copy(update={"gammas": reference_seed.gammas[:1]})
        dynamical = DynamicalGenerator(config).fill(5000)
        raw = LogisticGenerator(config.x0, config.gammas[0], 32).fill(5000)
        assert dynamical == raw

    @pytest.mark.parametrize("master", [1, 0xDEADBEEF, REFERENCE_MASTER_SEED])
    def test_matches_rational_oracle(self, master):
        config = derive_seed(master)
        expected = oracle_dynamical(config, 10_000)
        assert DynamicalGenerator(config).fill(10_000).bits.tolist() == [x & 1 for x in expected]

    def test_small_word_oracle(self, small_seed):
        expected = oracle_dynamical(small_seed, 3000)
        s = initial_state(small_seed)
        for x in expected:
            word, s = dynamical_next_element(s)
            assert word.raw == x

    def test_next_bit_is_low_bit(self, reference_seed):
        s = initial_state(reference_seed)
        s_copy = s
        for _ in range(100):
            bit, s = dynamical_next_bit(s)
            word, s_copy = dynamical_next_element(s_copy)
            assert bit == word.raw & 1

    def test_bits_per_element_msb_first(self, reference_seed):
        bits = DynamicalGenerator(reference_seed, bits_per_element=3).fill(300).bits.tolist()
        s = initial_state(reference_seed)
        expected = []
        for _ in range(100):
            word, s = dynamical_next_element(s)
            expected += [(word.raw >> 2) & 1, (word.raw >> 1) & 1, word.raw & 1]
        assert bits == expected

    def test_bits_per_element_bounds(self, reference_seed):
        with pytest.raises(ValueError):
            DynamicalGenerator(reference_seed, bits_per_element=33)

    def test_zero_absorption_is_reported(self):
        # x0 = 2^-8 gives x(1-x) below one ulp, so the first step lands on 0
        config = SeedConfig(word_length=8, x0=1, gammas=[229], partition_seed=1)
        generator = DynamicalGenerator(config)
        assert generator.fill(16).ones() == 0
        assert generator.absorbed
        s = initial_state(config)
        _, s = dynamical_next_element(s)
        assert s.absorbed

    def test_absorption_is_logged_once_per_path(self, caplog):
        config = SeedConfig(word_length=8, x0=1, gammas=[229], partition_seed=1)
        stepped = DynamicalGenerator(config)
        assert [stepped.next_bit() for _ in range(4)] == [0, 0, 0, 0]
        assert stepped.absorbed
        assert caplog.text.count("absorbed at x = 0") == 1

        caplog.clear()
        DynamicalGenerator(config).fill(64)
        assert caplog.text.count("absorbed at x = 0") == 1

    def test_state_snapshot_resumes(self, reference_seed):
        generator = DynamicalGenerator(reference_seed)
        generator.fill(1234)
        s = generator.state
        tail = generator.fill(64).bits.tolist()
        replay = []
        for _ in range(64):
            bit, s = dynamical_next_bit(s)
            replay.append(bit)
        assert replay == tail


class TestLogistic:
    def test_zero_stays_zero(self):
        x = FxWord(0, state_format(32))
        g = FxWord(0xF0000000, gamma_format(32))
        for _ in range(10):
            bit, x = logistic_raw_next_bit(x, g)
            assert bit == 0 and x.raw == 0

    def test_rejects_zero_seed(self):
        with pytest.raises(SeedValidationError):
            LogisticGenerator(0, 0xF0000000, 32)

    @pytest.mark.parametrize("n", [32, 64])
    def test_matches_oracle(self, n):
        config = derive_seed(REFERENCE_MASTER_SEED, word_length=n, m=1)
        x = config.x0
        expected = []
        for _ in range(2000):
            x = oracle_step(x, config.gammas[0], n)
            expected.append(x & 1)
        assert LogisticGenerator(config.x0, config.gammas[0], n).fill(2000).bits.tolist() == expected

    def test_name_reflects_width(self):
        assert LogisticGenerator(5, 0xF0000000, 32).name == "logistic32"


class TestLfsr:
    def test_first_step_from_all_ones(self):
        assert lfsr32_next_bit(0xFFFFFFFF) == (1, 0x7FFFFFFF)

    def test_zero_state_rejected(self):
        with pytest.raises(SeedValidationError):
            Lfsr32Generator(0)

    def test_fast_path_matches_step_function(self):
        state, expected = 0xACE1ACE1, []
        for _ in range(5000):
            bit, state = lfsr32_next_bit(state)
            expected.append(bit)
        generator = Lfsr32Generator(0xACE1ACE1)
        assert generator.fill(5000).bits.tolist() == expected
        assert generator.state == state

    def test_no_early_return_to_seed(self):
        seed = state = 0xFFFFFFFF
        for _ in range(100_000):
            _, state = lfsr32_next_bit(state)
            assert state not in (seed, 0)

    @pytest.mark.slow
    def test_no_return_within_ten_million_steps(self):
        seed = state = 0xFFFFFFFF
        for _ in range(10_000_000):
            _, state = lfsr32_next_bit(state)
            assert state != seed

    def test_linear_complexity_is_32(self):
        bits = Lfsr32Generator(0x9ABCDEF1).fill(6000)
        assert berlekamp_massey(bits[1000:3000]) == 32
        assert berlekamp_massey(bits[4000:6000]) == 32


class TestGlibc:
    def test_state_one(self):
        bits, state = glibc_lcg_next_bits(1)
        assert state == 1103527590
        assert "".join(map(str, bits)) == format(1103527590, "031b")

    def test_lsb_alternates(self):
        bits = GlibcLcgGenerator(424242, GlibcMode.LSB).fill(1000).bits
        assert all(bits[1:] != bits[:-1])

    def test_bit30_is_balanced(self):
        stream = GlibcLcgGenerator(12345, GlibcMode.BIT30).fill(100_000)
        assert abs(stream.ones() / stream.length - 0.5) < 0.01

    def test_word32_prefixes_a_zero(self):
        bits, state = glibc_lcg_next_bits(1, GlibcMode.WORD32)
        assert state == 1103527590
        assert "".join(map(str, bits)) == format(1103527590, "032b")
        assert bits[0] == 0

    def test_word32_fill_matches_stepping(self):
        fast = GlibcLcgGenerator(777, GlibcMode.WORD32).fill(1000)
        gen = GlibcLcgGenerator(777, GlibcMode.WORD32)
        slow = "".join(str(gen.next_bit()) for _ in range(1000))
        assert fast.to_ascii() == slow
        # the 1000-bit fill leaves 24 bits of the 32nd word pending
        more = GlibcLcgGenerator(777, GlibcMode.WORD32)
        joined = more.fill(1000).to_ascii() + more.fill(24).to_ascii()
        assert joined == GlibcLcgGenerator(777, GlibcMode.WORD32).fill(1024).to_ascii()

    def test_word32_is_biased_towards_zero(self):
        stream = GlibcLcgGenerator(12345, GlibcMode.WORD32).fill(320_000)
        assert abs(stream.ones() / stream.length - 31 / 64) < 0.005

    def test_state_must_be_31_bit(self):
        with pytest.raises(SeedValidationError):
            GlibcLcgGenerator(2 ** 31)


class TestSplitMix:
    def test_known_first_output(self):
        assert splitmix64_next(0)[0] == 0xE220A8397B1DCDAF

    def test_draw_bits_takes_top_bits(self):
        full = SplitMix64(42).draw()
        assert SplitMix64(42).draw_bits(31) == full >> 33

    def test_generator_emits_msb_first(self):
        word, _ = splitmix64_next(7)
        assert SplitMix64Generator(7).fill(64).to_ascii() == format(word, "064b")


class TestBitSourceContract:
    @pytest.mark.parametrize("split", [1, 13, 64, 97])
    def test_fill_concatenates(self, split):
        for generator in all_reference_generators():
            whole = generator.fill(300)
            generator.reset()
            assert generator.fill(split).concat(generator.fill(300 - split)) == whole

    def test_next_bit_and_fill_agree(self):
        for generator in all_reference_generators():
            whole = generator.fill(200).bits.tolist()
            generator.reset()
            mixed = [generator.next_bit() for _ in range(5)]
            mixed += generator.fill(90).bits.tolist()
            mixed += [generator.next_bit() for _ in range(40)]
            mixed += generator.fill(65).bits.tolist()
            assert mixed == whole, generator.name

    def test_multi_bit_elements_keep_pending_bits(self, reference_seed):
        a = DynamicalGenerator(reference_seed, bits_per_element=5)
        b = DynamicalGenerator(reference_seed, bits_per_element=5)
        assert a.fill(7).concat(a.fill(33)) == b.fill(40)

    def test_glibc_words_split_across_fills(self):
        a = GlibcLcgGenerator(1)
        assert a.fill(10).concat(a.fill(52)) == GlibcLcgGenerator(1).fill(62)

    def test_fill_rejects_non_positive(self):
        with pytest.raises(ValueError):
            Lfsr32Generator(1).fill(0)

    def test_fill_bits_delegates(self):
        assert fill_bits(Lfsr32Generator(5), 40) == Lfsr32Generator(5).fill(40)


class TestSeeding:
    def test_derive_seed_is_deterministic(self):
        assert derive_seed(REFERENCE_MASTER_SEED) == derive_seed(REFERENCE_MASTER_SEED)

    def test_derived_fields_are_valid(self):
        bounds = chaotic_range(32)
        for master in range(20):
            config = derive_seed(master)
            assert config.m == 8
            assert 0 < config.x0 < 2 ** 32
            assert all(g in bounds for g in config.gammas)
            assert 0 < config.partition_seed < 2 ** 31
            assert (config.k_min, config.k_max) == (9, 11)

    def test_different_masters_differ(self):
        assert derive_seed(1) != derive_seed(2)

    def test_seed_config_json_uses_hex(self, reference_seed):
        data = json.loads(reference_seed.model_dump_json(by_alias=True))
        assert data["x0"].startswith("0x")
        assert all(g.startswith("0x") for g in data["gammas"])
        assert SeedConfig.model_validate(data) == reference_seed

    def test_zero_x0_names_field(self):
        with pytest.raises(ValidationError, match="x0"):
            SeedConfig(word_length=32, x0=0, gammas=[0xF0000000])

    def test_gamma_outside_chaotic_range_names_field(self):
        with pytest.raises(ValidationError, match=r"gammas\[1\]"):
            SeedConfig(word_length=32, x0=1, gammas=[0xF0000000, 0x80000000])

    def test_inverted_k_range(self):
        with pytest.raises(ValidationError, match="kMin"):
            SeedConfig(word_length=32, x0=1, gammas=[0xF0000000], k_min=12, k_max=9)

    def test_resolve_fills_explicit_seed(self):
        spec = resolve_spec(reference_spec(GeneratorName.DYNAMICAL))
        assert spec.seed == derive_seed(REFERENCE_MASTER_SEED)
        spec = resolve_spec(reference_spec(GeneratorName.LOGISTIC64))
        assert spec.seed.word_length == 64 and spec.seed.m == 1
        assert resolve_spec(reference_spec(GeneratorName.LFSR32)).state != 0

    def test_resolve_rejects_width_mismatch(self):
        seed = derive_seed(1, word_length=64, m=1)
        with pytest.raises(SeedValidationError, match="wordLength"):
            resolve_spec(GeneratorSpec(name=GeneratorName.LOGISTIC32, seed=seed))

    def test_resolve_needs_some_seed(self):
        with pytest.raises(SeedValidationError):
            resolve_spec(GeneratorSpec(name=GeneratorName.LFSR32))
        with pytest.raises(SeedValidationError):
            resolve_spec(GeneratorSpec(name=GeneratorName.DYNAMICAL))

    def test_explicit_state_wins(self):
        spec = resolve_spec(GeneratorSpec(name=GeneratorName.GLIBC, master_seed=1, state=5))
        assert spec.state == 5


class TestGoldenVectors:
    @pytest.fixture(scope="class")
    def golden(self):
        return json.loads(GOLDEN_PATH.read_text())

    @pytest.mark.parametrize("name", [g.value for g in GeneratorName])
    def test_prefix(self, golden, name):
        entry = golden["generators"][name]
        spec = GeneratorSpec.model_validate(entry["spec"])
        assert resolve_spec(reference_spec(GeneratorName(name))) == spec
        assert build_generator(spec).fill(golden["prefixBits"]).to_ascii() == entry["prefix"]

    def test_dynamical_elements(self, golden):
        entry = golden["generators"]["dynamical"]
        s = initial_state(derive_seed(REFERENCE_MASTER_SEED))
        elements = []
        for _ in entry["elements"]:
            x, s = dynamical_next_element(s)
            elements.append(f"{x.raw:#x}")
        assert elements == entry["elements"]

    def test_dynamical_fill_digest(self, golden):
        fill = golden["generators"]["dynamical"]["fill"]
        stream = build_generator(reference_spec(GeneratorName.DYNAMICAL)).fill(fill["bits"])
        assert stream.ones() == fill["ones"]
        assert stream.digest() == fill["sha256"]

    def test_reference_seeds_share_the_first_draw(self):
        # x0, the LFSR state and the glibc state all come from the first SplitMix64 draw
        x0 = resolve_spec(reference_spec(GeneratorName.DYNAMICAL)).seed.x0
        assert x0 == resolve_spec(reference_spec(GeneratorName.LFSR32)).state == 0x161922C6
        assert resolve_spec(reference_spec(GeneratorName.GLIBC)).state == x0 >> 1
