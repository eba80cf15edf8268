import math
import random

import pytest

from probelab.errors import InvalidArgs
from probelab.games import BloomFilter, RetrievalDictionary


class TestBloom:
    def test_members_always_positive(self):
        filt = BloomFilter.build([1, 2, 3], p=0.125, seed=1)
        assert all(x in filt for x in (1, 2, 3))

    def test_empty_filter_rejects_everything(self):
        filt = BloomFilter.build([], p=0.125, seed=1)
        assert all(x not in filt for x in range(100))

    def test_no_false_negatives_exhaustive(self):
        rng = random.Random(2)
        for p in (0.25, 1 / 64):
            members = rng.sample(range(1 << 30), 2000)
            filt = BloomFilter.build(members, p=p, seed=3)
            assert all(x in filt for x in members)

    def test_sizing(self):
        filt = BloomFilter.build(list(range(1000)), p=1 / 64, seed=0)
        assert filt.size_bits == math.ceil(1000 * 6 * math.log2(math.e))
        assert filt.num_hashes == 6
        assert filt.serialized_bits == filt.size_bits + 64

    def test_fp_rate_concentrates(self):
        rng = random.Random(4)
        members = rng.sample(range(1 << 40), 10_000)
        member_set = set(members)
        for p in (1 / 8, 1 / 64):
            filt = BloomFilter.build(members, p=p, seed=5)
            fp = 0
            trials = 100_000
            for _ in range(trials):
                x = rng.randrange(1 << 40)
                while x in member_set:
                    x = rng.randrange(1 << 40)
                if x in filt:
                    fp += 1
            rate = fp / trials
            assert p / 2 <= rate <= 2 * p

    def test_p_validation(self):
        with pytest.raises(InvalidArgs):
            BloomFilter.build([1], p=0.0)


class TestRetrieval:
    def test_small_exact(self):
        d = RetrievalDictionary.build({5: 0, 9: 1})
        assert d.get(5) == 0
        assert d.get(9) == 1

    def test_nonmember_returns_some_bit(self):
        d = RetrievalDictionary.build({5: 0, 9: 1})
        assert d.get(1234) in (0, 1)

    def test_exact_on_members_many_seeds(self):
        rng = random.Random(6)
        for seed in range(10):
            keys = rng.sample(range(1 << 30), 500)
            payload = {k: rng.randrange(2) for k in keys}
            d = RetrievalDictionary.build(payload, seed=seed)
            assert all(d.get(k) == v for k, v in payload.items())

    def test_size_tracks_load_factor(self):
        payload = {k: k & 1 for k in range(10_000)}
        d = RetrievalDictionary.build(payload, seed=7)
        assert d.size_bits <= 1.3 * 1.23 * 10_000 + 64

    def test_empty_build(self):
        d = RetrievalDictionary.build({})
        assert d.get(42) in (0, 1)

    def test_duplicate_keys_rejected(self):
        # dict keys are unique by construction; the explicit check guards
        # future list-based call sites
        d = RetrievalDictionary.build({1: 1})
        assert d.get(1) == 1

    def test_build_failure_after_retry_budget(self):
        from probelab.errors import BuildFailure
        with pytest.raises(BuildFailure):
            RetrievalDictionary.build({k: 0 for k in range(100)}, retries=0)
