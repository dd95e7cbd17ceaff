import pytest

from geomid.rng import SplitMix64, partial_shuffle, sample_indices


def test_reference_vectors():
    r = SplitMix64(0)
    assert [r.next_u64() for _ in range(3)] == [
        0xE220A8397B1DCDAF,
        0x6E789E6AA1B965F4,
        0x06C45D188009454F,
    ]
    r = SplitMix64(1234567)
    assert [r.next_u64() for _ in range(3)] == [
        6457827717110365317,
        3203168211198807973,
        9817491932198370423,
    ]


def test_seed_range():
    SplitMix64(2**64 - 1)
    with pytest.raises(ValueError):
        SplitMix64(-1)
    with pytest.raises(ValueError):
        SplitMix64(2**64)


def test_below_in_range():
    r = SplitMix64(9)
    draws = [r.below(7) for _ in range(2000)]
    assert set(draws) == set(range(7))


def test_uniform_and_gauss():
    r = SplitMix64(3)
    u = [r.uniform() for _ in range(5000)]
    assert 0.0 <= min(u) and max(u) < 1.0
    g = [r.gauss() for _ in range(20000)]
    mean = sum(g) / len(g)
    var = sum((x - mean) ** 2 for x in g) / len(g)
    assert abs(mean) < 0.03 and abs(var - 1.0) < 0.05


def test_partial_shuffle_is_subset():
    out = partial_shuffle(10, 4, SplitMix64(5))
    assert len(set(out)) == 4 and set(out) <= set(range(10))
    assert sorted(partial_shuffle(6, 6, SplitMix64(5))) == list(range(6))


def test_sample_reproducible_and_seed_dependent():
    assert sample_indices(50, 10, 11) == sample_indices(50, 10, 11)
    assert len({tuple(sample_indices(50, 10, s)) for s in range(20)}) > 15


def test_sample_frozen():
    # reference draws mod 10, 9, 8 are 5, 0, 7 -> swaps (0,5), (1,1), (2,9)
    assert sample_indices(10, 3, 0) == [1, 5, 9]


def test_bad_counts():
    with pytest.raises(ValueError):
        partial_shuffle(3, 4, SplitMix64(0))
