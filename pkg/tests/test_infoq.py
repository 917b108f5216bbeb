import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from scoreinfo.infoq import (
    INFINITE,
    brute_force_info,
    char_information,
    info_characters,
    info_min_partition,
    partitions,
    piece_bits,
)
from scoreinfo.suffix_index import build_index, substring_probability

from .oracles import naive_probability

IDX = build_index("00100110")


def close(a, b, rel=1e-9):
    return a == b or math.isclose(a, b, rel_tol=rel)


def test_char_information():
    assert char_information(0.5) == 1.0
    assert char_information(0.25) == 2.0
    assert char_information(0.0) == INFINITE
    assert char_information(1.0) == 0.0
    for bad in (-0.1, 1.5):
        with pytest.raises(ValueError):
            char_information(bad)


def test_info_characters():
    # P('0') = 4/8, P('1') = 2/8
    assert info_characters("01", IDX) == 3.0
    assert info_characters("0", IDX) == 1.0
    assert info_characters("01", build_index("0001")) == INFINITE
    with pytest.raises(ValueError):
        info_characters("", IDX)
    with pytest.raises(ValueError):
        info_characters("0a", IDX)


def test_min_partition_prefers_repeated_bigram():
    expected = -math.log2(naive_probability("00100110", "01"))  # (2-1)/7
    singletons = -math.log2(naive_probability("00100110", "0")) - math.log2(
        naive_probability("00100110", "1")
    )
    assert singletons == 3.0
    res = info_min_partition("01", IDX)
    assert res.partition == ["01"]
    assert res.total == pytest.approx(expected, rel=1e-12)
    assert res.total == pytest.approx(2.807354922, abs=1e-9)
    assert brute_force_info("01", IDX) == pytest.approx(expected, rel=1e-12)


def test_single_character_query():
    assert info_min_partition("0", IDX).total == char_information(0.5)
    assert brute_force_info("0", IDX) == char_information(0.5)


def test_no_repeats_reduces_to_characters():
    # every bigram of the query occurs at most once in the text
    idx = build_index("0011")
    assert brute_force_info("0101", idx) == info_characters("0101", idx)
    assert info_min_partition("0101", idx).total == info_characters("0101", idx)


def test_unseen_character_is_infinite():
    res = info_min_partition("0110", build_index("0000"))
    assert res.total == INFINITE
    assert "".join(res.partition) == "0110"


def test_brute_force_guard():
    with pytest.raises(ValueError):
        brute_force_info("0" * 21, IDX)


def test_partitions_enumeration():
    parts = list(partitions("abcd"))
    assert len(parts) == 8
    assert all("".join(p) == "abcd" for p in parts)
    assert len({tuple(p) for p in parts}) == 8


def test_report_format():
    text = info_min_partition("01", IDX).report().splitlines()
    assert text[0] == "2.807355"
    assert text[1] == "01 2.807355"


texts = st.text("01", min_size=1, max_size=256)
queries = st.text("01", min_size=1, max_size=12)


@settings(max_examples=150, deadline=None)
@given(texts, queries)
def test_dp_equals_brute_force(text, query):
    idx = build_index(text)
    assert close(info_min_partition(query, idx).total, brute_force_info(query, idx))


@settings(max_examples=100, deadline=None)
@given(texts, queries)
def test_trace_consistency_and_upper_bound(text, query):
    idx = build_index(text)
    res = info_min_partition(query, idx)
    assert "".join(res.partition) == query
    rescored = sum(char_information(substring_probability(idx, p)) for p in res.partition)
    assert rescored == res.total
    assert [p for p, _ in res.per_piece] == res.partition
    assert res.total <= info_characters(query, idx)


@settings(max_examples=100, deadline=None)
@given(texts, queries, queries)
def test_subadditive(text, x, y):
    idx = build_index(text)
    whole = info_min_partition(x + y, idx).total
    split = info_min_partition(x, idx).total + info_min_partition(y, idx).total
    assert whole <= split or close(whole, split)


def test_segments_never_exceed_longest_repeat():
    rng = random.Random(5)
    text = "".join(rng.choice("01") for _ in range(500))
    query = "".join(rng.choice("01") for _ in range(60))
    idx = build_index(text)
    res = info_min_partition(query, idx)
    for piece in res.partition:
        assert len(piece) == 1 or piece_bits(idx, piece) < INFINITE
