import itertools
import random
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modquot.words import (
    CyclicWord,
    Letter,
    WordError,
    canonical_rotation,
    count_table,
    cyclic_reduce,
    cyclic_reduce_word,
    enumerate_cyclic,
    enumerate_reduced,
    eta,
    gamma,
    invert,
    is_cyclically_reduced,
    is_reduced,
    least_rotation,
    normalize,
    parse_word,
    random_cyclic,
    rho,
    rotations,
    sample_cyclic,
)

import oracles

letters = st.text(alphabet="abB", max_size=40)
reduced = letters.map(normalize)


def test_letters():
    assert Letter.A.inverse is Letter.A
    assert Letter.B.inverse is Letter.Binv
    assert Letter.Binv.inverse is Letter.B
    assert normalize([Letter.A, Letter.B, Letter.B]) == "aB"


@pytest.mark.parametrize("raw, expected", [("aa", ""), ("abb", "aB"), ("abBa", ""), ("bbb", ""), ("", "")])
def test_normalize_examples(raw, expected):
    assert normalize(raw) == expected


@pytest.mark.parametrize("w, expected", [("ab", "Ba"), ("", ""), ("abaB", "baBa")])
def test_invert_examples(w, expected):
    assert invert(w) == expected


def test_eta_examples():
    assert eta("ab") == "aB"
    assert eta(eta("abaBab")) == "abaBab"
    assert eta("") == ""


def test_parse_word():
    assert parse_word("abaB") == "abaB"
    assert parse_word("abb", reduce=True) == "aB"
    with pytest.raises(WordError):
        parse_word("abc")
    with pytest.raises(WordError):
        parse_word("abb")


def test_normalize_exhaustive_against_rewriting():
    # idempotence and agreement with the rewriting oracle, every word up to length 12
    for n in range(13):
        for w in oracles.all_words(n):
            v = normalize(w)
            assert normalize(v) == v
            if n <= 8:
                assert v == oracles.rewrite(w)


def test_cancellation_exhaustive():
    for n in range(11):
        for w in enumerate_reduced(n):
            assert normalize(w + invert(w)) == ""


@given(reduced)
def test_eta_properties(w):
    assert eta(eta(w)) == w
    assert eta(invert(w)) == invert(eta(w))
    assert is_reduced(eta(w)) and is_reduced(invert(w))
    if is_cyclically_reduced(w) and w:
        assert {eta(x) for x in rotations(w)} == set(rotations(eta(w)))


@given(letters)
def test_normalize_is_reduced(w):
    assert is_reduced(normalize(w))


def test_cyclic_reduce_examples():
    assert cyclic_reduce("Bab").rep == "a"
    assert cyclic_reduce("abab") == CyclicWord("abab")
    assert cyclic_reduce("aba").rep == "b"
    assert cyclic_reduce("").rep == ""


@given(reduced)
def test_cyclic_reduce_against_conjugate_search(w):
    got = cyclic_reduce(w)
    conj = oracles.conjugates(w)
    shortest = min(len(x) for x in conj)
    assert got.length == shortest
    assert any(oracles.min_rotation(x) == got.rep for x in conj if len(x) == shortest)
    assert is_cyclically_reduced(cyclic_reduce_word(w))


def test_rotations_examples():
    assert rotations("abab") == ["abab", "baba", "abab", "baba"]
    assert len(set(rotations("abaB"))) == 4
    assert rotations("") == [""]


@given(st.integers(1, 12).flatmap(lambda k: st.sampled_from(list(enumerate_cyclic(2 * k)))))
def test_canonical_rotation_is_least(w):
    assert canonical_rotation(w) == oracles.min_rotation(w)
    s = least_rotation(w)
    assert w[s:] + w[:s] == canonical_rotation(w)
    assert CyclicWord(w[3:] + w[:3]).rep == CyclicWord(w).rep


def test_enumerate_cyclic_small():
    assert sorted(enumerate_cyclic(4)) == sorted(
        ["abab", "abaB", "aBab", "aBaB", "baba", "baBa", "Baba", "BaBa"]
    )
    assert list(enumerate_cyclic(0)) == [""]
    assert list(enumerate_cyclic(3)) == []


def test_enumerate_cyclic_against_brute_force():
    for n in range(9):
        assert sorted(enumerate_cyclic(n)) == sorted(oracles.cyclic_words(n))
        assert sorted(enumerate_reduced(n)) == sorted(oracles.reduced_words(n))


def test_cyclic_shape():
    for n in range(2, 13, 2):
        for w in enumerate_cyclic(n):
            assert (w[0] == "a") != (w[-1] == "a")
            assert all((w[i] == "a") != (w[i + 1] == "a") for i in range(n - 1))


def test_count_table():
    assert [gamma(n) for n in range(9)] == [1, 3, 4, 0, 8, 0, 16, 0, 32]
    for n in range(25):
        assert gamma(n) == sum(1 for _ in enumerate_cyclic(n))
        assert rho(n) == sum(gamma(k) for k in range(n + 1))
    t = count_table(10)
    assert (t.n, t.gamma, t.rho) == (10, 64, rho(10))


def test_sample_cyclic_determinism_and_errors():
    assert sample_cyclic(40, 9) == sample_cyclic(40, 9)
    assert sample_cyclic(4, 1) in set(enumerate_cyclic(4))
    for bad in (0, 3, 7):
        with pytest.raises(WordError):
            sample_cyclic(bad, 1)


def test_sampler_uniform_at_length_4():
    draws = 10**6
    rng = random.Random(20261016)
    counts = Counter(random_cyclic(rng, 4) for _ in range(draws))
    assert set(counts) == set(enumerate_cyclic(4))
    p = 1 / 8
    sigma = (draws * p * (1 - p)) ** 0.5
    for c in counts.values():
        assert abs(c - draws * p) <= 3 * sigma


def test_sampler_covers_length_6():
    rng = random.Random(3)
    seen = {random_cyclic(rng, 6) for _ in range(2000)}
    assert seen == set(enumerate_cyclic(6))


def test_all_pairs_small_words_reduce_consistently():
    for x, y in itertools.product(enumerate_reduced(3), repeat=2):
        assert normalize(x + y) == oracles.rewrite(x + y)
