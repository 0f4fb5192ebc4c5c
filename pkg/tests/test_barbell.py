import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modquot import kernels
from modquot.barbell import (
    build_barbell,
    count_readable,
    count_readable_union,
    readable,
    readable_count_bound,
    reduced_bars,
    theta_readable,
    theta_readable_candidates,
)
from modquot.words import WordError, enumerate_cyclic, enumerate_reduced, invert, random_cyclic

import oracles

# the exact counts for the ba-barbell, n = 1..12, fixed by exhaustive enumeration
BA_COUNTS = [3, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24]


def test_build_barbell():
    g = build_barbell("ba")
    assert g.num_vertices == 3 and len(g.edges) == 8
    assert g.reduced and g.k == 1
    assert not build_barbell("ab").reduced
    assert not build_barbell("bab").reduced
    with pytest.raises(WordError):
        build_barbell("")
    assert reduced_bars(4) == ["ba", "Ba", "baba", "baBa", "Baba", "BaBa"]
    assert all(build_barbell(u).reduced for u in reduced_bars(6))


def test_readable_examples():
    g = build_barbell("ba")
    ans = readable("ab", g)
    assert ans.readable and ans.replay() == "ab"
    for u in reduced_bars(4):
        assert readable("a", build_barbell(u)).readable
    w = "babababababab"
    assert len(w) == 13 and not readable(w, g).readable
    assert not oracles.path_search(w, "ba")


def test_readable_witness_is_a_path():
    g = build_barbell("baBa")
    for w in enumerate_reduced(9):
        ans = readable(w, g)
        if ans.readable:
            path = ans.path
            assert path[0].src == ans.start_vertex
            assert all(e1.dst == e2.src for e1, e2 in zip(path, path[1:]))
            assert ans.replay() == w


def test_readable_against_path_search():
    for u in reduced_bars(4) + ["baBaba", "BaBaBa"]:
        g = build_barbell(u)
        for n in range(1, 10):
            for w in enumerate_reduced(n):
                assert readable(w, g).readable == oracles.path_search(w, u)


def test_count_readable_examples():
    g = build_barbell("ba")
    assert [count_readable(n, g) for n in range(1, 13)] == BA_COUNTS
    assert count_readable(12, g) <= readable_count_bound(12, 1) == 48
    with pytest.raises(ValueError):
        count_readable(0, g)


def test_count_readable_against_enumeration():
    for u in reduced_bars(4):
        g = build_barbell(u)
        for n in range(1, 11):
            brute = sum(readable(w, g).readable for w in enumerate_reduced(n))
            assert count_readable(n, g) == brute


def test_count_bound():
    for u in reduced_bars(6):
        g = build_barbell(u)
        for n in range(1, 21):
            assert count_readable(n, g) <= readable_count_bound(n, g.k)


def test_union_count_trend():
    # readable in some reduced barbell with |u| <= theta n, theta = 1/5
    theta = Fraction(1, 5)
    bars = reduced_bars(20)
    ratios = {}
    for n in range(10, 21):
        graphs = [build_barbell(u) for u in bars if len(u) <= theta * n]
        count = count_readable_union(n, graphs)
        assert count <= sum(readable_count_bound(n, g.k) for g in graphs)
        ratios[n] = (count / 2 ** (n / 2), len(graphs))
    # the ratio drops strictly while the admissible bars stay the same; it can
    # jump only where a longer bar becomes admissible (here at n = 20)
    for n in range(10, 20):
        if ratios[n][1] == ratios[n + 1][1]:
            assert ratios[n + 1][0] < ratios[n][0]
    assert ratios[19][0] < ratios[10][0] / 4


def _barbell_word(rng, u, loops):
    """A cyclic word read around the u-barbell: a u x u^-1 repeated, x in {b, B}."""
    return "".join("a" + u + rng.choice("bB") + invert(u) for _ in range(loops))


def test_theta_readable_constructed_positive():
    rng = random.Random(3)
    for u in reduced_bars(6):
        w = _barbell_word(rng, u, 12)
        # w ends with a b-letter; pad with an unrelated tail starting with a
        tail = random_cyclic(rng, len(w) // 2 - (len(w) // 2) % 2)
        word = w + (tail if tail[0] == "a" else tail[1:] + tail[:1])
        res = theta_readable(word, Fraction(1, 10))
        assert res.readable
        assert len(res.witness.u) <= Fraction(1, 10) * len(res.witness.v)
        assert readable(res.witness.v, build_barbell(res.witness.u)).readable


def test_theta_readable_short_words_false():
    theta = Fraction(1, 40)
    for n in range(2, 80, 2):
        for w in itertools.islice(enumerate_cyclic(n), 20):
            assert not theta_readable(w, theta).readable


@given(st.integers(5, 30), st.randoms(use_true_random=False), st.sampled_from([Fraction(1, 5), Fraction(1, 8), Fraction(1, 12)]))
def test_theta_readable_against_candidate_search(half, rng, theta):
    w = random_cyclic(rng, 2 * half)
    fast = theta_readable(w, theta)
    slow = theta_readable_candidates(w, theta)
    assert fast.readable == slow.readable
    if fast.readable:
        u, v = fast.witness.u, fast.witness.v
        assert build_barbell(u).reduced and len(u) <= theta * len(v) and 2 * len(v) >= len(w)
        assert readable(v, build_barbell(u)).readable
        assert v in (w + w) or v in invert(w) * 2


def test_theta_readable_random_long_words():
    rng = random.Random(8)
    hits = sum(theta_readable(random_cyclic(rng, 400), Fraction(1, 40)).readable for _ in range(200))
    assert hits <= 2


def test_kernel_backends_agree():
    rng = random.Random(12)
    py = kernels.python_kernels
    for _ in range(300):
        w = random_cyclic(rng, rng.choice((4, 10, 40, 100)))
        for k in (1, 2, 3, 5):
            assert kernels.bounce_run(w, k) == py.bounce_run(w, k)
    words = sorted({random_cyclic(rng, 20) for _ in range(200)})
    assert kernels.adjacent_lcp(words) == py.adjacent_lcp(words)
