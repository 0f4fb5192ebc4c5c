"""Tuple generators shared by the unit and acceptance tests."""

from __future__ import annotations

import random

from modquot.genericity import (
    check_distinct,
    check_eta_overlap,
    check_proper_power,
    check_self_inverse,
    sample_tuple,
)
from modquot.tuples import RelatorTuple
from modquot.words import eta, invert

SYMMETRY_CHECKS = (check_proper_power, check_distinct, check_eta_overlap, check_self_inverse)


def passes_3_to_6(t: RelatorTuple) -> bool:
    return all(check(t).passed for check in SYMMETRY_CHECKS)


def _overlap_cost(rels: tuple[str, ...]) -> int:
    """Number of long eta-windows that also occur in some r_j^{+-1}."""
    length = len(rels[0]) // 3 + 1
    seen = set()
    for r in rels:
        for x in (r, invert(r)):
            xx = x + x
            seen.update(xx[s:s + length] for s in range(len(x)))
    cost = 0
    for r in rels:
        e = eta(r)
        ee = e + e
        cost += sum(ee[s:s + length] in seen for s in range(len(e)))
    return cost


def _from_bits(bits: list[int], shift: int) -> str:
    w = "".join("bB"[b] + "a" for b in bits)
    return w[shift:] + w[:shift]


def search_3_to_6(rng: random.Random, n: int, m: int, max_steps: int = 50_000) -> RelatorTuple:
    """Local search over equal-length tuples for one passing conditions (3)-(6).

    Used where rejection sampling almost never succeeds (m >= 2 at n = 40).
    Single b-letter flips are kept when they do not increase the number of
    condition (5) conflicts, with occasional uphill moves.
    """
    half = n // 2
    bits = [[rng.getrandbits(1) for _ in range(half)] for _ in range(m)]
    shifts = [rng.randrange(n) for _ in range(m)]
    rels = lambda: tuple(_from_bits(b, s) for b, s in zip(bits, shifts))  # noqa: E731
    cur = _overlap_cost(rels())
    for _ in range(max_steps):
        if cur == 0:
            t = RelatorTuple(rels())
            if passes_3_to_6(t):
                return t
        i, j = rng.randrange(m), rng.randrange(half)
        bits[i][j] ^= 1
        cost = _overlap_cost(rels())
        if cost <= cur or rng.random() < 0.05:
            cur = cost
        else:
            bits[i][j] ^= 1
    raise RuntimeError("local search did not converge")


def rejection_3_to_6(rng: random.Random, n: int, m: int, max_tries: int = 10**6) -> RelatorTuple:
    """Uniform sample from the tuples of length-n entries passing conditions (3)-(6)."""
    for _ in range(max_tries):
        t = sample_tuple(rng, n, m)
        if passes_3_to_6(t):
            return t
    raise RuntimeError("no passing tuple found")


def gate_passing(rng: random.Random, n: int, m: int, p) -> RelatorTuple:
    """A sampled tuple passing Q under ``p`` whose closure satisfies C'(1/8)."""
    from modquot.genericity import check_Q
    from modquot.smallcancel import DEHN_GATE, satisfies_cprime
    from modquot.tuples import symmetrized_closure

    for _ in range(10_000):
        t = sample_tuple(rng, n, m)
        if check_Q(t, p, uprime=False).overall_Q and satisfies_cprime(symmetrized_closure(t), DEHN_GATE).holds:
            return t
    raise RuntimeError("no gate-passing tuple found")


def random_transform(rng: random.Random, t: RelatorTuple) -> tuple:
    perm = list(range(t.m))
    rng.shuffle(perm)
    entries = [(rng.randrange(len(t[j])), rng.random() < 0.5) for j in perm]
    return rng.randint(0, 1), perm, entries
