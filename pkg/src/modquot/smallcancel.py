"""Pieces, the metric small cancellation condition C'(lambda), and Dehn's algorithm.

Members of a symmetrized set alternate a-letters and b-letters, so common
string prefixes of distinct members are exactly the pieces in the free
product sense.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .tuples import SymmetrizedSet
from .words import cyclic_reduce_word, invert, normalize

DEHN_GATE = Fraction(1, 8)


class GateError(ValueError):
    """A small-cancellation precondition does not hold."""

    def __init__(self, message: str, witness: "CPrimeResult"):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class PieceReport:
    max_piece_len: int
    # (piece, member, other member); None when the set has fewer than two members
    witness: tuple[str, str, str] | None
    # member -> length of the longest piece that is a prefix of it
    per_member: dict[str, int] = field(repr=False)

    def per_relator_bound(self, lam: Fraction) -> dict[str, Fraction]:
        """member -> the strict bound lambda |r| its pieces must stay under."""
        return {r: lam * len(r) for r in self.per_member}


def pieces(R: SymmetrizedSet) -> PieceReport:
    """Longest common prefixes between distinct members.

    After sorting, the longest common prefix of a member with any other
    member is attained by one of its sorted neighbours.
    """
    members = sorted(R.members)
    if not members:
        raise ValueError("empty symmetrized set")
    lcp = kernels.adjacent_lcp(members)
    per = {}
    best_len, witness = 0, None
    for i, r in enumerate(members):
        left = lcp[i - 1] if i > 0 else -1
        right = lcp[i] if i < len(lcp) else -1
        p = max(left, right, 0)
        per[r] = p
        if max(left, right) >= 0 and (witness is None or p > best_len):
            other = members[i - 1] if left >= right else members[i + 1]
            best_len, witness = p, (r[:p], r, other)
    return PieceReport(best_len, witness, per)


@dataclass(frozen=True)
class CPrimeResult:
    holds: bool
    lam: Fraction
    max_piece: int
    # (piece, relator it is a prefix of, other member sharing it) on failure
    violation: tuple[str, str, str] | None = None


def satisfies_cprime(R: SymmetrizedSet, lam: Fraction, report: PieceReport | None = None) -> CPrimeResult:
    """C'(lam): every piece u that is a prefix of a member r has |u| < lam |r|."""
    lam = Fraction(lam)
    if not 0 < lam <= 1:
        raise ValueError("lambda must lie in (0, 1]")
    rep = report or pieces(R)
    worst = None
    for r, p in rep.per_member.items():
        if p >= lam * len(r):
            # most violating member: largest p / |r|, then lexicographic for determinism
            score = (Fraction(p, len(r)), r)
            if worst is None or score > worst:
                worst = score
    if worst is None:
        return CPrimeResult(True, lam, rep.max_piece_len)
    r = worst[1]
    p = rep.per_member[r]
    members = sorted(R.members)
    i = members.index(r)
    other = next(
        o for o in (members[i - 1] if i else None, members[i + 1] if i + 1 < len(members) else None)
        if o is not None and o[:p] == r[:p]
    )
    return CPrimeResult(False, lam, rep.max_piece_len, (r[:p], r, other))


@dataclass(frozen=True)
class DehnResult:
    normal_form: str
    trivial: bool
    steps: int
    gate: CPrimeResult | None = None


class _RelatorIndex:
    """Sorted members grouped by length, for longest-prefix queries."""

    def __init__(self, R: SymmetrizedSet):
        groups: dict[int, list[str]] = {}
        for r in R.members:
            groups.setdefault(len(r), []).append(r)
        self.groups = {n: sorted(g) for n, g in groups.items()}
        self.max_len = max(groups) if groups else 0

    def best_prefix(self, q: str, n: int) -> tuple[int, str]:
        """Longest exact common prefix of ``q`` with a member of length ``n``."""
        g = self.groups[n]
        i = bisect.bisect_left(g, q)
        best = (-1, "")
        for j in (i - 1, i):
            if 0 <= j < len(g):
                r = g[j]
                m = min(len(r), len(q))
                t = 0
                while t < m and r[t] == q[t]:
                    t += 1
                if t > best[0]:
                    best = (t, r)
        return best


def _reduce_once(w: str, index: _RelatorIndex) -> str | None:
    """One Dehn replacement, or None if no replacement shortens ``w``.

    A factor of w matching a prefix v of a member r = v s is replaced by
    s^-1. The end letters of the factor may be b-letters that only agree
    with v's end letters up to a b-power (the factor then splits a
    syllable); the leftover b-power is kept. The candidate with the largest
    length gain wins.
    """
    best = None
    n_w = len(w)
    for i in range(n_w):
        starts = [w[i]] if w[i] == "a" else ["b", "B"]
        for first in starts:
            q = first + w[i + 1:i + index.max_len]
            for n in index.groups:
                t, r = index.best_prefix(q, n)
                if t <= 0:
                    continue
                # a mismatch can only fall on a b-position, where it splits a syllable
                if t < min(n, n_w - i):
                    t += 1
                v = r[:t]
                seg = w[i:i + t]
                if t == 1 and seg[0] != v[0]:
                    continue
                head = normalize(seg[0] + invert(v[0])) if seg[0] != v[0] else ""
                tail = normalize(invert(v[-1]) + seg[-1]) if t > 1 and seg[-1] != v[-1] else ""
                # length before renormalizing; renormalizing only shortens further
                gain = t - (n - t) - len(head) - len(tail)
                if gain > 0 and (best is None or gain > best[0]):
                    best = (gain, i, t, head + invert(r[t:]) + tail)
    if best is None:
        return None
    _, i, t, repl = best
    return normalize(w[:i] + repl + w[i + t:])


def dehn_normalize(w: str, R: SymmetrizedSet, *, cyclic: bool = False, gate: bool = True) -> DehnResult:
    """Run Dehn's algorithm for M / <<R>> on the word ``w``.

    The gate requires C'(1/8) for ``R``. With ``cyclic=True`` the word is
    also conjugated to a cyclically reduced form after each step, so
    replacements may wrap around its end (this decides triviality, not
    equality of the normal forms).
    """
    check = satisfies_cprime(R, DEHN_GATE) if gate else None
    if check is not None and not check.holds:
        raise GateError("small-cancellation gate failed", check)
    index = _RelatorIndex(R)
    cur = normalize(w)
    if cyclic:
        cur = cyclic_reduce_word(cur)
    steps = 0
    while cur and index.groups:
        if cyclic:
            nxt = None
            for s in range(len(cur)):
                rot = cur[s:] + cur[:s]
                nxt = _reduce_once(rot, index)
                if nxt is not None:
                    nxt = cyclic_reduce_word(nxt)
                    break
        else:
            nxt = _reduce_once(cur, index)
        if nxt is None:
            break
        cur = nxt
        steps += 1
    return DehnResult(cur, cur == "", steps, check)


def greendlinger_equal(R1: SymmetrizedSet, R2: SymmetrizedSet) -> bool:
    """Equality of normal closures for C'(1/8) symmetrized sets, decided as set equality."""
    for R in (R1, R2):
        check = satisfies_cprime(R, DEHN_GATE)
        if not check.holds:
            raise GateError("small-cancellation gate failed", check)
    return R1.canonical_keys == R2.canonical_keys
