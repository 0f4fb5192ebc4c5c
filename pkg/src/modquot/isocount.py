"""Isomorphism decisions, isomorphism-orbit counting and presentation encoding."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from .genericity import CONDITIONS, GenericityParams, check_Q
from .smallcancel import DEHN_GATE, greendlinger_equal, satisfies_cprime
from .tuples import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    RelatorTuple,
    canonical_tuple,
    has_trivial_symmetry,
    symmetrized_closure,
)
from .words import enumerate_cyclic, gamma


@dataclass(frozen=True)
class IsoVerdict:
    outcome: str  # "isomorphic", "not_isomorphic" or "undecided"
    reason: dict

    def to_dict(self) -> dict:
        return {"outcome": self.outcome, "reason": self.reason}


def generic_iso(s: RelatorTuple, t: RelatorTuple, p: GenericityParams = GenericityParams()) -> IsoVerdict:
    """Partial isomorphism test for M/<<s>> and M/<<t>>.

    Answers only when one tuple passes Q and the other's closure satisfies
    C'(1/8); then the groups are isomorphic iff R(s) = R(t) or R(s) = eta(R(t)).
    Both closures must satisfy C'(1/8) for the set comparison, which Q
    already implies whenever lambda <= 1/8. Otherwise the verdict is
    ``undecided``.
    """
    Rs, Rt = symmetrized_closure(s), symmetrized_closure(t)
    q_s, q_t = check_Q(s, p, uprime=False), check_Q(t, p, uprime=False)
    c_s, c_t = satisfies_cprime(Rs, DEHN_GATE), satisfies_cprime(Rt, DEHN_GATE)
    gates = {
        "first_Q": q_s.overall_Q,
        "second_Q": q_t.overall_Q,
        "first_cprime_1_8": c_s.holds,
        "second_cprime_1_8": c_t.holds,
    }
    passed = (q_s.overall_Q or q_t.overall_Q) and c_s.holds and c_t.holds
    if not passed:
        failed = {
            side: [c for c in CONDITIONS if not rep.verdicts[c].passed]
            for side, rep in (("first", q_s), ("second", q_t))
        }
        return IsoVerdict("undecided", {"gates": gates, "failed_conditions": failed})
    if greendlinger_equal(Rs, Rt):
        return IsoVerdict("isomorphic", {"gates": gates, "witness": "R(s) = R(t)"})
    if greendlinger_equal(Rs, Rt.eta()):
        return IsoVerdict("isomorphic", {"gates": gates, "witness": "R(s) = eta(R(t))"})
    if s.m != t.m and q_s.overall_U and q_t.overall_U and s.size == t.size:
        witness = "different relator counts at equal length"
    else:
        witness = "R(s) differs from R(t) and from eta(R(t))"
    return IsoVerdict("not_isomorphic", {"gates": gates, "witness": witness})


# --- orbit counting ---------------------------------------------------------

Filter = Callable[[RelatorTuple], bool]

FILTERS: dict[str, Filter] = {
    "all": lambda t: True,
    "trivial_symmetry": has_trivial_symmetry,
}


@dataclass(frozen=True)
class OrbitCensus:
    n: int
    m: int
    tuples: int
    orbits: int


def _census_chunk(args) -> tuple[int, set[RelatorTuple]]:
    n, m, filter_name, part, parts = args
    keep = FILTERS[filter_name]
    words = list(enumerate_cyclic(n))
    classes = set()
    count = 0
    for first in words[part::parts]:
        for rest in itertools.product(words, repeat=m - 1):
            t = RelatorTuple((first,) + rest)
            if keep(t):
                count += 1
                classes.add(canonical_tuple(t))
    return count, classes


def orbit_census(n: int, m: int, filter_name: str = "all", budget: int = DEFAULT_BUDGET,
                 workers: int = 1) -> OrbitCensus:
    """Count tuples of length-n entries passing a filter and their equivalence classes.

    The enumeration is split on the first entry; buckets of canonical
    representatives are merged, so the result does not depend on ``workers``.
    """
    if n < 2 or n % 2:
        raise ValueError("n must be even and >= 2")
    if m < 1:
        raise ValueError("m must be >= 1")
    if filter_name not in FILTERS:
        raise ValueError(f"unknown filter {filter_name!r}")
    total = gamma(n) ** m
    if total > budget:
        raise BudgetExceeded(f"{total} tuples exceed budget {budget}")
    jobs = [(n, m, filter_name, w, workers) for w in range(workers)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_census_chunk, jobs))
    else:
        parts = [_census_chunk(jobs[0])]
    count = sum(c for c, _ in parts)
    classes = set().union(*(cl for _, cl in parts))
    return OrbitCensus(n, m, count, len(classes))


def count_orbits(n: int, m: int, filter_name: str = "all", budget: int = DEFAULT_BUDGET) -> int:
    return orbit_census(n, m, filter_name, budget).orbits


def orbit_constant(n: int, m: int) -> int:
    """Size of a full orbit: 2 m! (2n)^m."""
    return 2 * math.factorial(m) * (2 * n) ** m


def asymptotic_Im(n: int, m: int) -> Fraction:
    """(2^(n/2+1))^m / (2 m! (2n)^m), exactly."""
    if n < 2 or n % 2:
        raise ValueError("n must be even and >= 2")
    return Fraction((2 ** (n // 2 + 1)) ** m, orbit_constant(n, m))


# --- presentations ----------------------------------------------------------


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class GenericPresentation:
    """<b_1..b_s | w_1..w_t>; relator letters are signed generator indices."""

    generators: int
    relators: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "relators", tuple(tuple(w) for w in self.relators))
        if self.generators < 0:
            raise PresentationError("generator count must be non-negative")
        for w in self.relators:
            if not w:
                raise PresentationError("relators must be nonempty")
            for x in w:
                if x == 0 or abs(x) > self.generators:
                    raise PresentationError(f"letter {x} out of range 1..{self.generators}")

    def unused_generators(self) -> list[int]:
        used = {abs(x) for w in self.relators for x in w}
        return [i for i in range(1, self.generators + 1) if i not in used]


def tau_presentation(t: RelatorTuple) -> GenericPresentation:
    """<a, b | a^2, b^3, r_1, ..., r_m> with a = 1, b = 2."""
    code = {"a": 1, "b": 2, "B": -2}
    rels = [(1, 1), (2, 2, 2)] + [tuple(code[x] for x in r) for r in t.relators]
    return GenericPresentation(2, tuple(rels))


def parse_presentation(text: str) -> GenericPresentation:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise PresentationError("empty presentation file")
    try:
        s = int(lines[0])
        rels = tuple(tuple(int(x) for x in ln.split()) for ln in lines[1:])
    except ValueError as exc:
        raise PresentationError(f"malformed presentation: {exc}") from None
    return GenericPresentation(s, rels)


def read_presentation(path: str | Path) -> GenericPresentation:
    return parse_presentation(Path(path).read_text(encoding="utf-8"))


def ell1(g: GenericPresentation) -> int:
    return sum(len(w) for w in g.relators)


SYMBOLS = "b01-,|"
BLOCK = 3  # bits per symbol; 2^3 >= 6


def presentation_symbols(g: GenericPresentation) -> str:
    """b_i -> 'b' + binary(i), b_i^-1 -> '-b' + binary(i); ',' between relators, '|' at the end."""
    unused = g.unused_generators()
    if unused:
        raise PresentationError(f"generators {unused} occur in no relator")
    parts = []
    for w in g.relators:
        parts.append("".join(("-" if x < 0 else "") + "b" + format(abs(x), "b") for x in w))
    return ",".join(parts) + "|"


def encode_presentation(g: GenericPresentation) -> str:
    """Bit string: each symbol of :func:`presentation_symbols` as a fixed 3-bit block."""
    return "".join(format(SYMBOLS.index(c), "03b") for c in presentation_symbols(g))


def decode_presentation(bits: str) -> GenericPresentation:
    if len(bits) % BLOCK:
        raise PresentationError("bit length is not a multiple of the block size")
    symbols = []
    for i in range(0, len(bits), BLOCK):
        code = int(bits[i:i + BLOCK], 2)
        if code >= len(SYMBOLS):
            raise PresentationError(f"invalid block {bits[i:i + BLOCK]}")
        symbols.append(SYMBOLS[code])
    text = "".join(symbols)
    if not text.endswith("|") or text.count("|") != 1:
        raise PresentationError("presentation must end with a single '|'")
    rels = []
    for chunk in text[:-1].split(",") if len(text) > 1 else ():
        letters = []
        i = 0
        while i < len(chunk):
            sign = 1
            if chunk[i] == "-":
                sign = -1
                i += 1
            if i >= len(chunk) or chunk[i] != "b":
                raise PresentationError("expected 'b'")
            i += 1
            j = i
            while j < len(chunk) and chunk[j] in "01":
                j += 1
            if j == i or chunk[i] == "0":
                raise PresentationError("malformed generator index")
            letters.append(sign * int(chunk[i:j], 2))
            i = j
        rels.append(tuple(letters))
    generators = max((abs(x) for w in rels for x in w), default=0)
    return GenericPresentation(generators, tuple(rels))


def bits_to_hex(bits: str) -> str:
    """Hex digits of the bit string, right-padded with zeros to a multiple of 4 bits."""
    if not bits:
        return ""
    padded = bits + "0" * (-len(bits) % 4)
    return format(int(padded, 2), f"0{len(padded) // 4}x")


def encode_tuple_words(words: Sequence[str]) -> GenericPresentation:
    return tau_presentation(RelatorTuple(tuple(words)))
