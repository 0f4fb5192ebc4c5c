"""Relator tuples and the rigidity equivalence.

Two tuples are equivalent when one is obtained from the other by reordering
the entries, rotating each entry, optionally inverting each entry, and
optionally applying eta to the whole tuple.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .words import (
    WordError,
    canonical_rotation,
    eta,
    invert,
    is_cyclically_reduced,
    order_key,
    parse_word,
    rotations,
)

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    """An explicit enumeration would exceed the configured budget."""


@dataclass(frozen=True)
class RelatorTuple:
    relators: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "relators", tuple(self.relators))
        if not self.relators:
            raise WordError("a relator tuple needs at least one relator")
        for r in self.relators:
            if not r or not is_cyclically_reduced(r):
                raise WordError(f"relator {r!r} is not a nonempty cyclically reduced word")

    @classmethod
    def of(cls, *words: str) -> "RelatorTuple":
        return cls(tuple(words))

    @property
    def m(self) -> int:
        return len(self.relators)

    @property
    def size(self) -> int:
        """|tau|, the maximum relator length."""
        return max(len(r) for r in self.relators)

    @property
    def equal_lengths(self) -> bool:
        return len({len(r) for r in self.relators}) == 1

    def __iter__(self) -> Iterator[str]:
        return iter(self.relators)

    def __len__(self) -> int:
        return len(self.relators)

    def __getitem__(self, i: int) -> str:
        return self.relators[i]

    def eta(self) -> "RelatorTuple":
        return RelatorTuple(tuple(eta(r) for r in self.relators))

    def sort_key(self) -> tuple[str, ...]:
        return tuple(order_key(r) for r in self.relators)


def parse_relators(text: str) -> RelatorTuple:
    """Parse the relator-file format: one word per line, '#' comments."""
    words = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            words.append(parse_word(line))
        except WordError as exc:
            raise WordError(f"line {lineno}: {exc}") from None
    return RelatorTuple(tuple(words))


def read_relators(path: str | Path) -> RelatorTuple:
    return parse_relators(Path(path).read_text(encoding="utf-8"))


def format_relators(t: RelatorTuple) -> str:
    return "".join(r + "\n" for r in t.relators)


@dataclass(frozen=True)
class SymmetrizedSet:
    members: frozenset[str]
    canonical_keys: frozenset[str]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, w: object) -> bool:
        return w in self.members

    def eta(self) -> "SymmetrizedSet":
        # eta commutes with rotation and inversion, so it maps the closure onto itself
        return SymmetrizedSet(
            frozenset(eta(w) for w in self.members),
            frozenset(canonical_rotation(eta(k)) for k in self.canonical_keys),
        )


def symmetrize(words: Iterable[str]) -> SymmetrizedSet:
    """Symmetrized closure of an arbitrary collection of cyclically reduced words."""
    members: set[str] = set()
    keys: set[str] = set()
    for r in words:
        for x in (r, invert(r)):
            members.update(rotations(x))
            keys.add(canonical_rotation(x))
    return SymmetrizedSet(frozenset(members), frozenset(keys))


def symmetrized_closure(t: RelatorTuple) -> SymmetrizedSet:
    return symmetrize(t.relators)


def _least_over_orbit(r: str) -> str:
    a = canonical_rotation(r)
    b = canonical_rotation(invert(r))
    return min(a, b, key=order_key)


def canonical_tuple(t: RelatorTuple) -> RelatorTuple:
    """Canonical representative of the equivalence class of ``t``."""
    best = None
    for src in (t.relators, tuple(eta(r) for r in t.relators)):
        cand = tuple(sorted((_least_over_orbit(r) for r in src), key=order_key))
        key = tuple(order_key(r) for r in cand)
        if best is None or key < best[0]:
            best = (key, cand)
    return RelatorTuple(best[1])


def equivalent(s: RelatorTuple, t: RelatorTuple) -> bool:
    return len(s) == len(t) and canonical_tuple(s) == canonical_tuple(t)


def entry_images(r: str) -> list[str]:
    """The 2n words rot_s(r^e): rotations of r, then rotations of r^-1."""
    return rotations(r) + rotations(invert(r))


def transform_count(t: RelatorTuple) -> int:
    """Formal number of transforms: 2 * m! * prod(2 |r_i|)."""
    return 2 * math.factorial(t.m) * math.prod(2 * len(r) for r in t.relators)


def iter_transforms(t: RelatorTuple) -> Iterator[tuple[tuple, RelatorTuple]]:
    """Yield (formal transform, image tuple) for every formal transform of ``t``.

    A formal transform is (delta, permutation, ((shift, inverted), ...)); the
    identity is (0, identity permutation, ((0, False), ...)).
    """
    m = t.m
    for delta in (0, 1):
        src = t.relators if delta == 0 else tuple(eta(r) for r in t.relators)
        images = [entry_images(r) for r in src]
        for perm in itertools.permutations(range(m)):
            choices = [range(len(images[j])) for j in perm]
            for picks in itertools.product(*choices):
                words = tuple(images[j][p] for j, p in zip(perm, picks))
                labels = tuple(
                    (p % len(src[j]), p >= len(src[j])) for j, p in zip(perm, picks)
                )
                yield (delta, perm, labels), RelatorTuple(words)


def orbit(t: RelatorTuple, budget: int = DEFAULT_BUDGET) -> set[RelatorTuple]:
    """All tuples reachable from ``t``; refuses when the transform count exceeds ``budget``."""
    total = transform_count(t)
    if total > budget:
        raise BudgetExceeded(f"orbit enumeration needs {total} transforms, budget {budget}")
    return {image for _, image in iter_transforms(t)}


def has_trivial_symmetry(t: RelatorTuple) -> bool:
    """True when no nontrivial transform fixes ``t`` (so its orbit has full size).

    Equivalent to: no entry is a proper power, no entry is a rotation of its
    own inverse, no two entries are rotations of each other up to inversion,
    and the symmetrized closure is disjoint from its eta-image.
    """
    keys = []
    for r in t.relators:
        if (r + r).find(r, 1) < len(r):
            return False
        k = canonical_rotation(r)
        if k == canonical_rotation(invert(r)):
            return False
        keys.append(k)
        keys.append(canonical_rotation(invert(r)))
    if len(set(keys)) != len(keys):
        return False
    eta_keys = {canonical_rotation(eta(k)) for k in keys}
    return not (eta_keys & set(keys))
