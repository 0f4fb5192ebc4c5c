"""Barbell graphs and readability of words along their paths.

The u-barbell has an a-loop at vertex 0, a b-loop at vertex ``len(u)`` and a
simple arc labelled ``u`` from 0 to ``len(u)``. Every edge is traversable in
both directions, reading the inverse label backwards.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import kernels
from .words import CyclicWord, WordError, invert, is_cyclically_reduced

_INV = {"a": "a", "b": "B", "B": "b"}
# Letters that may follow the previous letter in a reduced word.
_NEXT = {"": ("a", "b", "B"), "a": ("b", "B"), "b": ("a",), "B": ("a",)}


@dataclass(frozen=True)
class Edge:
    src: int
    label: str
    dst: int


@dataclass(frozen=True)
class BarbellGraph:
    bar: str
    edges: tuple[Edge, ...]
    _out: dict = field(default=None, repr=False, compare=False, hash=False)

    @property
    def num_vertices(self) -> int:
        return len(self.bar) + 1

    @property
    def a_vertex(self) -> int:
        return 0

    @property
    def b_vertex(self) -> int:
        return len(self.bar)

    @property
    def k(self) -> int:
        return len(self.bar) // 2

    @property
    def reduced(self) -> bool:
        u = self.bar
        return (
            len(u) >= 2
            and len(u) % 2 == 0
            and is_cyclically_reduced(u)
            and u[0] != "a"
            and u[-1] == "a"
        )

    def out(self) -> dict[int, dict[str, list[tuple[int, int]]]]:
        """vertex -> label -> [(edge index, target)]."""
        if self._out is None:
            table: dict = defaultdict(lambda: defaultdict(list))
            for i, e in enumerate(self.edges):
                table[e.src][e.label].append((i, e.dst))
            object.__setattr__(self, "_out", {v: dict(d) for v, d in table.items()})
        return self._out


def build_barbell(u: str) -> BarbellGraph:
    if not u:
        raise WordError("barbell bar must be nonempty")
    if set(u) - set(_INV):
        raise WordError(f"invalid letters in bar {u!r}")
    y = len(u)
    edges = [Edge(0, "a", 0), Edge(0, "a", 0), Edge(y, "b", y), Edge(y, "B", y)]
    for j, x in enumerate(u):
        edges.append(Edge(j, x, j + 1))
        edges.append(Edge(j + 1, _INV[x], j))
    return BarbellGraph(u, tuple(edges))


def reduced_bars(max_len: int) -> list[str]:
    """All bars of reduced barbells with 2 <= |u| <= max_len, shortest first."""
    out = []
    for half in range(1, max_len // 2 + 1):
        for mask in range(2**half):
            out.append("".join("bB"[(mask >> (half - 1 - i)) & 1] + "a" for i in range(half)))
    return out


@dataclass(frozen=True)
class ReadabilityAnswer:
    readable: bool
    start_vertex: int | None = None
    path: tuple[Edge, ...] | None = None

    def replay(self) -> str:
        return "".join(e.label for e in self.path or ())


def readable(w: str, g: BarbellGraph) -> ReadabilityAnswer:
    """Decide whether ``w`` labels a path in ``g`` by subset simulation from all vertices."""
    out = g.out()
    frontier = {v: None for v in range(g.num_vertices)}
    history = [frontier]
    for x in w:
        nxt: dict[int, tuple[int, int]] = {}
        for v in frontier:
            for ei, dst in out.get(v, {}).get(x, ()):
                if dst not in nxt:
                    nxt[dst] = (v, ei)
        if not nxt:
            return ReadabilityAnswer(False)
        frontier = nxt
        history.append(frontier)
    v = min(frontier)
    path = []
    for step in reversed(history[1:]):
        prev, ei = step[v]
        path.append(g.edges[ei])
        v = prev
    return ReadabilityAnswer(True, v, tuple(reversed(path)))


def _step(out, states: frozenset, x: str) -> frozenset:
    return frozenset(dst for v in states for _, dst in out.get(v, {}).get(x, ()))


def count_readable_union(n: int, graphs: Iterable[BarbellGraph]) -> int:
    """Number of reduced words of length ``n`` readable in at least one of ``graphs``.

    Subset construction on the disjoint union of the graphs, run in product
    with the automaton remembering the last letter (which enforces
    reducedness), counted by dynamic programming over lengths.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    out: dict = {}
    everything = []
    offset = 0
    for g in graphs:
        for v, labels in g.out().items():
            out[v + offset] = {
                x: [(ei, dst + offset) for ei, dst in lst] for x, lst in labels.items()
            }
        everything.extend(range(offset, offset + g.num_vertices))
        offset += g.num_vertices
    if not everything:
        return 0
    layer: dict[tuple[frozenset, str], int] = {(frozenset(everything), ""): 1}
    cache: dict[tuple[frozenset, str], frozenset] = {}
    for _ in range(n):
        nxt: dict[tuple[frozenset, str], int] = defaultdict(int)
        for (states, last), cnt in layer.items():
            for x in _NEXT[last]:
                key = (states, x)
                if key not in cache:
                    cache[key] = _step(out, states, x)
                s2 = cache[key]
                if s2:
                    nxt[(s2, x)] += cnt
        layer = nxt
    return sum(layer.values())


def count_readable(n: int, g: BarbellGraph) -> int:
    """Number of distinct reduced words of length ``n`` readable in ``g``."""
    return count_readable_union(n, [g])


def readable_count_bound(n: int, k: int) -> float:
    """The explicit bound 4 (2k+1) 2^(n/(4k+2)) on readable words in a reduced barbell, |u| = 2k."""
    return 4 * (2 * k + 1) * 2 ** (n / (4 * k + 2))


@dataclass(frozen=True)
class ThetaWitness:
    u: str
    v: str


@dataclass(frozen=True)
class ThetaReadability:
    readable: bool
    witness: ThetaWitness | None = None


def _as_text(w: CyclicWord | str) -> str:
    return w.rep if isinstance(w, CyclicWord) else w


def _window_bar(ww: str, start: int, length: int, k: int, c: int) -> str:
    period = 4 * k + 2
    slot_val: dict[int, int] = {}
    for i in range(start, start + length):
        o = (i - c) % period
        if o % 2 == 1 and o != 2 * k + 1:
            bit = 0 if ww[i] == "b" else 1
            if o < 2 * k + 1:
                slot_val[o] = bit
            else:
                slot_val[period - o] = bit ^ 1
    return "".join(
        "a" if j % 2 == 0 else "bB"[slot_val.get(j, 0)] for j in range(1, 2 * k + 1)
    )


def theta_readable(w: CyclicWord | str, theta: Fraction) -> ThetaReadability:
    """Is some subword v of a rotation of w^{+-1}, |v| >= |w|/2, readable in a
    reduced u-barbell with |u| <= theta |v|?

    Bars are tried shortest first and the first witness is returned.
    """
    w = _as_text(w)
    theta = Fraction(theta)
    if not 0 < theta < 1:
        raise ValueError("theta must lie in (0, 1)")
    n = len(w)
    if n < 2:
        return ThetaReadability(False)
    if not is_cyclically_reduced(w):
        raise WordError(f"{w!r} is not cyclically reduced")
    half = (n + 1) // 2
    k = 1
    # v is readable in w and w^-1 alike (paths reverse), so only w is scanned.
    while 2 * k <= theta * n:
        need = max(half, math.ceil(Fraction(2 * k) / theta))
        if need <= n:
            length, start, c = kernels.bounce_run(w, k)
            if length >= need:
                ww = w + w
                u = _window_bar(ww, start, length, k, c)
                return ThetaReadability(True, ThetaWitness(u, ww[start:start + need]))
        k += 1
    return ThetaReadability(False)


def theta_readable_candidates(w: CyclicWord | str, theta: Fraction) -> ThetaReadability:
    """Slow reference for :func:`theta_readable`.

    Candidate bars are the subwords of rotations of w^{+-1} with reduced-barbell
    shape; each window of the required length is tested with :func:`readable`.
    """
    w = _as_text(w)
    theta = Fraction(theta)
    n = len(w)
    if n < 2:
        return ThetaReadability(False)
    half = (n + 1) // 2
    ww = w + w
    wi = invert(w) * 2
    k = 1
    while 2 * k <= theta * n:
        need = max(half, math.ceil(Fraction(2 * k) / theta))
        if need <= n:
            bars = sorted(
                {
                    s[i:i + 2 * k]
                    for s in (ww, wi)
                    for i in range(n)
                    if s[i] != "a" and s[i + 2 * k - 1] == "a"
                }
            )
            for u in bars:
                g = build_barbell(u)
                for i in range(n):
                    v = ww[i:i + need]
                    if readable(v, g).readable:
                        return ThetaReadability(True, ThetaWitness(u, v))
        k += 1
    return ThetaReadability(False)
