"""Normal forms in the modular group M = <a, b | a^2 = b^3 = 1>.

Words are plain ``str`` values over the three-letter alphabet ``a``, ``b``,
``B`` (``B`` is b^-1). A word is *reduced* when it contains none of
``aa``, ``bB``, ``Bb``, ``bb``, ``BB``; reduced words are exactly the
normal forms of elements of M, and every reduced word alternates between
``a`` and a b-letter.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator

ALPHABET = "abB"

_INVERSE = str.maketrans("bB", "Bb")
# Letter order a < b < B used for canonical rotations and tuple ordering.
_ORDER = str.maketrans("abB", "012")
# Exponent of a b-letter in Z3, and the letter for each nonzero exponent.
_B_EXP = {"b": 1, "B": 2}
_B_LETTER = {1: "b", 2: "B"}


class WordError(ValueError):
    """Raised for text that is not a valid (reduced) word."""


class Letter(enum.Enum):
    A = "a"
    B = "b"
    Binv = "B"

    @property
    def inverse(self) -> "Letter":
        return Letter(self.value.translate(_INVERSE))

    @property
    def is_b(self) -> bool:
        return self is not Letter.A


def order_key(w: str) -> str:
    """Sort key realising the letter order a < b < B."""
    return w.translate(_ORDER)


def is_reduced(w: str) -> bool:
    for x, y in zip(w, w[1:]):
        if x == "a" and y == "a":
            return False
        if x != "a" and y != "a":
            return False
    return True


def is_cyclically_reduced(w: str) -> bool:
    if not is_reduced(w):
        return False
    if len(w) <= 1:
        return True
    return (w[0] == "a") != (w[-1] == "a")


def parse_word(text: str, *, reduce: bool = False) -> str:
    """Validate word text; with ``reduce=True`` normalize instead of rejecting."""
    bad = set(text) - set(ALPHABET)
    if bad:
        raise WordError(f"invalid letters {''.join(sorted(bad))!r} in word {text!r}")
    if reduce:
        return normalize(text)
    if not is_reduced(text):
        raise WordError(f"word {text!r} is not reduced")
    return text


def normalize(raw: Iterable[str | Letter]) -> str:
    """Return the reduced word equal in M to the letter sequence ``raw``."""
    stack: list[str] = []
    for x in raw:
        if isinstance(x, Letter):
            x = x.value
        if x not in _B_EXP and x != "a":
            raise WordError(f"invalid letter {x!r}")
        if not stack:
            stack.append(x)
            continue
        top = stack[-1]
        if x == "a":
            if top == "a":
                stack.pop()
            else:
                stack.append(x)
        elif top == "a":
            stack.append(x)
        else:
            # b-syllables merge in Z3; the letter below is an a (or nothing).
            e = (_B_EXP[top] + _B_EXP[x]) % 3
            stack.pop()
            if e:
                stack.append(_B_LETTER[e])
    return "".join(stack)


def invert(w: str) -> str:
    return w[::-1].translate(_INVERSE)


def eta(w: str) -> str:
    """The automorphism fixing a and inverting b."""
    return w.translate(_INVERSE)


def least_rotation(w: str) -> int:
    """Offset of the lexicographically least rotation (Booth's algorithm).

    Comparison uses the letter order a < b < B.
    """
    s = order_key(w)
    s2 = s + s
    n = len(s)
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        c = s2[j]
        i = f[j - k - 1]
        while i != -1 and c != s2[k + i + 1]:
            if c < s2[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if i == -1 and c != s2[k + i + 1]:
            if c < s2[k + i + 1]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


def canonical_rotation(w: str) -> str:
    if not w:
        return w
    k = least_rotation(w)
    return w[k:] + w[:k]


@dataclass(frozen=True)
class CyclicWord:
    """A cyclically reduced word up to rotation.

    ``rep`` is always the least rotation, so equality of instances is
    equality of rotation classes.
    """

    rep: str

    def __post_init__(self) -> None:
        if not is_cyclically_reduced(self.rep):
            raise WordError(f"{self.rep!r} is not cyclically reduced")
        object.__setattr__(self, "rep", canonical_rotation(self.rep))

    @property
    def length(self) -> int:
        return len(self.rep)

    def __len__(self) -> int:
        return len(self.rep)

    def __str__(self) -> str:
        return self.rep


def cyclic_reduce_word(w: str) -> str:
    """Conjugate ``w`` to a cyclically reduced word (a rotation is kept as found)."""
    w = normalize(w)
    # Moving the last letter to the front is a conjugation; normalizing then
    # strictly shortens the word whenever the two ends interact.
    while len(w) > 1 and (w[0] == "a") == (w[-1] == "a"):
        w = normalize(w[-1] + w[:-1])
    return w


def cyclic_reduce(w: str) -> CyclicWord:
    return CyclicWord(cyclic_reduce_word(w))


def rotations(c: CyclicWord | str) -> list[str]:
    w = c.rep if isinstance(c, CyclicWord) else c
    if not w:
        return [""]
    return [w[i:] + w[:i] for i in range(len(w))]


def gamma(n: int) -> int:
    """Number of cyclically reduced words of length exactly ``n``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 1
    if n == 1:
        return 3
    if n % 2:
        return 0
    return 2 * 2 ** (n // 2)


def rho(n: int) -> int:
    """Number of cyclically reduced words of length at most ``n``."""
    return sum(gamma(k) for k in range(n + 1))


@dataclass(frozen=True)
class CountTable:
    n: int
    gamma: int
    rho: int


def count_table(n: int) -> CountTable:
    return CountTable(n, gamma(n), rho(n))


def enumerate_cyclic(n: int) -> Iterator[str]:
    """Yield every cyclically reduced word of length ``n`` once, in a < b < B order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        yield ""
        return
    if n == 1:
        yield from "abB"
        return
    if n % 2:
        return
    half = n // 2
    for bits in itertools.product("bB", repeat=half):
        yield "".join("a" + x for x in bits)
    for bits in itertools.product("bB", repeat=half):
        yield "".join(x + "a" for x in bits)


def enumerate_reduced(n: int) -> Iterator[str]:
    """Yield every reduced word of length ``n`` (2^floor(n/2) + 2 * 2^floor((n-1)/2) of them for n >= 1)."""
    if n == 0:
        yield ""
        return
    for first in "abB":
        a_first = first == "a"
        free = n // 2 if a_first else (n - 1) // 2
        for bits in itertools.product("bB", repeat=free):
            out = []
            it = iter(bits)
            for i in range(n):
                on_a = (i % 2 == 0) == a_first
                if i == 0:
                    out.append(first)
                elif on_a:
                    out.append("a")
                else:
                    out.append(next(it))
            yield "".join(out)


def random_cyclic(rng: random.Random, n: int) -> str:
    """Uniform cyclically reduced word of even length ``n >= 2`` drawn from ``rng``."""
    half = n // 2
    bits = rng.getrandbits(half + 1)
    a_first = bits & 1
    bits >>= 1
    letters = ["bB"[(bits >> i) & 1] for i in range(half)]
    if a_first:
        return "".join("a" + x for x in letters)
    return "".join(x + "a" for x in letters)


def random_reduced(rng: random.Random, n: int) -> str:
    """Uniform reduced word of length ``n``."""
    if n == 0:
        return ""
    first = rng.choice(ALPHABET)
    out = [first]
    for _ in range(n - 1):
        out.append("a" if out[-1] != "a" else rng.choice("bB"))
    return "".join(out)


def sample_cyclic(n: int, seed: int) -> str:
    """Uniform cyclically reduced word of even length ``n``, deterministic in ``seed``."""
    if n < 2 or n % 2:
        raise WordError(f"sampling length must be even and >= 2, got {n}")
    return random_cyclic(random.Random(seed), n)
