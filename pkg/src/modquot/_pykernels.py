"""Pure-Python kernels. ``_ckernels.pyx`` mirrors these signatures exactly."""

from __future__ import annotations


def bounce_run(w: str, k: int) -> tuple[int, int, int]:
    """Longest cyclic factor of ``w`` readable in some reduced barbell with |u| = 2k.

    ``w`` must be cyclically reduced of even length. A reduced label of a path
    in a u-barbell is a factor of a word ``... a u x u^-1 a u y u^-1 ...`` with
    period 4k+2, where only the b-loop letters x, y, ... are free. For each
    placement of the a-loop positions (residue ``c`` modulo the period) the
    constrained b-positions fall into k slots, and a window is consistent iff
    each slot sees a single value. Returns ``(length, start, c)`` with
    ``length`` capped at ``len(w)`` and ``start``/``c`` indexing ``w + w``.
    """
    n = len(w)
    if n < 2 or k < 1:
        return (0, 0, 0)
    period = 4 * k + 2
    free = 2 * k + 1
    ww = w + w
    total = 2 * n
    bits = [0 if ch == "b" else 1 for ch in ww]
    a_par = 0 if w[0] == "a" else 1
    best_len, best_start, best_c = 0, 0, a_par
    for c in range(a_par, period, 2):
        slot_of = [-1] * total
        val_of = [0] * total
        for i in range(total):
            o = (i - c) % period
            if o % 2 == 1 and o != free:
                if o < free:
                    slot_of[i] = o
                    val_of[i] = bits[i]
                else:
                    slot_of[i] = period - o
                    val_of[i] = bits[i] ^ 1
        zeros = [0] * free
        ones = [0] * free
        conflicts = 0
        s = 0
        for e in range(total):
            sl = slot_of[e]
            if sl >= 0:
                if val_of[e]:
                    ones[sl] += 1
                    if ones[sl] == 1 and zeros[sl]:
                        conflicts += 1
                else:
                    zeros[sl] += 1
                    if zeros[sl] == 1 and ones[sl]:
                        conflicts += 1
            while conflicts or e - s + 1 > n:
                sl = slot_of[s]
                if sl >= 0:
                    if val_of[s]:
                        ones[sl] -= 1
                        if ones[sl] == 0 and zeros[sl]:
                            conflicts -= 1
                    else:
                        zeros[sl] -= 1
                        if zeros[sl] == 0 and ones[sl]:
                            conflicts -= 1
                s += 1
            if e - s + 1 > best_len:
                best_len, best_start, best_c = e - s + 1, s, c
                if best_len == n:
                    return (best_len, best_start, best_c)
    return (best_len, best_start, best_c)


def adjacent_lcp(words: list[str]) -> list[int]:
    """Longest-common-prefix lengths of consecutive entries of ``words``."""
    out = []
    for x, y in zip(words, words[1:]):
        m = min(len(x), len(y))
        i = 0
        while i < m and x[i] == y[i]:
            i += 1
        out.append(i)
    return out
