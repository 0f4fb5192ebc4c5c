# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see ``_pykernels`` for the reference semantics."""

from libc.stdlib cimport malloc, free


def bounce_run(str w, int k):
    cdef Py_ssize_t n = len(w)
    if n < 2 or k < 1:
        return (0, 0, 0)
    cdef int period = 4 * k + 2
    cdef int freeslot = 2 * k + 1
    cdef Py_ssize_t total = 2 * n
    cdef unsigned char *bits = <unsigned char *> malloc(total)
    cdef int *slot_of = <int *> malloc(total * sizeof(int))
    cdef unsigned char *val_of = <unsigned char *> malloc(total)
    cdef int *zeros = <int *> malloc(freeslot * sizeof(int))
    cdef int *ones = <int *> malloc(freeslot * sizeof(int))
    cdef Py_ssize_t i, e, s, best_len = 0, best_start = 0
    cdef int c, o, sl, conflicts, best_c, a_par
    cdef Py_UCS4 ch
    try:
        for i in range(n):
            ch = w[i]
            bits[i] = 0 if ch == u'b' else 1
            bits[i + n] = bits[i]
        a_par = 0 if w[0] == u'a' else 1
        best_c = a_par
        for c in range(a_par, period, 2):
            for i in range(total):
                o = <int> ((i - c + period) % period)
                if o % 2 == 1 and o != freeslot:
                    if o < freeslot:
                        slot_of[i] = o
                        val_of[i] = bits[i]
                    else:
                        slot_of[i] = period - o
                        val_of[i] = bits[i] ^ 1
                else:
                    slot_of[i] = -1
            for i in range(freeslot):
                zeros[i] = 0
                ones[i] = 0
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
                    best_len = e - s + 1
                    best_start = s
                    best_c = c
                    if best_len == n:
                        return (best_len, best_start, best_c)
        return (best_len, best_start, best_c)
    finally:
        free(bits)
        free(slot_of)
        free(val_of)
        free(zeros)
        free(ones)


def adjacent_lcp(list words):
    cdef Py_ssize_t j, i, m, count = len(words)
    cdef str x, y
    out = []
    for j in range(count - 1):
        x = words[j]
        y = words[j + 1]
        m = min(len(x), len(y))
        i = 0
        while i < m and x[i] == y[i]:
            i += 1
        out.append(i)
    return out
