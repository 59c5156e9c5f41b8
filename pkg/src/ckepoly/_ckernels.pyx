# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the integer kernels in ``_pykernels``.

Entries stay Python ints (coefficients are unbounded); the gain comes from
typed loop indices and list access without bounds checks.
"""
from math import gcd


def poly_mulmod(list a, list b, list low):
    cdef Py_ssize_t n = len(low)
    cdef Py_ssize_t i, j, d, base
    cdef list prod = [0] * (2 * n - 1)
    cdef object ai, bj, c, li
    for i in range(n):
        ai = a[i]
        if ai:
            for j in range(n):
                bj = b[j]
                if bj:
                    prod[i + j] += ai * bj
    for d in range(2 * n - 2, n - 1, -1):
        c = prod[d]
        if c:
            base = d - n
            for i in range(n):
                li = low[i]
                if li:
                    prod[base + i] -= c * li
    return prod[:n]


def int_matmul(list a, list b):
    cdef Py_ssize_t inner = len(b)
    cdef Py_ssize_t cols = len(b[0]) if inner else 0
    cdef Py_ssize_t k, j
    cdef list out = [], acc, row, bk
    cdef object r
    for row in a:
        acc = [0] * cols
        for k in range(inner):
            r = row[k]
            if r:
                bk = b[k]
                for j in range(cols):
                    acc[j] += r * bk[j]
        out.append(acc)
    return out


def vec_matmul(list v, list m):
    cdef Py_ssize_t rows = len(m)
    cdef Py_ssize_t cols = len(m[0]) if rows else 0
    cdef Py_ssize_t k, j
    cdef list acc = [0] * cols, mk
    cdef object x
    for k in range(rows):
        x = v[k]
        if x:
            mk = m[k]
            for j in range(cols):
                acc[j] += x * mk[j]
    return acc


def echelon(rows, Py_ssize_t ncols):
    cdef list work = [list(src) for src in rows]
    cdef Py_ssize_t nrows = len(work)
    cdef Py_ssize_t width = len(work[0]) if work else 0
    cdef list pivots = []
    cdef int sign = 1
    cdef object prev = 1, p, x
    cdef Py_ssize_t r = 0, col, i, j, best, bits, best_bits
    cdef list prow, row
    for col in range(ncols):
        if r == nrows:
            break
        best = -1
        best_bits = 0
        for i in range(r, nrows):
            x = (<list>work[i])[col]
            if x:
                bits = x.bit_length() if x > 0 else (-x).bit_length()
                if best < 0 or bits < best_bits:
                    best = i
                    best_bits = bits
                    if bits == 1:
                        break
        if best < 0:
            continue
        if best != r:
            work[r], work[best] = work[best], work[r]
            sign = -sign
        prow = work[r]
        p = prow[col]
        for i in range(r + 1, nrows):
            row = work[i]
            x = row[col]
            if x:
                for j in range(col + 1, width):
                    row[j] = (p * row[j] - x * prow[j]) // prev
            elif prev != p:
                for j in range(col + 1, width):
                    if row[j]:
                        row[j] = (p * row[j]) // prev
            row[col] = 0
        prev = p
        pivots.append(col)
        r += 1
    return work[:r], pivots, sign


def back_reduce(rows, list pivots, Py_ssize_t ncols):
    cdef list work = [], prow, row
    cdef Py_ssize_t k, i, j, pc
    cdef object g, p, x
    for r in rows:
        g = gcd(*r)
        work.append([y // g for y in r] if g > 1 else list(r))
    for k in range(len(pivots) - 1, -1, -1):
        pc = pivots[k]
        prow = work[k]
        p = prow[pc]
        for i in range(k):
            row = work[i]
            x = row[pc]
            if x:
                for j in range(ncols):
                    row[j] = p * row[j] - x * prow[j]
                g = gcd(*row)
                if g > 1:
                    for j in range(ncols):
                        row[j] //= g
    return work
