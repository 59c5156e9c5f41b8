"""Pure-Python integer kernels.

Reference implementation of the hot loops; ``_ckernels.pyx`` mirrors every
function here with the same signature and results.  All inputs are lists of
Python ints and nothing is modified in place unless stated.
"""
from math import gcd


def poly_mulmod(a, b, low):
    """Product of two integer polynomials reduced modulo a monic polynomial.

    ``a`` and ``b`` are coefficient lists of length n (constant term first),
    ``low`` holds c_0..c_{n-1} of f = x^n + c_{n-1}x^{n-1} + ... + c_0.
    """
    n = len(low)
    prod = [0] * (2 * n - 1)
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


def int_matmul(a, b):
    """Dense integer matrix product of row lists."""
    inner = len(b)
    cols = len(b[0]) if inner else 0
    out = []
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


def vec_matmul(v, m):
    """Row vector times matrix."""
    cols = len(m[0]) if m else 0
    acc = [0] * cols
    for k in range(len(m)):
        x = v[k]
        if x:
            mk = m[k]
            for j in range(cols):
                acc[j] += x * mk[j]
    return acc


def echelon(rows, ncols):
    """Fraction-free (Bareiss) row echelon form of an integer matrix.

    Pivots are searched in the first ``ncols`` columns; any further columns
    are carried along.  Returns ``(rows, pivots, sign)``: the echelon rows (fresh lists, zero rows
    dropped), the pivot column of each row and the parity of row swaps.  Among
    candidate pivots the one of smallest bit length is chosen.
    """
    work = [list(r) for r in rows]
    nrows = len(work)
    width = len(work[0]) if work else 0
    pivots = []
    sign = 1
    prev = 1
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        best = -1
        best_bits = 0
        for i in range(r, nrows):
            x = work[i][col]
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


def back_reduce(rows, pivots, ncols):
    """Clear entries above each pivot of an integer echelon form.

    Rows are rescaled by their content after every update, so the result is
    a reduced echelon form up to a positive-or-negative scalar per row.
    """
    work = []
    for r in rows:
        g = gcd(*r)
        work.append([x // g for x in r] if g > 1 else list(r))
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
