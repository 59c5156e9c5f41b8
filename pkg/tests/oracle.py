"""Independent reference arithmetic built on sympy.

Shares no code with ckepoly: field elements are sympy polynomials reduced
mod f, matrices are sympy matrices.  Used at test time for runtime checks
and by tools/derive_oracles.py to freeze values into tests/data.
"""
from fractions import Fraction

import sympy as sp

X = sp.Symbol("x")


def poly(coeffs):
    """Constant-first coefficient list -> sympy Poly over QQ."""
    return sp.Poly(list(reversed([sp.Rational(str(c)) for c in coeffs])), X, domain="QQ")


def coeffs(p, n):
    """sympy Poly -> constant-first list of n Fractions."""
    c = [Fraction(str(v)) for v in reversed(p.all_coeffs())]
    c += [Fraction(0)] * (n - len(c))
    return c[:n]


class RefField:
    def __init__(self, fcoeffs):
        self.f = poly(fcoeffs)
        self.n = len(fcoeffs) - 1

    def red(self, p):
        return p.rem(self.f)

    def mul(self, a, b):
        return coeffs(self.red(poly(a) * poly(b)), self.n)

    def add(self, a, b):
        return [x + y for x, y in zip(a, b)]

    def sub(self, a, b):
        return [x - y for x, y in zip(a, b)]

    def inv(self, a):
        return coeffs(sp.invert(poly(a), self.f), self.n)

    def norm(self, a):
        # f monic: Res(f, a) = Π a(θ_i)
        return Fraction(str(sp.resultant(self.f.as_expr(), poly(a).as_expr(), X)))

    def one(self):
        return [Fraction(1)] + [Fraction(0)] * (self.n - 1)

    def zero(self):
        return [Fraction(0)] * self.n

    def mult_matrix(self, a):
        """Matrix whose k-th column holds the coordinates of a·x^k."""
        cols = []
        for k in range(self.n):
            xk = [0] * self.n
            xk[k] = 1
            cols.append(self.mul(a, xk))
        return sp.Matrix(self.n, self.n, lambda i, j: sp.Rational(str(cols[j][i])))

    # group U ⋉ O with (C, S)(D, T) = (CD, SD + T)
    def gmul(self, x, y):
        (c, s), (d, t) = x, y
        return (self.mul(c, d), self.add(self.mul(s, d), t))

    def ginv(self, x):
        c, s = x
        ci = self.inv(c)
        return (ci, [-v for v in self.mul(s, ci)])

    def gconj(self, g, x):
        """Definitional x⁻¹ g x."""
        return self.gmul(self.gmul(self.ginv(x), g), x)

    def commutator(self, a, b):
        return self.gmul(self.gmul(self.ginv(a), self.ginv(b)), self.gmul(a, b))

    def gid(self):
        return (self.one(), self.zero())


def right_mult_rows(field: RefField, u, basis):
    """Row j holds coords of O_j·u in the given basis (basis as coefficient lists)."""
    bm = sp.Matrix([[sp.Rational(str(c)) for c in b] for b in basis]).T
    rows = []
    for o in basis:
        prod = field.mul(o, u)
        v = bm.LUsolve(sp.Matrix([sp.Rational(str(c)) for c in prod]))
        rows.append([Fraction(str(x)) for x in v])
    return rows


def eval_word(field: RefField, letters, elems):
    acc = field.gid()
    for i, e in letters:
        g = elems[i] if e == 1 else field.ginv(elems[i])
        acc = field.gmul(acc, g)
    return acc


def all_words(count, max_len):
    """Every word over ``count`` symbols with 1 <= length <= max_len."""
    letters = [(i, e) for i in range(count) for e in (1, -1)]
    words = [()]
    out = []
    for _ in range(max_len):
        words = [w + (l,) for w in words for l in letters]
        out.extend(words)
    return out


def brute_force_keys(field: RefField, a, b, b_conj, a_conj, max_len):
    """Keys [A', B'] over all word pairs matching the public conjugates.

    A' ranges over words in ``a`` with A'⁻¹ b_i A' = b_conj[i] for all i,
    B' over words in ``b`` with B'⁻¹ a_i B' = a_conj[i].
    """
    alices = [
        eval_word(field, w, a)
        for w in all_words(len(a), max_len)
    ]
    alices = [x for x in alices if all(field.gconj(g, x) == h for g, h in zip(b, b_conj))]
    bobs = [eval_word(field, w, b) for w in all_words(len(b), max_len)]
    bobs = [y for y in bobs if all(field.gconj(g, y) == h for g, h in zip(a, a_conj))]
    keys = set()
    for x in alices:
        for y in bobs:
            c, s = field.commutator(x, y)
            keys.add((tuple(c), tuple(s)))
    return keys


def _sm(rows):
    return sp.Matrix([[sp.Rational(str(v)) for v in r] for r in rows])


def matrix_inverse(rows):
    return [[Fraction(str(v)) for v in r] for r in _sm(rows).inv().tolist()]


def matrix_det(rows):
    return Fraction(str(_sm(rows).det()))


def matrix_rank(rows):
    return _sm(rows).rank()


def matrix_product(a, b):
    return [[Fraction(str(v)) for v in r] for r in (_sm(a) * _sm(b)).tolist()]
