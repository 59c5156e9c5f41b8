"""Arithmetic in F = Q[x]/(f) for a monic integer polynomial f.

Elements are stored by their coordinates in the power basis 1, θ, ..., θ^{n-1}
(integer numerators over a common denominator).  The companion-matrix model
is available through :meth:`FieldElement.to_matrix` and
:meth:`NumberField.from_matrix`; the two models are interchangeable.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from ._kernels import poly_mulmod
from .exact_algebra import QMatrix, QVector, determinant


class FieldMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class MonicIntPolynomial:
    """x^n + c_{n-1}x^{n-1} + ... + c_0, stored as ``low = (c_0, ..., c_{n-1})``."""

    low: tuple[int, ...]

    def __post_init__(self):
        if len(self.low) < 2:
            raise ValueError("polynomial degree must be at least 2")
        if not all(isinstance(c, int) for c in self.low):
            raise TypeError("coefficients must be integers")

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[int]) -> MonicIntPolynomial:
        """Build from the full coefficient list, constant term first."""
        coeffs = [int(c) for c in coeffs]
        if not coeffs or coeffs[-1] != 1:
            raise ValueError("polynomial must be monic (last coefficient 1)")
        return cls(tuple(coeffs[:-1]))

    @property
    def degree(self) -> int:
        return len(self.low)

    @property
    def coefficients(self) -> tuple[int, ...]:
        return self.low + (1,)

    def __call__(self, x):
        acc = 1
        for c in reversed(self.low):
            acc = acc * x + c
        return acc

    def __str__(self):
        terms = []
        for d, c in reversed(list(enumerate(self.coefficients))):
            if c == 0:
                continue
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                xp = "x" if d == 1 else f"x^{d}"
                body = xp if mag == 1 else f"{mag}{xp}"
            if not terms:
                terms.append(body if c > 0 else "-" + body)
            else:
                terms.append(("+ " if c > 0 else "- ") + body)
        return " ".join(terms)


def companion_matrix(f: MonicIntPolynomial) -> QMatrix:
    """Ones on the subdiagonal, last column -c_0, ..., -c_{n-1}."""
    n = f.degree
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = -f.low[i]
    return QMatrix(rows)


def _divisors(m: int) -> list[int]:
    m = abs(m)
    small = [d for d in range(1, int(m ** 0.5) + 1) if m % d == 0]
    return sorted(set(small + [m // d for d in small]))


class NumberField:
    def __init__(self, poly: MonicIntPolynomial):
        self.poly = poly
        self.degree = poly.degree
        self.companion = companion_matrix(poly)
        self._low = list(poly.low)
        if poly.low[0] == 0:
            raise ValueError(f"{poly} is divisible by x")
        for d in _divisors(poly.low[0]):
            for r in (d, -d):
                if poly(r) == 0:
                    raise ValueError(f"{poly} has the rational root {r}")
        if not self._evaluate_at_companion().is_zero():
            raise ArithmeticError("companion matrix does not satisfy f(M) = 0")

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[int]) -> NumberField:
        return cls(MonicIntPolynomial.from_coefficients(coeffs))

    def _evaluate_at_companion(self) -> QMatrix:
        n = self.degree
        acc = QMatrix.identity(n)
        for c in reversed(self.poly.low):
            acc = acc @ self.companion + QMatrix.identity(n).scale(c)
        return acc

    def __eq__(self, other):
        if not isinstance(other, NumberField):
            return NotImplemented
        return self is other or self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def __repr__(self):
        return f"NumberField({self.poly})"

    def element(self, coeffs: Iterable) -> FieldElement:
        vals = [Fraction(c) for c in coeffs]
        if len(vals) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(vals)}")
        den = 1
        for v in vals:
            den = den * v.denominator // gcd(den, v.denominator)
        return FieldElement(self, [int(v * den) for v in vals], den)

    def scalar(self, q) -> FieldElement:
        q = Fraction(q)
        return FieldElement(self, [q.numerator] + [0] * (self.degree - 1), q.denominator)

    def zero(self) -> FieldElement:
        return self.scalar(0)

    def one(self) -> FieldElement:
        return self.scalar(1)

    def theta(self) -> FieldElement:
        """The class of x."""
        return FieldElement(self, [0, 1] + [0] * (self.degree - 2), 1)

    def from_matrix(self, m: QMatrix) -> FieldElement:
        """Inverse of ``to_matrix``: the first column of a(M) is the coordinate vector of a."""
        if m.shape != (self.degree, self.degree):
            raise ValueError("matrix size does not match the field degree")
        elem = FieldElement(self, [r[0] for r in m.num], m.den)
        if elem.to_matrix() != m:
            raise ValueError("matrix is not in the image of F")
        return elem


class FieldElement:
    """Element of a :class:`NumberField` in power-basis coordinates."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: NumberField, num: Sequence[int], den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = [-x for x in num]
            den = -den
        if den != 1:
            g = gcd(den, *num)
            if g > 1:
                num = [x // g for x in num]
                den //= g
        self.field = field
        self.num = tuple(num)
        self.den = den
        self._hash = None

    @property
    def coeffs(self) -> QVector:
        return QVector(self.num, self.den)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_one(self) -> bool:
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def is_integral(self) -> bool:
        """Integer power-basis coordinates."""
        return self.den == 1

    def _check(self, other: FieldElement):
        if self.field is not other.field and self.field != other.field:
            raise FieldMismatchError("elements belong to different fields")

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.den == other.den and self.num == other.num and self.field == other.field

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"FieldElement({[str(c) for c in self.coeffs.entries]})"

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs.entries):
            if c:
                parts.append(str(c) if i == 0 else f"{c}*t^{i}" if i > 1 else f"{c}*t")
        return " + ".join(parts) if parts else "0"

    def _add(self, other: FieldElement, sign: int) -> FieldElement:
        self._check(other)
        if self.den == other.den:
            return FieldElement(self.field, [x + sign * y for x, y in zip(self.num, other.num)], self.den)
        d1, d2 = other.den, self.den
        return FieldElement(
            self.field, [x * d1 + sign * y * d2 for x, y in zip(self.num, other.num)], self.den * other.den
        )

    def __add__(self, other: FieldElement) -> FieldElement:
        return self._add(other, 1)

    def __sub__(self, other: FieldElement) -> FieldElement:
        return self._add(other, -1)

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, [-x for x in self.num], self.den)

    def __mul__(self, other) -> FieldElement:
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return FieldElement(self.field, [x * q.numerator for x in self.num], self.den * q.denominator)
        return fe_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other: FieldElement) -> FieldElement:
        return fe_mul(self, fe_inv(other))

    def __pow__(self, e: int) -> FieldElement:
        base = self if e >= 0 else fe_inv(self)
        e = abs(e)
        result = self.field.one()
        while e:
            if e & 1:
                result = fe_mul(result, base)
            e >>= 1
            if e:
                base = fe_mul(base, base)
        return result

    def inverse(self) -> FieldElement:
        return fe_inv(self)

    def norm(self) -> Fraction:
        return fe_norm(self)

    def to_matrix(self) -> QMatrix:
        return to_matrix(self)


def fe_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    f = a.field
    return FieldElement(f, poly_mulmod(list(a.num), list(b.num), f._low), a.den * b.den)


def to_matrix(e: FieldElement) -> QMatrix:
    """a_0 E + a_1 M + ... + a_{n-1} M^{n-1}; column k holds the coordinates of e·θ^k."""
    f = e.field
    n = f.degree
    cols = []
    cur = list(e.num)
    for _ in range(n):
        cols.append(cur)
        # multiply by θ: shift up and fold the top coefficient with f
        top = cur[-1]
        nxt = [0] + cur[:-1]
        if top:
            nxt = [x - top * c for x, c in zip(nxt, f._low)]
        cur = nxt
    return QMatrix([list(r) for r in zip(*cols)], e.den)


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] -= c * bi
        a.pop()
        _poly_trim(a)
    return _poly_trim(q), a


def _poly_sub_mul(a: list[Fraction], q: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = list(a) + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
    for i, qi in enumerate(q):
        if qi:
            for j, bj in enumerate(b):
                out[i + j] -= qi * bj
    return _poly_trim(out)


def fe_inv(a: FieldElement) -> FieldElement:
    """Inverse via the extended Euclidean algorithm in Q[x] modulo f."""
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero in a number field")
    f = a.field
    # Track s with s·a ≡ r (mod f); a taken with integer numerators, den folded in at the end.
    r0 = [Fraction(c) for c in f.poly.coefficients]
    r1 = _poly_trim([Fraction(c) for c in a.num])
    s0: list[Fraction] = []
    s1 = [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub_mul(s0, q, s1)
        if not r1:
            raise ArithmeticError(f"element shares a factor with {f.poly}; the polynomial is reducible")
    c = r1[0]
    coeffs = [x / c for x in s1] + [Fraction(0)] * (f.degree - len(s1))
    inv = f.element(coeffs) * a.den
    return inv


def fe_norm(a: FieldElement) -> Fraction:
    return determinant(to_matrix(a))


def fe_from_coords(field: NumberField, coords: QVector) -> FieldElement:
    return FieldElement(field, coords.num, coords.den)
