"""Exact rational matrices and vectors.

Scalars are :class:`fractions.Fraction`.  Matrices and vectors are stored as
an integer numerator array over one positive common denominator, kept in
lowest terms, so equality and hashing are structural and the integer kernels
in :mod:`ckepoly._kernels` can run on the numerators directly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from ._kernels import back_reduce, echelon, int_matmul, vec_matmul

BigRational = Fraction


class DimensionError(ValueError):
    pass


class SingularMatrixError(ArithmeticError):
    pass


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def _common_denominator(values: Iterable[Fraction]) -> int:
    den = 1
    for v in values:
        d = v.denominator
        if d != 1:
            den = den * d // gcd(den, d)
    return den


def _reduce(flat: list[int], den: int) -> tuple[list[int], int]:
    if den < 0:
        flat = [-x for x in flat]
        den = -den
    if den != 1:
        g = gcd(den, *flat)
        if g > 1:
            flat = [x // g for x in flat]
            den //= g
    return flat, den


class QMatrix:
    """Immutable dense matrix over Q."""

    __slots__ = ("num", "den", "nrows", "ncols", "_hash")

    def __init__(self, num: Sequence[Sequence[int]], den: int = 1):
        nrows = len(num)
        ncols = len(num[0]) if nrows else 0
        flat = [x for row in num for x in row]
        if len(flat) != nrows * ncols:
            raise DimensionError("ragged matrix rows")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        flat, den = _reduce(flat, den)
        self.num = tuple(tuple(flat[i * ncols:(i + 1) * ncols]) for i in range(nrows))
        self.den = den
        self.nrows = nrows
        self.ncols = ncols
        self._hash = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> QMatrix:
        fr = [[_as_fraction(x) for x in row] for row in rows]
        den = _common_denominator(x for row in fr for x in row)
        return cls([[int(x * den) for x in row] for row in fr], den)

    @classmethod
    def identity(cls, n: int) -> QMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> QMatrix:
        return cls([[0] * ncols for _ in range(nrows)])

    @classmethod
    def hstack(cls, blocks: Sequence[QMatrix]) -> QMatrix:
        nrows = blocks[0].nrows
        if any(b.nrows != nrows for b in blocks):
            raise DimensionError("hstack needs equal row counts")
        den = 1
        for b in blocks:
            den = den * b.den // gcd(den, b.den)
        rows = [[] for _ in range(nrows)]
        for b in blocks:
            scale = den // b.den
            for i, r in enumerate(b.num):
                rows[i].extend(x * scale for x in r)
        return cls(rows, den)

    @classmethod
    def vstack(cls, blocks: Sequence[QMatrix]) -> QMatrix:
        ncols = blocks[0].ncols
        if any(b.ncols != ncols for b in blocks):
            raise DimensionError("vstack needs equal column counts")
        den = 1
        for b in blocks:
            den = den * b.den // gcd(den, b.den)
        rows = []
        for b in blocks:
            scale = den // b.den
            rows.extend([x * scale for x in r] for r in b.num)
        return cls(rows, den)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def entries(self) -> tuple[Fraction, ...]:
        """Row-major entries as canonical fractions."""
        return tuple(Fraction(x, self.den) for row in self.num for x in row)

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return Fraction(self.num[i][j], self.den)

    def row(self, i: int) -> QVector:
        return QVector(self.num[i], self.den)

    def column(self, j: int) -> QVector:
        return QVector([r[j] for r in self.num], self.den)

    def tolist(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.den) for x in row] for row in self.num]

    def is_integral(self) -> bool:
        return self.den == 1

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.num)

    def transpose(self) -> QMatrix:
        return QMatrix([list(c) for c in zip(*self.num)] if self.nrows else [], self.den)

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.den == other.den and self.num == other.num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.tolist())
        return f"QMatrix([{rows}])"

    def _combine(self, other: QMatrix, sign: int) -> QMatrix:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        if self.den == other.den:
            rows = [[x + sign * y for x, y in zip(r, s)] for r, s in zip(self.num, other.num)]
            return QMatrix(rows, self.den)
        d1, d2 = other.den, self.den
        rows = [[x * d1 + sign * y * d2 for x, y in zip(r, s)] for r, s in zip(self.num, other.num)]
        return QMatrix(rows, self.den * other.den)

    def __add__(self, other: QMatrix) -> QMatrix:
        return self._combine(other, 1)

    def __sub__(self, other: QMatrix) -> QMatrix:
        return self._combine(other, -1)

    def __neg__(self) -> QMatrix:
        return QMatrix([[-x for x in r] for r in self.num], self.den)

    def scale(self, q) -> QMatrix:
        q = _as_fraction(q)
        return QMatrix([[x * q.numerator for x in r] for r in self.num], self.den * q.denominator)

    def __matmul__(self, other: QMatrix) -> QMatrix:
        return mat_mul(self, other)

    def inverse(self) -> QMatrix:
        return mat_inverse(self)

    def rank(self) -> int:
        return rank(self)

    def determinant(self) -> Fraction:
        return determinant(self)

    def __pow__(self, e: int) -> QMatrix:
        if not self.is_square():
            raise DimensionError("power of a non-square matrix")
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = QMatrix.identity(self.nrows)
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result


class QVector:
    """Immutable vector over Q, used as a row vector in products."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Sequence[int], den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        flat, den = _reduce(list(num), den)
        self.num = tuple(flat)
        self.den = den
        self._hash = None

    @classmethod
    def from_values(cls, values: Iterable) -> QVector:
        fr = [_as_fraction(x) for x in values]
        den = _common_denominator(fr)
        return cls([int(x * den) for x in fr], den)

    @classmethod
    def zeros(cls, n: int) -> QVector:
        return cls([0] * n)

    @classmethod
    def unit(cls, n: int, i: int) -> QVector:
        return cls([int(j == i) for j in range(n)])

    @property
    def entries(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.num)

    def __len__(self):
        return len(self.num)

    def __getitem__(self, i: int) -> Fraction:
        return Fraction(self.num[i], self.den)

    def __iter__(self):
        return iter(self.entries)

    def is_integral(self) -> bool:
        return self.den == 1

    def is_zero(self) -> bool:
        return not any(self.num)

    def __eq__(self, other):
        if not isinstance(other, QVector):
            return NotImplemented
        return self.den == other.den and self.num == other.num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return "QVector([" + ", ".join(str(x) for x in self.entries) + "])"

    def _combine(self, other: QVector, sign: int) -> QVector:
        if len(self) != len(other):
            raise DimensionError("vector length mismatch")
        if self.den == other.den:
            return QVector([x + sign * y for x, y in zip(self.num, other.num)], self.den)
        d1, d2 = other.den, self.den
        return QVector([x * d1 + sign * y * d2 for x, y in zip(self.num, other.num)], self.den * other.den)

    def __add__(self, other: QVector) -> QVector:
        return self._combine(other, 1)

    def __sub__(self, other: QVector) -> QVector:
        return self._combine(other, -1)

    def __neg__(self) -> QVector:
        return QVector([-x for x in self.num], self.den)

    def scale(self, q) -> QVector:
        q = _as_fraction(q)
        return QVector([x * q.numerator for x in self.num], self.den * q.denominator)

    def __matmul__(self, m: QMatrix) -> QVector:
        if len(self) != m.nrows:
            raise DimensionError(f"vector of length {len(self)} times {m.shape} matrix")
        return QVector(vec_matmul(list(self.num), [list(r) for r in m.num]), self.den * m.den)


def mat_mul(a: QMatrix, b: QMatrix) -> QMatrix:
    if a.ncols != b.nrows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    if a.nrows == 0 or b.ncols == 0:
        return QMatrix.zeros(a.nrows, b.ncols)
    prod = int_matmul([list(r) for r in a.num], [list(r) for r in b.num])
    return QMatrix(prod, a.den * b.den)


def rank(a: QMatrix) -> int:
    if a.nrows == 0 or a.ncols == 0:
        return 0
    _, pivots, _ = echelon([list(r) for r in a.num], a.ncols)
    return len(pivots)


def determinant(a: QMatrix) -> Fraction:
    if not a.is_square():
        raise DimensionError("determinant of a non-square matrix")
    n = a.nrows
    if n == 0:
        return Fraction(1)
    ech, pivots, sign = echelon([list(r) for r in a.num], n)
    if len(pivots) < n:
        return Fraction(0)
    return Fraction(sign * ech[-1][n - 1], a.den ** n)


def mat_inverse(a: QMatrix) -> QMatrix:
    if not a.is_square():
        raise DimensionError(f"cannot invert a {a.shape} matrix")
    n = a.nrows
    # [den*A | den*I] keeps the augmented block integral.
    rows = [list(r) + [a.den if i == j else 0 for j in range(n)] for i, r in enumerate(a.num)]
    ech, pivots, _ = echelon(rows, n)
    if len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    red = back_reduce(ech, pivots, 2 * n)
    out = [[Fraction(x, r[i]) for x in r[n:]] for i, r in enumerate(red)]
    return QMatrix.from_rows(out)


@dataclass(frozen=True)
class SolveResult:
    """Outcome of :func:`solve_linear`.

    ``kind`` is ``"unique"``, ``"affine"`` or ``"inconsistent"``; ``solution``
    is the (particular) solution and ``kernel`` a basis of the null space.
    """

    kind: str
    solution: QVector | None = None
    kernel: tuple[QVector, ...] = field(default=())
    rank: int = 0

    @property
    def is_unique(self) -> bool:
        return self.kind == "unique"

    @property
    def is_consistent(self) -> bool:
        return self.kind != "inconsistent"


def solve_linear(a: QMatrix, b: QVector) -> SolveResult:
    """Solve ``a @ x = b`` for a column vector ``x`` exactly."""
    m, k = a.shape
    if len(b) != m:
        raise DimensionError(f"right-hand side of length {len(b)} for {a.shape} system")
    if m == 0:
        kernel = tuple(QVector.unit(k, j) for j in range(k))
        return SolveResult("affine" if k else "unique", QVector.zeros(k), kernel, 0)
    # Scale both sides to a common integer system: a.num x = (a.den * b.num / b.den).
    scale_a, scale_b = b.den, a.den
    rows = [[x * scale_a for x in r] + [bb * scale_b] for r, bb in zip(a.num, b.num)]
    ech, pivots, _ = echelon(rows, k + 1)
    if pivots and pivots[-1] == k:
        return SolveResult("inconsistent", rank=len(pivots) - 1)
    red = back_reduce(ech, pivots, k + 1)
    x = [Fraction(0)] * k
    for r, pc in zip(red, pivots):
        x[pc] = Fraction(r[k], r[pc])
    sol = QVector.from_values(x)
    free = [j for j in range(k) if j not in set(pivots)]
    kernel = []
    for fj in free:
        v = [Fraction(0)] * k
        v[fj] = Fraction(1)
        for r, pc in zip(red, pivots):
            v[pc] = Fraction(-r[fj], r[pc])
        kernel.append(QVector.from_values(v))
    kernel = tuple(kernel)
    if mat_vec(a, sol) != b or any(not mat_vec(a, v).is_zero() for v in kernel):
        raise ArithmeticError("back-substitution check failed")
    return SolveResult("unique" if not kernel else "affine", sol, kernel, len(pivots))


def mat_vec(a: QMatrix, x: QVector) -> QVector:
    """Column product ``a @ x``."""
    if a.ncols != len(x):
        raise DimensionError(f"{a.shape} matrix times vector of length {len(x)}")
    return QVector([sum(p * q for p, q in zip(r, x.num)) for r in a.num], a.den * x.den)
