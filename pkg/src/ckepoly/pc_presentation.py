"""Polycyclic presentation of U_F ⋉ O_F and the deduced semidirect product.

Generators are ordered g_1..g_m (unit generators, g_1 the torsion one)
followed by g_{m+1}..g_{m+n} (translations by the basis O_1..O_n).  The
conjugation exponents a_ij (by g_i) and b_ij (by g_i⁻¹) give integer
matrices C_i; ⟨C_1..C_m⟩ ⋉ Z^n with (C, s)(D, t) = (CD, sD + t) is
isomorphic to the platform via τ.

Indices are 0-based in code and 1-based in printed output.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .exact_algebra import QMatrix, QVector
from .number_field import fe_inv, fe_mul
from .platform import GroupElement, GroupWord, NonIntegralAction, PlatformSpec


class NotFoundError(LookupError):
    """No exponent vector within the search bound reaches the requested matrix."""


@dataclass(frozen=True, eq=False)
class PcPresentation:
    m: int
    n: int
    torsion: dict[int, int]
    conj: tuple[tuple[tuple[int, ...], ...], ...]
    conj_inv: tuple[tuple[tuple[int, ...], ...], ...]
    platform: PlatformSpec | None = None

    @property
    def gen_count(self) -> int:
        return self.m + self.n

    def exponent_matrix(self, i: int, inverse: bool = False) -> QMatrix:
        return QMatrix([list(r) for r in (self.conj_inv if inverse else self.conj)[i]])

    def dump(self) -> str:
        """Human-readable relation listing."""
        m, n = self.m, self.n

        def word(exps, offset):
            parts = []
            for k, e in enumerate(exps):
                if e == 1:
                    parts.append(f"g{offset + k + 1}")
                elif e:
                    parts.append(f"g{offset + k + 1}^{e}")
            return " ".join(parts) if parts else "e"

        lines = [f"generators: g1..g{m + n} (units g1..g{m}, translations g{m + 1}..g{m + n})"]
        for i, r in sorted(self.torsion.items()):
            lines.append(f"g{i + 1}^{r} = e")
        for i in range(m):
            for j in range(n):
                lines.append(f"g{m + j + 1}^g{i + 1} = {word(self.conj[i][j], m)}")
                lines.append(f"g{m + j + 1}^(g{i + 1}^-1) = {word(self.conj_inv[i][j], m)}")
        lines.append(f"[gi, gj] = e for 1 <= i < j <= {m}")
        lines.append(f"[gi, gj] = e for {m + 1} <= i < j <= {m + n}")
        return "\n".join(lines)


def build_presentation(p: PlatformSpec) -> PcPresentation:
    a_rows, b_rows = [], []
    for i, u in enumerate(p.units):
        ui = fe_inv(u)
        a_i, b_i = [], []
        for j, o in enumerate(p.basis):
            a = p.coords(fe_mul(o, u))
            b = p.coords(fe_mul(o, ui))
            if not (a.is_integral() and b.is_integral()):
                raise NonIntegralAction(f"O_{j + 1}·U_{i + 1}^±1 has non-integral coordinates")
            a_i.append(a.num)
            b_i.append(b.num)
        a_rows.append(tuple(a_i))
        b_rows.append(tuple(b_i))
    return PcPresentation(
        m=p.m,
        n=p.n,
        torsion={0: p.torsion_order},
        conj=tuple(a_rows),
        conj_inv=tuple(b_rows),
        platform=p,
    )


@dataclass(frozen=True)
class DeducedElement:
    unit: QMatrix
    vec: QVector

    def __mul__(self, other: DeducedElement) -> DeducedElement:
        return deduced_mul(self, other)

    def inverse(self) -> DeducedElement:
        return deduced_inv(self)

    def is_identity(self) -> bool:
        return self.unit == QMatrix.identity(self.unit.nrows) and self.vec.is_zero()


def deduced_mul(x: DeducedElement, y: DeducedElement) -> DeducedElement:
    if x.unit.shape != y.unit.shape or len(x.vec) != len(y.vec):
        raise ValueError("elements of different deduced groups")
    return DeducedElement(x.unit @ y.unit, x.vec @ y.unit + y.vec)


def deduced_inv(x: DeducedElement) -> DeducedElement:
    ci = x.unit.inverse()
    return DeducedElement(ci, -(x.vec @ ci))


def deduced_conj(g: DeducedElement, x: DeducedElement) -> DeducedElement:
    """x⁻¹ g x = (D, s(E - D) + tC) for g = (D, t), x = (C, s)."""
    e = QMatrix.identity(g.unit.nrows)
    return DeducedElement(g.unit, x.vec @ (e - g.unit) + g.vec @ x.unit)


def deduced_commutator(a: DeducedElement, b: DeducedElement) -> DeducedElement:
    return deduced_mul(deduced_mul(deduced_inv(a), deduced_inv(b)), deduced_mul(a, b))


class DeducedGroup:
    """⟨C_1..C_m⟩ ⋉ Z^n built from a presentation."""

    def __init__(self, pc: PcPresentation):
        self.source = pc
        self.m = pc.m
        self.n = pc.n
        self.matrices = tuple(pc.exponent_matrix(i) for i in range(pc.m))
        self.inverse_matrices = tuple(pc.exponent_matrix(i, inverse=True) for i in range(pc.m))
        self.torsion = dict(pc.torsion)

    @property
    def gen_count(self) -> int:
        return self.m + self.n

    def identity(self) -> DeducedElement:
        return DeducedElement(QMatrix.identity(self.n), QVector.zeros(self.n))

    @cached_property
    def generators(self) -> tuple[DeducedElement, ...]:
        zero = QVector.zeros(self.n)
        eye = QMatrix.identity(self.n)
        return tuple(DeducedElement(c, zero) for c in self.matrices) + tuple(
            DeducedElement(eye, QVector.unit(self.n, j)) for j in range(self.n)
        )

    @cached_property
    def generator_inverses(self) -> tuple[DeducedElement, ...]:
        zero = QVector.zeros(self.n)
        eye = QMatrix.identity(self.n)
        return tuple(DeducedElement(c, zero) for c in self.inverse_matrices) + tuple(
            DeducedElement(eye, -QVector.unit(self.n, j)) for j in range(self.n)
        )

    def unit_power_product(self, exps: Sequence[int]) -> QMatrix:
        """C_1^{e_1} ... C_m^{e_m} by repeated squaring."""
        result = QMatrix.identity(self.n)
        for i, e in enumerate(exps):
            if e:
                base = self.matrices[i] if e > 0 else self.inverse_matrices[i]
                result = result @ (base ** abs(e))
        return result

    def from_normal_form(self, exps: Sequence[int]) -> DeducedElement:
        """τ-image of g_1^{e_1} ... g_{m+n}^{e_{m+n}}."""
        if len(exps) != self.gen_count:
            raise ValueError(f"expected {self.gen_count} exponents")
        return DeducedElement(self.unit_power_product(exps[: self.m]), QVector(exps[self.m:]))


def action_matrices(pc: PcPresentation) -> DeducedGroup:
    return DeducedGroup(pc)


def tau(w: GroupWord, dg: DeducedGroup) -> DeducedElement:
    if w.max_index() >= dg.gen_count:
        raise IndexError(f"generator g{w.max_index() + 1} out of range for {dg.gen_count} generators")
    gens, invs = dg.generators, dg.generator_inverses
    result = dg.identity()
    for i, e in w.letters:
        result = deduced_mul(result, gens[i] if e == 1 else invs[i])
    return result


def normal_form_word(exps: Sequence[int]) -> GroupWord:
    letters = []
    for i, e in enumerate(exps):
        letters.extend([(i, 1 if e > 0 else -1)] * abs(e))
    return GroupWord(tuple(letters))


def pair_to_word(x: DeducedElement, dg: DeducedGroup, bound: int) -> GroupWord:
    """Normal-form word for ``x``, searching unit exponents with |a_i| <= bound.

    The g_1 exponent is reduced into [0, k).  Candidates are visited in
    breadth-first order (by ℓ∞ norm) so the smallest exponents win.
    """
    if not x.vec.is_integral():
        raise NotFoundError("vector part is not in Z^n")
    target = x.unit
    ranges = []
    free = []
    for i in range(dg.m):
        if dg.torsion.get(i):
            ranges.append(range(dg.torsion[i]))
        else:
            ranges.append(range(-bound, bound + 1))
            free.append(i)
    for radius in range(bound + 1):
        for exps in itertools.product(*ranges):
            if max((abs(exps[i]) for i in free), default=0) != radius:
                continue
            if dg.unit_power_product(exps) == target:
                return normal_form_word(list(exps) + list(x.vec.num))
    raise NotFoundError(f"unit part not reached with exponents bounded by {bound}")


def word_exponents(w: GroupWord, m: int, torsion: dict[int, int]) -> tuple[int, ...]:
    """Net unit exponents of a word (unit generators commute); torsion ones reduced mod k."""
    exps = [0] * m
    for i, e in w.letters:
        if i < m:
            exps[i] += e
    for i, k in torsion.items():
        if k:
            exps[i] %= k
    return tuple(exps)


def normal_form(g: GroupElement, unit_exponents: Sequence[int], p: PlatformSpec) -> tuple[int, ...]:
    """Exponent vector (a_1..a_{m+n}) of a platform element with known unit exponents."""
    v = p.coords(g.shift)
    if not v.is_integral():
        raise ValueError("translation part is not in the integral order")
    return tuple(unit_exponents) + v.num


def deduced_from_pair(g: GroupElement, p: PlatformSpec) -> DeducedElement:
    """Image of (C, S): the matrix of right multiplication by C in O_1..O_n, and coords(S)."""
    rows = [p.coords(fe_mul(o, g.unit)) for o in p.basis]
    unit = QMatrix.vstack([QMatrix([list(r.num)], r.den) for r in rows])
    return DeducedElement(unit, p.coords(g.shift))
