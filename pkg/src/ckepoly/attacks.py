"""Linear-algebra attacks recovering the private conjugators.

FBA works in F* ⋉ F: each equation X⁻¹ b X = b' with X = (C, S) and
b = (B, T) reads S(1 - B) + TC = T', linear in (S, C) over F.  Written in
power-basis coordinates the system is over Q with 2n unknowns.

FBA2 works in the deduced model ⟨C_1..C_m⟩ ⋉ Z^n: the unknown unit matrix
is written as Σ c_a H_a over a Q-basis H_1..H_l of K = Q[C_1..C_m], giving
a rational system in (v, c).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .exact_algebra import QMatrix, QVector, SolveResult, rank, solve_linear
from .number_field import FieldElement, NumberField, to_matrix
from .pc_presentation import (
    DeducedElement,
    DeducedGroup,
    deduced_commutator,
    deduced_conj,
    deduced_from_pair,
)
from .platform import GroupElement, commutator, g_conj
from .protocol import PublicView, Transcript


class AttackError(RuntimeError):
    pass


class InconsistentSystemError(AttackError):
    """No conjugator solves the system; the transcript is malformed."""


class SingularCandidateError(AttackError):
    """Every tried solution has a non-invertible unit part."""


@dataclass(frozen=True)
class ConjugacySystem:
    """Pairs (g_i, g_i') with unknown X such that X⁻¹ g_i X = g_i'."""

    pairs: tuple[tuple[GroupElement, GroupElement], ...]

    def __post_init__(self):
        if not self.pairs:
            raise ValueError("conjugacy system must be nonempty")
        for g, h in self.pairs:
            if g.unit != h.unit:
                raise InconsistentSystemError("conjugation must preserve the unit part")

    @classmethod
    def from_tuples(cls, originals: Sequence, conjugates: Sequence) -> ConjugacySystem:
        if len(originals) != len(conjugates):
            raise ValueError("tuples of different lengths")
        return cls(tuple(zip(originals, conjugates)))

    @property
    def field(self) -> NumberField:
        return self.pairs[0][0].field


@dataclass(frozen=True)
class FbaSolution:
    candidate: GroupElement
    unique: bool
    residual_checked: bool
    rank: int


def build_fba_system(sys: ConjugacySystem) -> tuple[QMatrix, QVector]:
    """(N·n) × 2n system in the coordinates of (S, C).

    Coordinates of a·x equal to_matrix(a) applied to the coordinates of x,
    so each equation contributes the block row [to_matrix(1 - B_i) | to_matrix(T_i)].
    """
    f = sys.field
    one = f.one()
    blocks, rhs = [], []
    for g, h in sys.pairs:
        blocks.append(QMatrix.hstack([to_matrix(one - g.unit), to_matrix(g.shift)]))
        rhs.append(h.shift.coeffs)
    a = QMatrix.vstack(blocks)
    b = QVector.from_values(x for r in rhs for x in r.entries)
    return a, b


def _candidates(res: SolveResult):
    yield res.solution
    for k in res.kernel:
        yield res.solution + k


def solve_fba(sys: ConjugacySystem) -> FbaSolution:
    a, b = build_fba_system(sys)
    res = solve_linear(a, b)
    if not res.is_consistent:
        raise InconsistentSystemError("FBA system has no solution")
    f = sys.field
    n = f.degree
    for x in _candidates(res):
        s = FieldElement(f, x.num[:n], x.den)
        c = FieldElement(f, x.num[n:], x.den)
        if c.is_zero():
            continue
        cand = GroupElement(c, s, lifted=True)
        if any(g_conj(g, cand) != h for g, h in sys.pairs):
            raise AttackError("solution fails the conjugacy check")
        return FbaSolution(cand, res.is_unique, True, res.rank)
    raise SingularCandidateError("no solution with invertible unit part")


def fba_solve_both(view: PublicView) -> tuple[FbaSolution, FbaSolution]:
    """Alice's conjugator from (b̄, b̄^A), Bob's from (ā, ā^B)."""
    alice = solve_fba(ConjugacySystem.from_tuples(view.bob_public, view.alice_conjugates))
    bob = solve_fba(ConjugacySystem.from_tuples(view.alice_public, view.bob_conjugates))
    return alice, bob


def fba_attack(view: PublicView) -> GroupElement:
    alice, bob = fba_solve_both(view)
    return commutator(alice.candidate, bob.candidate)


@dataclass(frozen=True)
class Fba2System:
    matrix: QMatrix
    rhs: QVector
    field_basis: tuple[QMatrix, ...]
    n: int

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.field_basis)


def _flat(m: QMatrix) -> QMatrix:
    return QMatrix([[x for r in m.num for x in r]], m.den)


def field_basis(dg: DeducedGroup) -> tuple[QMatrix, ...]:
    """Q-basis of K = Q[C_1..C_m] by closure from the identity."""
    return _field_basis_cached(dg)


@lru_cache(maxsize=32)
def _field_basis_cached(dg: DeducedGroup) -> tuple[QMatrix, ...]:
    basis = [QMatrix.identity(dg.n)]
    flat = _flat(basis[0])
    queue = [basis[0]]
    while queue:
        h = queue.pop(0)
        for c in dg.matrices:
            p = h @ c
            trial = QMatrix.vstack([flat, _flat(p)])
            if rank(trial) > flat.nrows:
                basis.append(p)
                flat = trial
                queue.append(p)
    # closure: every H_a·C_i stays in the span
    r = flat.nrows
    for h in basis:
        for c in dg.matrices:
            if rank(QMatrix.vstack([flat, _flat(h @ c)])) != r:
                raise AttackError("span of the action matrices is not closed")
    return tuple(basis)


def build_fba2_system(pairs: Sequence[tuple[DeducedElement, DeducedElement]], dg: DeducedGroup) -> Fba2System:
    """Equations v(E - B_i) + Σ c_a t_i H_a = t_i' as a column system in (v, c)."""
    if not pairs:
        raise ValueError("conjugacy system must be nonempty")
    hs = field_basis(dg)
    eye = QMatrix.identity(dg.n)
    blocks, rhs = [], []
    for g, h in pairs:
        if g.unit != h.unit:
            raise InconsistentSystemError("conjugation must preserve the unit part")
        cols = [(eye - g.unit).transpose()]
        cols.extend(QMatrix([[x] for x in (g.vec @ hb).num], (g.vec @ hb).den) for hb in hs)
        blocks.append(QMatrix.hstack(cols))
        rhs.extend(h.vec.entries)
    return Fba2System(QMatrix.vstack(blocks), QVector.from_values(rhs), hs, dg.n)


@dataclass(frozen=True)
class Fba2Solution:
    candidate: DeducedElement
    unique: bool
    residual_checked: bool
    rank: int


def solve_fba2(pairs: Sequence[tuple[DeducedElement, DeducedElement]], dg: DeducedGroup) -> Fba2Solution:
    system = build_fba2_system(pairs, dg)
    res = solve_linear(system.matrix, system.rhs)
    if not res.is_consistent:
        raise InconsistentSystemError("FBA2 system has no solution")
    n = dg.n
    for x in _candidates(res):
        v = QVector(x.num[:n], x.den)
        unit = QMatrix.zeros(n, n)
        for coef, hb in zip(x.entries[n:], system.field_basis):
            if coef:
                unit = unit + hb.scale(coef)
        if rank(unit) < n:
            continue
        cand = DeducedElement(unit, v)
        if any(deduced_conj(g, cand) != h for g, h in pairs):
            raise AttackError("solution fails the conjugacy check")
        return Fba2Solution(cand, res.is_unique, True, res.rank)
    raise SingularCandidateError("no solution with invertible unit part")


def fba2_solve_both(view: PublicView, dg: DeducedGroup) -> tuple[Fba2Solution, Fba2Solution]:
    alice = solve_fba2(tuple(zip(view.bob_public, view.alice_conjugates)), dg)
    bob = solve_fba2(tuple(zip(view.alice_public, view.bob_conjugates)), dg)
    return alice, bob


def fba2_attack(view: PublicView, dg: DeducedGroup) -> DeducedElement:
    """``view`` holds deduced-model elements (see :meth:`PcView.deduce`)."""
    alice, bob = fba2_solve_both(view, dg)
    return deduced_commutator(alice.candidate, bob.candidate)


def attack_success(candidate, transcript: Transcript) -> bool:
    key = transcript.shared_key
    if isinstance(candidate, GroupElement):
        return candidate == key
    if isinstance(candidate, DeducedElement):
        return candidate == deduced_from_pair(key, transcript.platform)
    raise TypeError(f"unsupported candidate type {type(candidate).__name__}")
