"""The platform group U_F ⋉ O_F as pairs (unit, translation).

Multiplication is (C, S)·(D, T) = (CD, SD + T).  Platforms are described by
JSON fixtures carrying the defining polynomial, a Z-basis of the integral
order and a list of unit generators, the first of which is torsion.
"""
from __future__ import annotations

import itertools
import json
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .exact_algebra import QMatrix, QVector, SolveResult, rank, solve_linear
from .number_field import FieldElement, NumberField, fe_inv, fe_mul, fe_norm

FIXTURE_ENV = "CKEPOLY_FIXTURE_DIR"


class FixtureError(ValueError):
    """A platform fixture could not be parsed or violates an invariant."""


class NonUnitGenerator(FixtureError):
    pass


class NonIntegralAction(FixtureError):
    pass


class TorsionMismatch(FixtureError):
    pass


class DependentBasis(FixtureError):
    pass


class PlatformMismatch(ValueError):
    pass


@dataclass(frozen=True)
class GroupElement:
    """Pair (C, S); ``lifted`` marks elements of F* ⋉ F outside the platform."""

    unit: FieldElement
    shift: FieldElement
    lifted: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.unit.is_zero():
            raise ZeroDivisionError("unit part of a group element must be nonzero")
        if self.unit.field != self.shift.field:
            raise PlatformMismatch("unit and translation parts live in different fields")

    @property
    def field(self) -> NumberField:
        return self.unit.field

    def __mul__(self, other: GroupElement) -> GroupElement:
        return g_mul(self, other)

    def inverse(self) -> GroupElement:
        return g_inv(self)

    def conj(self, x: GroupElement) -> GroupElement:
        return g_conj(self, x)

    def is_identity(self) -> bool:
        return self.unit.is_one() and self.shift.is_zero()

    def __str__(self):
        return f"({self.unit}, {self.shift})"


def identity(field: NumberField) -> GroupElement:
    return GroupElement(field.one(), field.zero())


def g_mul(x: GroupElement, y: GroupElement) -> GroupElement:
    if x.field != y.field:
        raise PlatformMismatch("elements from different platforms")
    return GroupElement(
        fe_mul(x.unit, y.unit), fe_mul(x.shift, y.unit) + y.shift, lifted=x.lifted or y.lifted
    )


def g_inv(x: GroupElement) -> GroupElement:
    ci = fe_inv(x.unit)
    return GroupElement(ci, -fe_mul(x.shift, ci), lifted=x.lifted)


def g_conj(g: GroupElement, x: GroupElement) -> GroupElement:
    """x⁻¹ g x for g = (D, T), x = (C, S): (D, S(1 - D) + TC)."""
    if g.field != x.field:
        raise PlatformMismatch("elements from different platforms")
    one = g.field.one()
    shift = fe_mul(x.shift, one - g.unit) + fe_mul(g.shift, x.unit)
    return GroupElement(g.unit, shift, lifted=g.lifted or x.lifted)


def commutator(a: GroupElement, b: GroupElement) -> GroupElement:
    """a⁻¹ b⁻¹ a b."""
    return g_mul(g_mul(g_inv(a), g_inv(b)), g_mul(a, b))


@dataclass(frozen=True)
class GroupWord:
    """Product of generators; each letter is ``(index, ±1)``."""

    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for idx, e in self.letters:
            if idx < 0 or e not in (1, -1):
                raise ValueError(f"bad letter ({idx}, {e})")

    def __len__(self):
        return len(self.letters)

    def __add__(self, other: GroupWord) -> GroupWord:
        return GroupWord(self.letters + other.letters)

    def inverse(self) -> GroupWord:
        return GroupWord(tuple((i, -e) for i, e in reversed(self.letters)))

    def max_index(self) -> int:
        return max((i for i, _ in self.letters), default=-1)

    def to_json(self) -> list[list[int]]:
        return [[i, e] for i, e in self.letters]

    @classmethod
    def from_json(cls, data) -> GroupWord:
        return cls(tuple((int(i), int(e)) for i, e in data))

    def __str__(self):
        if not self.letters:
            return "e"
        return " ".join(f"g{i + 1}" if e == 1 else f"g{i + 1}^-1" for i, e in self.letters)


def random_word(rng: random.Random, gen_count: int, length: int) -> GroupWord:
    if length < 1:
        raise ValueError("word length must be at least 1")
    if gen_count < 1:
        raise ValueError("need at least one generator")
    return GroupWord(tuple((rng.randrange(gen_count), rng.choice((1, -1))) for _ in range(length)))


def eval_word(w: GroupWord, gens: Sequence[GroupElement], inverses: Sequence[GroupElement] | None = None):
    """Left-to-right product of ``gens[i]^{±1}``; ``inverses`` may be precomputed."""
    if w.max_index() >= len(gens):
        raise IndexError(f"word uses generator {w.max_index() + 1} but only {len(gens)} are given")
    if not gens:
        raise ValueError("cannot evaluate over an empty generating tuple")
    result = identity(gens[0].field)
    inv_cache = {} if inverses is None else dict(enumerate(inverses))
    for i, e in w.letters:
        if e == 1:
            factor = gens[i]
        else:
            factor = inv_cache.get(i)
            if factor is None:
                factor = inv_cache[i] = g_inv(gens[i])
        result = g_mul(result, factor)
    return result


def coords_in_basis(e: FieldElement, basis: Sequence[FieldElement]) -> QVector:
    """Coordinates of ``e`` in a Q-basis of F (columns are basis coordinates)."""
    a = QMatrix.hstack([QMatrix([[x] for x in b.num], b.den) for b in basis])
    res = solve_linear(a, e.coeffs)
    if not res.is_consistent:
        raise ValueError("element is outside the span of the basis")
    if not res.is_unique:
        raise DependentBasis("basis elements are linearly dependent")
    return res.solution


@dataclass(frozen=True, eq=False)
class PlatformSpec:
    """A concrete platform: field, integral basis O_1..O_n, unit generators U_1..U_m."""

    name: str
    field: NumberField
    basis: tuple[FieldElement, ...]
    units: tuple[FieldElement, ...]
    torsion_order: int
    signature: tuple[int, int] | None = None
    expected_hirsch_length: int | None = None
    provenance: str = ""

    @property
    def n(self) -> int:
        return self.field.degree

    @property
    def m(self) -> int:
        return len(self.units)

    @property
    def free_unit_count(self) -> int:
        return self.m - (1 if self.torsion_order > 0 and self.m else 0)

    @property
    def hirsch_length(self) -> int:
        return self.free_unit_count + self.n

    @cached_property
    def _basis_to_power(self) -> QMatrix:
        # row j = power-basis coordinates of O_j
        return QMatrix.vstack([QMatrix([list(b.num)], b.den) for b in self.basis])

    @cached_property
    def _power_to_basis(self) -> QMatrix:
        return self._basis_to_power.inverse()

    def coords(self, e: FieldElement) -> QVector:
        """Coordinates of ``e`` in O_1..O_n (fast path of :func:`coords_in_basis`)."""
        return e.coeffs @ self._power_to_basis

    def from_coords(self, v: QVector) -> FieldElement:
        w = v @ self._basis_to_power
        return FieldElement(self.field, w.num, w.den)

    @cached_property
    def generators(self) -> tuple[GroupElement, ...]:
        """(U_1, 0), ..., (U_m, 0), (1, O_1), ..., (1, O_n)."""
        f = self.field
        return tuple(GroupElement(u, f.zero()) for u in self.units) + tuple(
            GroupElement(f.one(), o) for o in self.basis
        )

    @cached_property
    def generator_inverses(self) -> tuple[GroupElement, ...]:
        return tuple(g_inv(g) for g in self.generators)

    def identity(self) -> GroupElement:
        return identity(self.field)

    def element(self, unit: Iterable, shift: Iterable) -> GroupElement:
        return GroupElement(self.field.element(unit), self.field.element(shift))

    def is_strict(self, g: GroupElement) -> bool:
        """Unit part integral with integral inverse, translation part in the order."""
        if g.field != self.field:
            return False
        if not self.coords(g.shift).is_integral():
            return False
        if not self.coords(g.unit).is_integral():
            return False
        return self.coords(fe_inv(g.unit)).is_integral()

    def to_json(self) -> str:
        doc = {
            "name": self.name,
            "polynomial": list(self.field.poly.coefficients),
            "basis": [[str(c) for c in b.coeffs.entries] for b in self.basis],
            "units": [[str(c) for c in u.coeffs.entries] for u in self.units],
            "torsion_order": self.torsion_order,
        }
        if self.signature is not None:
            doc["signature"] = list(self.signature)
        if self.expected_hirsch_length is not None:
            doc["expected_hirsch_length"] = self.expected_hirsch_length
        if self.provenance:
            doc["provenance"] = self.provenance
        return _dump_document(doc)


def _dump_document(doc: dict) -> str:
    """JSON with one top-level key per line and one vector per line."""
    lines = []
    for key, value in doc.items():
        if isinstance(value, list) and value and isinstance(value[0], list):
            inner = ",\n".join("    " + json.dumps(v) for v in value)
            lines.append(f"  {json.dumps(key)}: [\n{inner}\n  ]")
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(value)}")
    return "{\n" + ",\n".join(lines) + "\n}"


def _parse_rational_vector(raw, n: int, what: str) -> list[Fraction]:
    if not isinstance(raw, list) or len(raw) != n:
        raise FixtureError(f"{what}: expected a list of {n} rationals")
    try:
        return [Fraction(str(x)) for x in raw]
    except (ValueError, ZeroDivisionError) as exc:
        raise FixtureError(f"{what}: {exc}") from None


def load_platform(text: str) -> PlatformSpec:
    """Parse and validate a platform fixture document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FixtureError(f"fixture is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FixtureError("fixture must be a JSON object")
    for key in ("name", "polynomial", "units", "torsion_order"):
        if key not in doc:
            raise FixtureError(f"fixture is missing '{key}'")
    try:
        field = NumberField.from_coefficients([int(c) for c in doc["polynomial"]])
    except (ValueError, TypeError, ArithmeticError) as exc:
        raise FixtureError(f"polynomial: {exc}") from None
    n = field.degree
    if "basis" in doc:
        basis = tuple(
            field.element(_parse_rational_vector(b, n, f"basis[{i}]")) for i, b in enumerate(doc["basis"])
        )
    else:
        basis = tuple(field.element([int(i == j) for j in range(n)]) for i in range(n))
    units = tuple(field.element(_parse_rational_vector(u, n, f"units[{i}]")) for i, u in enumerate(doc["units"]))
    k = doc["torsion_order"]
    if not isinstance(k, int) or k < 1:
        raise FixtureError("torsion_order must be a positive integer")
    signature = doc.get("signature")
    if signature is not None:
        if not (isinstance(signature, list) and len(signature) == 2):
            raise FixtureError("signature must be [s, t]")
        signature = (int(signature[0]), int(signature[1]))
        if signature[0] + 2 * signature[1] != n:
            raise FixtureError(f"signature {signature} does not add up to degree {n}")
    spec = PlatformSpec(
        name=str(doc["name"]),
        field=field,
        basis=basis,
        units=units,
        torsion_order=k,
        signature=signature,
        expected_hirsch_length=doc.get("expected_hirsch_length"),
        provenance=str(doc.get("provenance", "")),
    )
    validate_platform(spec)
    return spec


def validate_platform(spec: PlatformSpec) -> None:
    n = spec.n
    if len(spec.basis) != n or rank(spec._basis_to_power) != n:
        raise DependentBasis(f"basis of {spec.name} does not have rank {n}")
    if not spec.units:
        raise FixtureError("at least one unit generator is required")
    for i, o in enumerate(spec.basis):
        for j, o2 in enumerate(spec.basis):
            if not spec.coords(fe_mul(o, o2)).is_integral():
                raise NonIntegralAction(f"basis is not closed under multiplication (O_{i + 1}·O_{j + 1})")
    for i, u in enumerate(spec.units):
        if abs(fe_norm(u)) != 1:
            raise NonUnitGenerator(f"unit generator U_{i + 1} has norm {fe_norm(u)}")
        ui = fe_inv(u)
        if not spec.coords(u).is_integral() or not spec.coords(ui).is_integral():
            raise NonUnitGenerator(f"U_{i + 1} or its inverse is not integral in the basis")
        for j, o in enumerate(spec.basis):
            if not spec.coords(fe_mul(o, u)).is_integral() or not spec.coords(fe_mul(o, ui)).is_integral():
                raise NonIntegralAction(f"O_{j + 1}·U_{i + 1}^±1 is not integral in the basis")
    k = spec.torsion_order
    u1 = spec.units[0]
    power = spec.field.one()
    for j in range(1, k + 1):
        power = fe_mul(power, u1)
        if power.is_one() and j < k:
            raise TorsionMismatch(f"U_1 has order {j}, fixture says {k}")
    if not power.is_one():
        raise TorsionMismatch(f"U_1^{k} is not 1")


def builtin_fixture_dir() -> Path:
    override = os.environ.get(FIXTURE_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("ckepoly") / "fixtures"))


def available_platforms() -> list[str]:
    return sorted(p.stem for p in builtin_fixture_dir().glob("*.json"))


def load_platform_file(path: str | os.PathLike) -> PlatformSpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FixtureError(f"cannot read fixture {path}: {exc.strerror}") from None
    return load_platform(text)


def resolve_platform(name_or_path: str) -> PlatformSpec:
    """Builtin fixture name (e.g. ``x5``) or a path to a fixture file."""
    p = Path(name_or_path)
    if p.suffix == ".json" or os.sep in name_or_path:
        return load_platform_file(p)
    candidate = builtin_fixture_dir() / f"{name_or_path}.json"
    if not candidate.exists():
        raise FixtureError(
            f"unknown platform '{name_or_path}' (available: {', '.join(available_platforms())})"
        )
    return load_platform_file(candidate)


def search_units(field: NumberField, basis: Sequence[FieldElement], height_bound: int) -> list[FieldElement]:
    """All Σ a_i O_i with |a_i| ≤ height_bound and norm ±1, one per ± pair.

    The representative is the one whose first nonzero coordinate is positive.
    The constant 1 is always included.
    """
    if height_bound < 0:
        raise ValueError("height bound must be non-negative")
    found = {field.one()}
    rng = range(-height_bound, height_bound + 1)
    for coeffs in itertools.product(rng, repeat=len(basis)):
        first = next((c for c in coeffs if c), 0)
        if first <= 0:
            continue
        e = field.zero()
        for c, b in zip(coeffs, basis):
            if c:
                e = e + b * c
        if e.is_zero():
            continue
        if abs(fe_norm(e)) == 1:
            found.add(e)
    return sorted(found, key=lambda e: (sum(abs(x) for x in e.num), e.num))
