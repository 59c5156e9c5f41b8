"""Commutator key exchange over U_F ⋉ O_F and linear-algebra attacks on it."""
__version__ = "0.1.0"

from ._kernels import BACKEND
from .attacks import (
    AttackError,
    ConjugacySystem,
    InconsistentSystemError,
    SingularCandidateError,
    attack_success,
    fba2_attack,
    fba_attack,
    solve_fba,
    solve_fba2,
)
from .exact_algebra import QMatrix, QVector, solve_linear
from .number_field import FieldElement, MonicIntPolynomial, NumberField
from .pc_presentation import DeducedElement, DeducedGroup, build_presentation, tau
from .platform import FixtureError, GroupElement, GroupWord, PlatformSpec, load_platform, resolve_platform
from .protocol import ProtocolParams, Transcript, run_protocol

__all__ = [
    "BACKEND",
    "AttackError",
    "ConjugacySystem",
    "DeducedElement",
    "DeducedGroup",
    "FieldElement",
    "FixtureError",
    "GroupElement",
    "GroupWord",
    "InconsistentSystemError",
    "MonicIntPolynomial",
    "NumberField",
    "PlatformSpec",
    "ProtocolParams",
    "QMatrix",
    "QVector",
    "SingularCandidateError",
    "Transcript",
    "attack_success",
    "build_presentation",
    "fba2_attack",
    "fba_attack",
    "load_platform",
    "resolve_platform",
    "run_protocol",
    "solve_fba",
    "solve_fba2",
    "solve_linear",
    "tau",
]
