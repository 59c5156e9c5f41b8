import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ckepoly.attacks import (
    ConjugacySystem,
    InconsistentSystemError,
    SingularCandidateError,
    attack_success,
    build_fba2_system,
    build_fba_system,
    fba2_attack,
    fba_attack,
    fba_solve_both,
    field_basis,
    solve_fba,
    solve_fba2,
)
from ckepoly.exact_algebra import QMatrix, rank
from ckepoly.pc_presentation import DeducedGroup, build_presentation, deduced_from_pair, deduced_mul
from ckepoly.platform import GroupElement, g_conj, g_mul, load_platform, resolve_platform
from ckepoly.protocol import ProtocolParams, PublicView, run_protocol
from conftest import SMALL


@pytest.fixture
def el(golden):
    f = golden.field
    return lambda c, s: GroupElement(f.element(c), f.element(s))


def worked_system(el):
    # A = (θ, 1) acting on b1 = (θ, 1), b2 = (θ², 0)
    return ConjugacySystem(((el([0, 1], [1, 0]), el([0, 1], [1, 0])), (el([1, 1], [0, 0]), el([1, 1], [0, -1]))))


def test_worked_instance(el):
    sys = worked_system(el)
    for g, h in sys.pairs:
        assert g_conj(g, el([0, 1], [1, 0])) == h
    a, b = build_fba_system(sys)
    assert a.shape == (4, 4) and len(b) == 4
    sol = solve_fba(sys)
    assert sol.unique and sol.rank == 4 and sol.residual_checked
    assert sol.candidate == el([0, 1], [1, 0])
    assert sol.candidate.lifted


def test_degenerate_single_equation(golden, el):
    ident = golden.identity()
    sys = ConjugacySystem(((ident, ident),))
    a, b = build_fba_system(sys)
    assert a.is_zero() and b.is_zero()
    sol = solve_fba(sys)
    assert not sol.unique and sol.rank == 0
    assert not sol.candidate.unit.is_zero()


def test_empty_and_mismatched_systems(el):
    with pytest.raises(ValueError):
        ConjugacySystem(())
    with pytest.raises(InconsistentSystemError):
        ConjugacySystem(((el([0, 1], [0, 0]), el([1, 0], [0, 0])),))


def test_singular_candidate(el):
    # T·C = 0 with T = 1 forces C = 0
    with pytest.raises(SingularCandidateError):
        solve_fba(ConjugacySystem(((el([1, 0], [1, 0]), el([1, 0], [0, 0])),)))


def test_inconsistent_system(el):
    # the same (1, 1) cannot be sent to both (1, θ) and (1, 2θ)
    sys = ConjugacySystem(((el([1, 0], [1, 0]), el([1, 0], [0, 1])), (el([1, 0], [1, 0]), el([1, 0], [0, 2]))))
    with pytest.raises(InconsistentSystemError):
        solve_fba(sys)


def tamper(t):
    g = t.alice_conjugates[0]
    bad = GroupElement(g.unit, g.shift + g.field.one())
    return PublicView(t.alice_public, t.bob_public, (bad,) + t.alice_conjugates[1:], t.bob_conjugates)


@pytest.mark.parametrize("name", ("x2", "x5"))
def test_tampered_transcript(name):
    p = resolve_platform(name)
    t = run_protocol(p, ProtocolParams(seed=11))
    with pytest.raises(InconsistentSystemError):
        fba_attack(tamper(t))
    dg = DeducedGroup(build_presentation(p))
    v = tamper(t)
    deduced = PublicView(
        tuple(deduced_from_pair(g, p) for g in v.alice_public),
        tuple(deduced_from_pair(g, p) for g in v.bob_public),
        tuple(deduced_from_pair(g, p) for g in v.alice_conjugates),
        tuple(deduced_from_pair(g, p) for g in v.bob_conjugates),
    )
    with pytest.raises(InconsistentSystemError):
        fba2_attack(deduced, dg)


def test_field_basis_examples(golden):
    dg = DeducedGroup(build_presentation(golden))
    assert field_basis(dg) == (QMatrix.identity(2), QMatrix([[0, 1], [1, 1]]))
    torsion_only = load_platform(
        '{"name": "t", "polynomial": [-1, -1, 1], "units": [["-1", "0"]], "torsion_order": 2}'
    )
    assert field_basis(DeducedGroup(build_presentation(torsion_only))) == (QMatrix.identity(2),)


@pytest.mark.parametrize("name", SMALL)
def test_field_basis_is_closed(name):
    dg = DeducedGroup(build_presentation(resolve_platform(name)))
    hs = field_basis(dg)
    # K is a subfield of a degree-n field, so its dimension divides n
    assert dg.n % len(hs) == 0
    flat = QMatrix.vstack([QMatrix([[x for r in h.num for x in r]], h.den) for h in hs])
    for h in hs:
        for c in dg.matrices:
            p = h @ c
            assert rank(QMatrix.vstack([flat, QMatrix([[x for r in p.num for x in r]], p.den)])) == len(hs)


def test_fba2_dimensions(golden):
    dg = DeducedGroup(build_presentation(golden))
    t = run_protocol(golden, ProtocolParams(n1=5, n2=7, seed=2))
    v = t.pc_view().deduce(dg)
    system = build_fba2_system(tuple(zip(v.bob_public, v.alice_conjugates)), dg)
    assert system.matrix.shape == (7 * 2, 2 + system.l)
    with pytest.raises(ValueError):
        build_fba2_system((), dg)


def test_identity_private_keys(golden):
    t = run_protocol(golden, ProtocolParams(seed=4))
    view = PublicView(t.alice_public, t.bob_public, t.bob_public, t.alice_public)
    assert fba_attack(view).is_identity()
    dg = DeducedGroup(build_presentation(golden))
    d = tuple(deduced_from_pair(g, golden) for g in t.alice_public)
    e = tuple(deduced_from_pair(g, golden) for g in t.bob_public)
    assert fba2_attack(PublicView(d, e, e, d), dg).is_identity()


def test_attack_success_examples(golden):
    t = run_protocol(golden, ProtocolParams(seed=8))
    k = t.shared_key
    assert attack_success(k, t)
    shifted = g_mul(k, GroupElement(golden.field.one(), golden.basis[0]))
    assert not attack_success(shifted, t)
    dk = deduced_from_pair(k, golden)
    assert attack_success(dk, t)
    dg = DeducedGroup(build_presentation(golden))
    assert not attack_success(deduced_mul(dk, dg.generators[golden.m]), t)
    with pytest.raises(TypeError):
        attack_success("key", t)


@pytest.mark.parametrize("name", SMALL)
@given(seed=st.integers(0, 10**6), length=st.sampled_from((5, 100)))
@settings(max_examples=5, deadline=None)
def test_attack_properties(name, seed, length):
    p = resolve_platform(name)
    dg = DeducedGroup(build_presentation(p))
    t = run_protocol(p, ProtocolParams(length=length, seed=seed))
    view = t.public_view()
    alice, bob = fba_solve_both(view)
    # soundness
    for g, h in zip(view.bob_public, view.alice_conjugates):
        assert g_conj(g, alice.candidate) == h
    # rank dichotomy
    assert alice.unique == (alice.rank == 2 * p.n)
    if alice.unique:
        assert alice.candidate == t.alice_private
    if bob.unique:
        assert bob.candidate == t.bob_private
    # agreement of the two attacks
    dview = t.pc_view().deduce(dg)
    ok1 = attack_success(fba_attack(view), t)
    ok2 = attack_success(fba2_attack(dview, dg), t)
    assert ok1 == ok2 == True  # noqa: E712
    sol2 = solve_fba2(tuple(zip(dview.bob_public, dview.alice_conjugates)), dg)
    if sol2.unique:
        assert sol2.candidate == deduced_from_pair(t.alice_private, p)
