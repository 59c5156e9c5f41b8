"""Commutator key establishment over a platform.

Alice and Bob publish tuples of random platform elements, exchange tuples of
conjugates by their private products and both arrive at [A, B] = A⁻¹B⁻¹AB.
Every public element keeps the generator word it was drawn from so that its
polycyclic normal form is available without a membership search.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .number_field import FieldElement
from .pc_presentation import DeducedGroup, normal_form, word_exponents
from .platform import (
    GroupElement,
    GroupWord,
    PlatformSpec,
    commutator,
    eval_word,
    g_conj,
    g_inv,
    g_mul,
    identity,
    random_word,
)

TRANSCRIPT_FORMAT = "ckepoly-transcript/1"


class ProtocolError(AssertionError):
    """A protocol identity that must hold exactly did not."""


@dataclass(frozen=True)
class ProtocolParams:
    n1: int = 20
    n2: int = 20
    length: int = 5
    gen_word_length: int = 10
    seed: int = 0

    def __post_init__(self):
        for name in ("n1", "n2", "length", "gen_word_length"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")


@dataclass(frozen=True)
class PublicView:
    """What an eavesdropper sees: ā, b̄, b̄^A and ā^B."""

    alice_public: tuple
    bob_public: tuple
    alice_conjugates: tuple
    bob_conjugates: tuple

    def to_json(self) -> dict:
        return {
            "alice_public": [_element_json(g) for g in self.alice_public],
            "bob_public": [_element_json(g) for g in self.bob_public],
            "alice_conjugates": [_element_json(g) for g in self.alice_conjugates],
            "bob_conjugates": [_element_json(g) for g in self.bob_conjugates],
        }


@dataclass(frozen=True)
class PcView:
    """The same public data as polycyclic normal-form exponent vectors."""

    alice_public: tuple[tuple[int, ...], ...]
    bob_public: tuple[tuple[int, ...], ...]
    alice_conjugates: tuple[tuple[int, ...], ...]
    bob_conjugates: tuple[tuple[int, ...], ...]

    def deduce(self, dg: DeducedGroup) -> PublicView:
        """τ-images of every published normal form."""
        conv = lambda seq: tuple(dg.from_normal_form(e) for e in seq)  # noqa: E731
        return PublicView(
            conv(self.alice_public), conv(self.bob_public), conv(self.alice_conjugates), conv(self.bob_conjugates)
        )


@dataclass(frozen=True)
class Transcript:
    platform: PlatformSpec = field(repr=False)
    params: ProtocolParams
    alice_public: tuple[GroupElement, ...]
    bob_public: tuple[GroupElement, ...]
    alice_public_words: tuple[GroupWord, ...]
    bob_public_words: tuple[GroupWord, ...]
    alice_private_word: GroupWord
    bob_private_word: GroupWord
    alice_conjugates: tuple[GroupElement, ...]
    bob_conjugates: tuple[GroupElement, ...]
    shared_key: GroupElement
    # secrets, kept for evaluation only
    alice_private: GroupElement = field(repr=False)
    bob_private: GroupElement = field(repr=False)

    def public_view(self) -> PublicView:
        return PublicView(self.alice_public, self.bob_public, self.alice_conjugates, self.bob_conjugates)

    def pc_view(self) -> PcView:
        p = self.platform
        torsion = {0: p.torsion_order}
        alice_exps = [word_exponents(w, p.m, torsion) for w in self.alice_public_words]
        bob_exps = [word_exponents(w, p.m, torsion) for w in self.bob_public_words]
        # conjugation keeps the unit part, hence the unit exponents
        return PcView(
            tuple(normal_form(g, e, p) for g, e in zip(self.alice_public, alice_exps)),
            tuple(normal_form(g, e, p) for g, e in zip(self.bob_public, bob_exps)),
            tuple(normal_form(g, e, p) for g, e in zip(self.alice_conjugates, bob_exps)),
            tuple(normal_form(g, e, p) for g, e in zip(self.bob_conjugates, alice_exps)),
        )


def _power_letter(elems: Sequence[GroupElement], inverses: dict, i: int, e: int) -> GroupElement:
    if e == 1:
        return elems[i]
    if i not in inverses:
        inverses[i] = g_inv(elems[i])
    return inverses[i]


def alice_key(view: PublicView, alice_word: GroupWord, alice_private: GroupElement) -> GroupElement:
    """A⁻¹ · Π (B⁻¹ a_s B)^ε, using only Bob's conjugate tuple."""
    if not alice_word.letters:
        raise ValueError("private word must be nonempty")
    conj = view.bob_conjugates
    if alice_word.max_index() >= len(conj):
        raise IndexError("private word refers to a missing public element")
    inverses: dict = {}
    acc = g_inv(alice_private)
    for i, e in alice_word.letters:
        acc = g_mul(acc, _power_letter(conj, inverses, i, e))
    return acc


def bob_key(view: PublicView, bob_word: GroupWord, bob_private: GroupElement) -> GroupElement:
    """(Π (A⁻¹ b_t A)^δ)⁻¹ · B, using only Alice's conjugate tuple."""
    if not bob_word.letters:
        raise ValueError("private word must be nonempty")
    conj = view.alice_conjugates
    if bob_word.max_index() >= len(conj):
        raise IndexError("private word refers to a missing public element")
    inverses: dict = {}
    acc = identity(conj[0].field)
    for i, e in bob_word.letters:
        acc = g_mul(acc, _power_letter(conj, inverses, i, e))
    return g_mul(g_inv(acc), bob_private)


def run_protocol(p: PlatformSpec, params: ProtocolParams) -> Transcript:
    rng = random.Random(params.seed)
    gens, gen_invs = p.generators, p.generator_inverses
    k = len(gens)
    alice_words = tuple(random_word(rng, k, params.gen_word_length) for _ in range(params.n1))
    bob_words = tuple(random_word(rng, k, params.gen_word_length) for _ in range(params.n2))
    a = tuple(eval_word(w, gens, gen_invs) for w in alice_words)
    b = tuple(eval_word(w, gens, gen_invs) for w in bob_words)
    alice_word = random_word(rng, params.n1, params.length)
    bob_word = random_word(rng, params.n2, params.length)
    A = eval_word(alice_word, a)
    B = eval_word(bob_word, b)
    b_conj = tuple(g_conj(x, A) for x in b)
    a_conj = tuple(g_conj(x, B) for x in a)
    view = PublicView(a, b, b_conj, a_conj)
    key = commutator(A, B)
    ka = alice_key(view, alice_word, A)
    kb = bob_key(view, bob_word, B)
    if not (ka == kb == key):
        raise ProtocolError("K_A, K_B and [A, B] disagree")
    return Transcript(
        platform=p,
        params=params,
        alice_public=a,
        bob_public=b,
        alice_public_words=alice_words,
        bob_public_words=bob_words,
        alice_private_word=alice_word,
        bob_private_word=bob_word,
        alice_conjugates=b_conj,
        bob_conjugates=a_conj,
        shared_key=key,
        alice_private=A,
        bob_private=B,
    )


def _fe_json(e: FieldElement) -> list[str]:
    return [str(c) for c in e.coeffs.entries]


def _element_json(g: GroupElement) -> dict:
    return {"unit": _fe_json(g.unit), "shift": _fe_json(g.shift)}


def _element_from_json(p: PlatformSpec, doc) -> GroupElement:
    f = p.field
    return GroupElement(
        f.element(Fraction(x) for x in doc["unit"]), f.element(Fraction(x) for x in doc["shift"])
    )


def transcript_to_json(t: Transcript) -> str:
    doc = {
        "format": TRANSCRIPT_FORMAT,
        "platform": t.platform.name,
        "polynomial": list(t.platform.field.poly.coefficients),
        "params": {
            "n1": t.params.n1,
            "n2": t.params.n2,
            "L": t.params.length,
            "gen_word_length": t.params.gen_word_length,
            "seed": t.params.seed,
        },
        "public": t.public_view().to_json(),
        "public_words": {
            "alice": [w.to_json() for w in t.alice_public_words],
            "bob": [w.to_json() for w in t.bob_public_words],
        },
        "secret": {
            "alice_word": t.alice_private_word.to_json(),
            "bob_word": t.bob_private_word.to_json(),
            "alice_private": _element_json(t.alice_private),
            "bob_private": _element_json(t.bob_private),
            "shared_key": _element_json(t.shared_key),
        },
    }
    return json.dumps(doc, indent=1)


def transcript_from_json(text: str, p: PlatformSpec) -> Transcript:
    doc = json.loads(text)
    if doc.get("format") != TRANSCRIPT_FORMAT:
        raise ValueError(f"not a transcript document (format {doc.get('format')!r})")
    if list(doc["polynomial"]) != list(p.field.poly.coefficients):
        raise ValueError(f"transcript was made on {doc['platform']}, not on {p.name}")
    pr = doc["params"]
    params = ProtocolParams(pr["n1"], pr["n2"], pr["L"], pr["gen_word_length"], pr["seed"])
    pub, sec = doc["public"], doc["secret"]
    conv = lambda seq: tuple(_element_from_json(p, x) for x in seq)  # noqa: E731
    return Transcript(
        platform=p,
        params=params,
        alice_public=conv(pub["alice_public"]),
        bob_public=conv(pub["bob_public"]),
        alice_public_words=tuple(GroupWord.from_json(w) for w in doc["public_words"]["alice"]),
        bob_public_words=tuple(GroupWord.from_json(w) for w in doc["public_words"]["bob"]),
        alice_private_word=GroupWord.from_json(sec["alice_word"]),
        bob_private_word=GroupWord.from_json(sec["bob_word"]),
        alice_conjugates=conv(pub["alice_conjugates"]),
        bob_conjugates=conv(pub["bob_conjugates"]),
        shared_key=_element_from_json(p, sec["shared_key"]),
        alice_private=_element_from_json(p, sec["alice_private"]),
        bob_private=_element_from_json(p, sec["bob_private"]),
    )


def transcript_platform_name(text: str) -> str:
    return json.loads(text)["platform"]
