"""Freeze reference values computed by the sympy oracle into tests/data/oracles.json.

Nothing here imports ckepoly; fixture files are read as plain JSON.

    python3 tools/derive_oracles.py
"""
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

import oracle  # noqa: E402

FIXTURES = ROOT / "src" / "ckepoly" / "fixtures"
OUT = ROOT / "tests" / "data" / "oracles.json"


def s(v):
    return [str(x) for x in v]


def field_cases(rng, name):
    doc = json.loads((FIXTURES / f"{name}.json").read_text())
    ref = oracle.RefField(doc["polynomial"])
    n = ref.n
    cases = []
    for _ in range(3):
        a = [Fraction(rng.randint(-4, 4)) for _ in range(n)]
        a[rng.randrange(n)] = Fraction(rng.choice([1, 2, 3]))
        b = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n)]
        cases.append(
            {"a": s(a), "b": s(b), "product": s(ref.mul(a, b)), "inverse_a": s(ref.inv(a)), "norm_a": str(ref.norm(a))}
        )
    return cases


def presentation(name):
    doc = json.loads((FIXTURES / f"{name}.json").read_text())
    ref = oracle.RefField(doc["polynomial"])
    basis = [[Fraction(x) for x in b] for b in doc["basis"]]
    units = [[Fraction(x) for x in u] for u in doc["units"]]
    return {
        "conj": [[s(r) for r in oracle.right_mult_rows(ref, u, basis)] for u in units],
        "conj_inv": [[s(r) for r in oracle.right_mult_rows(ref, ref.inv(u), basis)] for u in units],
    }


def matrix_cases(rng):
    out = []
    for n in (2, 3, 4, 5):
        m = [[Fraction(rng.randint(-7, 7), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)]
        out.append(
            {
                "m": [s(r) for r in m],
                "det": str(oracle.matrix_det(m)),
                "rank": oracle.matrix_rank(m),
                "inverse": [s(r) for r in oracle.matrix_inverse(m)] if oracle.matrix_det(m) else None,
                "square": [s(r) for r in oracle.matrix_product(m, m)],
            }
        )
    return out


def golden_transcript():
    """N1 = N2 = 2, L = 2 over x2 with fixed words, expanded letter by letter."""
    doc = json.loads((FIXTURES / "x2.json").read_text())
    ref = oracle.RefField(doc["polynomial"])
    units = [[Fraction(x) for x in u] for u in doc["units"]]
    basis = [[Fraction(x) for x in b] for b in doc["basis"]]
    gens = [(u, ref.zero()) for u in units] + [(ref.one(), b) for b in basis]
    words = {
        "a": [[[1, 1], [2, 1], [1, 1]], [[3, -1], [1, -1], [0, 1]]],
        "b": [[[1, -1], [3, 1], [3, 1]], [[2, 1], [0, 1], [1, 1]]],
        "alice": [[0, 1], [1, -1]],
        "bob": [[1, 1], [0, 1]],
    }
    a = [oracle.eval_word(ref, w, gens) for w in words["a"]]
    b = [oracle.eval_word(ref, w, gens) for w in words["b"]]
    A = oracle.eval_word(ref, words["alice"], a)
    B = oracle.eval_word(ref, words["bob"], b)
    el = lambda g: {"unit": s(g[0]), "shift": s(g[1])}  # noqa: E731
    return {
        "words": words,
        "a": [el(g) for g in a],
        "b": [el(g) for g in b],
        "A": el(A),
        "B": el(B),
        "b_conj": [el(ref.gconj(g, A)) for g in b],
        "a_conj": [el(ref.gconj(g, B)) for g in a],
        "key": el(ref.commutator(A, B)),
    }


def main():
    rng = random.Random(20240611)
    data = {
        "field": {name: field_cases(rng, name) for name in ("x2", "x5", "x7", "x9", "x11", "x15", "x20")},
        "presentation": {name: presentation(name) for name in ("x2", "x5", "x7")},
        "matrix": matrix_cases(rng),
        "golden_transcript": golden_transcript(),
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(data, indent=1) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
