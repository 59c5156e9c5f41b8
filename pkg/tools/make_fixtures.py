"""Regenerate the builtin platform fixtures in src/ckepoly/fixtures/.

Unit generators for degree <= 7 come from ``search_units`` with height
bound 1.  Higher degrees use curated units found with ``--search`` (sparse
scan plus quotients of equal-norm elements, see ``quotient_search``).
Multiplicative independence is checked numerically on the logarithmic
embedding; norms and integrality are then checked exactly by the loader.

Requires numpy (not a runtime dependency of the package).

    python tools/make_fixtures.py            # write fixtures
    python tools/make_fixtures.py --search x9 --bound 3 --max-norm 300
"""
import argparse
import itertools
import sys
from pathlib import Path

import numpy as np

from ckepoly.number_field import NumberField
from ckepoly.platform import PlatformSpec, load_platform, search_units

OUT = Path(__file__).resolve().parent.parent / "src" / "ckepoly" / "fixtures"

# name -> (coefficients constant-first, expected h(G) from the published table)
POLYS = {
    "x2": ([-1, -1, 1], 3),
    "x5": ([-1, 0, 0, -1, 0, 1], 7),
    "x7": ([-1, 0, 0, -1, 0, 0, 0, 1], 10),
    "x9": ([-1, 0, 0, -7, 0, 0, 0, 0, 0, 1], 14),
    "x11": ([-1, 0, 0, -1] + [0] * 7 + [1], 16),
    "x15": ([-2, -1] + [0] * 13 + [1], 22),
    "x20": ([-1, -1] + [0] * 18 + [1], 30),
}

CURATED = {
    "x9": [
        [0, -1, 1, -3, -3, -2, -2, -1, -1],
        [-1, 1, -3, -3, -2, -2, -1, -1, 0],
        [0, -1, 0, 0, -3, 0, 0, -1, 0],
        [-35, 63, -125, 0, 1, -3, 5, -9, 18],
        [-3281, -2353, -1683, -24175, -17331, -12424, -8906, -6384, -4577],
    ],
    "x11": [
        [0, 1] + [0] * 9,
        [1, 1] + [0] * 9,
        [-1, 1] + [0] * 9,
        [1, 0, 1] + [0] * 8,
        [1, 0, 0, 0, 0, 1] + [0] * 5,
    ],
    "x15": [
        [-1] * 15,
        [-1, 0, 1, 1, 1, 1, 1, 1, 0, -1, -1, -1, -1, -1, -1],
        [-1, 0, 0, 1, 1, 1, 1, 1, 0, -1, -1, -1, 0, 0, 0],
        [1, 0, 0, -1, 1, -1, 0, -1, 1, -1, -1, 0, 0, 0, -1],
        [1, 1, 1, 1, 1, 1, 1, 0, -1, -1, 0, 0, -1, -1, 0],
        [1, 0, 0, 1, -1, 0, 0, 0, 1, -1, 0, 0, 0, 1, -1],
        [-253, -407, -398, -321, -198, -59, 72, 173, 229, 239, 205, 141, 61, -19, -84],
    ],
    "x20": [
        [0, -1] + [0] * 18,
        [-1, 1] + [0] * 18,
        [-1, 0, -1] + [0] * 17,
        [-1, 0, 0, 0, 0, -1] + [0] * 14,
        [-1, 0, 0, 0, 0, 1] + [0] * 14,
        [-1, 0, 0, 0, 0, 0, 0, -1] + [0] * 12,
        [-1] + [0] * 12 + [1] + [0] * 6,
        [-1, 0, 0, -1] + [0] * 7 + [-1] + [0] * 8,
        [-1] + [0] * 7 + [1, 0, 0, 0, 1] + [0] * 7,
        [-1, 0, 1, 0, 0, 0, -1] + [0] * 8 + [1, 0, 0, 0, 0],
    ],
}


def embeddings(coeffs):
    roots = np.roots(list(reversed(coeffs)))
    real = [z for z in roots if abs(z.imag) < 1e-9]
    cplx = [z for z in roots if z.imag > 1e-9]
    return np.array(real + cplx), len(real), len(cplx)


def log_vector(unit, emb, rank):
    vals = np.polyval(list(reversed(unit)), emb)
    return np.log(np.abs(vals))[:rank]


def independent_subset(units, emb, rank):
    chosen, logs = [], []
    for u in units:
        lv = log_vector(u, emb, rank)
        if np.linalg.matrix_rank(np.array(logs + [lv]), tol=1e-6) > len(logs):
            chosen.append(u)
            logs.append(lv)
        if len(chosen) == rank:
            break
    return chosen


def quotient_search(coeffs, bound, max_norm, chunk=7):
    """Units as quotients α/β of elements with equal |norm| and |coeffs| <= bound."""
    n = len(coeffs) - 1
    emb, s, t = embeddings(coeffs)
    rank = s + t - 1
    weights = np.array([1] * s + [2] * t)
    allroots = np.concatenate([emb, np.conj(emb[s:])])
    vander = np.array([allroots ** i for i in range(n)]).T
    powers = np.array([emb ** i for i in range(n)])
    vals = np.arange(-bound, bound + 1)
    k = min(n, chunk)
    inner = np.array(list(itertools.product(vals, repeat=k)))
    inner_v = inner @ powers[:k]
    groups = {}
    for outer in itertools.product(vals, repeat=n - k):
        v = inner_v + (np.array(outer) @ powers[k:] if n > k else 0)
        with np.errstate(divide="ignore"):
            logs = np.log(np.abs(v))
        norm = np.exp((logs * weights).sum(axis=1))
        rounded = np.round(norm)
        ok = (rounded <= max_norm) & (np.abs(norm - rounded) < 1e-6 * np.maximum(rounded, 1))
        ok &= np.all(np.isfinite(logs), axis=1)
        for i in np.where(ok)[0]:
            groups.setdefault(int(rounded[i]), []).append((np.concatenate([inner[i], outer]), logs[i]))
    basis, found = [], []
    for norm, items in sorted(groups.items()):
        if norm == 1:
            for c, lg in items:
                if np.linalg.matrix_rank(np.array(basis + [lg[:rank]]), tol=1e-6) > len(basis):
                    basis.append(lg[:rank])
                    found.append([int(x) for x in c])
            continue
        full = [np.polyval(list(reversed(list(c))), allroots) for c, _ in items]
        for i, j in itertools.combinations(range(len(items)), 2):
            d = (items[i][1] - items[j][1])[:rank]
            if np.linalg.matrix_rank(np.array(basis + [d]), tol=1e-6) <= len(basis):
                continue
            cq = np.linalg.solve(vander, full[i] / full[j])
            rq = np.round(cq.real)
            if np.max(np.abs(cq - rq)) > 1e-5:
                continue
            basis.append(d)
            found.append([int(x) for x in rq])
            if len(basis) == rank:
                return found
        if len(basis) == rank:
            break
    return found


def build(name):
    coeffs, hirsch = POLYS[name]
    field = NumberField.from_coefficients(coeffs)
    n = field.degree
    emb, s, t = embeddings(coeffs)
    rank = s + t - 1
    power_basis = [field.element([int(i == j) for j in range(n)]) for i in range(n)]
    if name in CURATED:
        candidates = CURATED[name]
        provenance = "curated: sparse scan and equal-norm quotient search (tools/make_fixtures.py --search)"
    else:
        candidates = [list(map(int, u.num)) for u in search_units(field, power_basis, 1) if not u.is_one()]
        provenance = "search_units over the power basis, height bound 1"
    units = independent_subset(candidates, emb, rank)
    if len(units) != rank:
        raise SystemExit(f"{name}: only {len(units)} independent units of {rank}")
    spec = PlatformSpec(
        name=name,
        field=field,
        basis=tuple(power_basis),
        units=tuple([field.scalar(-1)] + [field.element(u) for u in units]),
        torsion_order=2,
        signature=(s, t),
        expected_hirsch_length=hirsch,
        provenance=provenance,
    )
    text = spec.to_json()
    loaded = load_platform(text)
    if loaded.hirsch_length != hirsch:
        raise SystemExit(f"{name}: h(G) = {loaded.hirsch_length}, expected {hirsch}")
    return text


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--search")
    ap.add_argument("--bound", type=int, default=2)
    ap.add_argument("--max-norm", type=int, default=300)
    args = ap.parse_args(argv)
    if args.search:
        print(quotient_search(POLYS[args.search][0], args.bound, args.max_norm))
        return
    OUT.mkdir(parents=True, exist_ok=True)
    for name in POLYS:
        (OUT / f"{name}.json").write_text(build(name) + "\n")
        print(f"wrote {name}.json", file=sys.stderr)


if __name__ == "__main__":
    main()
