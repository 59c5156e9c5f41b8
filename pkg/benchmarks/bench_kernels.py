"""Compare the compiled and pure-Python integer kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Also times one FBA and one FBA2 attack on x11 with each backend by
re-importing the package in a subprocess with CKEPOLY_PURE_PYTHON set.
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from ckepoly import _pykernels

try:
    from ckepoly import _ckernels
except ImportError:
    _ckernels = None


def cases(rng):
    n = 20
    low = [rng.randint(-3, 3) for _ in range(n)]
    a = [rng.randint(-10**30, 10**30) for _ in range(n)]
    b = [rng.randint(-10**30, 10**30) for _ in range(n)]
    m = [[rng.randint(-10**6, 10**6) for _ in range(n)] for _ in range(n)]
    sys_rows = [[rng.randint(-50, 50) for _ in range(41)] for _ in range(80)]
    return {
        "poly_mulmod n=20": lambda k: k.poly_mulmod(a, b, low),
        "int_matmul 20x20": lambda k: k.int_matmul(m, m),
        "vec_matmul 20": lambda k: k.vec_matmul(a, m),
        "echelon 80x41": lambda k: k.echelon(sys_rows, 41),
    }


ATTACK_SNIPPET = """
import time
from ckepoly import BACKEND
from ckepoly.bench import run_attack
from ckepoly.platform import resolve_platform
from ckepoly.protocol import ProtocolParams, run_protocol
p = resolve_platform('x11')
t = run_protocol(p, ProtocolParams(length=100, seed=1))
for attack in ('fba', 'fba2'):
    s = time.perf_counter(); run_attack(t, attack); e = time.perf_counter() - s
    print(f'{BACKEND:8s} {attack:5s} x11 L=100  {1000 * e:9.1f} ms')
"""


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--number", type=int, default=20)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; run: pip install -e . --no-build-isolation")
    rng = random.Random(0)
    print(f"{'kernel':20s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for name, fn in cases(rng).items():
        py = min(timeit.repeat(lambda: fn(_pykernels), number=args.number, repeat=args.repeat)) / args.number
        if _ckernels is not None:
            cy = min(timeit.repeat(lambda: fn(_ckernels), number=args.number, repeat=args.repeat)) / args.number
            assert fn(_pykernels) == fn(_ckernels), name
            print(f"{name:20s} {1000 * py:10.3f} {1000 * cy:10.3f} {py / cy:7.2f}x")
        else:
            print(f"{name:20s} {1000 * py:10.3f} {'-':>10s}")
    print(flush=True)
    for pure in ("1", "0"):
        env = dict(os.environ, CKEPOLY_PURE_PYTHON=pure)
        subprocess.run([sys.executable, "-c", ATTACK_SNIPPET], env=env, check=True)


if __name__ == "__main__":
    main()
