"""ckepoly command line: simulate, attack, bench, platform."""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import __version__
from ._kernels import BACKEND
from .attacks import AttackError, attack_success
from .bench import (
    ATTACKS,
    DEFAULT_PLATFORMS,
    BenchConfig,
    TrialTimeout,
    _time_limit,
    format_csv,
    format_table,
    run_attack,
    run_bench,
)
from .pc_presentation import build_presentation
from .platform import FixtureError, PlatformMismatch, available_platforms, resolve_platform
from .protocol import (
    ProtocolError,
    ProtocolParams,
    run_protocol,
    transcript_from_json,
    transcript_platform_name,
    transcript_to_json,
)

EXIT_OK = 0
EXIT_FIXTURE = 3
EXIT_ATTACK = 4
EXIT_INTERNAL = 5


def _params(args) -> ProtocolParams:
    return ProtocolParams(args.n1, args.n2, args.L, args.gen_word_length, args.seed)


def _add_protocol_args(ap):
    ap.add_argument("--platform", default="x2", help="builtin fixture name or path to a fixture file")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--n1", type=int, default=20)
    ap.add_argument("--n2", type=int, default=20)
    ap.add_argument("-L", type=int, default=5, help="private word length")
    ap.add_argument("--gen-word-length", type=int, default=10, help="letters per public tuple element")


def _short(g, limit=72) -> str:
    s = str(g)
    return s if len(s) <= limit else s[: limit - 3] + "..."


def cmd_simulate(args) -> int:
    p = resolve_platform(args.platform)
    t = run_protocol(p, _params(args))
    print(f"platform      {p.name}  f = {p.field.poly}")
    print(f"params        N1={t.params.n1} N2={t.params.n2} L={t.params.length} "
          f"gen_word_length={t.params.gen_word_length} seed={t.params.seed}")
    for label, seq in (("a", t.alice_public), ("b", t.bob_public)):
        for i, g in enumerate(seq[: args.show]):
            print(f"{label}{i + 1:<12} {_short(g)}")
        if len(seq) > args.show:
            print(f"{'':13} ... {len(seq) - args.show} more")
    print(f"shared key    {t.shared_key}")
    print("K_A = K_B = [A, B]: ok")
    if args.emit:
        Path(args.emit).write_text(transcript_to_json(t) + "\n")
        print(f"transcript written to {args.emit}")
    return EXIT_OK


def cmd_attack(args) -> int:
    if args.transcript:
        text = Path(args.transcript).read_text()
        p = resolve_platform(args.platform if args.platform_given else transcript_platform_name(text))
        t = transcript_from_json(text, p)
    else:
        p = resolve_platform(args.platform)
        t = run_protocol(p, _params(args))
    attacks = ATTACKS if args.attack == "both" else (args.attack,)
    verdicts = []
    rc = EXIT_OK
    for attack in attacks:
        start = time.perf_counter()
        try:
            with _time_limit(args.timeout_secs):
                key, unique = run_attack(t, attack)
        except TrialTimeout as exc:
            print(f"{attack.upper()}: timeout ({exc})")
            rc = EXIT_ATTACK
            continue
        except (AttackError, ArithmeticError) as exc:
            print(f"{attack.upper()}: {type(exc).__name__}: {exc}")
            rc = EXIT_ATTACK
            continue
        elapsed = time.perf_counter() - start
        ok = attack_success(key, t)
        verdicts.append(ok)
        print(f"{attack.upper()}: success={str(ok).lower()} unique={str(unique).lower()} time={elapsed:.3f}s")
        print(f"  candidate key {_short(key, 200)}")
        if not ok:
            rc = EXIT_ATTACK
    if len(verdicts) == 2:
        print(f"attacks agree: {str(verdicts[0] == verdicts[1]).lower()}")
    return rc


def cmd_bench(args) -> int:
    config = BenchConfig(
        platforms=tuple(args.platform or DEFAULT_PLATFORMS),
        lengths=tuple(args.L or (5, 100)),
        trials=args.trials,
        base_seed=args.seed,
        attack=args.attack,
        n1=args.n1,
        n2=args.n2,
        gen_word_length=args.gen_word_length,
        timeout_secs=args.timeout_secs,
        jobs=args.jobs,
    )
    progress = None
    if not args.quiet:
        def progress(row):
            print(f"  {row.platform} {row.attack} L={row.length}: {row.successes}/{row.trials}", file=sys.stderr)
    rows = run_bench(config, progress)
    timing = not args.no_timing
    out = format_csv(rows, timing) if args.format == "csv" else format_table(rows, timing)
    if args.emit:
        Path(args.emit).write_text(out)
    sys.stdout.write(out)
    return EXIT_OK


def cmd_platform(args) -> int:
    if args.list:
        for name in available_platforms():
            print(name)
        return EXIT_OK
    p = resolve_platform(args.platform)
    torsion_gens = p.m - p.free_unit_count
    print(f"platform      {p.name}")
    print(f"polynomial    {p.field.poly}")
    print(f"degree n      {p.n}")
    if p.signature:
        print(f"signature     {tuple(p.signature)}  (unit rank {sum(p.signature) - 1})")
    print(f"units m       {p.m}  (torsion generators {torsion_gens}, order k = {p.torsion_order})")
    print(f"h(G)          {p.hirsch_length} = {p.m - torsion_gens} + {p.n}")
    if p.expected_hirsch_length is not None:
        flag = ""
        if p.hirsch_length < p.expected_hirsch_length:
            flag = "  [smaller than expected: unit data incomplete]"
        elif p.hirsch_length > p.expected_hirsch_length:
            flag = "  [larger than expected]"
        print(f"expected h(G) {p.expected_hirsch_length}{flag}")
    if p.provenance:
        print(f"provenance    {p.provenance}")
    if not args.no_presentation:
        print()
        print(build_presentation(p).dump())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ckepoly", description="Commutator key exchange over U_F ⋉ O_F and its attacks.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({BACKEND} kernels)")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", help="run one protocol instance")
    _add_protocol_args(s)
    s.add_argument("--emit", metavar="PATH", help="write the transcript to PATH")
    s.add_argument("--show", type=int, default=3, help="public elements printed per tuple")
    s.set_defaults(func=cmd_simulate)

    a = sub.add_parser("attack", help="attack a stored or freshly generated transcript")
    _add_protocol_args(a)
    a.add_argument("--transcript", metavar="PATH")
    a.add_argument("--attack", choices=ATTACKS + ("both",), default="both")
    a.add_argument("--timeout-secs", type=float, default=600.0)
    a.set_defaults(func=cmd_attack)

    b = sub.add_parser("bench", help="success rates over seeded trials")
    b.add_argument("--platform", action="append", help="fixture name or path (repeatable)")
    b.add_argument("--seed", type=int, default=0, help="base seed; trial i uses seed + i")
    b.add_argument("--n1", type=int, default=20)
    b.add_argument("--n2", type=int, default=20)
    b.add_argument("-L", type=int, action="append", help="private word length (repeatable, default 5 and 100)")
    b.add_argument("--gen-word-length", type=int, default=10)
    b.add_argument("--trials", type=int, default=100)
    b.add_argument("--attack", choices=ATTACKS + ("both",), default="both")
    b.add_argument("--format", choices=("table", "csv"), default="table")
    b.add_argument("--emit", metavar="PATH", help="also write the output to PATH")
    b.add_argument("--timeout-secs", type=float, default=600.0, help="per-trial limit")
    b.add_argument("--jobs", type=int, default=1, help="worker processes")
    b.add_argument("--no-timing", action="store_true", help="omit timings so output is reproducible byte for byte")
    b.add_argument("--quiet", action="store_true")
    b.set_defaults(func=cmd_bench)

    pl = sub.add_parser("platform", help="describe a platform fixture")
    pl.add_argument("--platform", default="x2")
    pl.add_argument("--list", action="store_true", help="list builtin fixtures")
    pl.add_argument("--no-presentation", action="store_true", help="skip the relation listing")
    pl.set_defaults(func=cmd_platform)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    raw = sys.argv[1:] if argv is None else list(argv)
    args.platform_given = any(x == "--platform" or x.startswith("--platform=") for x in raw)
    try:
        return args.func(args)
    except (FixtureError, PlatformMismatch) as exc:
        print(f"ckepoly: fixture error: {exc}", file=sys.stderr)
        return EXIT_FIXTURE
    except (ProtocolError, AssertionError) as exc:
        print(f"ckepoly: internal assertion failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (OSError, ValueError, KeyError) as exc:
        print(f"ckepoly: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
