"""Command-line front end.

Subcommands print deterministic text: identical invocations give byte
identical stdout, diagnostics and summaries go to stderr.  Every printed
number comes from exact integer/rational arithmetic.

Exit codes: 0 success, 1 domain error (caps, parse failures, DIFFER), 2
usage error.  `verify` is the one command where unreadable inputs are a
usage error (exit 2), since exit 1 there means "circuits differ".
"""

from __future__ import annotations

import argparse
import itertools
import sys

from . import circuit as circ
from . import counting
from .classify import classify_all
from .counting import render_percent
from .errors import CapExceeded, PermGateError
from .perm import check_enumeration_cap
from .templates import (
    MAX_TEMPLATE_SIZE,
    MULT_TABLE_CAP,
    GateLibrary,
    generate_templates,
    load_store,
    save_store,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permgate",
        description="Exact statistics, templates, and peephole optimization "
                    "for permutation gates on basis indices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="involution counts and the non-self-inverse "
                                     "percentage for n qubits")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--decimals", type=int, default=4)

    p = sub.add_parser("enumerate", help="list S_M in one-line notation")
    p.add_argument("--dimension", type=int, required=True)
    p.add_argument("--filter", choices=["all", "involution", "non-involution"],
                   default="all")
    p.add_argument("--force", action="store_true",
                   help="override the dimension cap")

    p = sub.add_parser("classify", help="exhaustive Hermitian/separable census")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--decimals", type=int, default=2)
    p.add_argument("--force", action="store_true",
                   help="override the qubit cap")

    p = sub.add_parser("templates", help="generate an identity-template store")
    p.add_argument("--dimension", type=int, required=True)
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--force", action="store_true",
                   help="override the library size cap")

    p = sub.add_parser("optimize", help="shrink a circuit, preserving semantics")
    p.add_argument("--circuit", required=True)
    p.add_argument("--templates", default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--budget", type=int, default=circ.DEFAULT_REWRITE_BUDGET)

    p = sub.add_parser("verify", help="check two circuit files for equality")
    p.add_argument("--circuit", action="append", required=True,
                   metavar="FILE", help="given twice: the circuits to compare")

    return parser


def _cmd_stats(args, parser) -> int:
    if not 1 <= args.qubits <= counting.MAX_QUBITS:
        parser.error(f"--qubits must be in 1..{counting.MAX_QUBITS}")
    if not 0 <= args.decimals <= counting.MAX_DECIMALS:
        parser.error(f"--decimals must be in 0..{counting.MAX_DECIMALS}")
    dim = 2 ** args.qubits
    total = counting.factorial(dim)
    hermitian = counting.involution_count(dim)
    ratio = counting.non_hermitian_fraction(args.qubits)
    print(f"qubits={args.qubits}")
    print(f"dimension={dim}")
    print(f"total={total}")
    print(f"hermitian={hermitian}")
    print(f"non_hermitian={total - hermitian}")
    print(f"non_hermitian_percent={render_percent(ratio, args.decimals)}")
    return 0


def _cmd_enumerate(args, parser) -> int:
    m = args.dimension
    if m < 1:
        parser.error("--dimension must be >= 1")
    check_enumeration_cap(m, args.force)
    count = 0
    want_involution = {"all": None, "involution": True, "non-involution": False}
    want = want_involution[args.filter]
    for notation in itertools.permutations(range(1, m + 1)):
        if want is not None:
            images = [k - 1 for k in notation]
            if all(images[images[j]] == j for j in range(m)) != want:
                continue
        print("(" + ",".join(map(str, notation)) + ")")
        count += 1
    print(f"count={count}", file=sys.stderr)
    return 0


def _cmd_classify(args, parser) -> int:
    if args.qubits < 1:
        parser.error("--qubits must be >= 1")
    if not 0 <= args.decimals <= counting.MAX_DECIMALS:
        parser.error(f"--decimals must be in 0..{counting.MAX_DECIMALS}")
    report = classify_all(args.qubits, force=args.force)
    print(f"qubits={report.n_qubits}")
    print(f"total={report.total}")
    print(f"hermitian={report.hermitian_count}")
    print(f"non_hermitian={report.non_hermitian_count}")
    print(f"separable={report.separable_count}")
    print(f"entangled={report.entangled_count}")
    print("non_hermitian_percent="
          + render_percent(report.non_hermitian_fraction, args.decimals))
    print("entangled_percent="
          + render_percent(report.entangled_fraction, args.decimals))
    return 0


def _cmd_templates(args, parser) -> int:
    m = args.dimension
    if m < 2 or m & (m - 1):
        parser.error("--dimension must be a power of two >= 2")
    if not 2 <= args.max_size <= MAX_TEMPLATE_SIZE:
        parser.error(f"--max-size must be in 2..{MAX_TEMPLATE_SIZE}")
    library = GateLibrary.symmetric_group(m, force=args.force)
    if len(library) > MULT_TABLE_CAP and not args.force:
        raise CapExceeded(
            f"S_{m} library has {len(library)} gates, over the cap of "
            f"{MULT_TABLE_CAP}; pass --force to override"
        )
    store = generate_templates(library, args.max_size)
    save_store(store, args.out)
    print(f"templates={len(store)}")
    return 0


def _cmd_optimize(args, parser) -> int:
    if args.budget < 0:
        parser.error("--budget must be >= 0")
    circuit = circ.load_circuit(args.circuit)
    store = load_store(args.templates) if args.templates else None
    optimized, report = circ.optimize(circuit, store, budget=args.budget)
    if circ.circuit_permutation(optimized) != circ.circuit_permutation(circuit):
        print("internal error: optimized circuit is not equivalent; "
              "no output written", file=sys.stderr)
        return 1
    circ.save_circuit(optimized, args.out)
    print(f"gates_before={report.gates_before}")
    print(f"gates_after={report.gates_after}")
    print(f"removed={report.removed}")
    print(f"rewrites={report.template_rewrites}")
    return 0


def _cmd_verify(args, parser) -> int:
    if len(args.circuit) != 2:
        parser.error("verify needs exactly two --circuit arguments")
    try:
        a = circ.load_circuit(args.circuit[0])
        b = circ.load_circuit(args.circuit[1])
    except (PermGateError, OSError) as exc:
        # exit 1 is reserved for DIFFER here, so unusable inputs are usage
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if a.n_wires != b.n_wires:
        print(f"error: wire counts differ ({a.n_wires} vs {b.n_wires})",
              file=sys.stderr)
        return 2
    pa = circ.circuit_permutation(a)
    pb = circ.circuit_permutation(b)
    if pa == pb:
        print("EQUIVALENT")
        return 0
    first = next(i for i in range(pa.size) if pa(i) != pb(i))
    print("DIFFER")
    print(f"first differing basis index: {first}", file=sys.stderr)
    return 1


_COMMANDS = {
    "stats": _cmd_stats,
    "enumerate": _cmd_enumerate,
    "classify": _cmd_classify,
    "templates": _cmd_templates,
    "optimize": _cmd_optimize,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handler = _COMMANDS[args.command]
    try:
        return handler(args, parser)
    except PermGateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
