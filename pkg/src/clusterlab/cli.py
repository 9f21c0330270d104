"""Command-line entry point: ``clusterlab <command> ...``.

Exit codes: 0 concluded / accepted / success, 1 negative, 2 inconclusive,
3 usage or input errors.
"""

from __future__ import annotations

import argparse
import itertools
import os
import sys
from typing import Sequence

from . import corpus
from .banff import au_report, banff_reduced, render_trace, replay_trace, trace_to_dot
from .green import SignCoherenceError, render_colors, render_matrix, search_mgs, verify_mgs
from .laurent import NotDivisible
from .quiver import DEFAULT_DEPTH, DEFAULT_NODES, quiver_from_seed, quiver_to_dot
from .seed import ParseError, Seed, verify_laurent
from .semifield import parse_ring

EXIT_OK, EXIT_NO, EXIT_INCONCLUSIVE, EXIT_ERROR = 0, 1, 2, 3


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(name)
    if value is None:
        return default
    try:
        return int(value)
    except ValueError:
        raise SystemExit(f"{name} must be an integer, got {value!r}") from None


def _parse_seq(text: str | Sequence[str]) -> list[int]:
    """1-based indices from ``"2,3,4"`` or a list of tokens; returns 0-based."""
    tokens = text.replace(",", " ").split() if isinstance(text, str) else list(text)
    out = []
    for tok in tokens:
        for part in tok.split(","):
            if not part:
                continue
            try:
                k = int(part)
            except ValueError:
                raise ValueError(f"bad mutation index {part!r}") from None
            if k < 1:
                raise ValueError(f"mutation indices are 1-based, got {k}")
            out.append(k - 1)
    return out


def _permutation_to(initial: Seed, current: Seed) -> tuple[int, ...] | None:
    """``p`` with ``current.x[i] == initial.x[p[i]]`` and matching B, y; else None."""
    pos = {x: i for i, x in enumerate(initial.x)}
    try:
        perm = tuple(pos[x] for x in current.x)
    except KeyError:
        return None
    if sorted(perm) != list(range(initial.n)):
        return None
    B0, B1 = initial.B, current.B
    if any(B1[i, j] != B0[perm[i], perm[j]] for i in range(initial.n) for j in range(initial.n)):
        return None
    if any(current.y[i] != initial.y[perm[i]] for i in range(initial.n)):
        return None
    return perm


def cmd_mutate(args: argparse.Namespace) -> int:
    obj = corpus.load(args.input, args.reading)
    seed = corpus.as_seed(obj)
    seq = _parse_seq(args.sequence)
    cur = seed
    for step, k in enumerate(seq, 1):
        cur = cur.mutate(k)
        if args.trace:
            print(f"# step {step}: mu{k + 1}")
            print(f"#   {cur.labels[k]}' = {cur.x[k]}")
    out = cur if isinstance(obj, Seed) else quiver_from_seed(cur)
    sys.stdout.write(corpus.render(out))
    for label, x in zip(cur.labels, cur.x):
        print(f"# {label} = {x}")
    perm = _permutation_to(seed, cur)
    if perm is not None and seq:
        if perm == tuple(range(seed.n)):
            print("# result equals the initial seed")
        else:
            print("# result is the initial seed permuted: " + " ".join(
                f"{seed.labels[p]}->{i + 1}" for i, p in enumerate(perm)
            ))
    return EXIT_OK


def cmd_banff(args: argparse.Namespace) -> int:
    q = corpus.as_quiver(corpus.load(args.input, args.reading))
    trace = banff_reduced(q, args.depth, args.nodes, acyclic_first=args.acyclic_first)
    if args.dot:
        sys.stdout.write(trace_to_dot(trace))
    else:
        sys.stdout.write(render_trace(trace))
        problems = replay_trace(trace)
        print("certificate: " + ("replayed OK" if not problems else "; ".join(problems)))
    return trace.status.exit_code


def cmd_mgs(args: argparse.Namespace) -> int:
    q = corpus.as_quiver(corpus.load(args.input, args.reading))
    if args.verify is not None:
        seq = _parse_seq(args.verify)
        try:
            verdict = verify_mgs(q, seq, reddening=args.reddening)
        except SignCoherenceError as exc:
            print(f"INTERNAL ERROR: {exc}", file=sys.stderr)
            return EXIT_ERROR
        print("sequence: " + ",".join(str(k + 1) for k in seq))
        print(render_colors(verdict))
        print("final c-matrix:")
        print(render_matrix(verdict.final.c_matrix))
        print(("ACCEPT: " if verdict.accepted else "REJECT: ") + verdict.diagnostic)
        return EXIT_OK if verdict.accepted else EXIT_NO
    result = search_mgs(q, args.search, args.nodes)
    if result.found:
        seq = result.sequence or ()
        print("FOUND: " + (",".join(str(k + 1) for k in seq) or "(empty)"))
        print(render_colors(verify_mgs(q, seq)))
        return EXIT_OK
    if result.cut_by == "nodes":
        print(f"NONE_WITHIN_BOUNDS: node limit reached after {result.nodes} states")
    else:
        print(f"NONE_WITHIN_BOUNDS: no maximal green sequence of length <= {args.search} "
              f"({result.nodes} states)")
    return EXIT_NO


def cmd_report(args: argparse.Namespace) -> int:
    q = corpus.as_quiver(corpus.load(args.input, args.reading))
    report = au_report(q, parse_ring(args.ring), args.depth, args.nodes)
    sys.stdout.write(report.render())
    return report.conclusion.exit_code


def cmd_show(args: argparse.Namespace) -> int:
    obj = corpus.load(args.input, args.reading)
    if args.dot:
        sys.stdout.write(quiver_to_dot(corpus.as_quiver(obj), args.input))
    else:
        sys.stdout.write(corpus.render(obj))
    return EXIT_OK


def cmd_laurent(args: argparse.Namespace) -> int:
    seed = corpus.as_seed(corpus.load(args.input, args.reading))
    ring = parse_ring(args.ring)
    seqs = [
        s
        for length in range(1, args.length + 1)
        for s in itertools.product(range(seed.n), repeat=length)
    ]
    report = verify_laurent(seed, seqs, ring)
    print(f"checked {report.checked} cluster variables over {ring}")
    for v in report.violations:
        print(f"violation after mu {','.join(str(k + 1) for k in v.sequence)}: {v.note}")
    return EXIT_OK if report.ok else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    depth = _env_int("CLUSTERLAB_DEPTH", DEFAULT_DEPTH)
    nodes = _env_int("CLUSTERLAB_NODES", DEFAULT_NODES)
    parser = argparse.ArgumentParser(
        prog="clusterlab",
        description="Seed and quiver mutation, Banff runs, green sequences and A = U reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("input", help=f"built-in ({', '.join(corpus.BUILTINS)}) or a .seed/.quiver file")
        p.add_argument("--reading", choices=corpus.READINGS, default="single",
                       help="multiplicity of the 6->3 arrow in cg3_mutable")

    def limits(p: argparse.ArgumentParser) -> None:
        p.add_argument("--depth", type=int, default=depth, help="mutation depth limit")
        p.add_argument("--nodes", type=int, default=nodes, help="node limit per class search")

    p = sub.add_parser("mutate", help="mutate a seed or quiver along a sequence")
    common(p)
    p.add_argument("sequence", nargs="*", help="1-based mutation indices")
    p.add_argument("--trace", action="store_true", help="print each new cluster variable")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("banff", help="run the reduced Banff algorithm")
    common(p)
    limits(p)
    p.add_argument("--dot", action="store_true", help="emit the trace as DOT")
    p.add_argument("--acyclic-first", action="store_true",
                   help="exhaust the acyclicity search before splitting on a covering pair")
    p.set_defaults(func=cmd_banff)

    p = sub.add_parser("mgs", help="verify or search maximal green sequences")
    common(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--verify", metavar="SEQ", help="comma-separated 1-based sequence")
    group.add_argument("--search", metavar="MAXLEN", type=int, help="search up to this length")
    p.add_argument("--reddening", action="store_true", help="accept mutations at red vertices")
    p.add_argument("--nodes", type=int, default=nodes, help="state limit for --search")
    p.set_defaults(func=cmd_mgs)

    p = sub.add_parser("report", help="A = U report over a ground ring")
    common(p)
    limits(p)
    p.add_argument("--ring", default="zp", help="zp, zp+ or zp+:z1,z2,...")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("show", help="print a built-in or file in its text format")
    common(p)
    p.add_argument("--dot", action="store_true", help="emit DOT instead")
    p.set_defaults(func=cmd_show)

    p = sub.add_parser("laurent", help="check cluster variables along all short mutation sequences")
    common(p)
    p.add_argument("--length", type=int, default=4)
    p.add_argument("--ring", default="zp+")
    p.set_defaults(func=cmd_laurent)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValueError, IndexError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except NotDivisible as exc:
        print(f"internal error (exact division failed): {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
