"""Command-line front end.

Exit codes: 0 success, 1 bad input or failed precondition (also a colouring
rejected by ``verify``), 2 budget exhausted, 3 internal invariant breach.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

from . import io
from .configurations import MIN_K, detect_all
from .construct import DEFAULT_ORDER, NATURAL_ORDER, construct_nsd
from .discharging import charge_identity, discharge, expected_total, fmt
from .embedding import embed, random_planar
from .errors import (
    BudgetExhausted,
    EmbeddingError,
    InvariantBreach,
    IsolatedEdgeError,
    NsdError,
)
from .graph import Graph, is_nsd, is_proper
from .solver import SolveBudget, chi_sum_exact, find_nsd_colouring

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_BREACH = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...]
    k: int | None = None
    seed: int | None = None
    budget: SolveBudget = SolveBudget()

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        inputs = tuple(str(getattr(args, name)) for name in ("graph", "second")
                       if getattr(args, name, None) is not None)
        return cls(
            args.command, inputs, getattr(args, "k", None), getattr(args, "seed", None),
            SolveBudget(args.max_palette, args.node_limit, args.time_limit),
        )


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {value}")
    return value


def _default_k(g: Graph, k: int | None) -> int:
    return k if k is not None else max(MIN_K, g.max_degree)


def _no_isolated_edges(g: Graph) -> None:
    iso = g.isolated_edges()
    if iso:
        raise IsolatedEdgeError(iso[0])


def _out(lines) -> None:
    for line in lines:
        print(line)


# -- commands ----------------------------------------------------------------


def cmd_chi_sum(args, cfg: RunConfig) -> int:
    g = io.read_graph(args.graph)
    K = chi_sum_exact(g, cfg.budget)
    print(K)
    if K:
        print(io.format_colouring(find_nsd_colouring(g, K, cfg.budget)), end="")
    return EXIT_OK


def cmd_detect(args, cfg: RunConfig) -> int:
    g = io.read_graph(args.graph)
    _no_isolated_edges(g)
    found = detect_all(g, _default_k(g, cfg.k), exhaustive=args.all)
    _out(str(w) for w in found)
    if not found:
        print("no configuration")
    return EXIT_OK


def _embedding_for(g: Graph, path: str | None):
    if path is not None:
        return io.read_rotation(path, g)
    rs = embed(g)
    if rs is None:
        raise EmbeddingError("graph is not planar")
    return rs


def cmd_discharge(args, cfg: RunConfig) -> int:
    g = io.read_graph(args.graph)
    rs = _embedding_for(g, args.second)
    res = discharge(g, rs)
    part = res.trash
    for name in ("T1", "T2", "T3", "T4"):
        print(f"{name}: {' '.join(map(str, sorted(getattr(part, name)))) or '-'}")
    print(f"V': {' '.join(map(str, sorted(part.kept))) or '-'}")
    _out(res.ledger.dump())
    _out(res.report.lines())
    before, after = charge_identity(res.initial), charge_identity(res.ledger)
    print(f"total(before)={fmt(before)} total(after)={fmt(after)}")
    print(f"expected={fmt(expected_total(g, part))}")
    print(f"violations: {len(res.report.violations)}")
    if res.audit:
        raise InvariantBreach("transfers failed replay: " + "; ".join(res.audit[:3]))
    if not g.isolated_edges():
        k = _default_k(g, cfg.k)
        kinds = sorted({w.kind for w in detect_all(g, k)})
        print(f"configurations at k={k}: {' '.join(kinds) or 'none'}")
    return EXIT_OK


def cmd_construct(args, cfg: RunConfig) -> int:
    g = io.read_graph(args.graph)
    order = NATURAL_ORDER if args.natural_order else DEFAULT_ORDER
    col, trace = construct_nsd(g, cfg.k, cfg.budget, order=order)
    text = io.format_colouring(col)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        print(text, end="")
    if args.trace:
        _out("# " + line for line in trace.lines())
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    g = io.read_graph(args.graph)
    col = io.read_colouring(args.second, g)
    missing = col.missing_edges(g)
    if missing:
        print(f"uncoloured edges: {len(missing)} (first {missing[0][0]}-{missing[0][1]})")
        print("proper: no, nsd: no")
        return EXIT_INPUT
    proper, pair = is_proper(g, col)
    nsd, conflicts = is_nsd(g, col) if proper else (False, [])
    print(f"proper: {'yes' if proper else 'no'}, nsd: {'yes' if nsd else 'no'}")
    if not proper:
        print(f"clash: {pair[0]} and {pair[1]}")
    for u, v in conflicts:
        print(f"conflict: {u}-{v}")
    print(f"colours used: {max((c for _, c in col.items()), default=0)}")
    return EXIT_OK if proper and nsd else EXIT_INPUT


def cmd_gen(args, cfg: RunConfig) -> int:
    g, rs = random_planar(args.n, args.density, args.seed, hub_bias=args.hub_bias)
    if args.out:
        base = Path(args.out)
        io.write_graph(g, base.with_suffix(".txt"))
        base.with_suffix(".rot").write_text(io.format_rotation(rs), encoding="utf-8")
        print(f"wrote {base.with_suffix('.txt')} and {base.with_suffix('.rot')}")
    else:
        print(io.format_graph(g), end="")
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="nsdplanar",
        description="Neighbour-sum-distinguishing edge colourings of planar graphs.",
    )
    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--max-palette", type=_positive, default=64)
    budget.add_argument("--node-limit", type=_positive, default=20_000_000)
    budget.add_argument("--time-limit", type=_positive_float, default=120.0,
                        help="seconds")
    kopt = argparse.ArgumentParser(add_help=False)
    kopt.add_argument("--k", type=_positive, default=None,
                      help="palette parameter (default: max(28, max degree))")

    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("chi-sum", parents=[budget], help="exact nsd index and a witness")
    s.add_argument("graph")
    s.set_defaults(func=cmd_chi_sum)

    s = sub.add_parser("detect", parents=[budget, kopt], help="list configurations")
    s.add_argument("graph")
    s.add_argument("--all", action="store_true", help="every witness, not one per kind")
    s.set_defaults(func=cmd_detect)

    s = sub.add_parser("discharge", parents=[budget, kopt],
                       help="trash, charges, transfers and balance report")
    s.add_argument("graph")
    s.add_argument("second", metavar="embedding", nargs="?",
                   help="rotation file (default: computed embedding)")
    s.set_defaults(func=cmd_discharge)

    s = sub.add_parser("construct", parents=[budget, kopt],
                       help="nsd (k+1)-colouring by configuration reduction")
    s.add_argument("graph")
    s.add_argument("--trace", action="store_true")
    s.add_argument("--out", help="write the colouring here instead of stdout")
    s.add_argument("--natural-order", action="store_true",
                   help="try configurations in the order C1..C9")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("verify", parents=[budget], help="check a colouring")
    s.add_argument("graph")
    s.add_argument("second", metavar="colouring")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("gen", parents=[budget], help="seeded random planar graph")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--density", choices=("sparse", "triangulation-minus"), default="sparse")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--hub-bias", type=float, default=0.0)
    s.add_argument("--out", help="path prefix for .txt and .rot files")
    s.set_defaults(func=cmd_gen)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        return args.func(args, cfg)
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantBreach as exc:
        print(f"invariant breach: {exc}", file=sys.stderr)
        return EXIT_BREACH
    except (NsdError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
