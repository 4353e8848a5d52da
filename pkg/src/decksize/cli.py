"""Command-line workbench.

    decksize gen --model regular:3 --n 1000 --seed 7 --out g.g6
    decksize deal g.g6 --seed 7 --out full.deck
    decksize drop full.deck --k 1 --strategy random --seed 7 --out part.deck
    decksize reconstruct part.deck
    decksize game --model regular:3 --n 1000 --kfalse 1 --strategy random_gnp --seed 7
    decksize bbf --p 3
    decksize verify --n 6
    decksize experiment --model regular:3 --n 1000 --k 1 --trials 100 --seed 7 --out runs.csv

Exit status: 0 for an exact size or a passed verification, 2 for ambiguous
or failed outcomes, 1 for usage and I/O errors. Reports are JSON on stdout
(or ``--out``); ``elapsed_ms`` is only filled in when ``DECKSIZE_TIMING=1``.
"""

from __future__ import annotations

import argparse
import json
import sys

from decksize import graph6
from decksize.adversary import (
    FORGE_STRATEGIES,
    bbf_pair,
    forge_with_truth,
    parse_mixed,
    solve_mixed,
)
from decksize.deck import DROP_STRATEGIES, deal, drop_cards, parse_deck, serialize_deck
from decksize.experiment import rows_to_csv, run_experiment, summarize, timing_enabled
from decksize.graph import gen_graph
from decksize.reconstruct import RecoveryParams, reconstruct_size
from decksize import verify as suites


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read(path: str | None) -> bytes:
    if path in (None, "-"):
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _write(path: str | None, data: bytes | str) -> None:
    if isinstance(data, str):
        data = data.encode("ascii")
    if path in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} requires {', '.join(missing)}")


def cmd_gen(args) -> int:
    _need(args, "model", "n", "seed")
    g = gen_graph(args.model, args.n, args.seed)
    _write(args.out, graph6.encode(g) + b"\n")
    return 0


def cmd_deal(args) -> int:
    _need(args, "seed")
    g = graph6.decode(_read(args.input).split(b"\n")[0])
    _write(args.out, serialize_deck(deal(g, seed=args.seed)))
    return 0


def cmd_drop(args) -> int:
    _need(args, "k", "seed")
    deck = parse_deck(_read(args.input))
    strategy = args.strategy or "random"
    if strategy not in DROP_STRATEGIES:
        raise UsageError(f"--strategy must be one of {', '.join(DROP_STRATEGIES)}")
    _write(args.out, serialize_deck(drop_cards(deck, args.k, strategy, args.seed)))
    return 0


def _report_out(args, payload: dict, exact: bool) -> int:
    _write(args.out, json.dumps(payload) + "\n")
    return 0 if exact else 2


def cmd_reconstruct(args) -> int:
    deck = parse_deck(_read(args.input))
    report = reconstruct_size(deck, RecoveryParams.parse(args.params))
    return _report_out(args, report.to_dict(timing_enabled()), report.is_exact)


def cmd_game(args) -> int:
    params = RecoveryParams.parse(args.params)
    if args.input is not None:
        collection = parse_mixed(_read(args.input))
        report = solve_mixed(collection, seed=args.seed or 0, params=params)
        return _report_out(args, report.to_dict(timing_enabled()), report.is_exact)
    _need(args, "model", "n", "kfalse", "seed")
    strategy = args.strategy or "random_gnp"
    if strategy not in FORGE_STRATEGIES:
        raise UsageError(f"--strategy must be one of {', '.join(FORGE_STRATEGIES)}")
    g = gen_graph(args.model, args.n, args.seed)
    collection, _ = forge_with_truth(g, args.kfalse, strategy, args.seed)
    report = solve_mixed(collection, seed=args.seed, params=params)
    payload = report.to_dict(timing_enabled())
    payload["m_true"] = g.edge_count
    return _report_out(args, payload, report.is_exact)


def cmd_bbf(args) -> int:
    _need(args, "p")
    _, _, stats = bbf_pair(args.p)
    ok = abs(stats["m_G"] - stats["m_H"]) == 1 and stats["common"] >= 2 * args.p
    return _report_out(args, stats, ok)


def cmd_verify(args) -> int:
    max_n = args.n if args.n is not None else 6
    if not 1 <= max_n <= 7:
        raise UsageError("verify --n must lie in 1..7")
    results = suites.all_suites(max_n)
    lines = "".join(r.line() + "\n" for r in results)
    _write(args.out, lines)
    return 0 if all(r.passed for r in results) else 2


def cmd_experiment(args) -> int:
    _need(args, "model", "n", "k", "trials", "seed")
    strategy = args.strategy or "random"
    if strategy not in DROP_STRATEGIES:
        raise UsageError(f"--strategy must be one of {', '.join(DROP_STRATEGIES)}")
    rows = run_experiment(args.model, args.n, args.k, args.trials, args.seed, strategy,
                          RecoveryParams.parse(args.params))
    _write(args.out, rows_to_csv(rows))
    counts = summarize(rows)
    print(json.dumps(counts), file=sys.stderr)
    return 0 if counts["exact_wrong"] == 0 else 2


COMMANDS = {
    "gen": (cmd_gen, "generate a graph (graph6)"),
    "deal": (cmd_deal, "graph6 file -> full deck file"),
    "drop": (cmd_drop, "remove k cards from a deck file"),
    "reconstruct": (cmd_reconstruct, "deck file -> JSON size report"),
    "game": (cmd_game, "forge a collection with false cards and solve it"),
    "bbf": (cmd_bbf, "two clique unions with equal card overlap and sizes m, m-1"),
    "verify": (cmd_verify, "run the small-order oracle suites"),
    "experiment": (cmd_experiment, "seeded reconstruction sweep -> CSV"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="decksize", description="Edge-count reconstruction from partial decks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        if name in ("deal", "drop", "reconstruct", "game"):
            p.add_argument("input", nargs="?", default=None, help="input file (default: stdin)")
        p.add_argument("--model")
        p.add_argument("--n", type=int)
        p.add_argument("--p", type=int)
        p.add_argument("--k", type=int)
        p.add_argument("--kfalse", type=int)
        p.add_argument("--strategy")
        p.add_argument("--trials", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--out")
        p.add_argument("--params", help="beta=...,K=... (also lo=, hi=)")
    return parser


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits on --help (0) and on usage errors (1)
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command][0](args)
    except UsageError as exc:
        print(f"decksize {args.command}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"decksize {args.command}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
