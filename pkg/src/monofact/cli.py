"""Command-line interface.

Exit codes: 0 verified / refutation certified, 1 witness found,
2 inconclusive (budget or periodicity suspected), 3 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import analysis
from .colouring import DEFAULT_COMPARE_BUDGET, PeriodicitySuspected, make_scheme
from .factorisation import verify_separating
from .words import InfiniteWord, WordSpecError

EXIT_OK, EXIT_WITNESS, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3

VERIFY_EXIT = {"no-monochromatic": EXIT_OK, "cycle-certified": EXIT_WITNESS,
               "inconclusive": EXIT_INCONCLUSIVE}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dump(record: dict, out: str | None) -> None:
    text = json.dumps(record, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _pieces(text: str | None) -> list[str]:
    if not text:
        raise UsageError("--pieces is required for this analysis")
    ws = [w.strip() for w in text.split(",")]
    if any(not w.isdigit() for w in ws):
        raise UsageError(f"bad piece list {text!r}")
    return ws


def cmd_gen(args) -> int:
    x = InfiniteWord(args.word)
    print(x.prefix(args.n))
    return EXIT_OK


def cmd_colour(args) -> int:
    x = InfiniteWord(args.word)
    if not args.piece.isdigit():
        raise UsageError(f"piece must be a nonempty digit string, got {args.piece!r}")
    scheme = make_scheme(args.scheme, x, args.compare_budget)
    try:
        c = scheme.colour(args.piece)
    except PeriodicitySuspected as e:
        _dump({**e.to_dict(), "piece": args.piece, "word": args.word}, None)
        return EXIT_INCONCLUSIVE
    print(c)
    return EXIT_OK


def cmd_verify(args) -> int:
    x = InfiniteWord(args.word)
    scheme = make_scheme(args.scheme, x, args.compare_budget)
    rep = verify_separating(x, scheme, args.L, args.node_budget, args.compare_budget)
    record = {"word": args.word, "scheme": args.scheme, **rep.to_dict()}
    _dump(record, args.out)
    return VERIFY_EXIT.get(rep.outcome, EXIT_INCONCLUSIVE)


def _analyze(args, x: InfiniteWord) -> tuple[dict, int]:
    kind = args.analysis
    if kind == "lyndon":
        r = analysis.is_lyndon(x, args.budget)
        return {"lyndon": r, "budget": args.budget}, EXIT_INCONCLUSIVE if r is None else EXIT_OK
    if kind == "rich":
        if args.u is None:
            raise UsageError("--u is required for 'rich'")
        r = analysis.is_rich(x, args.u, args.a, args.horizon)
        return {"rich": r, "u": args.u, "a": args.a, "horizon": args.horizon}, EXIT_OK
    if kind == "prefixal":
        constraint = None if args.constraint == "none" else ("rich_in", args.a, args.horizon)
        rep = analysis.prefixal_search(x, args.L, constraint, args.node_budget)
        code = {"no-prefixal": EXIT_OK, "cycle-certified": EXIT_WITNESS}.get(rep.outcome,
                                                                           EXIT_INCONCLUSIVE)
        return rep.to_dict(), code
    if kind == "ap":
        d = analysis.ap_extract(x, args.a, args.budget)
        return ({"ap": None if d is None else d.to_dict(), "a": args.a, "budget": args.budget},
                EXIT_OK)
    if kind == "member":
        rep = analysis.membership(x, _pieces(args.pieces), args.horizon)
        return rep.to_dict(), EXIT_OK
    if kind == "subsets":
        rep = analysis.subset_factor_check(x, _pieces(args.pieces), args.k, args.horizon)
        return rep.to_dict(), EXIT_OK
    if kind == "cyclic":
        rep = analysis.cyclic_chain_check(x, _pieces(args.pieces), args.horizon)
        return rep.to_dict(), EXIT_OK
    if kind == "ip":
        chain = analysis.ip_chain(x, args.m, args.lencap)
        return {**chain.to_dict(), "m_max": args.m, "len_cap": args.lencap}, EXIT_OK
    if kind == "selfreturn":
        s = analysis.self_return(x, args.budget)
        return {"self_return": s, "budget": args.budget}, EXIT_OK
    raise UsageError(f"unknown analysis {kind!r}")


def cmd_analyze(args) -> int:
    x = InfiniteWord(args.word)
    record, code = _analyze(args, x)
    _dump({"analysis": args.analysis, "word": args.word, **record}, args.out)
    return code


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="monofact", description="Monochromatic factorisations of infinite words.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def word_arg(sp):
        sp.add_argument("--word", required=True,
                        help="periodic:<b> | eventual:<pre>|<b> | morphic:<s>-><img>,...;seed=<s>")

    g = sub.add_parser("gen", help="print a prefix of the word")
    word_arg(g)
    g.add_argument("--n", type=int, required=True)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("colour", help="colour one piece")
    word_arg(c)
    c.add_argument("--scheme", required=True, help="phi | phi-rev | tm3 | table:<path>")
    c.add_argument("--piece", required=True)
    c.add_argument("--compare-budget", type=int, default=DEFAULT_COMPARE_BUDGET)
    c.set_defaults(func=cmd_colour)

    v = sub.add_parser("verify", help="search for monochromatic factorisations")
    word_arg(v)
    v.add_argument("--scheme", required=True)
    v.add_argument("--L", type=int, default=12)
    v.add_argument("--horizon", type=int, default=4096)
    v.add_argument("--node-budget", type=int, default=10**6)
    v.add_argument("--compare-budget", type=int, default=DEFAULT_COMPARE_BUDGET)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("analyze", help="bounded corollary checks")
    a.add_argument("analysis", choices=["lyndon", "rich", "prefixal", "ap", "member", "subsets",
                                        "cyclic", "ip", "selfreturn"])
    word_arg(a)
    a.add_argument("--a", type=int, default=0, help="letter")
    a.add_argument("--u", help="factor for 'rich'")
    a.add_argument("--budget", type=int, default=256)
    a.add_argument("--horizon", type=int, default=4096)
    a.add_argument("--pieces", help="comma-separated words")
    a.add_argument("--k", type=int, default=2)
    a.add_argument("--m", type=int, default=5)
    a.add_argument("--lencap", type=int, default=8)
    a.add_argument("--L", type=int, default=12)
    a.add_argument("--constraint", choices=["none", "rich"], default="none")
    a.add_argument("--node-budget", type=int, default=10**5)
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("n", "L", "horizon", "node_budget", "compare_budget", "budget", "m", "lencap"):
        val = getattr(args, name, None)
        if val is not None and val < (0 if name == "n" else 1):
            print(f"monofact: error: --{name.replace('_', '-')} must be positive", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except (WordSpecError, UsageError, ValueError, OSError) as e:
        print(f"monofact: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
