"""Text formats for transducers and bimachines, plus the command line.

The transducer format is line based: `monoid <descriptor>`, `alphabet
<sym>...`, `states <count>`, `initial <idx>...`, `final <idx>...`, and
one `t <src> <sym> <value> <dst>` row per transition, where the input
symbol `-` stands for the empty input.  Full-line `#` comments and blank
lines are ignored.  Bimachines serialize to a `BIM v1` block whose rows
are written in sorted order, so equal machines produce identical text.
"""

from __future__ import annotations

import argparse
import sys
import warnings

from .benchmark import SAFETY_LIMITS, run_bench
from .bimachine import Bimachine, evaluate
from .classical import check_pseudo_deterministic, classical_compile
from .compiler import CompileError, compile as mge_compile
from .fsa import Dfa, StateLimitExceeded, Transducer, Transition, enumerate_outputs
from .functionality import test_functionality
from .monoid import (
    DescriptorMismatch,
    format_descriptor,
    format_value,
    parse_descriptor,
    parse_value,
)

EX_USAGE = 64   # bad command line
EX_DATAERR = 65  # well-formed command, malformed or unusable input data
EX_IOERR = 74   # file system trouble


class TransducerFormatError(ValueError):
    """Malformed transducer text; messages carry 1-based line numbers."""


class BimachineFormatError(ValueError):
    """Malformed bimachine text; messages carry 1-based line numbers."""


def _content_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line.split()


def parse_transducer(text: str) -> Transducer:
    """Read the line-based transducer format.

    Declarations may come in any order; transitions are resolved after
    the whole file is read.  Duplicate transition rows collapse to one
    with a warning, matching what the constructor would silently do.
    """
    monoid = None
    alphabet = None
    n_states = None
    initial = None
    final = None
    rows = []
    state_lists = {}
    for lineno, tokens in _content_lines(text):
        kind, rest = tokens[0], tokens[1:]
        if kind == "monoid":
            try:
                monoid = parse_descriptor(" ".join(rest))
            except ValueError as err:
                raise TransducerFormatError(f"line {lineno}: {err}") from None
        elif kind == "alphabet":
            if "-" in rest:
                raise TransducerFormatError(
                    f"line {lineno}: the symbol - is reserved for the empty input"
                )
            alphabet = tuple(rest)
        elif kind == "states":
            if len(rest) != 1 or not rest[0].isdigit():
                raise TransducerFormatError(f"line {lineno}: states needs one count")
            n_states = int(rest[0])
        elif kind in ("initial", "final"):
            if not all(x.isdigit() for x in rest):
                raise TransducerFormatError(f"line {lineno}: {kind} takes state indices")
            state_lists[kind] = (lineno, frozenset(int(x) for x in rest))
        elif kind == "t":
            if len(rest) < 4 or not rest[0].isdigit() or not rest[-1].isdigit():
                raise TransducerFormatError(
                    f"line {lineno}: expected t <src> <sym> <value> <dst>"
                )
            rows.append((lineno, int(rest[0]), rest[1], " ".join(rest[2:-1]), int(rest[-1])))
        else:
            raise TransducerFormatError(f"line {lineno}: unknown directive {kind!r}")
    for name, value in (("monoid", monoid), ("alphabet", alphabet), ("states", n_states)):
        if value is None:
            raise TransducerFormatError(f"missing {name} declaration")
    initial = state_lists.get("initial", (0, frozenset()))[1]
    final = state_lists.get("final", (0, frozenset()))[1]
    for kind in ("initial", "final"):
        if kind in state_lists:
            lineno, states = state_lists[kind]
            for q in states:
                if q >= n_states:
                    raise TransducerFormatError(
                        f"line {lineno}: {kind} state {q} not among the {n_states} states"
                    )
    transitions = []
    seen = set()
    for lineno, src, sym, literal, dst in rows:
        if src >= n_states or dst >= n_states:
            raise TransducerFormatError(
                f"line {lineno}: transition endpoint not among the {n_states} states"
            )
        if sym != "-" and sym not in alphabet:
            raise TransducerFormatError(f"line {lineno}: undeclared symbol {sym!r}")
        try:
            value = parse_value(monoid, literal)
        except ValueError as err:
            raise TransducerFormatError(f"line {lineno}: {err}") from None
        tr = Transition(src, None if sym == "-" else sym, value, dst)
        if tr in seen:
            warnings.warn(f"line {lineno}: duplicate transition collapsed")
            continue
        seen.add(tr)
        transitions.append(tr)
    return Transducer(alphabet, monoid, n_states, initial, final, tuple(transitions))


def format_transducer(t: Transducer) -> str:
    lines = [
        f"monoid {format_descriptor(t.monoid)}",
        ("alphabet " + " ".join(t.alphabet)).rstrip(),
        f"states {t.n_states}",
        ("initial " + " ".join(str(q) for q in sorted(t.initial))).rstrip(),
        ("final " + " ".join(str(q) for q in sorted(t.final))).rstrip(),
    ]
    for tr in t.transitions:
        sym = "-" if tr.inp is None else tr.inp
        lines.append(f"t {tr.src} {sym} {format_value(tr.out)} {tr.dst}")
    return "\n".join(lines) + "\n"


def bimachine_to_text(b: Bimachine) -> str:
    """Serialize with sorted rows; the alphabet and state counts are
    implicit in the rows, so machines that agree on behaviour agree on
    text."""
    lines = [f"BIM v1 {format_descriptor(b.monoid)}"]
    for name, dfa in (("LEFT", b.left), ("RIGHT", b.right)):
        lines.append(name)
        lines.append(f"start {dfa.start}")
        for (p, sym), q in sorted(dfa.delta.items()):
            lines.append(f"d {p} {sym} {q}")
    lines.append("PSI")
    for (l, sym, r), v in sorted(b.psi.items()):
        lines.append(f"o {l} {sym} {r} {format_value(v)}")
    if b.eps_output is not None:
        lines.append(f"EPS {format_value(b.eps_output)}")
    return "\n".join(lines) + "\n"


def bimachine_from_text(text: str) -> Bimachine:
    monoid = None
    section = None
    starts = {}
    deltas = {"LEFT": {}, "RIGHT": {}}
    highest = {"LEFT": 0, "RIGHT": 0}
    psi_rows = []
    eps_literal = None
    for lineno, tokens in _content_lines(text):
        if monoid is None:
            if tokens[:2] != ["BIM", "v1"] or len(tokens) < 3:
                raise BimachineFormatError(f"line {lineno}: expected a BIM v1 header")
            try:
                monoid = parse_descriptor(" ".join(tokens[2:]))
            except ValueError as err:
                raise BimachineFormatError(f"line {lineno}: {err}") from None
            continue
        kind = tokens[0]
        if kind in ("LEFT", "RIGHT", "PSI"):
            section = kind
        elif kind == "EPS":
            eps_literal = (lineno, " ".join(tokens[1:]))
        elif section in ("LEFT", "RIGHT") and kind == "start" and len(tokens) == 2 and tokens[1].isdigit():
            starts[section] = int(tokens[1])
        elif (
            section in ("LEFT", "RIGHT") and kind == "d" and len(tokens) == 4
            and tokens[1].isdigit() and tokens[3].isdigit()
        ):
            p, sym, q = int(tokens[1]), tokens[2], int(tokens[3])
            move = deltas[section].setdefault((p, sym), q)
            if move != q:
                raise BimachineFormatError(f"line {lineno}: conflicting moves for {p} on {sym!r}")
            highest[section] = max(highest[section], p, q)
        elif (
            section == "PSI" and kind == "o" and len(tokens) >= 5
            and tokens[1].isdigit() and tokens[3].isdigit()
        ):
            psi_rows.append((lineno, int(tokens[1]), tokens[2], int(tokens[3]), " ".join(tokens[4:])))
        else:
            raise BimachineFormatError(f"line {lineno}: unexpected row {' '.join(tokens)!r}")
    if monoid is None:
        raise BimachineFormatError("empty input, expected a BIM v1 header")
    for side in ("LEFT", "RIGHT"):
        if side not in starts:
            raise BimachineFormatError(f"missing start declaration in {side}")
        highest[side] = max(highest[side], starts[side])
    psi = {}
    for lineno, l, sym, r, literal in psi_rows:
        try:
            psi[(l, sym, r)] = parse_value(monoid, literal)
        except ValueError as err:
            raise BimachineFormatError(f"line {lineno}: {err}") from None
        highest["LEFT"] = max(highest["LEFT"], l)
        highest["RIGHT"] = max(highest["RIGHT"], r)
    eps_output = None
    if eps_literal is not None:
        lineno, literal = eps_literal
        try:
            eps_output = parse_value(monoid, literal)
        except ValueError as err:
            raise BimachineFormatError(f"line {lineno}: {err}") from None
    alphabet = tuple(sorted(
        {sym for _, sym in deltas["LEFT"]}
        | {sym for _, sym in deltas["RIGHT"]}
        | {sym for _, sym, _ in psi}
    ))
    left = Dfa(alphabet, highest["LEFT"] + 1, starts["LEFT"], deltas["LEFT"])
    right = Dfa(alphabet, highest["RIGHT"] + 1, starts["RIGHT"], deltas["RIGHT"])
    return Bimachine(monoid, alphabet, left, right, psi, eps_output)


def tokenize(raw: str, alphabet) -> tuple[str, ...] | None:
    """Split a raw input string into alphabet symbols (symbols may be
    several characters long); None when no segmentation exists."""
    n = len(raw)
    back = [None] * (n + 1)
    ok = [False] * (n + 1)
    ok[0] = True
    for i in range(1, n + 1):
        for sym in alphabet:
            k = len(sym)
            if k <= i and ok[i - k] and raw[i - k:i] == sym:
                ok[i] = True
                back[i] = sym
                break
    if not ok[n]:
        return None
    word = []
    i = n
    while i > 0:
        word.append(back[i])
        i -= len(back[i])
    return tuple(reversed(word))


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser():
    parser = _Parser(prog="bimc", description="functionality checks and bimachine compilers")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide whether a transducer is functional")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("compile", help="compile a functional transducer to a bimachine")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--method", choices=("mge", "classical"), default="mge")
    p.add_argument("--stats", action="store_true")
    p.set_defaults(handler=_cmd_compile)

    p = sub.add_parser("run", help="evaluate a compiled bimachine on one input word")
    p.add_argument("file")
    p.add_argument("--input", required=True)
    p.set_defaults(handler=_cmd_run)

    p = sub.add_parser("bench-tn", help="state-count comparison on the T_n family")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--method", choices=("mge", "classical", "both"), default="both")
    p.add_argument("--format", choices=("csv", "table"), default="table")
    p.add_argument("--limit", type=int, help="raise the per-method safety limits")
    p.set_defaults(handler=_cmd_bench)

    p = sub.add_parser("compare", help="cross-validate both compilers against a path walk")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, default=4)
    p.set_defaults(handler=_cmd_compare)
    return parser


def _read(path):
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _cmd_check(args):
    verdict = test_functionality(parse_transducer(_read(args.file)))
    if verdict.functional:
        print("functional")
        return 0
    w = verdict.witness
    print(f"not functional ({w.kind}: {w.detail})")
    return 1


def _cmd_compile(args):
    t = parse_transducer(_read(args.file))
    verdict = test_functionality(t)
    if not verdict.functional:
        w = verdict.witness
        print(f"not functional ({w.kind}: {w.detail})", file=sys.stderr)
        return 1
    if args.method == "classical":
        b = classical_compile(t)
    else:
        b = mge_compile(t, verdict=verdict)
    with open(args.output, "w", encoding="utf-8") as handle:
        handle.write(bimachine_to_text(b))
    if args.stats:
        eps = "none" if b.eps_output is None else format_value(b.eps_output)
        print(
            f"left={b.left.n_states} right={b.right.n_states} "
            f"psi={len(b.psi)} eps={eps}"
        )
    return 0


def _cmd_run(args):
    b = bimachine_from_text(_read(args.file))
    word = tokenize(args.input, b.alphabet)
    out = evaluate(b, word) if word is not None else None
    if out is None:
        print("UNDEFINED")
        return 2
    print(format_value(out))
    return 0


def _cmd_bench(args):
    methods = ("mge", "classical") if args.method == "both" else (args.method,)
    limits = {m: args.limit for m in methods} if args.limit else None
    report = run_bench(args.max_n, methods=methods, limits=limits)
    print(report.to_csv() if args.format == "csv" else report.to_table())
    return 0


def _all_words(alphabet, max_len):
    batch = [()]
    for _ in range(max_len + 1):
        yield from batch
        batch = [w + (a,) for w in batch for a in alphabet]


def _cmd_compare(args):
    t = parse_transducer(_read(args.file))
    verdict = test_functionality(t)
    if not verdict.functional:
        w = verdict.witness
        print(f"not functional ({w.kind}: {w.detail})", file=sys.stderr)
        return 1
    machines = [("mge", mge_compile(t, verdict=verdict))]
    try:
        pseudo = check_pseudo_deterministic(t)
    except DescriptorMismatch:
        pseudo = False
    if pseudo:
        machines.append(("classical", classical_compile(t)))
    else:
        print("classical skipped: not deterministic over (symbol, output) pairs")
    checked = domain = 0
    for word in _all_words(t.alphabet, args.max_len):
        expected = enumerate_outputs(t, word)
        assert len(expected) <= 1, "functional transducer produced two outputs"
        want = next(iter(expected), None)
        domain += want is not None
        checked += 1
        for name, b in machines:
            got = evaluate(b, word)
            if got != want:
                print(f"{name} disagrees on {word!r}: {got!r} vs {want!r}")
                return 1
    names = " and ".join(name for name, _ in machines)
    print(f"{names} agree with the path walk on {checked} words ({domain} in the domain)")
    return 0


def cli_main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EX_USAGE
    except SystemExit as exc:  # argparse --help
        return 0 if exc.code in (0, None) else EX_USAGE
    try:
        return args.handler(args)
    except OSError as err:
        print(f"io error: {err}", file=sys.stderr)
        return EX_IOERR
    except (TransducerFormatError, BimachineFormatError) as err:
        print(f"format error: {err}", file=sys.stderr)
        return EX_DATAERR
    except (DescriptorMismatch, StateLimitExceeded, CompileError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EX_DATAERR


def main():
    sys.exit(cli_main())
