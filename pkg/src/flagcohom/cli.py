"""Command-line front end.

Subcommands: ``table`` (multiplication tables), ``torsion`` (torsion index),
``bs`` (tower presentations), ``ln`` (coefficient operations on the
universal theory) and ``check`` (the invariant self-check suite).

Rank-2 labeling: for B2 the SECOND simple root is short, for G2 the FIRST
simple root is short; basis classes are named Z_<word> by their canonical
reduced word and pt is the class of a point.

Data goes to stdout (or --out), diagnostics to stderr.  Exit codes:
0 success, 1 bad input or check failure, 2 integrality violation,
3 insufficient precision (the message suggests a --trunc value).
"""

from __future__ import annotations

import argparse
import json
import sys

from .bott import BSRing
from .errors import (
    FlagCohomError,
    InsufficientPrecisionError,
    IntegralityError,
)
from .fgring import FormalGroupRing
from .flagring import default_truncation
from .rootdata import RootDatum
from .tables import MultiplicationTable, make_theory, word_name


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValueError(message)


def build_parser():
    parser = _Parser(prog="flagcohom", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, theory=True):
        p.add_argument("--type", help="named root system, e.g. A2, B3, G2")
        p.add_argument("--cartan", help="JSON file with an integer Cartan matrix")
        if theory:
            p.add_argument(
                "--theory",
                default="universal",
                help="universal | chow | ktheory[:gen] | connective[:gen] | custom:FILE",
            )
        p.add_argument("--trunc", type=int, help="series truncation override")
        p.add_argument("--out", help="write output to this path instead of stdout")

    p_table = sub.add_parser("table", help="multiplication table")
    common(p_table)
    p_table.add_argument("--format", choices=("text", "json"), default="text")
    p_table.add_argument(
        "--raw-basis",
        action="store_true",
        help="keep the longest class instead of replacing it by the unit",
    )

    p_torsion = sub.add_parser("torsion", help="torsion index")
    common(p_torsion, theory=False)

    p_bs = sub.add_parser("bs", help="tower presentation for a word")
    common(p_bs)
    p_bs.add_argument("--word", required=True, help="comma-separated indices, e.g. 1,2,1")
    p_bs.add_argument("--format", choices=("text", "json"), default="text")

    p_ln = sub.add_parser("ln", help="coefficient operations on the universal theory")
    common(p_ln)
    p_ln.add_argument("--bound", type=int, default=2, help="maximum operation weight")
    p_ln.add_argument("--word", help="restrict to one basis word, e.g. 1,2")
    p_ln.add_argument("--format", choices=("text", "json"), default="text")

    p_check = sub.add_parser("check", help="run the invariant self-check suite")
    p_check.add_argument("--type", help="restrict heavy table checks to one type")
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--fast", action="store_true", help="skip the G2 golden table")
    p_check.add_argument("--out", help="write the report to this path")
    return parser


def load_datum(args):
    if args.cartan and args.type:
        raise ValueError("give either --type or --cartan, not both")
    if args.cartan:
        with open(args.cartan) as fh:
            matrix = json.load(fh)
        return RootDatum.from_cartan(matrix, label="custom")
    if args.type:
        return RootDatum.build(args.type)
    raise ValueError("one of --type or --cartan is required")


def emit(args, text):
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def effective_trunc(args, datum):
    trunc = args.trunc if args.trunc is not None else default_truncation(datum)
    if trunc < datum.N + 1:
        raise ValueError(f"--trunc must be at least N+1 = {datum.N + 1}")
    return trunc


def cmd_table(args):
    datum = load_datum(args)
    trunc = effective_trunc(args, datum)
    with _trunc_context(trunc):
        table = MultiplicationTable(datum, args.theory, trunc, raw=args.raw_basis)
        if args.format == "json":
            emit(args, json.dumps(table.render_json(), indent=2) + "\n")
        else:
            emit(args, table.render_text())
    return 0


class _trunc_context:
    """Attach the truncation in use to precision errors for the CLI hint."""

    def __init__(self, trunc):
        self.trunc = trunc

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if isinstance(exc, InsufficientPrecisionError):
            exc.used_trunc = self.trunc
        return False


def cmd_torsion(args):
    from .fgring import torsion_bezout

    datum = load_datum(args)
    t, _ = torsion_bezout(datum)
    emit(args, f"{t}\n")
    return 0


def _parse_word(text):
    word = tuple(int(p) for p in text.split(",") if p.strip())
    if not all(i >= 1 for i in word):
        raise ValueError("word letters must be positive indices")
    return word


def cmd_bs(args):
    datum = load_datum(args)
    word = _parse_word(args.word)
    trunc = args.trunc if args.trunc is not None else max(len(word) + 2, datum.N + 1)
    with _trunc_context(trunc):
        law, theory = make_theory(args.theory, trunc)
        fgr = FormalGroupRing(datum, law)
        ring = BSRing(fgr, word)
        tangent = ring.tangent_chern_class()
    if args.format == "json":
        obj = {
            "root_system": {"type": datum.label or "custom", "rank": datum.rank},
            "theory": theory,
            "truncation": trunc,
            "word": list(word),
            "relations": [
                {
                    "position": j,
                    "terms": [
                        {"subset": list(K), "coeff": str(c)}
                        for K, c in sorted(ring.presentation.relation(j).items())
                        if not c.is_zero()
                    ],
                }
                for j in range(1, len(word) + 1)
            ],
            "tangent_class": [
                {"subset": list(K), "coeff": str(c)}
                for K, c in sorted(tangent.coords.items())
            ],
        }
        emit(args, json.dumps(obj, indent=2) + "\n")
        return 0
    lines = [
        f"# tower presentation: type {datum.label}, word "
        f"{','.join(map(str, word))}, theory {theory}, truncation {trunc}"
    ]
    for j in range(1, len(word) + 1):
        terms = []
        for K, c in sorted(ring.presentation.relation(j).items()):
            if c.is_zero():
                continue
            mono = "*".join([f"xi{k}" for k in K] + [f"xi{j}"])
            cs = str(c)
            if len(c.terms) > 1:
                cs = f"({cs})"
            terms.append(mono if c == 1 else f"{cs}*{mono}")
        lines.append(f"xi{j}^2 = " + (" + ".join(terms) if terms else "0"))
    tangent_terms = []
    for K, c in sorted(tangent.coords.items()):
        mono = "*".join(f"xi{k}" for k in K) or "1"
        cs = str(c)
        if len(c.terms) > 1:
            cs = f"({cs})"
        tangent_terms.append(mono if c == 1 else f"{cs}*{mono}")
    lines.append("tangent_chern = " + (" + ".join(tangent_terms) or "0"))
    emit(args, "\n".join(lines) + "\n")
    return 0


def _index_name(texp):
    parts = []
    for k, e in enumerate(texp, start=1):
        if e == 1:
            parts.append(f"t{k}")
        elif e > 1:
            parts.append(f"t{k}^{e}")
    return "*".join(parts)


def cmd_ln(args):
    datum = load_datum(args)
    if args.theory != "universal":
        raise ValueError("operations are defined over the universal theory")
    trunc = effective_trunc(args, datum)
    with _trunc_context(trunc):
        table = MultiplicationTable(datum, "universal", trunc)
    fb = table.basis
    laz = table.lazard
    words = (
        [_parse_word(args.word)]
        if args.word
        else [
            w.canonical_word
            for w in fb.elements
            if w.canonical_word != fb.w0.canonical_word
        ]
    )
    by_word = {w.canonical_word: w for w in fb.elements}
    lines = [
        f"# operations: type {datum.label}, weight bound {args.bound}, "
        f"truncation {trunc}"
    ]
    records = []
    for word in words:
        ops = fb.ln_operation(args.bound, fb.basis_class(by_word[word]))
        for texp in sorted(ops):
            cls = ops[texp]
            parts = []
            for w, c in sorted(cls.coords.items(), key=lambda kv: (-len(kv[0]), kv[0])):
                coeff = laz.to_a_basis(c, datum.N)
                name = word_name(w)
                cs = str(coeff)
                if coeff == 1:
                    parts.append(name)
                elif len(coeff.terms) > 1:
                    parts.append(f"({cs})*{name}")
                else:
                    parts.append(f"{cs}*{name}")
            value = " + ".join(parts) if parts else "0"
            label = _index_name(texp)
            lines.append(f"S[{label}] {word_name(word)} = {value}")
            records.append(
                {
                    "index": _index_name(texp),
                    "argument": word_name(word),
                    "value": value,
                }
            )
    if args.format == "json":
        obj = {
            "root_system": {"type": datum.label or "custom", "rank": datum.rank},
            "weight_bound": args.bound,
            "truncation": trunc,
            "operations": records,
        }
        emit(args, json.dumps(obj, indent=2) + "\n")
    else:
        emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_check(args):
    from .selfcheck import run_checks

    types = (args.type,) if args.type else ("A2", "B2", "G2")
    results = run_checks(seed=args.seed, types=types, fast=args.fast)
    lines = []
    failed = 0
    for name, ok, detail in results:
        status = "PASS" if ok else "FAIL"
        if not ok:
            failed += 1
        lines.append(f"{status} {name}" + (f": {detail}" if detail and not ok else ""))
    lines.append(f"# {len(results) - failed}/{len(results)} checks passed")
    emit(args, "\n".join(lines) + "\n")
    return 0 if failed == 0 else 1


COMMANDS = {
    "table": cmd_table,
    "torsion": cmd_torsion,
    "bs": cmd_bs,
    "ln": cmd_ln,
    "check": cmd_check,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except IntegralityError as exc:
        print(f"integrality error: {exc}", file=sys.stderr)
        return 2
    except InsufficientPrecisionError as exc:
        trunc = getattr(exc, "used_trunc", None)
        hint = (
            f"; retry with --trunc {trunc + exc.deficit}"
            if trunc is not None
            else f"; retry with a larger --trunc (missing {exc.deficit} degrees)"
        )
        print(f"insufficient precision: {exc}{hint}", file=sys.stderr)
        return 3
    except (FlagCohomError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
