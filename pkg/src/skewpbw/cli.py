"""Command line entry point: ``skewpbw <command> <file> [--expr E]``.

A file argument of the form ``@name`` loads a bundled presentation.
Exit status: 0 success, 2 parse error, 3 validation failure, 4 engine
failure, 5 degree bound exceeded.
"""

import argparse
import json
import sys

from .coideal import CoidealInput, close_basis, coideal_report, extract_T, membership, validate_coideal
from .errors import (
    DegenerateQuotientError,
    EngineFailure,
    InhomogeneousError,
    OutOfBoundError,
    ParseError,
    ValidationError,
)
from .fileformat import bundled_names, bundled_text, parse_presentation
from .linalg import _axpy
from .pbwengine import (
    build_pbw,
    check_hopf,
    complete,
    decompose_super,
    render_decomposition,
    render_superword,
)
from .skewalg import TensorElement, coproduct
from .words import constitutions_up_to, render_tree

EXIT_PARSE, EXIT_VALIDATION, EXIT_ENGINE, EXIT_BOUND = 2, 3, 4, 5


def _load(path):
    if path.startswith("@"):
        name = path[1:]
        if name not in bundled_names():
            raise ParseError(f"no bundled presentation {name!r} (have: {', '.join(bundled_names())})")
        return parse_presentation(bundled_text(name))
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    return parse_presentation(text)


def _expr(ctx, text):
    try:
        return ctx.parse(text)
    except ZeroDivisionError as e:
        raise ParseError(f"--expr: {e}") from None
    except ParseError as e:
        raise ParseError(f"--expr: {e}") from None


def _setup(args, hopf=True):
    pf = _load(args.file)
    ctx = pf.context()
    pres = pf.presentation(ctx)
    system, data = build_pbw(pres, hopf_check=hopf)
    return pf, ctx, pres, system, data


def _dimension_table(system):
    n, bound = system.ctx.n, system.bound
    return [
        {"constitution": list(g), "dim": system.dimension(g)} for g in constitutions_up_to(n, bound)
    ]


def cmd_pbw(args):
    pf, ctx, pres, system, data = _setup(args, hopf=not args.no_hopf_check)
    return {
        "command": "pbw",
        "mode": str(ctx.mode),
        "bound": system.bound,
        "rules": len(system.rules),
        "hard_letters": [
            {
                "word": "[" + ctx.alphabet.render(h.word) + "]",
                "bracketing": render_tree(h.letter.tree, ctx.alphabet),
                "height": str(h.height),
                "height_note": h.height.reason,
            }
            for h in data.letters
        ],
        "dimensions": _dimension_table(system),
    }


def _coideal_setup(args):
    pf, ctx, pres, system, data = _setup(args)
    if pf.coideal is None:
        raise ParseError("the presentation has no 'coideal' declaration")
    inp = CoidealInput(system, pf.coideal_generators(ctx))
    basis = close_basis(inp)
    validate_coideal(inp, basis).raise_if_failed()
    return ctx, system, data, inp, basis, extract_T(basis, data)


def cmd_coideal(args):
    ctx, system, data, inp, basis, res = _coideal_setup(args)
    report = coideal_report(inp, basis, res)
    report["command"] = "coideal"
    report["generators"] = [str(y) for y in inp.generators]
    return report


def cmd_member(args):
    ctx, system, data, inp, basis, res = _coideal_setup(args)
    a = _expr(ctx, args.expr)
    r = membership(a, res)
    out = {
        "command": "member",
        "expr": str(a),
        "member": r.member,
        "decomposition": render_decomposition(r.decomposition, ctx, res.pt.render_word),
    }
    if not r.member:
        out["offending_letter"] = r.offending.render(ctx.alphabet)
    return out


def cmd_reduce(args):
    pf, ctx, pres, system, data = _setup(args)
    a = _expr(ctx, args.expr)
    dec = decompose_super(a, data)
    return {
        "command": "reduce",
        "expr": str(a),
        "normal_form": str(system.nf(a)),
        "superwords": render_decomposition(
            dec, ctx, lambda sw: render_superword(sw, ctx.alphabet)
        ),
    }


def cmd_coproduct(args):
    pf, ctx, pres, system, data = _setup(args)
    a = _expr(ctx, args.expr)
    acc = {}
    for ((gl, wl), (gr, wr)), c in coproduct(system.nf(a)).terms.items():
        for ul, cl in system.nf_word(wl).items():
            for ur, cr in system.nf_word(wr).items():
                _axpy(acc, c * cl, {((gl, ul), (gr, ur)): cr})
    return {"command": "coproduct", "expr": str(a), "coproduct": str(TensorElement(ctx, acc))}


def cmd_check_hopf(args):
    pf = _load(args.file)
    ctx = pf.context()
    pres = pf.presentation(ctx)
    system = complete(pres)
    check_hopf(pres, system)
    return {"command": "check-hopf", "relations": list(pf.relations), "hopf_ideal": True}


def _render_human(report):
    lines = []
    cmd = report["command"]
    if cmd == "pbw":
        lines.append(f"mode {report['mode']}, bound {report['bound']}, {report['rules']} rewrite rules")
        lines.append(f"hard super-letters ({len(report['hard_letters'])}):")
        for h in report["hard_letters"]:
            lines.append(f"  {h['word']:<16} {h['bracketing']:<28} height {h['height']}")
        lines.append("dimensions:")
        for d in report["dimensions"]:
            lines.append(f"  {tuple(d['constitution'])}: {d['dim']}")
    elif cmd == "coideal":
        lines.append("U generated by k[G] and: " + " ; ".join(report["generators"]))
        lines.append("right coideal: yes")
        lines.append(f"T ({len(report['T'])}):")
        for t in report["T"]:
            lines.append(f"  {t['letter']}  m={t['m']}  height {t['height']}  c = {t['element']}")
        lines.append("P_T: " + ", ".join(f"{x['letter']} (h={x['height']})" for x in report["P_T"]))
        if report["not_represented"]:
            lines.append("not represented within bound: " + ", ".join(report["not_represented"]))
        lines.append("dimensions (U vs T-words):")
        for d in report["dimensions"]:
            lines.append(f"  {tuple(d['constitution'])}: {d['dim_U']} = {d['t_words']}")
    elif cmd == "member":
        lines.append(f"{report['expr']}: {'member' if report['member'] else 'not a member'}")
        lines.append(f"  P_T decomposition: {report['decomposition']}")
        if not report["member"]:
            lines.append(f"  offending letter: {report['offending_letter']}")
    elif cmd == "reduce":
        lines.append(f"nf: {report['normal_form']}")
        lines.append(f"super-words: {report['superwords']}")
    elif cmd == "coproduct":
        lines.append(f"Delta({report['expr']}) = {report['coproduct']}")
    elif cmd == "check-hopf":
        lines.append("relations generate a Hopf ideal up to the bound")
    return "\n".join(lines)


def _emit(report, fmt, stream):
    if fmt == "machine":
        stream.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        stream.write(_render_human(report) + "\n")


def build_parser():
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("human", "machine"), default=argparse.SUPPRESS)
    parser = argparse.ArgumentParser(prog="skewpbw", parents=[fmt])
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "pbw": (cmd_pbw, "hard super-letters, heights and dimensions"),
        "coideal": (cmd_coideal, "validate U and extract its PBW generators T"),
        "reduce": (cmd_reduce, "normal form and super-word decomposition of --expr"),
        "coproduct": (cmd_coproduct, "coproduct of --expr modulo the relations"),
        "member": (cmd_member, "membership of --expr in U"),
        "check-hopf": (cmd_check_hopf, "check that the relations generate a Hopf ideal"),
    }
    for name, (func, helptext) in commands.items():
        p = sub.add_parser(name, help=helptext, parents=[fmt])
        p.add_argument("file", help="presentation file, or @name for a bundled one")
        if name in ("reduce", "coproduct", "member"):
            p.add_argument("--expr", required=True)
        if name == "pbw":
            p.add_argument("--no-hopf-check", action="store_true")
        p.set_defaults(func=func)
    return parser


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    fmt = getattr(args, "format", "human")
    try:
        report = args.func(args)
    except (ParseError, InhomogeneousError) as e:
        return _fail(fmt, "parse", e, EXIT_PARSE, stdout, stderr)
    except (ValidationError, DegenerateQuotientError) as e:
        return _fail(fmt, "validation", e, EXIT_VALIDATION, stdout, stderr)
    except EngineFailure as e:
        return _fail(fmt, "engine", e, EXIT_ENGINE, stdout, stderr)
    except OutOfBoundError as e:
        return _fail(fmt, "bound", e, EXIT_BOUND, stdout, stderr)
    _emit(report, fmt, stdout)
    return 0


def _fail(fmt, kind, err, code, stdout, stderr):
    witness = getattr(err, "witness", None)
    if fmt == "machine":
        out = {"error": kind, "message": str(err)}
        if witness is not None:
            out["witness"] = str(witness) if not isinstance(witness, tuple) else repr(witness)
        stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
    else:
        stderr.write(f"skewpbw: {kind} error: {err}\n")
        if witness is not None:
            stderr.write(f"witness: {witness}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
