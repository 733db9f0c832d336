"""Command-line front end.

Exit status: 0 on success, 1 when a mathematical precondition or validation
fails, 2 on malformed input. Documents emitted by ``from-form`` and
``from-char`` embed their complex under a ``"complex"`` key so they can be
piped into the next command without repeating ``--complex``.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import jsonio
from .cft import (
    cft_from_character,
    cft_from_form,
    classify_flat,
    holonomy,
    is_deformation_invariant,
    is_flat,
    isomorphism_witness,
    non_isomorphism_reason,
    smoothness_violations,
)
from .chains import DegreeError, NotACycleError, cohomology_integer, homology
from .characters import (
    InvalidCharacterError,
    character_from_form,
    characteristic_class,
    evaluate,
    validate,
)
from .complexes import BUILDERS, ComplexError, build_standard
from .jsonio import FormatError


class Failure(Exception):
    """A result that should end the command with exit status 1."""


def _read(path: str, stdin) -> tuple:
    if path == "-":
        return jsonio.loads(stdin.read(), "<stdin>"), "<stdin>"
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from None
    return jsonio.loads(text, path), path


class _Context:
    def __init__(self, args, stdin):
        self.args = args
        self.stdin = stdin
        self._stdin_used = False

    def doc(self, path: Optional[str]):
        if path is None or path == "-":
            if self._stdin_used:
                raise FormatError("standard input can feed only one document")
            self._stdin_used = True
            return _read("-", self.stdin)[0]
        return _read(path, self.stdin)[0]

    def complex(self, embedded_from=None):
        a = self.args
        if getattr(a, "builder", None):
            return _build(a.builder, a.m)
        if getattr(a, "complex", None):
            return jsonio.complex_from_json(self.doc(a.complex))
        if isinstance(embedded_from, dict) and "complex" in embedded_from:
            return jsonio.complex_from_json(embedded_from["complex"])
        if embedded_from is None:
            return jsonio.complex_from_json(self.doc(None))
        raise FormatError("no complex given: pass --complex/--builder or embed a \"complex\" field")


def _build(name: str, m: Optional[int]):
    params = {} if m is None else {"m": m}
    if name != "circle" and params:
        raise ComplexError(f"{name} takes no parameters")
    return build_standard(name, **params)


def _envelope(payload: dict, K) -> dict:
    out = dict(payload)
    out["complex"] = jsonio.complex_to_json(K)
    return out


def _class_str(cls) -> str:
    free = ", ".join(map(str, cls.free_part))
    tors = ", ".join(map(str, cls.torsion_part))
    return f"free ({free}) torsion ({tors})"


# command handlers return (json document, table text)

def cmd_build(ctx):
    K = _build(ctx.args.name, ctx.args.m)
    doc = jsonio.complex_to_json(K)
    counts = ", ".join(str(len(c)) for c in K.cells)
    return doc, f"{ctx.args.name}: top_dim {K.top_dim}, cells per degree [{counts}]"


def cmd_homology(ctx):
    K = ctx.complex()
    k = ctx.args.k
    H = homology(K, k)
    doc = {
        "degree": k,
        "betti": H.betti,
        "torsion": list(H.torsion),
        "cycle_basis": [jsonio.chain_to_json(z) for z in H.cycle_basis],
        "generators": [jsonio.chain_to_json(z) for z in H.generators],
        "orders": list(H.orders),
    }
    return doc, f"H_{k} = {H.describe()}"


def cmd_cohomology(ctx):
    K = ctx.complex()
    k = ctx.args.k
    if k < 0:
        raise DegreeError(f"negative degree {k}")
    C = cohomology_integer(K, k)
    return {"degree": k, "betti": C.betti, "torsion": list(C.torsion)}, f"H^{k} = {C.describe()}"


def _character(ctx):
    doc = ctx.doc(ctx.args.char)
    K = ctx.complex(doc)
    return jsonio.character_from_json(K, doc), K


def _theory(ctx, path):
    doc = ctx.doc(path)
    K = ctx.complex(doc)
    E = jsonio.theory_from_json(K, doc)
    problems = smoothness_violations(E)
    if problems:
        raise InvalidCharacterError(problems)
    return E, K


def _form(ctx):
    doc = ctx.doc(ctx.args.form)
    K = ctx.complex(doc)
    return jsonio.cochain_from_json(K, doc, "form"), K


def cmd_character_validate(ctx):
    f, _ = _character(ctx)
    problems = validate(f)
    if problems:
        raise Failure("invalid character:\n  " + "\n  ".join(problems))
    return {"valid": True, "violations": []}, "valid"


def cmd_character_from_form(ctx):
    omega, K = _form(ctx)
    f = character_from_form(omega)
    return _envelope(jsonio.character_to_json(f), K), " ".join(map(str, f.basis_phases))


def cmd_character_eval(ctx):
    f, K = _character(ctx)
    sigma = jsonio.chain_from_json(K, ctx.doc(ctx.args.cycle))
    p = evaluate(f, sigma)
    return {"phase": str(p)}, str(p)


def cmd_character_class(ctx):
    f, K = _character(ctx)
    cls = characteristic_class(f)
    C = cohomology_integer(K, f.degree + 1)
    doc = {"degree": f.degree + 1, "free_part": list(cls.free_part), "torsion_part": list(cls.torsion_part)}
    return doc, f"class in H^{f.degree + 1} = {C.describe()}: {_class_str(cls)}"


def cmd_cft_from_form(ctx):
    omega, K = _form(ctx)
    E = cft_from_form(omega)
    return _envelope(jsonio.theory_to_json(E), K), repr(E)


def cmd_cft_from_char(ctx):
    f, K = _character(ctx)
    comp = None
    if ctx.args.complement:
        comp = [jsonio.parse_rational(s, "--complement") for s in ctx.args.complement.split(",")]
    E = cft_from_character(f, comp)
    return _envelope(jsonio.theory_to_json(E), K), repr(E)


def cmd_cft_holonomy(ctx):
    E, K = _theory(ctx, ctx.args.theory)
    sigma = jsonio.chain_from_json(K, ctx.doc(ctx.args.cycle))
    p = holonomy(E, sigma)
    return {"phase": str(p)}, str(p)


def cmd_cft_flat(ctx):
    E, _ = _theory(ctx, ctx.args.theory)
    flat, inv = is_flat(E), is_deformation_invariant(E)
    text = f"flat: {str(flat).lower()}\ndeformation_invariant: {str(inv).lower()}"
    return {"flat": flat, "deformation_invariant": inv}, text


def cmd_cft_iso(ctx):
    E, K = _theory(ctx, ctx.args.a)
    docb = ctx.doc(ctx.args.b)
    Kb = ctx.complex(docb)
    if Kb != K:
        raise FormatError("the two theories live on different complexes")
    F = jsonio.theory_from_json(K, docb)
    problems = smoothness_violations(F)
    if problems:
        raise InvalidCharacterError(problems)
    reason = non_isomorphism_reason(E, F)
    if reason is not None:
        raise Failure(f"not isomorphic: {reason}")
    w = isomorphism_witness(E, F)
    phases = ", ".join(f"{i}: {p}" for i, p in enumerate(w.phases)) or "(none)"
    return jsonio.witness_to_json(w), f"isomorphic\nwitness phases on degree-{w.degree} cycle basis: {phases}"


def cmd_cft_classify_flat(ctx):
    K = ctx.complex()
    k = ctx.args.k
    C = classify_flat(K, k)
    lines = [f"H_{k} = {C.homology()}", f"flat theories up to isomorphism: {C.group()}"]
    gens = []
    for i, g in enumerate(C.generators):
        kind = f"order {g.order}" if g.order else "free (sample holonomy)"
        cyc = " ".join(f"{c:+d}*{lab}" for lab, c in g.cycle.labelled().items())
        lines.append(f"generator {i}: {kind}, holonomy {g.holonomy} on {cyc}")
        gens.append({
            "order": g.order,
            "cycle": jsonio.chain_to_json(g.cycle),
            "holonomy": str(g.holonomy),
            "theory": jsonio.theory_to_json(g.theory),
        })
    doc = {
        "degree": k,
        "group": C.group(),
        "betti": C.betti,
        "torsion": list(C.torsion),
        "generators": gens,
        "complex": jsonio.complex_to_json(K),
    }
    return doc, "\n".join(lines)


def _complex_source(p):
    src = p.add_mutually_exclusive_group()
    src.add_argument("--complex", metavar="PATH", help="complex JSON file ('-' for stdin)")
    src.add_argument("--builder", choices=sorted(BUILDERS), help="use a built-in complex")
    p.add_argument("-m", type=int, default=None, help="vertex count for --builder circle")


def _output(p, default):
    p.add_argument("--format", choices=("json", "table"), default=default)
    p.add_argument("-o", "--output", metavar="PATH", help="write to a file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chainfield", description="Differential characters and chain field theories on cellular complexes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="emit a built-in complex")
    p.add_argument("name", choices=sorted(BUILDERS))
    p.add_argument("-m", type=int, default=None, help="vertex count for circle (default 4)")
    _output(p, "json")
    p.set_defaults(func=cmd_build)

    for name, func, help_ in (
        ("homology", cmd_homology, "integral homology H_k"),
        ("cohomology", cmd_cohomology, "integral cohomology H^k"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("-k", type=int, required=True)
        _complex_source(p)
        _output(p, "table")
        p.set_defaults(func=func)

    char = sub.add_parser("character", help="differential characters").add_subparsers(dest="action", required=True)
    p = char.add_parser("validate")
    p.add_argument("--char", metavar="PATH")
    _complex_source(p)
    _output(p, "table")
    p.set_defaults(func=cmd_character_validate)
    p = char.add_parser("from-form")
    p.add_argument("--form", metavar="PATH")
    _complex_source(p)
    _output(p, "json")
    p.set_defaults(func=cmd_character_from_form)
    p = char.add_parser("eval")
    p.add_argument("--char", metavar="PATH")
    p.add_argument("--cycle", metavar="PATH", required=True)
    _complex_source(p)
    _output(p, "table")
    p.set_defaults(func=cmd_character_eval)
    p = char.add_parser("class")
    p.add_argument("--char", metavar="PATH")
    _complex_source(p)
    _output(p, "table")
    p.set_defaults(func=cmd_character_class)

    cft = sub.add_parser("cft", help="chain field theories").add_subparsers(dest="action", required=True)
    p = cft.add_parser("from-form")
    p.add_argument("--form", metavar="PATH")
    _complex_source(p)
    _output(p, "json")
    p.set_defaults(func=cmd_cft_from_form)
    p = cft.add_parser("from-char")
    p.add_argument("--char", metavar="PATH")
    p.add_argument("--complement", metavar="P/Q,...", help="lift values on the complement basis")
    _complex_source(p)
    _output(p, "json")
    p.set_defaults(func=cmd_cft_from_char)
    p = cft.add_parser("holonomy")
    p.add_argument("--theory", metavar="PATH")
    p.add_argument("--cycle", metavar="PATH", required=True)
    _complex_source(p)
    _output(p, "table")
    p.set_defaults(func=cmd_cft_holonomy)
    p = cft.add_parser("flat")
    p.add_argument("--theory", metavar="PATH")
    _complex_source(p)
    _output(p, "table")
    p.set_defaults(func=cmd_cft_flat)
    p = cft.add_parser("iso")
    p.add_argument("--a", metavar="PATH", required=True)
    p.add_argument("--b", metavar="PATH", required=True)
    _complex_source(p)
    _output(p, "table")
    p.set_defaults(func=cmd_cft_iso)
    p = cft.add_parser("classify-flat")
    p.add_argument("-k", type=int, required=True, help="theory degree (cycle degree of the holonomy)")
    _complex_source(p)
    _output(p, "table")
    p.set_defaults(func=cmd_cft_classify_flat)
    return parser


def run(argv: Optional[Sequence[str]] = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    ctx = _Context(args, stdin)
    try:
        doc, text = args.func(ctx)
    except FormatError as exc:
        print(f"malformed input: {exc}", file=stderr)
        return 2
    except Failure as exc:
        print(str(exc), file=stdout)
        return 1
    except InvalidCharacterError as exc:
        print("invariant violated: " + "; ".join(exc.violations), file=stderr)
        return 1
    except (ComplexError, DegreeError, NotACycleError) as exc:
        print(f"precondition violated: {exc}", file=stderr)
        return 1
    out = jsonio.dumps(doc) if args.format == "json" else text
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out, file=stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
