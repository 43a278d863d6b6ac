"""Command-line entry point: ``pacheck <subcommand> ...``.

Exit codes: 0 accepted/true, 1 rejected/false, 2 usage or input error,
3 Unknown (``eval`` only).  ``--porcelain`` prints a single line per result,
``RESULT <subcommand> <verdict> <detail>``.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

from pacheck import __version__, godel
from pacheck.beta import beta, encode_sequence
from pacheck.diagonal import anand_fixedpoint, goedel_sentence
from pacheck.kernel import (
    PROFILE_NAMES, PROFILES, ProofScript, ScriptError, UnknownProfile,
    check_certificate, check_proof, load_certificate, load_script,
    system_profile,
)
from pacheck.models import (
    CA, STANDARD, Ordinal, TruthValue, UnboundVariable, check_axioms_over_naturals,
    eval_formula,
)
from pacheck.primrec import (
    ArityError, compile_representation, load_definitions, prf_check, prf_prime_check,
    q_check, representation_report,
)
from pacheck.syntax import ParseError, display, parse_formula, parse_term

EXIT_OK, EXIT_FALSE, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2, 3
EXPECTED_MATRIX = "expected-matrix.txt"


class UsageError(Exception):
    pass


class _Out:
    def __init__(self, porcelain: bool, sub: str):
        self.porcelain = porcelain
        self.sub = sub

    def result(self, verdict: str, detail: str, human: str | None = None):
        if self.porcelain:
            detail = " ".join(str(detail).split())
            print(f"RESULT {self.sub} {verdict} {detail}".rstrip())
        else:
            print(human if human is not None else detail)

    def info(self, text: str):
        if not self.porcelain:
            print(text)


# ------------------------------------------------------------------ helpers

def default_corpus() -> Path:
    return Path(str(resources.files("pacheck") / "corpus"))


def _codec(args) -> str:
    return args.codec or godel.default_codec()


def _read_formula(arg: str):
    """Formula from literal text, or from a file when ``arg`` names one."""
    p = Path(arg)
    text = p.read_text() if p.is_file() else arg
    text = "\n".join(l.split("#", 1)[0] for l in text.splitlines()).strip()
    return parse_formula(text)


def _gn_arg(arg: str, codec: str) -> godel.GodelNumber:
    """A Gödel number given in decimal, or the code of a file's content.

    ``.prf`` files are read as proof scripts, other files as one formula.
    """
    if arg.isdigit():
        return godel.parse_decimal(arg, codec)
    p = Path(arg)
    if not p.is_file():
        raise UsageError(f"{arg!r} is neither a decimal number nor a file")
    if p.suffix == ".prf":
        return godel.encode(load_script(p), codec)
    return godel.encode(_read_formula(arg), codec)


def _profile(args):
    if args.system:
        return system_profile(args.system)
    raise UsageError("--system is required")


# ------------------------------------------------------------- subcommands

def cmd_check(args, out: _Out) -> int:
    path = Path(args.file)
    if path.suffix == ".cert":
        cert = load_certificate(path, codec=args.codec)
        v = check_certificate(cert, _profile(args))
        ok = type(v).__name__ == "CertifiedUpTo"
        out.result("ACCEPTED" if ok else "REJECTED", str(v))
        return EXIT_OK if ok else EXIT_FALSE
    script = load_script(path)
    name = args.system or script.system
    if not name:
        raise UsageError("no --system given and the script has no @system header")
    v = check_proof(script, system_profile(name))
    out.result("ACCEPTED" if v else "REJECTED", str(v))
    return EXIT_OK if v else EXIT_FALSE


def cmd_encode(args, out: _Out) -> int:
    codec = _codec(args)
    if args.script:
        obj = load_script(args.script)
    elif args.term:
        obj = parse_term(args.term)
    else:
        obj = _read_formula(args.formula)
    g = godel.encode(obj, codec)
    out.result("OK", f"{codec} {g}", str(g))
    return EXIT_OK


def cmd_decode(args, out: _Out) -> int:
    codec = _codec(args)
    g = godel.parse_decimal(args.number, codec)
    obj = godel.decode(g)
    if isinstance(obj, ProofScript):
        text = "\n".join(f"{ln.index} | {display(ln.formula)} | {ln.just}" for ln in obj.lines)
    else:
        text = display(obj)
    out.result("OK", text.replace("\n", " ; "), text)
    return EXIT_OK


def cmd_beta(args, out: _Out) -> int:
    if args.action == "encode":
        if len(args.values) != 1:
            raise UsageError("beta encode takes one comma-separated list")
        raw = args.values[0].strip()
        try:
            seq = [int(x) for x in raw.split(",")] if raw else []
        except ValueError:
            raise UsageError(f"not a list of naturals: {raw!r}") from None
        w = encode_sequence(seq)
        out.result("OK", str(w))
        return EXIT_OK
    if len(args.values) != 3 or not all(v.isdigit() for v in args.values):
        raise UsageError("beta eval takes three naturals u v i")
    u, v, i = map(int, args.values)
    out.result("OK", str(beta(u, v, i)))
    return EXIT_OK


def cmd_compile_pr(args, out: _Out) -> int:
    defs = load_definitions(args.file)
    if args.name not in defs:
        raise UsageError(f"no definition named {args.name!r} in {args.file}")
    f = defs[args.name]
    if args.check is None:
        out.result("OK", display(compile_representation(f)))
        return EXIT_OK
    vals = [int(x) for x in args.check.split(",")] if args.check.strip() else []
    rep = representation_report(f, vals)
    ok = rep.ok
    detail = (f"{args.name}({','.join(map(str, vals))}) = {rep.value}; "
              f"at value {rep.closed}; other results "
              f"{'refuted' if rep.definite else 'not all refuted'}")
    out.result("TRUE" if ok else "FALSE", detail)
    return EXIT_OK if ok else EXIT_FALSE


def _truth(out: _Out, ok: bool, detail: str) -> int:
    out.result("TRUE" if ok else "FALSE", detail, f"{ok}")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_prf(args, out: _Out) -> int:
    codec = _codec(args)
    x, y = _gn_arg(args.x, codec), _gn_arg(args.y, codec)
    p = _profile(args)
    if args.prime:
        return _truth(out, prf_prime_check(x, y, p), f"prf' under {p.name}")
    return _truth(out, prf_check(x, y, p), f"prf under {p.name}")


def cmd_q(args, out: _Out) -> int:
    codec = _codec(args)
    x, y = _gn_arg(args.x, codec), _gn_arg(args.y, codec)
    p = _profile(args)
    return _truth(out, q_check(x, y, p), f"q under {p.name}")


def cmd_diag(args, out: _Out) -> int:
    w = _read_formula(args.formula)
    build = goedel_sentence if args.mode == "goedel" else anand_fixedpoint
    r = build(w, _codec(args))
    text = display(r.sentence)
    out.result("OK", f"{r.fixed_gn} {text}", f"{r.fixed_gn}\n{text}")
    return EXIT_OK


def _element(text: str, model: str):
    text = text.strip()
    if model == STANDARD:
        if not text.isdigit():
            raise UsageError(f"standard-model values are naturals, got {text!r}")
        return int(text)
    return Ordinal.parse(text)


def cmd_eval(args, out: _Out) -> int:
    model = CA if args.model == "ca" else STANDARD
    bindings = {}
    for item in filter(None, (args.bind or "").split(",")):
        var, eq, val = item.partition("=")
        var = var.strip()
        if not eq or not var.startswith("x") or not var[1:].isdigit():
            raise UsageError(f"bad binding {item!r}; expected xN=value")
        bindings[int(var[1:])] = _element(val, model)
    f = _read_formula(args.formula)
    r = eval_formula(f, model, bindings, bound=args.bound)
    out.result(str(r).upper(), f"{args.model} bound={args.bound}", str(r))
    return {TruthValue.TRUE: EXIT_OK, TruthValue.FALSE: EXIT_FALSE}.get(r, EXIT_UNKNOWN)


def cmd_systems(args, out: _Out) -> int:
    for name in PROFILE_NAMES:
        p = PROFILES[name]
        ind = ",".join(sorted(p.induction)) or "-"
        rules = ",".join(sorted(p.rules))
        out.result("OK", f"{name} induction={ind} rules={rules}", f"{name:10} induction: {ind:22} rules: {rules}")
    if args.axioms_report:
        rep = check_axioms_over_naturals(CA, args.n_max)
        for line in rep.lines():
            out.info(line)
    return EXIT_OK


# ------------------------------------------------------------------ corpus

def corpus_matrix(directory: Path) -> dict[str, list[bool]]:
    """Script name -> acceptance under each profile, in PROFILE_NAMES order."""
    scripts = sorted(directory.glob("*.prf"))
    if not scripts:
        raise FileNotFoundError(f"no .prf scripts in {directory}")
    rows = {}
    for path in scripts:
        s = load_script(path)
        rows[path.stem] = [check_proof(s, PROFILES[n]).accepted for n in PROFILE_NAMES]
    return rows


def format_matrix(rows: dict[str, list[bool]]) -> str:
    width = max(len(n) for n in rows) + 2
    lines = ["script".ljust(width) + " ".join(PROFILE_NAMES)]
    for name, verdicts in rows.items():
        cells = [("ACCEPT" if ok else "REJECT").ljust(len(p)) for ok, p in zip(verdicts, PROFILE_NAMES)]
        lines.append(name.ljust(width) + " ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def _tokens(text: str) -> list[list[str]]:
    return [l.split() for l in text.splitlines() if l.strip() and not l.lstrip().startswith("#")]


def monotonicity_violations(rows: dict[str, list[bool]]) -> list[tuple[str, str, str]]:
    idx = {n: k for k, n in enumerate(PROFILE_NAMES)}
    bad = []
    for name, verdicts in rows.items():
        for a in PROFILE_NAMES:
            for b in PROFILE_NAMES:
                if a != b and PROFILES[a] <= PROFILES[b] and verdicts[idx[a]] and not verdicts[idx[b]]:
                    bad.append((name, a, b))
    return bad


def cmd_corpus(args, out: _Out) -> int:
    directory = Path(args.dir) if args.dir else default_corpus()
    if not directory.is_dir():
        raise UsageError(f"corpus directory {directory} not found")
    rows = corpus_matrix(directory)
    text = format_matrix(rows)
    if args.write_expected:
        (directory / EXPECTED_MATRIX).write_text(text)
    out.info(text.rstrip())
    bad = monotonicity_violations(rows)
    for name, a, b in bad:
        out.result("VIOLATION", f"{name} accepted under {a} but rejected under {b}")
    if bad:
        return EXIT_FALSE
    expected_path = directory / EXPECTED_MATRIX
    if not expected_path.is_file():
        raise FileNotFoundError(f"missing {expected_path}")
    if _tokens(expected_path.read_text()) != _tokens(text):
        out.result("MISMATCH", f"matrix differs from {EXPECTED_MATRIX}")
        return EXIT_FALSE
    out.result("MATCH", f"{len(rows)} scripts x {len(PROFILE_NAMES)} profiles")
    return EXIT_OK


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--porcelain", action="store_true", help="one machine-readable RESULT line per result")
    common.add_argument("--codec", choices=godel.CODECS, help="Gödel numbering (default: $PACHECK_CODEC or positional)")

    parser = argparse.ArgumentParser(prog="pacheck", description="Proof kernel and Gödel-numbering workbench for first-order arithmetic.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("check", parents=[common], help="check a proof script (.prf) or certificate (.cert)")
    p.add_argument("file")
    p.add_argument("--system", choices=PROFILE_NAMES)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("encode", parents=[common], help="Gödel number of a formula, term or script")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--formula", help="formula text or a file holding one")
    g.add_argument("--term", help="term text")
    g.add_argument("--script", help="proof-script file")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", parents=[common], help="object with a given Gödel number")
    p.add_argument("number")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("beta", parents=[common], help="Beta function: 'encode 2,3' or 'eval u v i'")
    p.add_argument("action", choices=("encode", "eval"))
    p.add_argument("values", nargs="+")
    p.set_defaults(func=cmd_beta)

    p = sub.add_parser("compile-pr", parents=[common], help="compile a primitive recursive definition to a formula")
    p.add_argument("file", help="definition file, lines like 'add = rec(proj(1,1), comp(succ, proj(3,3)))'")
    p.add_argument("name")
    p.add_argument("--check", metavar="A,B,...", help="verify the formula semantically at these arguments")
    p.set_defaults(func=cmd_compile_pr)

    p = sub.add_parser("prf", parents=[common], help="prf(x, y), or prf'(u, y) with --prime")
    p.add_argument("x", help="decimal Gödel number or a file (.prf = script, else formula)")
    p.add_argument("y")
    p.add_argument("--system", choices=PROFILE_NAMES, required=True)
    p.add_argument("--prime", action="store_true", help="check prf' (substitute numeral(u) for x1)")
    p.set_defaults(func=cmd_prf)

    p = sub.add_parser("q", parents=[common], help="q(x, y): y proves K(numeral(x)) for the K numbered x")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--system", choices=PROFILE_NAMES, required=True)
    p.set_defaults(func=cmd_q)

    p = sub.add_parser("diag", parents=[common], help="diagonal sentence from W(x1, x2)")
    p.add_argument("--mode", choices=("goedel", "anand"), default="goedel")
    p.add_argument("--formula", required=True, help="formula text or a file holding W")
    p.set_defaults(func=cmd_diag)

    p = sub.add_parser("eval", parents=[common], help="bounded evaluation in the standard or ordinal model")
    p.add_argument("formula", help="formula text or a file holding one")
    p.add_argument("--model", choices=("standard", "ca"), default="standard")
    p.add_argument("--bound", type=int, default=16)
    p.add_argument("--bind", help="comma-separated bindings, e.g. x1=omega+1,x2=3")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("systems", parents=[common], help="list the eight system profiles")
    p.add_argument("--axioms-report", action="store_true", help="also evaluate A1-A9 in the ordinal model")
    p.add_argument("--n-max", type=int, default=6)
    p.set_defaults(func=cmd_systems)

    p = sub.add_parser("corpus", parents=[common], help="acceptance matrix of the bundled corpus")
    p.add_argument("dir", nargs="?", help="corpus directory (default: the bundled one)")
    p.add_argument("--write-expected", action="store_true", help=f"overwrite {EXPECTED_MATRIX} with this run")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Out(getattr(args, "porcelain", False), args.command)
    try:
        return args.func(args, out)
    except (UsageError, UnknownProfile, ParseError, ScriptError, ArityError, UnboundVariable,
            godel.NotAnEncoding, godel.CodecMismatch, OSError, ValueError, OverflowError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        if out.porcelain:
            print(f"RESULT {args.command} ERROR {' '.join(str(msg).split())}")
        print(f"pacheck {args.command}: error: {msg}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
