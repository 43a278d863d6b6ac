"""Primitive recursive functions, their representing formulas, and the
decidable proof predicates prf, prf' and q.

A recursion ``f(x, 0) = g(x)``, ``f(x, y+1) = h(x, y, f(x, y))`` compiles to

    (E u)(E v)[(E w)(Bt(u,v,0,w) & G(x,w)) & Bt(u,v,y,r)
               & (A w)((w < y) -> (E p)(E q)(Bt(u,v,w,p) & Bt(u,v,(w+0'),q) & H(x,w,p,q)))]

where ``Bt`` is the Beta-function formula and ``r`` the result variable.
``check_representation`` verifies such formulas semantically: the standard
model is searched with Beta witnesses of the recursion trace supplied as
hints, so no object-level derivation is produced.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Union

from pacheck import godel
from pacheck import syntax as sx
from pacheck.beta import beta, bt_instance, encode_sequence
from pacheck.kernel import (
    Justification, Line, ProofScript, SystemProfile, check_proof, parse_justification,
)
from pacheck.models import STANDARD, TruthValue, eval_formula

__all__ = [
    "Zero", "Succ", "Proj", "Comp", "Rec", "PrimRecFn", "ArityError",
    "arity", "eval_pr", "rank", "trace",
    "compile_representation", "compile_with_sites", "check_representation", "RepresentationReport",
    "representation_report", "sweep_bound",
    "prf_check", "prf_prime_check", "q_check",
    "instantiate_proof", "reflexivity_proof",
    "parse_definitions", "load_definitions", "STANDARD_DEFINITIONS",
]


class ArityError(ValueError):
    pass


# --------------------------------------------------------------- functions

@dataclass(frozen=True)
class Zero:
    """The constant 0 of arity ``k``."""
    k: int = 1


@dataclass(frozen=True)
class Succ:
    pass


@dataclass(frozen=True)
class Proj:
    """Projection onto the ``i``-th of ``n`` arguments (1-based)."""
    n: int
    i: int

    def __post_init__(self):
        if not 1 <= self.i <= self.n:
            raise ArityError(f"proj({self.n},{self.i}) needs 1 <= i <= n")


@dataclass(frozen=True)
class Comp:
    f: "PrimRecFn"
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if arity(self.f) != len(self.args):
            raise ArityError(f"composition: outer function takes {arity(self.f)} arguments, got {len(self.args)}")
        ks = {arity(g) for g in self.args}
        if len(ks) > 1:
            raise ArityError(f"composition: inner functions disagree on arity {sorted(ks)}")
        if not self.args:
            raise ArityError("composition needs at least one inner function")


@dataclass(frozen=True)
class Rec:
    g: "PrimRecFn"
    h: "PrimRecFn"

    def __post_init__(self):
        if arity(self.h) != arity(self.g) + 2:
            raise ArityError(f"recursion: step arity must be {arity(self.g) + 2}, got {arity(self.h)}")


PrimRecFn = Union[Zero, Succ, Proj, Comp, Rec]


def arity(f: PrimRecFn) -> int:
    if isinstance(f, Zero):
        return f.k
    if isinstance(f, Succ):
        return 1
    if isinstance(f, Proj):
        return f.n
    if isinstance(f, Comp):
        return arity(f.args[0])
    if isinstance(f, Rec):
        return arity(f.g) + 1
    raise TypeError(f"not a primitive recursive function: {f!r}")


def eval_pr(f: PrimRecFn, args) -> int:
    args = [int(a) for a in args]
    if len(args) != arity(f):
        raise ArityError(f"expected {arity(f)} arguments, got {len(args)}")
    if any(a < 0 for a in args):
        raise ValueError("arguments must be naturals")
    return _eval(f, args)


def _eval(f, args, seen=None):
    if seen is not None:
        seen.update(args)
    if isinstance(f, Zero):
        return 0
    if isinstance(f, Succ):
        return args[0] + 1
    if isinstance(f, Proj):
        return args[f.i - 1]
    if isinstance(f, Comp):
        return _eval(f.f, [_eval(g, args, seen) for g in f.args], seen)
    # iterate rather than recurse on the counter
    *x, y = args
    acc = _eval(f.g, x, seen)
    for k in range(y):
        acc = _eval(f.h, [*x, k, acc], seen)
    return acc


def trace(f: Rec, args) -> list[int]:
    """[f(x, 0), f(x, 1), ..., f(x, y)] for a recursion ``f``."""
    *x, y = args
    out = [_eval(f.g, list(x))]
    for k in range(y):
        out.append(_eval(f.h, [*x, k, out[-1]]))
    return out


def rank(f: PrimRecFn) -> int:
    if isinstance(f, (Zero, Succ, Proj)):
        return 0
    if isinstance(f, Comp):
        return 1 + max(rank(f.f), *(rank(g) for g in f.args))
    return 1 + max(rank(f.g), rank(f.h))


# ----------------------------------------------------------------- compiler

@dataclass(frozen=True)
class RecSite:
    """Variable indices chosen for one compiled recursion."""
    fn: Rec
    params: tuple[int, ...]
    rec_var: int
    u: int
    v: int
    base: int
    w: int
    prev: int
    next: int


@dataclass(frozen=True)
class CompSite:
    """Existential variables introduced for the inner results of a composition."""
    fn: Comp
    params: tuple[int, ...]
    results: tuple[int, ...]


@dataclass
class _Compiler:
    next_index: int
    sites: list = field(default_factory=list)

    def fresh(self) -> int:
        i = self.next_index
        self.next_index += 1
        return i

    def bt(self, u, v, i, k):
        return bt_instance(u, v, i, k, witness=self.fresh(), less_witness=self.fresh())

    def compile(self, f, params: list[int], res: int) -> sx.Formula:
        r = sx.Var(res)
        if isinstance(f, Zero):
            return sx.Eq(r, sx.Zero())
        if isinstance(f, Succ):
            return sx.Eq(r, sx.Succ(sx.Var(params[0])))
        if isinstance(f, Proj):
            return sx.Eq(r, sx.Var(params[f.i - 1]))
        if isinstance(f, Comp):
            ys = [self.fresh() for _ in f.args]
            self.sites.append(CompSite(f, tuple(params), tuple(ys)))
            parts = [self.compile(g, params, y) for g, y in zip(f.args, ys)]
            parts.append(self.compile(f.f, ys, res))
            body = parts[-1]
            for p in reversed(parts[:-1]):
                body = sx.conj(p, body)
            for y in reversed(ys):
                body = sx.exists(y, body)
            return body
        *x, y = params
        u, v, base, w, prev, nxt = (self.fresh() for _ in range(6))
        self.sites.append(RecSite(f, tuple(x), y, u, v, base, w, prev, nxt))
        U, V, W = sx.Var(u), sx.Var(v), sx.Var(w)
        first = sx.exists(base, sx.conj(self.bt(U, V, sx.Zero(), sx.Var(base)),
                                         self.compile(f.g, x, base)))
        at_y = self.bt(U, V, sx.Var(y), r)
        step = sx.exists(prev, sx.exists(nxt, sx.conj(
            self.bt(U, V, W, sx.Var(prev)),
            sx.conj(self.bt(U, V, sx.Add(W, sx.numeral(1)), sx.Var(nxt)),
                    self.compile(f.h, [*x, w, prev], nxt)))))
        gap = self.fresh()
        below = sx.exists(gap, sx.Eq(sx.Add(W, sx.Succ(sx.Var(gap))), sx.Var(y)))
        every = sx.ForAll(w, sx.Implies(below, step))
        return sx.exists(u, sx.exists(v, sx.conj(first, sx.conj(at_y, every))))


def compile_with_sites(f: PrimRecFn):
    """The representing formula plus the variable layout used for it."""
    k = arity(f)
    comp = _Compiler(next_index=k + 2)
    body = comp.compile(f, list(range(1, k + 1)), k + 1)
    return body, tuple(comp.sites)


def compile_representation(f: PrimRecFn) -> sx.Formula:
    """Formula in x1..xk and x(k+1) expressing f(x1..xk) = x(k+1)."""
    return compile_with_sites(f)[0]


def _hints(sites) -> dict[int, Callable]:
    hints = {}
    for s in sites:
        if isinstance(s, CompSite):
            for g, y in zip(s.fn.args, s.results):
                hints[y] = (lambda g, ps: lambda env: [_eval(g, [env[p] for p in ps])])(g, s.params)
            continue

        def witness(env, s=s):
            args = [env[p] for p in s.params] + [env[s.rec_var]]
            return encode_sequence(trace(s.fn, args))

        hints[s.u] = lambda env, wt=witness: [wt(env).u]
        hints[s.v] = lambda env, wt=witness: [wt(env).v]
        hints[s.base] = lambda env, s=s: [beta(env[s.u], env[s.v], 0)]
        hints[s.prev] = lambda env, s=s: [beta(env[s.u], env[s.v], env[s.w])]
        hints[s.next] = lambda env, s=s: [beta(env[s.u], env[s.v], env[s.w] + 1)]
    return hints


@dataclass(frozen=True)
class RepresentationReport:
    """Outcome of evaluating a compiled formula around the true value.

    ``closed`` is the full formula at the true value, with every Beta pair
    found through hints.  ``results`` maps each candidate result in the
    window to the value of the formula's matrix with the outermost (u, v)
    fixed to the witness of the recursion trace (for a top-level recursion),
    or to the full formula otherwise.
    """

    value: int
    closed: TruthValue
    results: dict  # candidate result -> TruthValue
    witness: tuple[int, int] | None = None

    @property
    def holds_at_value(self) -> bool:
        return self.closed is TruthValue.TRUE and self.results[self.value] is TruthValue.TRUE

    @property
    def unique(self) -> bool:
        return [z for z, r in self.results.items() if r is TruthValue.TRUE] == [self.value]

    @property
    def definite(self) -> bool:
        """Every wrong candidate was refuted outright, not merely left Unknown."""
        return all(r is TruthValue.FALSE for z, r in self.results.items() if z != self.value)

    @property
    def ok(self) -> bool:
        return self.holds_at_value and self.unique


def _matrix(f: sx.Formula, *vs: int) -> sx.Formula:
    """Strip leading existentials (E v1)(E v2)... from ``f``."""
    for v in vs:
        if not (isinstance(f, sx.Not) and isinstance(f.body, sx.ForAll) and f.body.var == v
                and isinstance(f.body.body, sx.Not)):
            raise ValueError(f"formula does not start with (E x{v})")
        f = f.body.body.body
    return f


def sweep_bound(f: PrimRecFn, args) -> int:
    """Least bound under which every (A w)(w < y -> ...) is swept completely:
    one above every argument met while computing f(args), plus one."""
    seen = set(args)
    _eval(f, list(args), seen)
    return max(seen, default=0) + 2


def representation_report(f: PrimRecFn, args, window: int = 5, bound: int | None = None) -> RepresentationReport:
    """Evaluate the compiled formula at every result 0..value+window."""
    args = [int(a) for a in args]
    value = eval_pr(f, args)
    body, sites = compile_with_sites(f)
    hints = _hints(sites)
    if bound is None:
        bound = sweep_bound(f, args)
    k = len(args)
    env = {i + 1: a for i, a in enumerate(args)}
    closed = eval_formula(body, STANDARD, {**env, k + 1: value}, bound=bound, hints=hints)
    witness = None
    target, fixed = body, {}
    if isinstance(f, Rec):
        site = sites[0]
        w = encode_sequence(trace(f, args))
        witness = (w.u, w.v)
        target = _matrix(body, site.u, site.v)
        fixed = {site.u: w.u, site.v: w.v}
    results = {}
    for z in range(value + window + 1):
        results[z] = eval_formula(target, STANDARD, {**env, **fixed, k + 1: z}, bound=bound, hints=hints)
    return RepresentationReport(value, closed, results, witness)


def check_representation(f: PrimRecFn, args) -> bool:
    """True iff the formula holds at the value and at no other result in the window.

    "Holds" means evaluates to True; any other result value must not
    evaluate to True.
    """
    if len(args) != arity(f):
        raise ArityError(f"expected {arity(f)} arguments, got {len(args)}")
    return representation_report(f, args).ok


# ------------------------------------------------------ proof predicates

def _decode(g: godel.GodelNumber, kind):
    try:
        obj = godel.decode(g)
    except godel.NotAnEncoding:
        return None
    return obj if isinstance(obj, kind) else None


def _same_codec(a: godel.GodelNumber, b: godel.GodelNumber):
    if a.codec != b.codec:
        raise godel.CodecMismatch(f"{a.codec} vs {b.codec}")


def _proves(proof: ProofScript | None, goal: sx.Formula, p: SystemProfile) -> bool:
    if proof is None or proof.has_hypotheses:
        return False
    return proof.conclusion == goal and check_proof(proof, p).accepted


def prf_check(x: godel.GodelNumber, y: godel.GodelNumber, p: SystemProfile) -> bool:
    """x numbers a hypothesis-free proof under ``p`` whose last line is numbered y."""
    _same_codec(x, y)
    proof = _decode(x, ProofScript)
    if proof is None or proof.has_hypotheses or not check_proof(proof, p):
        return False
    return godel.encode(proof.conclusion, x.codec) == y


def _numeral_of(g: godel.GodelNumber) -> sx.Term | None:
    try:
        return sx.numeral(int(g))
    except OverflowError:
        return None


def prf_prime_check(u: godel.GodelNumber, y: godel.GodelNumber, p: SystemProfile) -> bool:
    """u numbers F with x1 free, and y numbers a proof of F[x1 := numeral(u)]."""
    _same_codec(u, y)
    f = _decode(u, (sx.Eq, sx.Not, sx.Implies, sx.ForAll))
    if f is None or 1 not in sx.free_vars(f):
        return False
    n = _numeral_of(u)
    if n is None:
        return False
    return _proves(_decode(y, ProofScript), sx.substitute(f, 1, n), p)


def q_check(x: godel.GodelNumber, y: godel.GodelNumber, p: SystemProfile) -> bool:
    """x numbers K(z) with exactly one free variable; y numbers a proof of K(numeral(x))."""
    _same_codec(x, y)
    k = _decode(x, (sx.Eq, sx.Not, sx.Implies, sx.ForAll))
    if k is None or len(sx.free_vars(k)) != 1:
        return False
    n = _numeral_of(x)
    if n is None:
        return False
    (z,) = sx.free_vars(k)
    return _proves(_decode(y, ProofScript), sx.substitute(k, z, n), p)


# ----------------------------------------------------------- proof builders

def instantiate_proof(proof: ProofScript, var: int, t: sx.Term) -> ProofScript:
    """Extend a proof of F by gen, K4 and MP to a proof of F[var := t]."""
    f = proof.conclusion
    last = proof.lines[-1].index
    g = sx.ForAll(var, f)
    inst = sx.substitute(f, var, t)
    extra = (
        Line(last + 1, g, Justification("gen", (last, var))),
        Line(last + 2, sx.Implies(g, inst), Justification("axiom", ("K4",))),
        Line(last + 3, inst, Justification("mp", (last + 1, last + 2))),
    )
    return ProofScript(proof.lines + extra, proof.name, proof.system)


def reflexivity_proof(t: sx.Term | None = None) -> ProofScript:
    """A proof of (x1 = x1) from A1 and A5; with ``t``, of (t = t).

    Uses gen, so it is accepted under strong-GA and PA.
    """
    P = sx.parse_formula
    lines = [
        ("((x1 = x2) -> ((x1 = x3) -> (x2 = x3)))", "axiom A1"),
        ("(A x1)((x1 = x2) -> ((x1 = x3) -> (x2 = x3)))", "gen 1 x1"),
        ("((A x1)((x1 = x2) -> ((x1 = x3) -> (x2 = x3))) -> (((x1 + 0) = x2) -> (((x1 + 0) = x3) -> (x2 = x3))))", "axiom K4"),
        ("(((x1 + 0) = x2) -> (((x1 + 0) = x3) -> (x2 = x3)))", "mp 2 3"),
        ("(A x2)(((x1 + 0) = x2) -> (((x1 + 0) = x3) -> (x2 = x3)))", "gen 4 x2"),
        ("((A x2)(((x1 + 0) = x2) -> (((x1 + 0) = x3) -> (x2 = x3))) -> (((x1 + 0) = x1) -> (((x1 + 0) = x3) -> (x1 = x3))))", "axiom K4"),
        ("(((x1 + 0) = x1) -> (((x1 + 0) = x3) -> (x1 = x3)))", "mp 5 6"),
        ("(A x3)(((x1 + 0) = x1) -> (((x1 + 0) = x3) -> (x1 = x3)))", "gen 7 x3"),
        ("((A x3)(((x1 + 0) = x1) -> (((x1 + 0) = x3) -> (x1 = x3))) -> (((x1 + 0) = x1) -> (((x1 + 0) = x1) -> (x1 = x1))))", "axiom K4"),
        ("(((x1 + 0) = x1) -> (((x1 + 0) = x1) -> (x1 = x1)))", "mp 8 9"),
        ("((x1 + 0) = x1)", "axiom A5"),
        ("(((x1 + 0) = x1) -> (x1 = x1))", "mp 11 10"),
        ("(x1 = x1)", "mp 11 12"),
    ]
    proof = ProofScript(tuple(Line(i, P(f), parse_justification(j)) for i, (f, j) in enumerate(lines, 1)),
                        name="reflexivity")
    return proof if t is None else instantiate_proof(proof, 1, t)


# --------------------------------------------------------- definition files

_BASE = {"succ": Succ()}


def _build(node, env):
    if isinstance(node, ast.Name):
        if node.id in env:
            return env[node.id]
        if node.id in _BASE:
            return _BASE[node.id]
        if node.id == "zero":
            return Zero(1)
        raise ValueError(f"unknown function {node.id!r}")
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
        name = node.func.id
        if name == "proj":
            n, i = (_int_arg(a) for a in node.args)
            return Proj(n, i)
        if name == "zero":
            (k,) = (_int_arg(a) for a in node.args)
            return Zero(k)
        if name == "comp":
            if len(node.args) < 2:
                raise ValueError("comp needs an outer function and at least one inner one")
            f, *gs = (_build(a, env) for a in node.args)
            return Comp(f, tuple(gs))
        if name == "rec":
            g, h = (_build(a, env) for a in node.args)
            return Rec(g, h)
    raise ValueError(f"cannot read {ast.unparse(node)!r}")


def _int_arg(node) -> int:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    raise ValueError(f"expected an integer, got {ast.unparse(node)!r}")


def parse_definitions(text: str) -> dict[str, PrimRecFn]:
    """Read ``name = expr`` lines; later lines may use earlier names.

    Expressions: ``zero(k)``, ``succ``, ``proj(n,i)``, ``comp(f, g1, ..., gm)``,
    ``rec(g, h)``.  ``#`` starts a comment.
    """
    env: dict[str, PrimRecFn] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        name, eq, expr = s.partition("=")
        name = name.strip()
        if not eq or not name.isidentifier():
            raise ValueError(f"line {lineno}: expected 'name = expression'")
        try:
            node = ast.parse(expr.strip(), mode="eval").body
            env[name] = _build(node, env)
        except (SyntaxError, ValueError, TypeError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return env


def load_definitions(path) -> dict[str, PrimRecFn]:
    return parse_definitions(Path(path).read_text())


STANDARD_DEFINITIONS = parse_definitions("""
add = rec(proj(1,1), comp(succ, proj(3,3)))
mul = rec(zero(1), comp(add, proj(3,1), proj(3,3)))
""")
