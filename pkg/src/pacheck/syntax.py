"""Terms and formulas of first-order arithmetic.

The core language has the signature ``0, ', +, *`` with ``=`` as the only
predicate and ``~, ->, A`` as the only connectives.  ``&``, ``|``, ``E``,
``E1`` and ``<`` are accepted by the parser and expanded on the spot.

Successor chains are stored compactly: ``Succ(t, times=k)`` stands for ``k``
nested successors of ``t``.  The constructor normalises nested ``Succ`` nodes,
so ``Succ(Succ(Zero()))`` and ``numeral(2)`` are the same value.  This keeps
numerals for very large Gödel numbers cheap to build and compare.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, Iterator, Union

__all__ = [
    "Term", "Zero", "Var", "Succ", "Add", "Mul",
    "Formula", "Eq", "Not", "Implies", "ForAll",
    "ParseError", "CaptureError",
    "parse_formula", "parse_term", "print_formula", "print_term", "display",
    "render_runs", "runs_of", "numeral", "numeral_value", "succ_count",
    "substitute", "substitute_term", "free_vars", "term_vars", "all_vars",
    "is_free_for", "conj", "disj", "exists", "exists_unique", "less", "fresh_var",
]

# Canonical renderings longer than this are refused by print_formula; use
# render_runs for anything that may contain huge numerals.
MAX_PRINT_CHARS = 50_000_000


# --------------------------------------------------------------------- terms

@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self):
        if not isinstance(self.index, int) or self.index < 1:
            raise ValueError(f"variable index must be >= 1, got {self.index!r}")


@dataclass(frozen=True)
class Succ:
    arg: "Term"
    times: int = 1

    def __post_init__(self):
        if self.times < 1:
            raise ValueError("Succ.times must be >= 1")
        if isinstance(self.arg, Succ):
            object.__setattr__(self, "times", self.times + self.arg.times)
            object.__setattr__(self, "arg", self.arg.arg)


@dataclass(frozen=True)
class Add:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Mul:
    left: "Term"
    right: "Term"


Term = Union[Zero, Var, Succ, Add, Mul]


# ------------------------------------------------------------------ formulas

@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class Implies:
    ante: "Formula"
    cons: "Formula"


@dataclass(frozen=True)
class ForAll:
    var: int
    body: "Formula"


Formula = Union[Eq, Not, Implies, ForAll]


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class CaptureError(ValueError):
    """The substituted term is not free for the variable."""


def numeral(n: int) -> Term:
    if n < 0:
        raise ValueError("numerals denote naturals")
    return Succ(Zero(), n) if n else Zero()


def numeral_value(t: Term) -> int | None:
    """Return n if ``t`` is the numeral for n, else None."""
    if isinstance(t, Zero):
        return 0
    if isinstance(t, Succ) and isinstance(t.arg, Zero):
        return t.times
    return None


def succ_count(t: Term) -> int:
    """Number of successor symbols occurring in ``t``."""
    if isinstance(t, Succ):
        return t.times + succ_count(t.arg)
    if isinstance(t, (Add, Mul)):
        return succ_count(t.left) + succ_count(t.right)
    return 0


# ---------------------------------------------------------------- variables

def term_vars(t: Term) -> frozenset[int]:
    if isinstance(t, Var):
        return frozenset((t.index,))
    if isinstance(t, Succ):
        return term_vars(t.arg)
    if isinstance(t, (Add, Mul)):
        return term_vars(t.left) | term_vars(t.right)
    return frozenset()


def free_vars(f: Formula) -> frozenset[int]:
    if isinstance(f, Eq):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, Implies):
        return free_vars(f.ante) | free_vars(f.cons)
    if isinstance(f, ForAll):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def all_vars(f: Formula) -> frozenset[int]:
    """Every variable index occurring in ``f``, free or bound."""
    if isinstance(f, Eq):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, Not):
        return all_vars(f.body)
    if isinstance(f, Implies):
        return all_vars(f.ante) | all_vars(f.cons)
    if isinstance(f, ForAll):
        return all_vars(f.body) | {f.var}
    raise TypeError(f"not a formula: {f!r}")


def fresh_var(*used: Iterable[int]) -> int:
    """Least variable index not in any of ``used``."""
    taken = set().union(*used)
    i = 1
    while i in taken:
        i += 1
    return i


# ------------------------------------------------------------- substitution

def substitute_term(t: Term, v: int, s: Term) -> Term:
    if isinstance(t, Var):
        return s if t.index == v else t
    if isinstance(t, Succ):
        return Succ(substitute_term(t.arg, v, s), t.times)
    if isinstance(t, Add):
        return Add(substitute_term(t.left, v, s), substitute_term(t.right, v, s))
    if isinstance(t, Mul):
        return Mul(substitute_term(t.left, v, s), substitute_term(t.right, v, s))
    return t


def is_free_for(t: Term, v: int, f: Formula) -> bool:
    """True iff no free occurrence of ``v`` in ``f`` lies in the scope of a
    quantifier binding a variable of ``t``."""
    return _free_for(term_vars(t), v, f, frozenset())


def _free_for(tvars, v, f, bound) -> bool:
    if isinstance(f, Eq):
        if v in term_vars(f.left) or v in term_vars(f.right):
            return not (tvars & bound)
        return True
    if isinstance(f, Not):
        return _free_for(tvars, v, f.body, bound)
    if isinstance(f, Implies):
        return _free_for(tvars, v, f.ante, bound) and _free_for(tvars, v, f.cons, bound)
    if f.var == v:
        return True  # v is not free below this point
    return _free_for(tvars, v, f.body, bound | {f.var})


def substitute(f: Formula, v: int, t: Term) -> Formula:
    """Replace the free occurrences of ``x_v`` in ``f`` by ``t``.

    Raises CaptureError when ``t`` is not free for ``x_v`` in ``f``.
    """
    if not is_free_for(t, v, f):
        raise CaptureError(f"term {print_term(t)} is not free for x{v}")
    return _subst(f, v, t)


def _subst(f: Formula, v: int, t: Term) -> Formula:
    if isinstance(f, Eq):
        return Eq(substitute_term(f.left, v, t), substitute_term(f.right, v, t))
    if isinstance(f, Not):
        return Not(_subst(f.body, v, t))
    if isinstance(f, Implies):
        return Implies(_subst(f.ante, v, t), _subst(f.cons, v, t))
    if f.var == v:
        return f
    return ForAll(f.var, _subst(f.body, v, t))


# ------------------------------------------------------------ abbreviations

def conj(a: Formula, b: Formula) -> Formula:
    return Not(Implies(a, Not(b)))


def disj(a: Formula, b: Formula) -> Formula:
    return Implies(Not(a), b)


def exists(v: int, f: Formula) -> Formula:
    return Not(ForAll(v, Not(f)))


def less(t: Term, s: Term, avoid: Iterable[int] = ()) -> Formula:
    """``t < s`` as ``(E w)((t + w') = s)``, w the least index not in avoid/t/s."""
    w = fresh_var(avoid, term_vars(t), term_vars(s))
    return exists(w, Eq(Add(t, Succ(Var(w))), s))


def exists_unique(v: int, f: Formula, avoid: Iterable[int] = ()) -> Formula:
    """``(E1 x)F`` as ``(E x)(F & (A y)(F[x:=y] -> (y = x)))``."""
    y = fresh_var(avoid, all_vars(f), (v,))
    return exists(v, conj(f, ForAll(y, Implies(substitute(f, v, Var(y)), Eq(Var(y), Var(v))))))


# ---------------------------------------------------------------- rendering
#
# Renderings are produced as a stream of runs (char, count) so that numerals
# with astronomically many primes never have to be materialised as text.

def _term_chunks(t: Term) -> Iterator[tuple[str, int]]:
    if isinstance(t, Zero):
        yield "0", 1
    elif isinstance(t, Var):
        yield "x" + str(t.index), 1
    elif isinstance(t, Succ):
        yield from _term_chunks(t.arg)
        yield "'", t.times
    else:
        yield "(", 1
        yield from _term_chunks(t.left)
        yield (" + " if isinstance(t, Add) else " * "), 1
        yield from _term_chunks(t.right)
        yield ")", 1


def _formula_chunks(f: Formula) -> Iterator[tuple[str, int]]:
    if isinstance(f, Eq):
        yield "(", 1
        yield from _term_chunks(f.left)
        yield " = ", 1
        yield from _term_chunks(f.right)
        yield ")", 1
    elif isinstance(f, Not):
        yield "~", 1
        yield from _formula_chunks(f.body)
    elif isinstance(f, Implies):
        yield "(", 1
        yield from _formula_chunks(f.ante)
        yield " -> ", 1
        yield from _formula_chunks(f.cons)
        yield ")", 1
    elif isinstance(f, ForAll):
        yield f"(A x{f.var})", 1
        yield from _formula_chunks(f.body)
    else:
        raise TypeError(f"not a formula: {f!r}")


def chunks(obj) -> Iterator[tuple[str, int]]:
    """(text, repeat) chunks of the canonical rendering of a term or formula."""
    if isinstance(obj, (Zero, Var, Succ, Add, Mul)):
        return _term_chunks(obj)
    return _formula_chunks(obj)


def runs_of(pieces: Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    """Normalise (text, repeat) chunks into maximal single-character runs."""
    out: list[list] = []
    for text, rep in pieces:
        if rep == 0 or not text:
            continue
        if len(text) == 1:
            seq = [(text, rep)]
        elif rep == 1:
            seq = [(c, len(list(g))) for c, g in groupby(text)]
        else:
            seq = [(c, len(list(g))) for c, g in groupby(text * rep)]
        for c, n in seq:
            if out and out[-1][0] == c:
                out[-1][1] += n
            else:
                out.append([c, n])
    return tuple((c, n) for c, n in out)


def render_runs(obj) -> tuple[tuple[str, int], ...]:
    return runs_of(chunks(obj))


def _join(pieces) -> str:
    pieces = list(pieces)
    size = sum(len(t) * n for t, n in pieces)
    if size > MAX_PRINT_CHARS:
        raise ValueError(f"rendering has {size} characters; use render_runs")
    return "".join(t * n for t, n in pieces)


def print_term(t: Term) -> str:
    return _join(_term_chunks(t))


def print_formula(f: Formula) -> str:
    return _join(_formula_chunks(f))


def display(obj, max_primes: int = 40) -> str:
    """Human-readable rendering; long prime runs are shown as ``'{n}``.

    The parser reads ``'{n}`` back as n primes.
    """
    parts = []
    for text, rep in chunks(obj):
        if text == "'" and rep > max_primes:
            parts.append("'{%d}" % rep)
        else:
            parts.append(text * rep)
    return "".join(parts)


# ------------------------------------------------------------------ parsing
#
# Tokens come from runs so that decoding a Gödel number with a giant prime
# run does not expand it.  Abbreviations are parsed into provisional nodes
# and expanded afterwards, choosing fresh variables that avoid every variable
# of the whole input.

@dataclass(frozen=True)
class _Tok:
    kind: str
    value: object
    offset: int


_SINGLE = {"(": "(", ")": ")", "=": "=", "+": "+", "*": "*", "~": "~",
           "&": "&", "|": "|", "<": "<", "0": "0"}


def _lex(runs) -> list[_Tok]:
    toks: list[_Tok] = []
    offset = 0
    buf: list[tuple[str, int, int]] = []  # (char, count, offset)
    for c, n in runs:
        buf.append((c, n, offset))
        offset += n
    end = offset
    i = 0
    while i < len(buf):
        c, n, off = buf[i]
        if c in " \t\r\n":
            i += 1
            continue
        if c == "'":
            count, i = n, i + 1
            # display shorthand '{k} stands for k primes
            if i < len(buf) and buf[i][:2] == ("{", 1):
                j, digits = i + 1, ""
                while j < len(buf) and buf[j][0].isdigit():
                    digits += buf[j][0] * buf[j][1]
                    j += 1
                if not digits or j >= len(buf) or buf[j][:2] != ("}", 1):
                    raise ParseError("malformed prime count", buf[i][2])
                count, i = n - 1 + int(digits), j + 1
            toks.append(_Tok("'", count, off))
            continue
        if n > 1 and c not in "()~":
            # (( and ~~ legitimately repeat; anything else cannot
            if c == "0":
                raise ParseError("unexpected '0'", off + 1)
            raise ParseError(f"unexpected {c!r}", off + 1)
        if n > 1:
            for k in range(n):
                toks.append(_Tok(c, None, off + k))
            i += 1
            continue
        if c in _SINGLE:
            toks.append(_Tok(_SINGLE[c], None, off))
            i += 1
            continue
        if c == "-":
            if i + 1 < len(buf) and buf[i + 1][0] == ">" and buf[i + 1][1] == 1:
                toks.append(_Tok("->", None, off))
                i += 2
                continue
            raise ParseError("expected '->'", off)
        if c in "AE":
            if c == "E" and i + 1 < len(buf) and buf[i + 1][0] == "1" and buf[i + 1][1] == 1:
                toks.append(_Tok("E1", None, off))
                i += 2
            else:
                toks.append(_Tok(c, None, off))
                i += 1
            continue
        if c == "x":
            j = i + 1
            digits = ""
            while j < len(buf) and buf[j][0].isdigit():
                digits += buf[j][0] * buf[j][1]
                j += 1
            if not digits or digits[0] == "0":
                raise ParseError("malformed variable", off)
            toks.append(_Tok("var", int(digits), off))
            i = j
            continue
        raise ParseError(f"unknown symbol {c!r}", off)
    toks.append(_Tok("eof", None, end))
    return toks


# provisional abbreviation nodes
@dataclass(frozen=True)
class _And:
    a: object
    b: object


@dataclass(frozen=True)
class _Or:
    a: object
    b: object


@dataclass(frozen=True)
class _Ex:
    var: int
    body: object


@dataclass(frozen=True)
class _Ex1:
    var: int
    body: object


@dataclass(frozen=True)
class _Less:
    left: Term
    right: Term


class _Fail(Exception):
    def __init__(self, message, offset):
        self.message = message
        self.offset = offset


class _Parser:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.pos = 0
        self.used: set[int] = {t.value for t in toks if t.kind == "var"}

    def peek(self, k: int = 0) -> _Tok:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def fail(self, message: str):
        tok = self.peek()
        if tok.kind == "eof":
            # report at the last real token: that is where input stopped
            prev = self.toks[self.pos - 1] if self.pos > 0 else tok
            raise _Fail(f"unexpected end of input after {prev.kind!r}", prev.offset)
        raise _Fail(message, tok.offset)

    def expect(self, kind: str) -> _Tok:
        tok = self.peek()
        if tok.kind != kind:
            self.fail(f"expected {kind!r}, found {tok.kind!r}")
        self.pos += 1
        return tok

    def term(self) -> Term:
        tok = self.peek()
        if tok.kind == "0":
            self.pos += 1
            t: Term = Zero()
        elif tok.kind == "var":
            self.pos += 1
            t = Var(tok.value)
        elif tok.kind == "(":
            self.pos += 1
            left = self.term()
            op = self.peek()
            if op.kind not in ("+", "*"):
                self.fail(f"expected '+' or '*', found {op.kind!r}")
            self.pos += 1
            right = self.term()
            self.expect(")")
            t = Add(left, right) if op.kind == "+" else Mul(left, right)
        else:
            self.fail(f"expected a term, found {tok.kind!r}")
        while self.peek().kind == "'":
            t = Succ(t, self.peek().value)
            self.pos += 1
        return t

    def formula(self):
        tok = self.peek()
        if tok.kind == "~":
            self.pos += 1
            return Not(self.formula())
        if tok.kind != "(":
            self.fail(f"expected a formula, found {tok.kind!r}")
        nxt = self.peek(1)
        if nxt.kind in ("A", "E", "E1"):
            self.pos += 2
            v = self.expect("var").value
            self.expect(")")
            body = self.formula()
            return {"A": ForAll, "E": _Ex, "E1": _Ex1}[nxt.kind](v, body)
        start = self.pos
        # an atom "(t = s)" / "(t < s)" or a compound "(F op G)"
        try:
            self.pos += 1
            left = self.term()
            op = self.peek()
            if op.kind in ("=", "<"):
                self.pos += 1
                right = self.term()
                self.expect(")")
                return Eq(left, right) if op.kind == "=" else _Less(left, right)
            term_fail = _Fail(f"expected '=' or '<', found {op.kind!r}", op.offset)
        except _Fail as exc:
            term_fail = exc
        term_pos = self.pos
        self.pos = start + 1
        try:
            a = self.formula()
            op = self.peek()
            if op.kind not in ("->", "&", "|"):
                self.fail(f"expected a connective, found {op.kind!r}")
            self.pos += 1
            b = self.formula()
            self.expect(")")
        except _Fail as exc:
            # keep the diagnosis that got further into the input
            if term_fail.offset >= exc.offset and term_pos > start + 1:
                raise term_fail
            raise
        return {"->": Implies, "&": _And, "|": _Or}[op.kind](a, b)

    # abbreviation expansion ------------------------------------------------

    def expand(self, node) -> Formula:
        if isinstance(node, Eq):
            return node
        if isinstance(node, Not):
            return Not(self.expand(node.body))
        if isinstance(node, Implies):
            return Implies(self.expand(node.ante), self.expand(node.cons))
        if isinstance(node, ForAll):
            return ForAll(node.var, self.expand(node.body))
        if isinstance(node, _And):
            return conj(self.expand(node.a), self.expand(node.b))
        if isinstance(node, _Or):
            return disj(self.expand(node.a), self.expand(node.b))
        if isinstance(node, _Ex):
            return exists(node.var, self.expand(node.body))
        if isinstance(node, _Less):
            f = less(node.left, node.right, self.used)
            self.used |= all_vars(f)
            return f
        if isinstance(node, _Ex1):
            body = self.expand(node.body)
            f = exists_unique(node.var, body, self.used)
            self.used |= all_vars(f)
            return f
        raise TypeError(node)


def _as_runs(text) -> tuple:
    if isinstance(text, str):
        return tuple((c, len(list(g))) for c, g in groupby(text))
    return tuple(text)


def parse_formula(text) -> Formula:
    """Parse formula text (a str, or a run sequence from ``render_runs``)."""
    try:
        p = _Parser(_lex(_as_runs(text)))
        node = p.formula()
        if p.peek().kind != "eof":
            p.fail(f"trailing input {p.peek().kind!r}")
        return p.expand(node)
    except _Fail as exc:
        raise ParseError(exc.message, exc.offset) from None


def parse_term(text) -> Term:
    try:
        p = _Parser(_lex(_as_runs(text)))
        t = p.term()
        if p.peek().kind != "eof":
            p.fail(f"trailing input {p.peek().kind!r}")
        return t
    except _Fail as exc:
        raise ParseError(exc.message, exc.offset) from None
