"""Axiom recognition: the logical schemas K1-K5 and the arithmetic axioms A1-A9."""

from __future__ import annotations

from pacheck.syntax import (
    Add, Eq, ForAll, Formula, Implies, Mul, Not, Succ, Term, Var,
    free_vars, is_free_for, parse_formula,
)

ARITHMETIC_AXIOMS: dict[str, Formula] = {tag: parse_formula(text) for tag, text in {
    "A1": "((x1 = x2) -> ((x1 = x3) -> (x2 = x3)))",
    "A2": "((x1 = x2) -> (x1' = x2'))",
    "A3": "~(0 = x1')",
    "A4": "((x1' = x2') -> (x1 = x2))",
    "A5": "((x1 + 0) = x1)",
    "A6": "((x1 + x2') = (x1 + x2)')",
    "A7": "((x1 * 0) = 0)",
    "A8": "((x1 * x2') = ((x1 * x2) + x1))",
    "A9": "(~(x1 = 0) -> (E x2)(x1 = x2'))",
}.items()}


class _NoMatch(Exception):
    pass


class _Instance:
    """Records the term substituted for ``var`` while walking a K4 candidate."""

    def __init__(self, var: int):
        self.var = var
        self.term: Term | None = None

    def bind(self, t: Term):
        if self.term is None:
            self.term = t
        elif self.term != t:
            raise _NoMatch

    def terms(self, pat: Term, t: Term):
        if isinstance(pat, Var) and pat.index == self.var:
            self.bind(t)
            return
        if isinstance(pat, Succ):
            if not isinstance(t, Succ) or t.times < pat.times:
                raise _NoMatch
            rest = t.arg if t.times == pat.times else Succ(t.arg, t.times - pat.times)
            self.terms(pat.arg, rest)
            return
        if type(pat) is not type(t):
            raise _NoMatch
        if isinstance(pat, (Add, Mul)):
            self.terms(pat.left, t.left)
            self.terms(pat.right, t.right)
        elif pat != t:
            raise _NoMatch

    def formulas(self, pat: Formula, f: Formula):
        if type(pat) is not type(f):
            raise _NoMatch
        if isinstance(pat, Eq):
            self.terms(pat.left, f.left)
            self.terms(pat.right, f.right)
        elif isinstance(pat, Not):
            self.formulas(pat.body, f.body)
        elif isinstance(pat, Implies):
            self.formulas(pat.ante, f.ante)
            self.formulas(pat.cons, f.cons)
        else:
            if pat.var != f.var:
                raise _NoMatch
            if pat.var == self.var:
                # occurrences below are bound: no substitution happens there
                if pat != f:
                    raise _NoMatch
            else:
                self.formulas(pat.body, f.body)


def instance_term(body: Formula, v: int, result: Formula) -> Term | None | bool:
    """Find t with ``body[v := t] == result``.

    Returns the term, ``True`` when ``v`` has no free occurrence and the two
    formulas coincide (any t works), or ``None`` when no such t exists.
    """
    inst = _Instance(v)
    try:
        inst.formulas(body, result)
    except _NoMatch:
        return None
    return True if inst.term is None else inst.term


def _k1(f):
    return (isinstance(f, Implies) and isinstance(f.cons, Implies)
            and f.cons.cons == f.ante)


def _k2(f):
    if not (isinstance(f, Implies) and isinstance(f.ante, Implies)
            and isinstance(f.ante.cons, Implies) and isinstance(f.cons, Implies)
            and isinstance(f.cons.ante, Implies) and isinstance(f.cons.cons, Implies)):
        return False
    a, b, c = f.ante.ante, f.ante.cons.ante, f.ante.cons.cons
    return f.cons.ante == Implies(a, b) and f.cons.cons == Implies(a, c)


def _k3(f):
    if not (isinstance(f, Implies) and isinstance(f.ante, Implies)
            and isinstance(f.ante.ante, Not) and isinstance(f.ante.cons, Not)):
        return False
    b, a = f.ante.ante.body, f.ante.cons.body
    return f.cons == Implies(Implies(Not(b), a), b)


def _k4(f):
    if not (isinstance(f, Implies) and isinstance(f.ante, ForAll)):
        return False
    v, body = f.ante.var, f.ante.body
    t = instance_term(body, v, f.cons)
    if t is None:
        return False
    return t is True or is_free_for(t, v, body)


def _k5(f):
    # (A x)(A -> B) -> (A -> (A x)B), x not free in A.  The doubled-antecedent
    # form (A x)(A -> B) -> (A -> (A -> (A x)B)) is accepted as well.
    if not (isinstance(f, Implies) and isinstance(f.ante, ForAll)
            and isinstance(f.ante.body, Implies)):
        return False
    v = f.ante.var
    a, b = f.ante.body.ante, f.ante.body.cons
    if v in free_vars(a):
        return False
    plain = Implies(a, ForAll(v, b))
    return f.cons == plain or f.cons == Implies(a, plain)


_SCHEMAS = {"K1": _k1, "K2": _k2, "K3": _k3, "K4": _k4, "K5": _k5}


def match_axiom(f: Formula, tag: str) -> bool:
    if tag in _SCHEMAS:
        return _SCHEMAS[tag](f)
    if tag in ARITHMETIC_AXIOMS:
        return ARITHMETIC_AXIOMS[tag] == f
    raise ValueError(f"unknown axiom tag {tag!r}")


def axiom_tags_of(f: Formula) -> list[str]:
    """Every tag ``f`` is an instance of."""
    return [t for t in (*_SCHEMAS, *ARITHMETIC_AXIOMS) if match_axiom(f, t)]
