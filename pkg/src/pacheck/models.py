"""Bounded three-valued evaluation in the standard model and in ordinals below ω^ω.

Quantifiers range over the first ``bound`` elements of the model's
enumeration plus any hinted or solved witnesses.  A definite answer is only
returned when it is certain:

* an existential is True once a witness is found, and False only when every
  possible witness has been examined.  That is known when some conjunct of
  the matrix forces ``w <= c`` (an equation whose ``w`` side grows at least
  as fast as ``w``) and the enumeration covers ``0..c``, or when such an
  equation has been solved exactly;
* a universal is handled as the negation of an existential.

Otherwise the result is UNKNOWN.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Callable, Iterable, Mapping, Union

from pacheck.kernel.axioms import ARITHMETIC_AXIOMS
from pacheck.syntax import (
    Add, Eq, ForAll, Formula, Implies, Mul, Not, Succ, Term, Var, Zero,
    free_vars, term_vars,
)

__all__ = [
    "Ordinal", "OverflowBeyondOmegaOmega", "ord_add", "ord_mul", "OMEGA", "ONE", "ZERO",
    "TruthValue", "STANDARD", "CA", "eval_formula", "eval_term", "ca_enumeration",
    "check_axioms_over_naturals", "AxiomReport", "UnboundVariable",
]


# ------------------------------------------------------------------ ordinals

class OverflowBeyondOmegaOmega(ArithmeticError):
    """An ordinal at or above ω^ω was requested.

    CNF exponents here are naturals, so sums and products of representable
    ordinals stay below ω^ω and ord_add/ord_mul never raise this.  It is
    raised when parsing text such as ``omega^omega``.
    """


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    """Cantor normal form: ``((e1, c1), (e2, c2), ...)`` is ω^e1·c1 + ω^e2·c2 + ...

    Exponents are naturals in strictly decreasing order, coefficients >= 1.
    """

    cnf: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        cnf = tuple((int(e), int(c)) for e, c in self.cnf)
        for k, (e, c) in enumerate(cnf):
            if e < 0:
                raise ValueError(f"CNF exponents are naturals, got {e}")
            if c < 1:
                raise ValueError("CNF coefficients must be positive")
            if k and e >= cnf[k - 1][0]:
                raise ValueError("CNF exponents must be strictly decreasing")
        object.__setattr__(self, "cnf", cnf)

    @classmethod
    def finite(cls, n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("ordinals are not negative")
        return cls(((0, n),)) if n else cls()

    @property
    def is_finite(self) -> bool:
        return not self.cnf or self.cnf[0][0] == 0

    @property
    def finite_part(self) -> int:
        """Coefficient of ω^0 (the trailing natural)."""
        return self.cnf[-1][1] if self.cnf and self.cnf[-1][0] == 0 else 0

    @property
    def is_limit(self) -> bool:
        return bool(self.cnf) and self.finite_part == 0

    def __int__(self):
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return self.finite_part

    def __lt__(self, other):
        if isinstance(other, int):
            other = Ordinal.finite(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        for (ea, ca), (eb, cb) in zip(self.cnf, other.cnf):
            if ea != eb:
                return ea < eb
            if ca != cb:
                return ca < cb
        return len(self.cnf) < len(other.cnf)

    def __add__(self, other):
        return ord_add(self, _ord(other))

    def __radd__(self, other):
        return ord_add(_ord(other), self)

    def __mul__(self, other):
        return ord_mul(self, _ord(other))

    def __rmul__(self, other):
        return ord_mul(_ord(other), self)

    def __str__(self):
        if not self.cnf:
            return "0"
        parts = []
        for e, c in self.cnf:
            if e == 0:
                parts.append(str(c))
                continue
            base = "omega" if e == 1 else f"omega^{e}"
            parts.append(base if c == 1 else f"{base}*{c}")
        return "+".join(parts)

    @classmethod
    def parse(cls, text: str) -> "Ordinal":
        """Parse sums like ``omega^2*3+omega+4`` (also ``w`` for omega)."""
        total = cls()
        s = text.replace(" ", "").replace("ω", "omega").lower()
        if not s:
            raise ValueError("empty ordinal")
        for part in s.split("+"):
            if re.search(r"\^(omega|w)", part):
                raise OverflowBeyondOmegaOmega(f"{part!r} is not below omega^omega")
            m = re.fullmatch(r"(?:(omega|w)(?:\^(\d+))?)?(?:\*?(\d+))?", part)
            if not m or not part:
                raise ValueError(f"cannot parse ordinal term {part!r}")
            if m.group(1):
                e = int(m.group(2) or 1)
                c = int(m.group(3) or 1)
                term = cls(((e, c),)) if c else cls()
            else:
                term = cls.finite(int(m.group(3)))
            total = total + term
        return total


def _ord(x) -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int):
        return Ordinal.finite(x)
    raise TypeError(f"not an ordinal: {x!r}")


ZERO = Ordinal()
ONE = Ordinal.finite(1)
OMEGA = Ordinal(((1, 1),))


def ord_add(a: Ordinal, b: Ordinal) -> Ordinal:
    """a + b: terms of a below b's leading exponent are absorbed."""
    if not b.cnf:
        return a
    lead = b.cnf[0][0]
    keep = [t for t in a.cnf if t[0] > lead]
    same = [t for t in a.cnf if t[0] == lead]
    if same:
        keep.append((lead, same[0][1] + b.cnf[0][1]))
        return Ordinal(tuple(keep) + b.cnf[1:])
    return Ordinal(tuple(keep) + b.cnf)


def ord_mul(a: Ordinal, b: Ordinal) -> Ordinal:
    """a · b, distributing a over the CNF terms of b on the right."""
    if not a.cnf or not b.cnf:
        return ZERO
    lead_e, lead_c = a.cnf[0]
    out = ZERO
    for e, c in b.cnf:
        if e == 0:
            # a · c = ω^lead·(lead_c·c) + (rest of a)
            piece = Ordinal(((lead_e, lead_c * c),) + a.cnf[1:])
        else:
            piece = Ordinal(((lead_e + e, c),))
        out = ord_add(out, piece)
    return out


def ord_succ(a: Ordinal, k: int = 1) -> Ordinal:
    return ord_add(a, Ordinal.finite(k)) if k else a


# ------------------------------------------------------------ truth values

class TruthValue(enum.Enum):
    TRUE = "True"
    FALSE = "False"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value

    def __invert__(self):
        if self is TruthValue.TRUE:
            return TruthValue.FALSE
        if self is TruthValue.FALSE:
            return TruthValue.TRUE
        return self

    @classmethod
    def of(cls, b: bool) -> "TruthValue":
        return cls.TRUE if b else cls.FALSE


T, F, U = TruthValue.TRUE, TruthValue.FALSE, TruthValue.UNKNOWN

STANDARD = "standard"
CA = "ca"

Element = Union[int, Ordinal]
Hint = Union[Iterable, Callable[[Mapping[int, Element]], Iterable]]


class UnboundVariable(ValueError):
    pass


def ca_enumeration(bound: int) -> list[Ordinal]:
    """0, 1, ..., bound-1, then ω·a + b for 1 <= a < bound, 0 <= b < bound."""
    out = [Ordinal.finite(n) for n in range(bound)]
    for a in range(1, bound):
        for b in range(bound):
            out.append(ord_add(Ordinal(((1, a),)), Ordinal.finite(b)))
    return out


# --------------------------------------------------------------- evaluation

class _Unbound(Exception):
    pass


def eval_term(t: Term, model: str, env: Mapping[int, Element]) -> Element:
    if isinstance(t, Zero):
        return 0 if model == STANDARD else ZERO
    if isinstance(t, Var):
        try:
            return env[t.index]
        except KeyError:
            raise _Unbound(t.index) from None
    if isinstance(t, Succ):
        x = eval_term(t.arg, model, env)
        return x + t.times if model == STANDARD else ord_succ(x, t.times)
    a = eval_term(t.left, model, env)
    b = eval_term(t.right, model, env)
    if model == STANDARD:
        return a + b if isinstance(t, Add) else a * b
    return ord_add(a, b) if isinstance(t, Add) else ord_mul(a, b)


def _is_zero(x) -> bool:
    return x == 0 if isinstance(x, int) else not x.cnf


class _Evaluator:
    def __init__(self, model: str, bound: int, hints: Mapping[int, Hint] | None):
        if model not in (STANDARD, CA):
            raise ValueError(f"unknown model {model!r}")
        self.model = model
        self.bound = bound
        self.hints = dict(hints or {})
        if model == STANDARD:
            self.domain = list(range(bound))
        else:
            self.domain = ca_enumeration(bound)
        self.zero = 0 if model == STANDARD else ZERO
        # analysis caches keyed by node identity; each entry keeps its node
        # alive so an id is never reused while the evaluator exists
        self._memo: dict = {}

    def _cached(self, kind, node, compute):
        key = (kind, id(node))
        hit = self._memo.get(key)
        if hit is None or hit[0] is not node:
            hit = (node, compute(node))
            self._memo[key] = hit
        return hit[1]

    def fv(self, f: Formula) -> frozenset:
        return self._cached("fv", f, free_vars)

    def tv(self, t: Term) -> frozenset:
        return self._cached("tv", t, term_vars)

    def value(self, f: Formula, env: dict) -> TruthValue:
        if isinstance(f, Eq):
            return TruthValue.of(eval_term(f.left, self.model, env) == eval_term(f.right, self.model, env))
        if isinstance(f, Not):
            return ~self.value(f.body, env)
        if isinstance(f, Implies):
            a = self.value(f.ante, env)
            if a is F:
                return T
            b = self.value(f.cons, env)
            if b is T:
                return T
            return F if (a is T and b is F) else U
        if isinstance(f, ForAll):
            # (A w)B  ==  ~(E w)~B
            neg = self._cached("neg", f, lambda g: g.body.body if isinstance(g.body, Not) else Not(g.body))
            return ~self.exists(f.var, neg, env)
        raise TypeError(f"not a formula: {f!r}")

    # existential search ----------------------------------------------------
    def exists(self, w: int, body: Formula, env: dict) -> TruthValue:
        outer = {k: v for k, v in env.items() if k != w}
        conjuncts = self._cached("conj", body, _conjuncts)
        solved = None
        for c in conjuncts:
            solved = self._solve(c, w, outer)
            if solved is not None:
                break
        if solved is not None:
            # a necessary equation pins the witness down completely
            candidates, exhaustive = solved, True
        else:
            cap = None
            for c in conjuncts:
                k = self._cap(c, w, outer)
                if k is not None and (cap is None or k == "never" or (cap != "never" and k < cap)):
                    cap = k
            if cap == "never":
                return F
            candidates = list(self._hinted(w, outer))
            if cap is not None and self._covers(cap):
                candidates += [x for x in self.domain if not cap < x]
                exhaustive = True
            else:
                candidates += self.domain
                exhaustive = False
        unknown = False
        seen = set()
        for x in candidates:
            key = x if isinstance(x, int) else x.cnf
            if key in seen:
                continue
            seen.add(key)
            r = self.value(body, {**outer, w: x})
            if r is T:
                return T
            if r is U:
                unknown = True
        return F if exhaustive and not unknown else U

    def _hinted(self, w, env):
        h = self.hints.get(w)
        if h is None:
            return []
        try:
            vals = h(env) if callable(h) else h
        except KeyError as exc:
            # the hint depends on a variable bound further out
            raise _Unbound(exc.args[0]) from None
        out = []
        for x in vals:
            if self.model == CA and isinstance(x, int):
                x = Ordinal.finite(x)
            out.append(x)
        return out

    def _covers(self, cap) -> bool:
        # every element <= cap is in the enumeration
        if self.model == STANDARD:
            return cap < self.bound
        return cap.is_finite and int(cap) < self.bound

    def _closed_value(self, t: Term, env):
        try:
            return eval_term(t, self.model, env)
        except _Unbound:
            return None

    def _dominates(self, t: Term, w: int, env) -> bool:
        """t(w) >= w for every value of w (other variables as in env)."""
        if isinstance(t, Var):
            return t.index == w
        if isinstance(t, Succ):
            return self._dominates(t.arg, w, env)
        if isinstance(t, Add):
            return self._dominates(t.left, w, env) or self._dominates(t.right, w, env)
        if isinstance(t, Mul):
            for a, b in ((t.left, t.right), (t.right, t.left)):
                if w not in self.tv(b) and self._dominates(a, w, env):
                    k = self._closed_value(b, env)
                    if k is not None and not _is_zero(k):
                        return True
        return False

    def _sides(self, f: Eq, w: int, env):
        """(w-side, value of other side) for an equation, or None."""
        for a, b in ((f.left, f.right), (f.right, f.left)):
            if w in self.tv(a) and w not in self.tv(b):
                c = self._closed_value(b, env)
                if c is not None:
                    return a, c
        return None

    def _solve(self, f: Formula, w: int, env):
        """All w making the necessary equation ``f`` true, when computable."""
        if not isinstance(f, Eq):
            return None
        sides = self._sides(f, w, env)
        if sides is None:
            return None
        a, c = sides
        if not self.tv(a) - {w} <= env.keys():
            return None
        if self.model == CA:
            # only a + k = c with a the bare variable is solved for ordinals
            if isinstance(a, Var):
                return [c]
            if isinstance(a, Succ) and isinstance(a.arg, Var):
                k = a.times
                if c.finite_part < k:
                    return []
                cnf = list(c.cnf)
                rest = cnf[-1][1] - k
                cnf = cnf[:-1] + ([(0, rest)] if rest else [])
                return [Ordinal(tuple(cnf))]
            return None
        if not self._dominates(a, w, env):
            return None
        # a is non-decreasing in w and a(w) >= w, so any solution lies in 0..c
        lo, hi = 0, c
        while lo < hi:
            mid = (lo + hi) // 2
            if eval_term(a, STANDARD, {**env, w: mid}) < c:
                lo = mid + 1
            else:
                hi = mid
        sols = []
        x = lo
        while x <= c and eval_term(a, STANDARD, {**env, w: x}) == c:
            sols.append(x)
            x += 1
        return sols

    def _cap(self, f: Formula, w: int, env):
        """c such that ``f`` is false whenever w > c; "never" if always false."""
        if w not in self.fv(f):
            try:
                if self.value(f, env) is F:
                    return "never"
            except _Unbound:
                pass
            return None
        if isinstance(f, Eq):
            sides = self._sides(f, w, env)
            if sides is None:
                return None
            a, c = sides
            if isinstance(a, Succ) and self.model == CA and (c.is_limit or not c.cnf):
                return "never"  # a successor never equals 0 or a limit
            if isinstance(a, Succ) and self.model == STANDARD and c == 0:
                return "never"
            return c if self._dominates(a, w, env) else None
        if isinstance(f, Not):
            inner = f.body
            if isinstance(inner, ForAll) and isinstance(inner.body, Not):
                # (E y)psi: false for w > c whenever psi is, whatever y is
                sub = {k: v for k, v in env.items() if k != inner.var}
                if inner.var == w:
                    return None
                return self._cap(inner.body.body, w, sub)
            if isinstance(inner, Implies):
                # a & ~b
                caps = [self._cap(inner.ante, w, env), self._cap(Not(inner.cons), w, env)]
                return _min_cap(caps)
            if isinstance(inner, Not):
                return self._cap(inner.body, w, env)
        if isinstance(f, ForAll) and f.var != w:
            sub = {k: v for k, v in env.items() if k != f.var}
            return self._cap(f.body, w, sub)
        return None


def _min_cap(caps):
    caps = [c for c in caps if c is not None]
    if not caps:
        return None
    if "never" in caps:
        return "never"
    return min(caps)


def _conjuncts(f: Formula) -> list[Formula]:
    """Flatten ``a & b`` (that is ~(a -> ~b)) and double negations."""
    if isinstance(f, Not):
        g = f.body
        if isinstance(g, Implies) and isinstance(g.cons, Not):
            return _conjuncts(g.ante) + _conjuncts(g.cons.body)
        if isinstance(g, Not):
            return _conjuncts(g.body)
    return [f]


def eval_formula(f: Formula, model: str = STANDARD, bindings: Mapping[int, Element] | None = None,
                 bound: int = 16, hints: Mapping[int, Hint] | None = None) -> TruthValue:
    """Evaluate ``f`` under ``bindings`` (variable index -> element).

    ``hints`` maps a quantified variable's index to extra candidate witnesses,
    either an iterable or a function of the current bindings.
    """
    bindings = dict(bindings or {})
    missing = free_vars(f) - set(bindings)
    if missing:
        raise UnboundVariable(f"unbound free variables: {', '.join(f'x{i}' for i in sorted(missing))}")
    if model == CA:
        bindings = {k: _ord(v) for k, v in bindings.items()}
    ev = _Evaluator(model, bound, hints)
    return ev.value(f, bindings)


# --------------------------------------------------------- axioms over CA

@dataclass(frozen=True)
class AxiomReport:
    n_max: int
    results: dict  # tag -> (passed, failing assignment or None)
    a9_at_omega: TruthValue
    a9_sweep_witness: Ordinal | None  # a witness for x1 := ω found in the sweep, if any

    @property
    def all_pass(self) -> bool:
        return all(ok for ok, _ in self.results.values())

    def lines(self) -> list[str]:
        out = []
        for tag, (ok, bad) in self.results.items():
            out.append(f"{tag}: {'pass' if ok else 'FAIL at ' + str(bad)} (finite substitutions <= {self.n_max})")
        out.append(f"A9 at x1 := omega: {self.a9_at_omega}")
        return out


def check_axioms_over_naturals(model: str = CA, n_max: int = 6) -> AxiomReport:
    """Evaluate A1-A9 at every assignment of finite ordinals <= n_max."""
    results = {}
    for tag, ax in ARITHMETIC_AXIOMS.items():
        fv = sorted(free_vars(ax))
        bad = None
        for vals in itertools.product(range(n_max + 1), repeat=len(fv)):
            env = dict(zip(fv, vals))
            hints = {2: lambda e: [e[1] - 1] if _finite_positive(e.get(1)) else []} if tag == "A9" else None
            r = eval_formula(ax, model, env, bound=n_max + 2, hints=hints)
            if r is not T:
                bad = {f"x{k}": str(v) for k, v in env.items()}
                break
        results[tag] = (bad is None, bad)
    omega = OMEGA if model == CA else None
    a9 = ARITHMETIC_AXIOMS["A9"]
    witness = None
    if model == CA:
        # sweep every ordinal below ω·2 in the enumeration for a predecessor of ω
        for x in ca_enumeration(n_max + 2):
            if x < Ordinal(((1, 2),)) and ord_succ(x) == OMEGA:
                witness = x
                break
        at_omega = eval_formula(a9, CA, {1: omega}, bound=n_max + 2)
    else:
        at_omega = U
    return AxiomReport(n_max, results, at_omega, witness)


def _finite_positive(x) -> bool:
    if isinstance(x, Ordinal):
        return x.is_finite and int(x) > 0
    return isinstance(x, int) and x > 0
