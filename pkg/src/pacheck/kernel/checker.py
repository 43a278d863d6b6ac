"""Line-by-line proof checking and ω-Specification certificates."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from pacheck import godel
from pacheck.kernel.axioms import match_axiom
from pacheck.kernel.profiles import (
    GEN, IND_CLOSED, IND_OPEN, MP, OMEGA_NUM, OMEGA_SPEC, SystemProfile,
)
from pacheck.kernel.script import Line, ProofScript, ScriptError, parse_line
from pacheck.syntax import (
    CaptureError, ForAll, Formula, Implies, Succ, Var, Zero, free_vars, numeral,
    parse_formula, print_term, substitute,
)


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    line: int | None = None
    reason: str = ""
    from_hypotheses: bool = False
    sampled: bool = False  # relies on an ω-Specification certificate

    def __bool__(self):
        return self.accepted

    def __str__(self):
        if not self.accepted:
            return f"REJECTED line {self.line}: {self.reason}"
        notes = []
        if self.from_hypotheses:
            notes.append("derivation from hypotheses")
        if self.sampled:
            notes.append("sampled, not a totality proof")
        return "ACCEPTED" + (f" ({'; '.join(notes)})" if notes else "")


class _Reject(Exception):
    def __init__(self, reason):
        self.reason = reason


def _need(profile: SystemProfile, rule: str, label: str):
    if rule not in profile.rules and rule not in profile.induction:
        raise _Reject(f"rule {label} not in profile")


def _succ_step(f: Formula, v: int) -> Formula:
    return substitute(f, v, Succ(Var(v)))


def _check_line(ln: Line, done: dict[int, Formula], profile: SystemProfile,
                base: Path | None, allow_spec: bool) -> bool:
    """Validate one line; returns True when an ω-Specification was used."""
    f, j = ln.formula, ln.just
    rule = j.rule
    if rule == "axiom":
        tag = j.args[0]
        if tag not in profile.axioms:
            raise _Reject(f"axiom {tag} not in profile")
        if not match_axiom(f, tag):
            raise _Reject(f"not an instance of {tag}")
        return False
    if rule == "hyp":
        return False
    if rule == "mp":
        _need(profile, MP, "MP")
        a, b = done[j.args[0]], done[j.args[1]]
        if b != Implies(a, f):
            raise _Reject(f"line {j.args[1]} is not (line {j.args[0]} -> this line)")
        return False
    if rule == "gen":
        _need(profile, GEN, "GEN")
        i, v = j.args
        if f != ForAll(v, done[i]):
            raise _Reject(f"not (A x{v}) applied to line {i}")
        return False
    if rule in ("ind-closed", "ind-open"):
        closed = rule == "ind-closed"
        _need(profile, IND_CLOSED if closed else IND_OPEN, rule.upper())
        base_f, step = done[j.args[0]], done[j.args[1]]
        if closed:
            if not (isinstance(step, ForAll) and isinstance(step.body, Implies)):
                raise _Reject(f"line {j.args[1]} is not (A x)(F -> F[x:=x'])")
            candidates = [(step.var, step.body)]
        else:
            if not isinstance(step, Implies):
                raise _Reject(f"line {j.args[1]} is not (F -> F[x:=x'])")
            # the induction variable is implicit: try each free variable of F
            candidates = [(v, step) for v in sorted(free_vars(step.ante))] or [(1, step)]
        for v, imp in candidates:
            F = imp.ante
            try:
                ok = (imp.cons == _succ_step(F, v) and base_f == substitute(F, v, Zero())
                      and f == (ForAll(v, F) if closed else F))
            except CaptureError:
                ok = False
            if ok:
                return False
        raise _Reject("premises do not fit induction on this formula")
    if rule == "omega-num":
        _need(profile, OMEGA_NUM, "OMEGA-NUM")
        i, n = j.args
        src = done[i]
        fv = free_vars(src)
        if not fv:
            raise _Reject(f"line {i} has no free variable")
        if not any(substitute(src, v, numeral(n)) == f for v in sorted(fv)):
            raise _Reject(f"not line {i} with a free variable replaced by the numeral {n}")
        return False
    if rule == "omega-spec":
        _need(profile, OMEGA_SPEC, "OMEGA-SPEC")
        if not allow_spec:
            raise _Reject("nested omega-spec inside a certificate")
        path = Path(j.args[0])
        if base is not None and not path.is_absolute():
            path = base / path
        try:
            cert = load_certificate(path)
        except (OSError, ScriptError, ValueError) as exc:
            raise _Reject(f"cannot load certificate: {exc}")
        verdict = check_certificate(cert, profile)
        if not isinstance(verdict, CertifiedUpTo):
            raise _Reject(f"certificate {verdict}")
        if f != cert.target:
            raise _Reject("certificate target differs from this line")
        return True
    raise _Reject(f"unknown rule {rule!r}")


def check_proof(s: ProofScript, p: SystemProfile, *, allow_spec: bool = True) -> Verdict:
    """Accept the script under profile ``p`` or name its first bad line."""
    done: dict[int, Formula] = {}
    base = s.source.parent if s.source else None
    sampled = False
    if not s.lines:
        return Verdict(False, None, "empty script")
    for ln in s.lines:
        missing = [r for r in ln.just.refs if r not in done]
        if missing:
            return Verdict(False, ln.index, f"reference to missing line {missing[0]}")
        try:
            sampled |= _check_line(ln, done, p, base, allow_spec)
        except _Reject as exc:
            return Verdict(False, ln.index, exc.reason)
        done[ln.index] = ln.formula
    return Verdict(True, from_hypotheses=s.has_hypotheses, sampled=sampled)


# ------------------------------------------------------------ certificates

PLACEHOLDER = "?n"


@dataclass(frozen=True)
class OmegaSpecCertificate:
    """Per-numeral proofs of ``target``'s instances with a Gödel-number bound.

    ``template`` holds raw script lines in which the placeholder stands for
    the numeral (inside formulas) or for its decimal value (in
    justifications, e.g. ``omega-num 1 ?n``).
    """

    target: Formula
    template: tuple[str, ...]
    bound_k: "godel.GodelNumber"
    horizon_n: int
    placeholder: str = PLACEHOLDER
    source: Path | None = field(default=None, compare=False)

    def __post_init__(self):
        if not isinstance(self.target, ForAll):
            raise ValueError("certificate target must be a universal formula (A x)F")

    def instantiate(self, n: int) -> ProofScript:
        num = print_term(numeral(n))
        lines = []
        for k, raw in enumerate(self.template, 1):
            head, sep, tail = raw.rpartition("|")
            if not sep:
                raise ScriptError(f"template line {k} has no justification")
            text = head.replace(self.placeholder, num) + "|" + tail.replace(self.placeholder, str(n))
            lines.append(parse_line(text, k))
        return ProofScript(tuple(lines), name=f"instance {n}")

    def instance_goal(self, n: int) -> Formula:
        return substitute(self.target.body, self.target.var, numeral(n))


@dataclass(frozen=True)
class CertifiedUpTo:
    horizon: int

    def __str__(self):
        return f"CertifiedUpTo({self.horizon}) (sampled, not a totality proof)"


@dataclass(frozen=True)
class BoundViolatedAt:
    n: int
    gn: "godel.GodelNumber"

    def __str__(self):
        return f"BoundViolatedAt({self.n})"


@dataclass(frozen=True)
class InvalidTemplateAt:
    n: int
    reason: str

    def __str__(self):
        return f"InvalidTemplateAt({self.n}): {self.reason}"


def check_certificate(c: OmegaSpecCertificate, p: SystemProfile):
    """Sample the certificate for n = 0..horizon under ``p`` minus OMEGA-SPEC."""
    if OMEGA_SPEC not in p.rules:
        raise ValueError(f"profile {p.name} has no OMEGA-SPEC rule")
    inner = p.without(OMEGA_SPEC)
    for n in range(c.horizon_n + 1):
        try:
            inst = c.instantiate(n)
        except (ScriptError, ValueError) as exc:
            return InvalidTemplateAt(n, str(exc))
        v = check_proof(inst, inner, allow_spec=False)
        if not v:
            return InvalidTemplateAt(n, str(v))
        if v.from_hypotheses:
            return InvalidTemplateAt(n, "instance uses hypotheses")
        if inst.conclusion != c.instance_goal(n):
            return InvalidTemplateAt(n, "last line is not the target instance")
        g = godel.encode(inst, c.bound_k.codec)
        if not godel.gn_compare(g, c.bound_k) < 0:
            return BoundViolatedAt(n, g)
    return CertifiedUpTo(c.horizon_n)


def parse_certificate(text: str, source: Path | None = None, codec: str | None = None) -> OmegaSpecCertificate:
    headers: dict[str, str] = {}
    body: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        if s.startswith("@"):
            key, _, val = s[1:].partition(":")
            key = key.strip()
            if key not in ("target", "bound", "horizon", "placeholder", "name", "system", "codec"):
                raise ScriptError(f"unknown certificate header @{key} (line {lineno})")
            headers[key] = val.strip()
            continue
        body.append(s)
    for key in ("target", "bound", "horizon"):
        if key not in headers:
            raise ScriptError(f"certificate lacks @{key}")
    codec = headers.get("codec") or codec or godel.default_codec()
    if not re.fullmatch(r"\d+", headers["horizon"]):
        raise ScriptError("@horizon must be a natural number")
    return OmegaSpecCertificate(
        target=parse_formula(headers["target"]),
        template=tuple(body),
        bound_k=godel.parse_decimal(headers["bound"], codec),
        horizon_n=int(headers["horizon"]),
        placeholder=headers.get("placeholder", PLACEHOLDER),
        source=source,
    )


def load_certificate(path, codec: str | None = None) -> OmegaSpecCertificate:
    path = Path(path)
    return parse_certificate(path.read_text(), source=path, codec=codec)
