"""Proof scripts and their line-oriented file format.

    @name: reflexivity
    @system: PA
    # comment
    1 | ((x1 + 0) = x1) | axiom A5
    2 | (A x1)((x1 + 0) = x1) | gen 1 x1
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from pacheck.syntax import Formula, ParseError, chunks, display, parse_formula, print_formula, runs_of

AXIOM_TAGS = tuple(f"K{i}" for i in range(1, 6)) + tuple(f"A{i}" for i in range(1, 10))

# rule name -> number of integer arguments (gen and omega-spec are special)
_ARITY = {"hyp": 0, "mp": 2, "ind-closed": 2, "ind-open": 2, "omega-num": 2}


class ScriptError(ValueError):
    """Malformed proof-script text or justification."""


@dataclass(frozen=True)
class Justification:
    rule: str
    args: tuple = ()

    def __str__(self):
        if self.rule == "gen":
            return f"gen {self.args[0]} x{self.args[1]}"
        return " ".join([self.rule, *map(str, self.args)])

    @property
    def refs(self) -> tuple[int, ...]:
        """Earlier line indices this justification cites."""
        if self.rule in ("mp", "ind-closed", "ind-open"):
            return self.args
        if self.rule in ("gen", "omega-num"):
            return self.args[:1]
        return ()


def parse_justification(text: str) -> Justification:
    words = text.split()
    if not words:
        raise ScriptError("empty justification")
    rule, rest = words[0], words[1:]
    if rule == "axiom":
        if len(rest) != 1 or rest[0] not in AXIOM_TAGS:
            raise ScriptError(f"bad axiom tag in {text!r}")
        return Justification("axiom", (rest[0],))
    if rule == "gen":
        if len(rest) != 2 or not rest[0].isdigit() or not re.fullmatch(r"x[1-9]\d*", rest[1]):
            raise ScriptError(f"malformed gen justification {text!r}")
        return Justification("gen", (int(rest[0]), int(rest[1][1:])))
    if rule == "omega-spec":
        if len(rest) != 1:
            raise ScriptError(f"omega-spec takes one path, got {text!r}")
        return Justification("omega-spec", (rest[0],))
    if rule not in _ARITY:
        raise ScriptError(f"unknown rule {rule!r}")
    if len(rest) != _ARITY[rule] or not all(w.isdigit() for w in rest):
        raise ScriptError(f"malformed {rule} justification {text!r}")
    return Justification(rule, tuple(int(w) for w in rest))


@dataclass(frozen=True)
class Line:
    index: int
    formula: Formula
    just: Justification


@dataclass(frozen=True)
class ProofScript:
    """An indexed sequence of justified formulas.

    ``name`` and ``system`` are labels only; two scripts with the same lines
    are the same proof.
    """

    lines: tuple[Line, ...]
    name: str = field(default="", compare=False)
    system: str | None = field(default=None, compare=False)
    source: Path | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(self.lines))
        seen = set()
        last = 0
        for ln in self.lines:
            if ln.index <= last:
                raise ScriptError(f"line indices must increase strictly (at {ln.index})")
            last = ln.index
            for r in ln.just.refs:
                if r not in seen:
                    raise ScriptError(f"line {ln.index} cites line {r}, which is not an earlier line")
            seen.add(ln.index)

    @property
    def conclusion(self) -> Formula | None:
        return self.lines[-1].formula if self.lines else None

    @property
    def has_hypotheses(self) -> bool:
        return any(ln.just.rule == "hyp" for ln in self.lines)

    def replace(self, index: int, formula: Formula) -> "ProofScript":
        lines = tuple(Line(l.index, formula, l.just) if l.index == index else l for l in self.lines)
        return ProofScript(lines, self.name, self.system, self.source)


def line_chunks(ln: Line):
    yield f"{ln.index} | ", 1
    yield from chunks(ln.formula)
    yield f" | {ln.just}", 1


def script_runs(s: ProofScript) -> tuple:
    """Canonical rendering of the lines (no headers), newline separated."""
    def gen():
        for k, ln in enumerate(s.lines):
            if k:
                yield "\n", 1
            yield from line_chunks(ln)
    return runs_of(gen())


def format_script(s: ProofScript, headers: bool = True, compact: bool = False) -> str:
    """Script file text; ``compact`` writes long prime runs as ``'{n}``."""
    show = display if compact else print_formula
    out = []
    if headers and s.name:
        out.append(f"@name: {s.name}")
    if headers and s.system:
        out.append(f"@system: {s.system}")
    out += [f"{ln.index} | {show(ln.formula)} | {ln.just}" for ln in s.lines]
    return "\n".join(out) + "\n"


def parse_line(text, lineno: int | None = None) -> Line:
    """Parse ``<index> | <formula> | <justification>``.

    ``text`` is a str or a run sequence; the formula part stays in run form so
    huge numerals are never expanded.
    """
    runs = list(text) if not isinstance(text, str) else [(c, 1) for c in text]
    bars = [k for k, (c, _) in enumerate(runs) if c == "|"]
    where = f" (line {lineno})" if lineno else ""
    if len(bars) != 2:
        raise ScriptError(f"expected '<index> | <formula> | <justification>'{where}")
    head = "".join(c * n for c, n in runs[:bars[0]]).strip()
    tail = "".join(c * n for c, n in runs[bars[1] + 1:]).strip()
    if not head.isdigit():
        raise ScriptError(f"bad line index {head!r}{where}")
    try:
        formula = parse_formula(runs[bars[0] + 1:bars[1]])
    except ParseError as exc:
        raise ScriptError(f"{exc}{where}") from None
    return Line(int(head), formula, parse_justification(tail))


def parse_script(text: str, source: Path | None = None) -> ProofScript:
    name, system, lines = "", None, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if not s:
            continue
        if s.startswith("@"):
            key, _, val = s[1:].partition(":")
            key, val = key.strip(), val.strip()
            if key == "name":
                name = val
            elif key == "system":
                system = val
            else:
                raise ScriptError(f"unknown header @{key} (line {lineno})")
            continue
        lines.append(parse_line(s, lineno))
    return ProofScript(tuple(lines), name, system, source)


def load_script(path) -> ProofScript:
    path = Path(path)
    return parse_script(path.read_text(), source=path)
