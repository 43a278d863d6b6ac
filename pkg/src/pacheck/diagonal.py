"""Diagonal constructions over an arbitrary two-variable formula W(x1, x2).

Both constructions encode a formula P built from W and then put the numeral
of that code in place of x1:

* ``goedel_sentence``: P = (A x2)~W, giving the closed sentence
  (A x2)~W(numeral(#P), x2);
* ``anand_fixedpoint``: P = ~W, giving the open formula ~W(numeral(#P), x2).

Nothing here claims W represents any proof predicate; the module only builds
the syntax so that the construction can be inspected and tested.
"""

from __future__ import annotations

from dataclasses import dataclass

from pacheck import godel
from pacheck.kernel import ProofScript, SystemProfile, check_proof
from pacheck.primrec import q_check
from pacheck.syntax import ForAll, Formula, Not, free_vars, numeral, substitute

__all__ = ["DiagonalResult", "goedel_sentence", "anand_fixedpoint", "self_reference_demo", "Disagreement"]


class Disagreement(AssertionError):
    """q_check and the direct proof check gave different answers."""


@dataclass(frozen=True)
class DiagonalResult:
    input: Formula
    pre: Formula
    fixed_gn: godel.GodelNumber
    sentence: Formula


def _require_two(w: Formula):
    fv = set(free_vars(w))
    if fv != {1, 2}:
        raise ValueError(f"W must have free variables exactly {{x1, x2}}, got {sorted(fv)}")


def _diagonal(w: Formula, pre: Formula, wrap, codec) -> DiagonalResult:
    g = godel.encode(pre, codec)
    body = substitute(w, 1, numeral(int(g)))
    return DiagonalResult(w, pre, g, wrap(body))


def goedel_sentence(w: Formula, codec: str | None = None) -> DiagonalResult:
    """(A x2)~W(numeral(g), x2) with g the code of (A x2)~W."""
    _require_two(w)
    return _diagonal(w, ForAll(2, Not(w)), lambda b: ForAll(2, Not(b)), codec)


def anand_fixedpoint(w: Formula, codec: str | None = None) -> DiagonalResult:
    """~W(numeral(r), x2) with r the code of ~W; x2 stays free."""
    _require_two(w)
    return _diagonal(w, Not(w), Not, codec)


def self_reference_demo(k: Formula, proof: ProofScript, p: SystemProfile, codec: str | None = None) -> bool:
    """q(K#, M#) computed two ways, which must agree.

    One side is ``q_check`` on the Gödel numbers; the other checks ``proof``
    directly as a hypothesis-free proof of K(numeral(K#)).
    """
    if set(free_vars(k)) != {1}:
        raise ValueError("K must have exactly x1 free")
    kn = godel.encode(k, codec)
    via_codes = q_check(kn, godel.encode(proof, kn.codec), p)
    goal = substitute(k, 1, numeral(int(kn)))
    direct = (not proof.has_hypotheses and proof.conclusion == goal
              and check_proof(proof, p).accepted)
    if via_codes != direct:
        raise Disagreement(f"q_check says {via_codes}, direct check says {direct}")
    return direct
