"""Gödel's Beta function and finite-sequence witnesses.

``beta(u, v, i) = rm(1 + (i + 1) * v, u)`` picks the i-th entry of the
sequence coded by the pair (u, v).  Any finite sequence has such a pair: with
``v`` a multiple of ``max(a)! * n!`` the moduli are pairwise coprime and the
Chinese Remainder Theorem supplies ``u``.  ``encode_sequence`` returns the
least pair in (v, u) order rather than that classical one.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from pacheck.syntax import (
    Add, Eq, Formula, Mul, Succ, Term, Var, conj, exists, numeral, parse_formula, term_vars,
)

__all__ = ["rm", "beta", "BetaWitness", "encode_sequence", "crt", "build_bt_formula", "bt_instance",
           "BT_WITNESS_VAR"]


def rm(x: int, y: int) -> int:
    """Remainder of y divided by x; rm(0, y) = y keeps it total."""
    if x < 0 or y < 0:
        raise ValueError("rm is defined on naturals")
    return y if x == 0 else y % x


def beta(x1: int, x2: int, x3: int) -> int:
    return rm(1 + (x3 + 1) * x2, x1)


@dataclass(frozen=True)
class BetaWitness:
    u: int
    v: int
    sequence: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sequence", tuple(self.sequence))
        for i, a in enumerate(self.sequence):
            if beta(self.u, self.v, i) != a:
                raise ValueError(f"beta({self.u}, {self.v}, {i}) != {a}")

    def __str__(self):
        return f"u={self.u} v={self.v}"


def crt(residues: Sequence[int], moduli: Sequence[int]) -> tuple[int, int] | None:
    """Least u >= 0 with u = r_i (mod m_i) for all i, plus the lcm.

    Moduli need not be coprime; returns None for an inconsistent system.
    """
    u, m = 0, 1
    for r, n in zip(residues, moduli):
        g = gcd(m, n)
        if (r - u) % g:
            return None
        # solve u + m*t = r (mod n)
        step = m // g
        t = ((r - u) // g * pow(step, -1, n // g)) % (n // g) if n // g > 1 else 0
        u += m * t
        m = m * n // g
        u %= m
    return u, m


def encode_sequence(a: Sequence[int]) -> BetaWitness:
    """Least (v, u) in lexicographic order with beta(u, v, i) = a[i] for all i."""
    a = tuple(a)
    if any(x < 0 for x in a):
        raise ValueError("sequence entries must be naturals")
    if not a:
        return BetaWitness(0, 0, a)
    v = 0
    while True:
        moduli = [1 + (i + 1) * v for i in range(len(a))]
        if all(x < m for x, m in zip(a, moduli)):
            hit = crt(a, moduli)
            if hit is not None:
                return BetaWitness(hit[0], v, a)
        v += 1


# x1 = ((1 + (x3 + 1) * x2) * w + x4) & x4 < 1 + (x3 + 1) * x2, w = x5;
# the "<" expansion takes the next free index, x6.
BT_WITNESS_VAR = 5
_BT_TEXT = ("(E x5)((x1 = (((0' + ((x3 + 0') * x2)) * x5) + x4)) "
            "& (x4 < (0' + ((x3 + 0') * x2))))")


def build_bt_formula() -> Formula:
    """Bt(x1, x2, x3, x4): the formula representing beta(x1, x2, x3) = x4."""
    return parse_formula(_BT_TEXT)


def bt_instance(u: Term, v: Term, i: Term, k: Term, witness: int, less_witness: int) -> Formula:
    """Bt(u, v, i, k) with the two bound variables chosen by the caller.

    The caller must pick ``witness`` and ``less_witness`` outside the
    variables of u, v, i, k.
    """
    used = term_vars(u) | term_vars(v) | term_vars(i) | term_vars(k)
    if witness in used or less_witness in used or witness == less_witness:
        raise ValueError("bound variables of Bt must be fresh")
    modulus = Add(numeral(1), Mul(Add(i, numeral(1)), v))
    first = Eq(u, Add(Mul(modulus, Var(witness)), k))
    below = exists(less_witness, Eq(Add(k, Succ(Var(less_witness))), modulus))
    return exists(witness, conj(first, below))
