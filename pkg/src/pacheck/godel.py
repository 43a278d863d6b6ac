"""Gödel numbering of terms, formulas and proof scripts.

Two codecs:

positional
    The canonical ASCII rendering read as a bijective base-256 numeral, each
    byte ``b`` contributing the digit ``b + 1``.  Numeric order is shortlex
    order on renderings.
prime
    Gödel's scheme ``2^c1 * 3^c2 * ... * p_n^cn`` over a fixed symbol table.
    A proof script with lines ``l1..lm`` is ``2^gn(l1) * 3^gn(l2) * ...``.

A GodelNumber always denotes an exact natural number, but it is held in a
form that does not require materialising it: the positional codec keeps the
run-length encoded rendering, the prime codec keeps the exponent vector
once the value outgrows ``MAX_BITS``.  ``int(g)`` materialises on demand.
"""

from __future__ import annotations

import math
import os
import sys
from dataclasses import dataclass
from functools import total_ordering
from typing import Union

import gmpy2
import mpmath

from pacheck.kernel.script import ProofScript, ScriptError, line_chunks, parse_line, script_runs
from pacheck.syntax import (
    Add, Eq, ForAll, Formula, Implies, Mul, Not, ParseError, Succ, Term, Var, Zero,
    chunks, parse_formula, parse_term, render_runs, runs_of,
)

POSITIONAL = "positional"
PRIME = "prime"
CODECS = (POSITIONAL, PRIME)

MAX_BITS = 1 << 24  # largest value (in bits) kept as a plain int

Encodable = Union[Term, Formula, ProofScript]


class NotAnEncoding(ValueError):
    pass


class CodecMismatch(ValueError):
    pass


def default_codec() -> str:
    codec = os.environ.get("PACHECK_CODEC", POSITIONAL).strip().lower()
    aliases = {"prime-power": PRIME, "primepower": PRIME}
    codec = aliases.get(codec, codec)
    if codec not in CODECS:
        raise ValueError(f"PACHECK_CODEC must be positional or prime, got {codec!r}")
    return codec


# ------------------------------------------------------------ symbol table

BASE_CODES = {"0": 1, "'": 3, "~": 5, "->": 7, "(": 9, ")": 11, "=": 13,
              "+": 15, "*": 17, "A": 19, " ": 21}

# Characters that occur only in script lines (indices, "|", justification
# words, certificate paths) get further odd codes from 23 upward.
_EXTRA = [c for c in "\n" + "".join(map(chr, range(33, 127))) if c not in BASE_CODES]
CODES = dict(BASE_CODES)
for _k, _c in enumerate(_EXTRA):
    CODES[_c] = 23 + 2 * _k
SYMBOLS = {v: k for k, v in CODES.items()}


def symbol_codes(text: str) -> list[int]:
    """Tokenise a rendering into symbol codes (variables x_i -> 2i)."""
    out = []
    i = 0
    while i < len(text):
        c = text[i]
        if c == "x" and i + 1 < len(text) and text[i + 1] in "123456789":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(2 * int(text[i + 1:j]))
            i = j
        elif text.startswith("->", i):
            out.append(7)
            i += 2
        elif c in CODES:
            out.append(CODES[c])
            i += 1
        else:
            raise ValueError(f"no symbol code for {c!r}")
    return out


def symbols_text(codes) -> str:
    parts = []
    for c in codes:
        if c % 2 == 0:
            parts.append(f"x{c // 2}")
        elif c in SYMBOLS:
            parts.append(SYMBOLS[c])
        else:
            raise NotAnEncoding(f"unassigned symbol code {c}")
    return "".join(parts)


_PRIMES = [2, 3]


def _extend_primes(k: int) -> None:
    n = _PRIMES[-1] + 2
    while len(_PRIMES) < k:
        r = math.isqrt(n)
        for p in _PRIMES:
            if p > r:
                _PRIMES.append(n)
                break
            if n % p == 0:
                break
        n += 2


def _primes():
    k = 0
    while True:
        if k == len(_PRIMES):
            _extend_primes(2 * k)
        yield _PRIMES[k]
        k += 1


def _nth_primes(k: int) -> list[int]:
    if len(_PRIMES) < k:
        _extend_primes(k)
    return _PRIMES[:k]


# -------------------------------------------------------- bijective base 256

def _offset(length: int) -> int:
    # number of strings shorter than `length`: (256^L - 1) / 255
    return ((1 << (8 * length)) - 1) // 255


def _runs_to_bytes(runs) -> bytes:
    return "".join(c * n for c, n in runs).encode("latin-1")


def _int_to_runs(n: int) -> tuple:
    if n < 0:
        raise ValueError("Gödel numbers are natural numbers")
    length = max(0, n.bit_length() // 8 - 1)
    while _offset(length + 1) <= n:
        length += 1
    if length == 0:
        return ()
    rest = n - _offset(length)
    text = rest.to_bytes(length, "big").decode("latin-1")
    return runs_of([(text, 1)])


# ------------------------------------------------------------ GodelNumber

@total_ordering
@dataclass(frozen=True, eq=False)
class GodelNumber:
    """An exact natural number tagged with the codec that produced it.

    Exactly one payload is set: ``runs`` (positional), ``raw`` or ``exps``
    (prime; ``exps`` only when the value exceeds ``MAX_BITS``).
    """

    codec: str
    runs: tuple | None = None
    raw: int | None = None
    exps: tuple | None = None

    # construction -----------------------------------------------------------
    @classmethod
    def from_int(cls, n: int, codec: str = POSITIONAL) -> "GodelNumber":
        if codec == POSITIONAL:
            return cls(POSITIONAL, runs=_int_to_runs(int(n)))
        if codec == PRIME:
            if n < 0:
                raise ValueError("Gödel numbers are natural numbers")
            return cls(PRIME, raw=int(n))
        raise ValueError(f"unknown codec {codec!r}")

    @classmethod
    def _from_exponents(cls, exps) -> "GodelNumber":
        exps = tuple(_shrink(e) for e in exps)
        if any(e == 0 for e in exps if isinstance(e, int)):
            raise ValueError("zero exponent")
        if _log2_estimate(exps) <= MAX_BITS:
            primes = _nth_primes(len(exps))
            value = gmpy2.mpz(1)
            for p, e in zip(primes, exps):
                value *= gmpy2.mpz(p) ** int(e)
            return cls(PRIME, raw=int(value))
        return cls(PRIME, exps=exps)

    # size and value ---------------------------------------------------------
    @property
    def length(self) -> int:
        """Rendering length (positional only)."""
        return sum(n for _, n in self.runs)

    def bits(self) -> float:
        """Approximate bit length of the value."""
        if self.codec == POSITIONAL:
            return 8.0 * self.length
        if self.raw is not None:
            return float(self.raw.bit_length())
        return float(_log2_estimate(self.exps))

    @property
    def materialisable(self) -> bool:
        return self.bits() <= MAX_BITS

    def __int__(self) -> int:
        if self.codec == POSITIONAL:
            if not self.materialisable:
                raise OverflowError(f"value has about {self.length * 8} bits")
            data = _runs_to_bytes(self.runs)
            return _offset(len(data)) + int.from_bytes(data, "big")
        if self.raw is not None:
            return self.raw
        raise OverflowError(f"value has about {self.bits():.3g} bits")

    @property
    def value(self) -> int:
        return int(self)

    def exponents(self) -> tuple:
        """Prime-codec exponent vector (factorising small values)."""
        if self.codec != PRIME:
            raise CodecMismatch("exponent vectors belong to the prime codec")
        if self.exps is not None:
            return self.exps
        n = self.raw
        if n < 2:
            raise NotAnEncoding(f"{n} is not a prime-power code")
        n = gmpy2.mpz(n)
        out = []
        for p in _primes():
            if n == 1:
                break
            n, e = gmpy2.remove(n, p)
            if e == 0:
                raise NotAnEncoding("exponents must be positive on consecutive primes")
            out.append(e)
        return tuple(out)

    # comparison -------------------------------------------------------------
    def _key(self):
        return (self.codec, self.runs, self.raw, self.exps)

    def __eq__(self, other):
        if not isinstance(other, GodelNumber):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __lt__(self, other):
        if not isinstance(other, GodelNumber):
            return NotImplemented
        return gn_compare(self, other) < 0

    # printing ---------------------------------------------------------------
    def __str__(self):
        if self.materialisable and self.bits() <= 1 << 20:
            return _decimal(int(self))
        if self.codec == POSITIONAL:
            return f"<positional number with a {self.length}-byte rendering>"
        return f"<prime-power number of about {mpmath.nstr(mpmath.mpf(_log2_estimate(self.exps)), 6)} bits>"

    def __repr__(self):
        return f"GodelNumber({self.codec}, {self})"


def _decimal(n: int) -> str:
    if hasattr(sys, "get_int_max_str_digits"):
        old = sys.get_int_max_str_digits()
        sys.set_int_max_str_digits(0)
        try:
            return str(n)
        finally:
            sys.set_int_max_str_digits(old)
    return str(n)


def parse_decimal(text: str, codec: str = POSITIONAL) -> GodelNumber:
    text = text.strip()
    if not text.isdigit():
        raise ValueError(f"not a decimal natural: {text!r}")
    if hasattr(sys, "get_int_max_str_digits"):
        old = sys.get_int_max_str_digits()
        sys.set_int_max_str_digits(0)
        try:
            n = int(text)
        finally:
            sys.set_int_max_str_digits(old)
    else:
        n = int(text)
    return GodelNumber.from_int(n, codec)


def _shrink(e):
    if isinstance(e, GodelNumber):
        if e.codec != PRIME:
            raise CodecMismatch("nested exponents must be prime-codec numbers")
        return e.raw if e.raw is not None else e
    return int(e)


def _log2(e) -> mpmath.mpf:
    if isinstance(e, int):
        return mpmath.log(mpmath.mpf(e), 2) if e > 0 else mpmath.mpf("-inf")
    return mpmath.mpf(_log2_estimate(e.exps))


def _log2_estimate(exps) -> mpmath.mpf:
    """log2 of prod p_i^e_i (double precision unless exponents are nested)."""
    primes = _nth_primes(len(exps))
    if all(isinstance(e, int) and e.bit_length() < 900 for e in exps):
        return mpmath.mpf(math.fsum(e * math.log2(p) for p, e in zip(primes, exps)))
    total = mpmath.mpf(0)
    for p, e in zip(primes, exps):
        if isinstance(e, int):
            total += e * mpmath.log(p, 2)
        else:
            total += mpmath.power(2, _log2_estimate(e.exps)) * mpmath.log(p, 2)
    return total


def gn_compare(a: GodelNumber, b: GodelNumber) -> int:
    """-1, 0 or 1 according to the numeric order of the two values."""
    if a.codec != b.codec:
        raise CodecMismatch(f"cannot compare {a.codec} with {b.codec} numbers")
    if a == b:
        return 0
    if a.codec == POSITIONAL:
        la, lb = a.length, b.length
        if la != lb:
            return -1 if la < lb else 1
        return _compare_runs(a.runs, b.runs)
    if a.raw is not None and b.raw is not None:
        return (a.raw > b.raw) - (a.raw < b.raw)
    return _compare_factored(a.exponents(), b.exponents())


def _compare_runs(ra, rb) -> int:
    ia = ib = 0
    ca, na = ra[0] if ra else (None, 0)
    cb, nb = rb[0] if rb else (None, 0)
    while ia < len(ra) and ib < len(rb):
        if ca != cb:
            return -1 if ord(ca) < ord(cb) else 1
        step = min(na, nb)
        na -= step
        nb -= step
        if na == 0:
            ia += 1
            if ia < len(ra):
                ca, na = ra[ia]
        if nb == 0:
            ib += 1
            if ib < len(rb):
                cb, nb = rb[ib]
    return 0


def _compare_factored(ea, eb) -> int:
    # sign of sum (a_i - b_i) log p_i with enough precision for the differences
    n = max(len(ea), len(eb))
    ea = tuple(ea) + (0,) * (n - len(ea))
    eb = tuple(eb) + (0,) * (n - len(eb))
    if not all(isinstance(e, int) for e in ea + eb):
        raise OverflowError("comparison of doubly nested prime-power numbers is not supported")
    diffs = [x - y for x, y in zip(ea, eb)]
    if not any(diffs):
        return 0
    prec = max(abs(d).bit_length() for d in diffs) + 64
    for _ in range(4):
        with mpmath.workprec(prec):
            s = mpmath.fsum(d * mpmath.log(p) for d, p in zip(diffs, _nth_primes(n)))
            if abs(s) > mpmath.mpf(2) ** (-32):
                return 1 if s > 0 else -1
        prec *= 2
    raise ArithmeticError("could not separate the two values numerically")


# ------------------------------------------------------------ encode/decode

def _is_term(obj) -> bool:
    return isinstance(obj, (Zero, Var, Succ, Add, Mul))


def _is_formula(obj) -> bool:
    return isinstance(obj, (Eq, Not, Implies, ForAll))


def _pieces_codes(pieces) -> list[int]:
    runs = runs_of(pieces)
    if sum(n for _, n in runs) > MAX_BITS:
        raise OverflowError("object too large for the prime-power codec")
    return symbol_codes("".join(c * n for c, n in runs))


def encode(obj: Encodable, codec: str | None = None) -> GodelNumber:
    """Gödel number of a term, formula or proof script."""
    codec = codec or default_codec()
    if codec == POSITIONAL:
        if isinstance(obj, ProofScript):
            return GodelNumber(POSITIONAL, runs=script_runs(obj))
        if _is_term(obj) or _is_formula(obj):
            return GodelNumber(POSITIONAL, runs=render_runs(obj))
    elif codec == PRIME:
        if isinstance(obj, ProofScript):
            if not obj.lines:
                raise ValueError("cannot encode an empty proof script")
            return GodelNumber._from_exponents(
                GodelNumber._from_exponents(_pieces_codes(line_chunks(ln))) for ln in obj.lines)
        if _is_term(obj) or _is_formula(obj):
            return GodelNumber._from_exponents(_pieces_codes(chunks(obj)))
    else:
        raise ValueError(f"unknown codec {codec!r}")
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _split_runs(runs, sep: str) -> list[list]:
    out = [[]]
    for c, n in runs:
        if c == sep:
            out.extend([] for _ in range(n))
        else:
            out[-1].append((c, n))
    return out


def _decode_text(runs) -> Encodable:
    """Object whose canonical rendering is exactly ``runs``."""
    if any(c in "|\n" for c, _ in runs):
        try:
            lines = tuple(parse_line(r) for r in _split_runs(runs, "\n"))
            return ProofScript(lines)
        except (ScriptError, ParseError) as exc:
            raise NotAnEncoding(str(exc)) from None
    for parse in (parse_formula, parse_term):
        try:
            return parse(runs)
        except ParseError:
            continue
    raise NotAnEncoding("rendering is neither a term, a formula nor a proof script")


def decode(g: GodelNumber, codec: str | None = None) -> Encodable:
    """Inverse of ``encode``; raises NotAnEncoding for values outside its image."""
    if codec is not None and codec != g.codec:
        raise CodecMismatch(f"number is {g.codec}, expected {codec}")
    if g.codec == POSITIONAL:
        if not g.runs:
            raise NotAnEncoding("0 encodes nothing")
        obj = _decode_text(g.runs)
    else:
        obj = _decode_prime(g)
    if encode(obj, g.codec) != g:
        raise NotAnEncoding("value is not the canonical encoding of any object")
    return obj


def _decode_prime(g: GodelNumber) -> Encodable:
    if g.codec != PRIME:
        raise CodecMismatch(g.codec)
    if g.raw is not None and g.raw < 2:
        raise NotAnEncoding(f"{g.raw} encodes nothing")
    exps = g.exponents()
    if all(isinstance(e, int) for e in exps) and all(e < 1 << 16 for e in exps):
        try:
            return _decode_text(runs_of([(symbols_text(exps), 1)]))
        except NotAnEncoding:
            pass
    # otherwise each exponent is the number of one script line
    lines = []
    for e in exps:
        sub = e if isinstance(e, GodelNumber) else GodelNumber(PRIME, raw=e)
        text = symbols_text(sub.exponents())
        if "\n" in text:
            raise NotAnEncoding("script line contains a newline")
        try:
            lines.append(parse_line(runs_of([(text, 1)])))
        except (ScriptError, ParseError) as exc:
            raise NotAnEncoding(str(exc)) from None
    try:
        return ProofScript(tuple(lines))
    except ScriptError as exc:
        raise NotAnEncoding(str(exc)) from None
