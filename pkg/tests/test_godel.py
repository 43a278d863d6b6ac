import pytest
from hypothesis import given, settings

from generators import formulas, random_formula, random_script, seeded, terms
from pacheck import godel
from pacheck.godel import (
    MAX_BITS, POSITIONAL, PRIME, CodecMismatch, GodelNumber, NotAnEncoding,
    decode, encode, gn_compare, parse_decimal,
)
from pacheck.kernel import load_script
from pacheck.syntax import ForAll, Not, Var, numeral, parse_formula, parse_term, print_formula, print_term

# ------------------------------------------------------------------ oracles

_TABLE = {"0": 1, "'": 3, "~": 5, "->": 7, "(": 9, ")": 11, "=": 13, "+": 15, "*": 17, "A": 19, " ": 21}


def bijective_oracle(text: str) -> int:
    """Bijective base 256, byte b read as digit b + 1, most significant first."""
    n = 0
    for ch in text.encode("latin-1"):
        n = n * 256 + ch + 1
    return n


def sieve(limit: int) -> list[int]:
    flags = [True] * (limit + 1)
    flags[0] = flags[1] = False
    for i in range(2, int(limit ** 0.5) + 1):
        if flags[i]:
            flags[i * i::i] = [False] * len(flags[i * i::i])
    return [i for i, f in enumerate(flags) if f]


def tokens_oracle(text: str) -> list[int]:
    out, i = [], 0
    while i < len(text):
        if text[i] == "x":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(2 * int(text[i + 1:j]))
            i = j
        elif text.startswith("->", i):
            out.append(_TABLE["->"])
            i += 2
        else:
            out.append(_TABLE[text[i]])
            i += 1
    return out


def prime_oracle(text: str) -> int:
    codes = tokens_oracle(text)
    primes = sieve(max(50, 20 * len(codes)))[: len(codes)]
    n = 1
    for p, e in zip(primes, codes):
        n *= p ** e
    return n


# -------------------------------------------------------------------- tests

class TestPositional:
    @pytest.mark.parametrize("text", ["0", "(0 = 0)", "x1", "((x1 + 0) = x1)", "(A x2)~(x2 = 0')"])
    def test_matches_oracle(self, text):
        obj = parse_term(text) if "=" not in text else parse_formula(text)
        assert int(encode(obj, POSITIONAL)) == bijective_oracle(text)

    @given(formulas)
    def test_formula_oracle_and_round_trip(self, f):
        g = encode(f, POSITIONAL)
        assert int(g) == bijective_oracle(print_formula(f))
        assert decode(g) == f
        assert decode(GodelNumber.from_int(int(g), POSITIONAL)) == f

    @given(terms)
    def test_term_round_trip(self, t):
        assert int(encode(t, POSITIONAL)) == bijective_oracle(print_term(t))
        assert decode(encode(t, POSITIONAL)) == t

    def test_zero_encodes_nothing(self):
        with pytest.raises(NotAnEncoding):
            decode(GodelNumber.from_int(0, POSITIONAL))

    @pytest.mark.parametrize("n", [1, 2, 300, 12345678])
    def test_non_codes_rejected(self, n):
        g = GodelNumber.from_int(n, POSITIONAL)
        try:
            obj = decode(g)
        except NotAnEncoding:
            return
        assert encode(obj, POSITIONAL) == g

    def test_from_int_inverts_int(self):
        for n in list(range(0, 600)) + [65792, 65793, 10 ** 20]:
            assert int(GodelNumber.from_int(n, POSITIONAL)) == n

    def test_shortlex_order(self):
        short = encode(parse_formula("(0 = 0)"), POSITIONAL)
        long = encode(parse_formula("(0 = 0')"), POSITIONAL)
        assert short < long

    def test_huge_numeral_stays_symbolic(self):
        g = encode(numeral(10 ** 7), POSITIONAL)
        assert not g.materialisable
        with pytest.raises(OverflowError):
            int(g)
        assert "positional" in str(g)
        assert g > encode(numeral(10 ** 6), POSITIONAL)
        assert decode(g) == numeral(10 ** 7)


class TestPrime:
    def test_successor_of_zero(self):
        assert decode(GodelNumber.from_int(54, PRIME)) == parse_term("0'")
        assert int(encode(parse_term("0'"), PRIME)) == 2 * 27

    @pytest.mark.parametrize("text", ["0", "x3", "(0 = 0)", "~(x1 = x2)", "((x1 * 0) = 0)"])
    def test_matches_oracle(self, text):
        obj = parse_term(text) if "=" not in text else parse_formula(text)
        assert int(encode(obj, PRIME)) == prime_oracle(text)

    @given(formulas)
    @settings(max_examples=60)
    def test_round_trip(self, f):
        g = encode(f, PRIME)
        assert decode(g) == f
        assert int(g) == prime_oracle(print_formula(f))

    @pytest.mark.parametrize("n", [0, 1, 3, 6, 2 ** 2 * 5, 2 ** 13])
    def test_non_codes(self, n):
        with pytest.raises(NotAnEncoding):
            decode(GodelNumber.from_int(n, PRIME))

    def test_symbolic_exponents_for_large_objects(self):
        f = parse_formula("(A x1)((x1 + 0) = x1)")
        k = encode(f, PRIME)
        assert k.materialisable
        big = encode(ForAll(2, Not(parse_formula("(x2 = x2)"))), PRIME)
        assert big.materialisable

    def test_script_code_is_product_of_line_codes(self, corpus_dir):
        s = load_script(corpus_dir / "mp-chain.prf")
        g = encode(s, PRIME)
        assert decode(g) == s
        assert g.exps is not None or g.raw > 0

    def test_codec_mismatch(self):
        g = encode(parse_formula("(0 = 0)"), PRIME)
        with pytest.raises(CodecMismatch):
            decode(g, POSITIONAL)


class TestCommon:
    @pytest.mark.parametrize("codec", [POSITIONAL, PRIME])
    def test_numerals_monotone(self, codec):
        codes = [encode(numeral(n), codec) for n in range(51)]
        assert all(a < b for a, b in zip(codes, codes[1:]))
        values = [int(c) for c in codes]
        assert values == sorted(set(values))

    @pytest.mark.parametrize("codec", [POSITIONAL, PRIME])
    def test_injective_on_sample(self, codec):
        rng = seeded(11)
        seen = {}
        for _ in range(400):
            f = random_formula(rng, 5)
            g = encode(f, codec)
            assert seen.setdefault(g, f) == f

    @pytest.mark.parametrize("codec", [POSITIONAL, PRIME])
    def test_script_round_trip(self, codec, corpus_dir):
        for path in sorted(corpus_dir.glob("*.prf")):
            s = load_script(path)
            assert decode(encode(s, codec)) == s, path.name

    @pytest.mark.parametrize("codec", [POSITIONAL, PRIME])
    def test_random_script_round_trip(self, codec):
        rng = seeded(3)
        for _ in range(40):
            s = random_script(rng, 4)
            assert decode(encode(s, codec)) == s

    def test_compare_mixed_representations(self):
        a = encode(numeral(5), PRIME)
        b = GodelNumber.from_int(int(a) + 1, PRIME)
        assert gn_compare(a, b) < 0
        assert gn_compare(b, a) > 0
        assert gn_compare(a, a) == 0

    def test_parse_decimal(self):
        assert int(parse_decimal("  1234 ")) == 1234
        with pytest.raises(ValueError):
            parse_decimal("-3")

    def test_env_default(self, monkeypatch):
        monkeypatch.setenv("PACHECK_CODEC", "prime")
        assert encode(Var(1)).codec == PRIME
        monkeypatch.setenv("PACHECK_CODEC", "other")
        with pytest.raises(ValueError):
            godel.default_codec()

    def test_max_bits_is_positive(self):
        assert MAX_BITS > 1 << 20
