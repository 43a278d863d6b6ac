import pytest

from pacheck.diagonal import Disagreement, anand_fixedpoint, goedel_sentence, self_reference_demo
from pacheck.godel import POSITIONAL, PRIME, decode, encode
from pacheck.kernel import PROFILES, ProofScript
from pacheck.primrec import reflexivity_proof
from pacheck.syntax import ForAll, Not, free_vars, numeral, parse_formula, substitute

W = parse_formula("(x1 = x2)")
PA = PROFILES["PA"]


class TestGoedel:
    @pytest.mark.parametrize("codec", [POSITIONAL, PRIME])
    def test_shape(self, codec):
        r = goedel_sentence(W, codec)
        assert r.pre == ForAll(2, Not(W))
        assert r.fixed_gn == encode(r.pre, codec)
        assert decode(r.fixed_gn) == r.pre
        assert free_vars(r.sentence) == set()
        assert r.sentence == ForAll(2, Not(substitute(W, 1, numeral(int(r.fixed_gn)))))

    def test_requires_two_variables(self):
        with pytest.raises(ValueError):
            goedel_sentence(parse_formula("(x1 = 0)"))
        with pytest.raises(ValueError):
            goedel_sentence(parse_formula("((x1 = x2) -> (x3 = 0))"))


class TestAnand:
    def test_x2_stays_free(self):
        r = anand_fixedpoint(W)
        assert r.pre == Not(W)
        assert free_vars(r.sentence) == {2}
        assert r.sentence == Not(substitute(W, 1, numeral(int(r.fixed_gn))))

    def test_codes_differ_from_goedel(self):
        assert anand_fixedpoint(W).fixed_gn != goedel_sentence(W).fixed_gn


class TestSelfReference:
    K = parse_formula("(x1 = x1)")

    def test_true_pair(self):
        k = encode(self.K, POSITIONAL)
        assert self_reference_demo(self.K, reflexivity_proof(numeral(int(k))), PA, POSITIONAL)

    def test_prime_codec_cannot_number_the_proof(self):
        # the proof spells out numeral(K#) symbol by symbol: far too many prime factors
        k = encode(self.K, PRIME)
        with pytest.raises(OverflowError):
            self_reference_demo(self.K, reflexivity_proof(numeral(int(k))), PA, PRIME)

    def test_false_pair(self):
        assert not self_reference_demo(self.K, reflexivity_proof(numeral(0)), PA)
        assert not self_reference_demo(self.K, reflexivity_proof(), PA)

    def test_wrong_system(self):
        k = encode(self.K)
        assert not self_reference_demo(self.K, reflexivity_proof(numeral(int(k))), PROFILES["weak-PA"])

    def test_needs_single_x1(self):
        with pytest.raises(ValueError):
            self_reference_demo(W, reflexivity_proof(), PA)

    def test_disagreement_is_an_assertion(self):
        assert issubclass(Disagreement, AssertionError)
        assert isinstance(reflexivity_proof(), ProofScript)
