"""Acceptance criteria, one PASS/FAIL line each.

Run under pytest (the lines are printed even without ``-s``) or directly:
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import random
import sys
import time
from dataclasses import dataclass, replace
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from generators import random_formula, random_script  # noqa: E402
from pacheck import godel  # noqa: E402
from pacheck.beta import beta, encode_sequence  # noqa: E402
from pacheck.cli import _tokens, corpus_matrix, default_corpus, format_matrix, monotonicity_violations  # noqa: E402
from pacheck.diagonal import self_reference_demo  # noqa: E402
from pacheck.kernel import (  # noqa: E402
    CHAINS, PROFILE_NAMES, PROFILES, BoundViolatedAt, Justification, Line, ProofScript,
    check_certificate, check_proof, load_certificate, load_script,
)
from pacheck.models import (  # noqa: E402
    CA, OMEGA, ONE, ZERO, Ordinal, TruthValue, check_axioms_over_naturals, eval_formula,
)
from pacheck.primrec import (  # noqa: E402
    STANDARD_DEFINITIONS, check_representation, instantiate_proof, q_check, reflexivity_proof,
    representation_report,
)
from pacheck.syntax import numeral, parse_formula  # noqa: E402


@dataclass(frozen=True)
class Outcome:
    ok: bool
    detail: str


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    limit: float | None
    run: object


CRITERIA: dict[int, Criterion] = {}


def criterion(number: int, title: str, limit: float | None = None):
    def register(fn):
        CRITERIA[number] = Criterion(number, title, limit, fn)
        return fn
    return register


def evaluate(c: Criterion) -> tuple[bool, str]:
    start = time.perf_counter()
    try:
        out = c.run()
    except Exception as exc:  # a crash is a failure, reported on the line
        out = Outcome(False, f"raised {type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - start
    in_time = c.limit is None or elapsed < c.limit
    ok = out.ok and in_time
    limit = f"limit {c.limit:g}s" if c.limit is not None else "no time limit"
    line = (f"CRITERION {c.number} {'PASS' if ok else 'FAIL'} {c.title}: {out.detail} "
            f"[{elapsed:.2f}s, {limit}]")
    return ok, line


# ------------------------------------------------------------- criteria

@criterion(1, "codec round-trip", limit=10)
def codec_round_trip() -> Outcome:
    rng = random.Random(1)
    formulas = [random_formula(rng, 8) for _ in range(1000)]
    scripts = [random_script(rng, 6) for _ in range(100)]
    failures = 0
    for codec in godel.CODECS:
        for obj in itertools.chain(formulas, scripts):
            if godel.decode(godel.encode(obj, codec)) != obj:
                failures += 1
    return Outcome(failures == 0, f"1000 formulas + 100 scripts x 2 codecs, {failures} failures")


@criterion(2, "beta lemma", limit=30)
def beta_lemma() -> Outcome:
    seqs = [s for n in range(5) for s in itertools.product(range(9), repeat=n)]
    rng = random.Random(2)
    seqs += [tuple(rng.randint(0, 20) for _ in range(rng.randint(0, 6))) for _ in range(200)]
    bad = 0
    for a in seqs:
        w = encode_sequence(a)
        if any(beta(w.u, w.v, i) != x for i, x in enumerate(a)):
            bad += 1
    w = encode_sequence([2, 3])
    minimal = (w.u, w.v) == (8, 2)
    return Outcome(bad == 0 and minimal, f"{len(seqs)} sequences, {bad} bad; [2,3] -> {w}")


@criterion(3, "profile matrix", limit=10)
def profile_matrix() -> Outcome:
    corpus = default_corpus()
    rows = corpus_matrix(corpus)
    same = _tokens(format_matrix(rows)) == _tokens((corpus / "expected-matrix.txt").read_text())

    def accepted_in(name):
        return {p for p, ok in zip(PROFILE_NAMES, rows[name]) if ok}

    replay = load_script(corpus / "closed-implies-open.prf")
    gen_line = next(ln.index for ln in replay.lines if ln.just.rule == "gen")
    at_gen = all(
        (v := check_proof(replay, PROFILES[p])).line == gen_line and "GEN" in v.reason
        for p in ("omega-PA", "omega1-PA"))
    checks = {
        "matrix": same,
        "replay": "PA" in accepted_in("closed-implies-open") and at_gen,
        "gen-final": accepted_in("gen-final") == {"strong-GA", "PA"},
        "omega-num": accepted_in("omega-num") == {"omega-GA", "omega-PA", "omega1-PA", "omega2-PA"},
    }
    failed = [k for k, ok in checks.items() if not ok]
    return Outcome(not failed and len(rows) >= 12,
                   f"{len(rows)} scripts x {len(PROFILE_NAMES)} profiles" + (f"; failed {failed}" if failed else ""))


@criterion(4, "profile monotonicity")
def profile_monotonicity() -> Outcome:
    rows = corpus_matrix(default_corpus())
    chain_pairs = {(a, b) for chain in CHAINS for a, b in itertools.combinations(chain, 2)}
    chains_ok = all(PROFILES[a] <= PROFILES[b] for a, b in chain_pairs)
    bad = monotonicity_violations(rows)
    return Outcome(chains_ok and not bad,
                   f"{len(chain_pairs)} chain pairs (all comparable pairs swept), {len(bad)} violations")


@criterion(5, "representation of add and mul", limit=60)
def representation() -> Outcome:
    bad = []
    for name in ("add", "mul"):
        fn = STANDARD_DEFINITIONS[name]
        for a, b in itertools.product(range(6), repeat=2):
            r = representation_report(fn, [a, b])
            if not (r.ok and r.definite and check_representation(fn, [a, b])):
                bad.append(f"{name}({a},{b})")
    return Outcome(not bad, f"72 cases, window value+5, {len(bad)} failures {bad[:3]}")


def _a5_proof() -> ProofScript:
    line = Line(1, parse_formula("((x1 + 0) = x1)"), Justification("axiom", ("A5",)))
    return ProofScript((line,))


def _a7_proof() -> ProofScript:
    line = Line(1, parse_formula("((x1 * 0) = 0)"), Justification("axiom", ("A7",)))
    return ProofScript((line,))


def self_reference_pairs():
    """(K, M) pairs, half of them genuine, for the q equivalence check."""
    bases = {
        "(x1 = x1)": reflexivity_proof(),
        "((x1 + 0) = x1)": _a5_proof(),
        "((x1 * 0) = 0)": _a7_proof(),
    }
    pairs = []
    for text, base in bases.items():
        k = parse_formula(text)
        kn = int(godel.encode(k, godel.POSITIONAL))
        for n, label in ((kn, "own number"), (kn + 1, "off by one"), (0, "zero"), (7, "seven")):
            pairs.append((k, instantiate_proof(base, 1, numeral(n)), label))
        pairs.append((k, base, "uninstantiated"))
    reflexive = parse_formula("(x1 = x1)")
    pairs.append((reflexive, pairs[5][1], "another K's proof"))
    pairs.append((parse_formula("((x1 + 0) = x1)"), pairs[0][1], "another K's proof"))
    pairs.append((parse_formula("((x1 * 0) = 0)"), pairs[0][1], "another K's proof"))
    pairs.append((reflexive, reflexivity_proof(numeral(int(godel.encode(reflexive)))), "direct"))
    pairs.append((reflexive, reflexivity_proof(numeral(3)), "direct, wrong numeral"))
    return pairs


@criterion(6, "self-reference")
def self_reference() -> Outcome:
    pa = PROFILES["PA"]
    k = parse_formula("(x1 = x1)")
    kn = godel.encode(k, godel.POSITIONAL)
    proof = reflexivity_proof(numeral(int(kn)))
    genuine = q_check(kn, godel.encode(proof, godel.POSITIONAL), pa)
    absurd = parse_formula("(0 = 0')")
    surviving = [ln.index for ln in proof.lines
                 if q_check(kn, godel.encode(proof.replace(ln.index, absurd)), pa)]
    pairs = self_reference_pairs()
    verdicts = [self_reference_demo(kk, m, pa, godel.POSITIONAL) for kk, m, _ in pairs]
    ok = genuine and not surviving and len(pairs) == 20 and any(verdicts) and not all(verdicts)
    return Outcome(ok, f"q(K#, M#) = {genuine}; {len(proof.lines)} mutants, {len(surviving)} accepted; "
                       f"{len(pairs)} pairs agree ({sum(verdicts)} true)")


@criterion(7, "omega-specification growth")
def omega_growth() -> Outcome:
    corpus = default_corpus()
    cert = load_certificate(corpus / "certified.cert")
    omega2 = PROFILES["omega2-PA"]
    codes = [godel.encode(cert.instantiate(n), godel.POSITIONAL) for n in range(51)]
    increasing = all(a < b for a, b in zip(codes, codes[1:]))
    # any finite bound is overtaken: bound just above instance m fails at m + 1
    overtaken = all(
        check_certificate(replace(cert, bound_k=godel.GodelNumber.from_int(int(codes[m]) + 1),
                                  horizon_n=m + 3), omega2) == BoundViolatedAt(m + 1, codes[m + 1])
        for m in range(10))
    demo = check_certificate(load_certificate(corpus / "violated.cert"), omega2)
    demo_ok = isinstance(demo, BoundViolatedAt) and demo.n <= 1
    return Outcome(increasing and overtaken and demo_ok,
                   f"codes increasing for n = 0..50: {increasing}; bounds overtaken: {overtaken}; demo {demo}")


@criterion(8, "ordinal model", limit=10)
def ordinal_model() -> Outcome:
    one_omega = ONE + OMEGA
    absorb = one_omega == OMEGA and OMEGA + ONE != OMEGA
    report = check_axioms_over_naturals(CA, 6)
    rng = random.Random(8)

    def rand():
        exps = sorted(rng.sample(range(5), rng.randint(0, 3)), reverse=True)
        return Ordinal(tuple((e, rng.randint(1, 5)) for e in exps))

    law_failures = 0
    for _ in range(1000):
        a, b, c = rand(), rand(), rand()
        laws = (
            (a + b) + c == a + (b + c),
            (a * b) * c == a * (b * c),
            a * (b + c) == a * b + a * c,
            a + ZERO == a == ZERO + a,
            a * ONE == a == ONE * a,
            not (b < c) or a + b < a + c,
            a <= a + b and b <= a + b,
        )
        law_failures += not all(laws)
    ok = absorb and report.all_pass and report.a9_at_omega is TruthValue.FALSE and law_failures == 0
    a9 = eval_formula(parse_formula("(~(x1 = 0) -> (E x2)(x1 = x2'))"), CA, {1: OMEGA})
    return Outcome(ok and a9 is TruthValue.FALSE,
                   f"1 + omega = {one_omega}, omega + 1 = {OMEGA + ONE}; A1-A9 over n <= 6: "
                   f"{'all True' if report.all_pass else 'FAILED'}; A9 at omega: {report.a9_at_omega}; "
                   f"{law_failures} law failures in 1000 triples")


# ---------------------------------------------------------------- pytest

@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    ok, line = evaluate(CRITERIA[number])
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


def main() -> int:
    results = [evaluate(CRITERIA[n]) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    return 0 if all(ok for ok, _ in results) else 1


if __name__ == "__main__":
    sys.exit(main())
