"""Random syntax for property tests: seeded generators and hypothesis strategies."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from pacheck.kernel import Justification, Line, ProofScript
from pacheck.syntax import Add, Eq, ForAll, Implies, Mul, Not, Succ, Var, Zero

MAX_VAR = 6


# ----------------------------------------------------------- seeded (random)

def random_term(rng: random.Random, depth: int):
    if depth <= 0 or rng.random() < 0.3:
        return Zero() if rng.random() < 0.4 else Var(rng.randint(1, MAX_VAR))
    kind = rng.randrange(3)
    if kind == 0:
        return Succ(random_term(rng, depth - 1), rng.randint(1, 3))
    cls = Add if kind == 1 else Mul
    return cls(random_term(rng, depth - 1), random_term(rng, depth - 1))


def random_formula(rng: random.Random, depth: int = 8):
    if depth <= 1 or rng.random() < 0.2:
        return Eq(random_term(rng, min(depth, 3)), random_term(rng, min(depth, 3)))
    kind = rng.randrange(3)
    if kind == 0:
        return Not(random_formula(rng, depth - 1))
    if kind == 1:
        return Implies(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    return ForAll(rng.randint(1, MAX_VAR), random_formula(rng, depth - 1))


def random_justification(rng: random.Random, index: int) -> Justification:
    earlier = list(range(1, index))
    choices = ["axiom", "hyp"]
    if earlier:
        choices += ["mp", "gen", "ind-closed", "ind-open", "omega-num"]
    rule = rng.choice(choices)
    if rule == "axiom":
        return Justification("axiom", (rng.choice(["K1", "K2", "K3", "K4", "K5", "A1", "A5", "A9"]),))
    if rule == "hyp":
        return Justification("hyp")
    if rule == "gen":
        return Justification("gen", (rng.choice(earlier), rng.randint(1, MAX_VAR)))
    if rule == "omega-num":
        return Justification("omega-num", (rng.choice(earlier), rng.randint(0, 20)))
    return Justification(rule, (rng.choice(earlier), rng.choice(earlier)))


def random_script(rng: random.Random, max_lines: int = 6) -> ProofScript:
    n = rng.randint(1, max_lines)
    lines = tuple(Line(i, random_formula(rng, 4), random_justification(rng, i)) for i in range(1, n + 1))
    return ProofScript(lines)


# ------------------------------------------------------ hypothesis strategies

variables = st.integers(1, MAX_VAR).map(Var)

terms = st.recursive(
    st.one_of(st.just(Zero()), variables),
    lambda sub: st.one_of(
        st.builds(Succ, sub, st.integers(1, 3)),
        st.builds(Add, sub, sub),
        st.builds(Mul, sub, sub),
    ),
    max_leaves=6,
)

closed_terms = st.recursive(
    st.just(Zero()),
    lambda sub: st.one_of(st.builds(Succ, sub, st.integers(1, 3)), st.builds(Add, sub, sub)),
    max_leaves=4,
)

formulas = st.recursive(
    st.builds(Eq, terms, terms),
    lambda sub: st.one_of(
        st.builds(Not, sub),
        st.builds(Implies, sub, sub),
        st.builds(ForAll, st.integers(1, MAX_VAR), sub),
    ),
    max_leaves=8,
)


def seeded(seed: int) -> random.Random:
    return random.Random(seed)
