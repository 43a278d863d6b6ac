"""The eight fixed system profiles."""

from __future__ import annotations

from dataclasses import dataclass, replace

from pacheck.kernel.script import AXIOM_TAGS

MP, GEN, OMEGA_NUM, OMEGA_SPEC = "MP", "GEN", "OMEGA-NUM", "OMEGA-SPEC"
IND_CLOSED, IND_OPEN = "IND-CLOSED", "IND-OPEN"


@dataclass(frozen=True)
class SystemProfile:
    name: str
    axioms: frozenset
    induction: frozenset
    rules: frozenset

    def __le__(self, other: "SystemProfile") -> bool:
        """Componentwise inclusion."""
        return (self.axioms <= other.axioms and self.induction <= other.induction
                and self.rules <= other.rules)

    def without(self, rule: str) -> "SystemProfile":
        return replace(self, name=f"{self.name}-without-{rule}", rules=self.rules - {rule})


_ALL = frozenset(AXIOM_TAGS)


def _p(name, induction, rules):
    return SystemProfile(name, _ALL, frozenset(induction), frozenset(rules))


PROFILES = {p.name: p for p in (
    _p("weak-GA", (), (MP,)),
    _p("strong-GA", (), (MP, GEN)),
    _p("weak-PA", (IND_CLOSED,), (MP,)),
    _p("PA", (IND_CLOSED,), (MP, GEN)),
    _p("omega-GA", (), (MP, OMEGA_NUM)),
    _p("omega-PA", (IND_OPEN,), (MP, OMEGA_NUM)),
    _p("omega1-PA", (IND_CLOSED, IND_OPEN), (MP, OMEGA_NUM)),
    _p("omega2-PA", (IND_CLOSED, IND_OPEN), (MP, OMEGA_NUM, OMEGA_SPEC)),
)}

PROFILE_NAMES = tuple(PROFILES)

# the inclusion chains the corpus must respect
CHAINS = (
    ("weak-GA", "strong-GA", "PA"),
    ("weak-GA", "weak-PA", "PA"),
    ("weak-GA", "omega-GA", "omega-PA", "omega1-PA", "omega2-PA"),
)


class UnknownProfile(KeyError):
    pass


def system_profile(name: str) -> SystemProfile:
    try:
        return PROFILES[name]
    except KeyError:
        raise UnknownProfile(f"unknown system {name!r}; expected one of {', '.join(PROFILES)}") from None
