"""Proof kernel: system profiles, axiom matching, proof and certificate checking."""

from pacheck.kernel.script import (
    AXIOM_TAGS, Justification, Line, ProofScript, ScriptError,
    format_script, load_script, parse_justification, parse_line, parse_script,
)
from pacheck.kernel.profiles import (
    CHAINS, PROFILE_NAMES, PROFILES, SystemProfile, UnknownProfile, system_profile,
)
from pacheck.kernel.axioms import ARITHMETIC_AXIOMS, axiom_tags_of, match_axiom
from pacheck.kernel.checker import (
    BoundViolatedAt, CertifiedUpTo, InvalidTemplateAt, OmegaSpecCertificate, Verdict,
    check_certificate, check_proof, load_certificate, parse_certificate,
)

__all__ = [
    "AXIOM_TAGS",
    "Justification",
    "Line",
    "ProofScript",
    "ScriptError",
    "format_script",
    "load_script",
    "parse_justification",
    "parse_line",
    "parse_script",
    "CHAINS",
    "PROFILE_NAMES",
    "PROFILES",
    "SystemProfile",
    "UnknownProfile",
    "system_profile",
    "ARITHMETIC_AXIOMS",
    "axiom_tags_of",
    "match_axiom",
    "BoundViolatedAt",
    "CertifiedUpTo",
    "InvalidTemplateAt",
    "OmegaSpecCertificate",
    "Verdict",
    "check_certificate",
    "check_proof",
    "load_certificate",
    "parse_certificate",
]
