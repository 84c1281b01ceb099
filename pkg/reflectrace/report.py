"""
Theorem reports: three-valued check results, the JSON report tree, and the
disjoint-union notation used when printing decompositions.
"""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence

# Check statuses
PASS = "pass"
FAIL = "fail"
UNKNOWN = "unknown"

# Overall outcomes
VERIFIED = "Verified"
VERIFIED_WITH_UNKNOWNS = "VerifiedWithUnknowns"
FAILED = "Failed"

EXIT_CODES = {
    VERIFIED: 0,
    VERIFIED_WITH_UNKNOWNS: 10,
    FAILED: 20,
}


def combine(statuses: Iterable[str]) -> str:
    """fail beats unknown beats pass; an empty list passes."""
    statuses = list(statuses)
    if FAIL in statuses:
        return FAIL
    if UNKNOWN in statuses:
        return UNKNOWN
    return PASS


def overall_status(statuses: Iterable[str]) -> str:
    return {PASS: VERIFIED, UNKNOWN: VERIFIED_WITH_UNKNOWNS, FAIL: FAILED}[combine(statuses)]


@dataclass
class ClaimResult:
    """Outcome of one named check, with JSON-ready details."""

    name: str
    status: str
    details: Dict[str, Any] = field(default_factory=dict)
    messages: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"status": self.status}
        out.update(self.details)
        if self.messages:
            out["messages"] = list(self.messages)
        return out


@dataclass
class ComponentSummary:
    """One connected component of the Grothendieck construction."""

    index: int
    base: str
    objects: int
    generators: int
    relators: List[str]
    recognized: str
    expected: Optional[str]
    pi0_verdicts: List[str]
    well_defined: str
    central: str
    fullness: str
    faithfulness: str
    status: str
    messages: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "base": self.base,
            "objects": self.objects,
            "pi1": {
                "generators": self.generators,
                "relators": list(self.relators),
                "recognized": self.recognized,
                "expected": self.expected,
            },
            "pi0_verdicts": list(self.pi0_verdicts),
            "status": self.status,
            "well_defined": self.well_defined,
            "central": self.central,
            "fullness": self.fullness,
            "faithfulness": self.faithfulness,
            "messages": list(self.messages),
        }


@dataclass
class TheoremReport:
    system: str
    type_class: str
    spherical_poset: List[List[str]]
    components: List[ComponentSummary]
    claims: Dict[str, ClaimResult]
    overall: str

    def to_dict(self) -> Dict[str, Any]:
        return {
            "system": self.system,
            "type_class": self.type_class,
            "spherical_poset": [list(T) for T in self.spherical_poset],
            "components": [c.to_dict() for c in self.components],
            "claims": {name: claim.to_dict() for name, claim in self.claims.items()},
            "overall": self.overall,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, ensure_ascii=False) + "\n"

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.overall]

    def decomposition(self) -> str:
        return decomposition([c.recognized for c in self.components])


def decomposition(groups: Sequence[str]) -> str:
    """•/G_1 ⊔ •/G_2 ⊔ ... for rendered automorphism groups."""
    return " ⊔ ".join(f"•/{g}" for g in groups)
