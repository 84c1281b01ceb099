"""
Golden expectations: the known answers for the shipped systems.

The table lives in data/golden.json, keyed by system name. Expected
fundamental groups are rendered tags; "W" stands for a Coxeter
presentation isomorphic to the system itself.
"""

import json
import logging
import os
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple

from .coxeter import CoxeterSystem
from .presentations import COXETER, GroupTag, coxeter_matrices_isomorphic

logger = logging.getLogger(__name__)

WHOLE_GROUP = "W"


@dataclass(frozen=True)
class GoldenExpectation:
    name: str
    type_class: str
    objects: int
    components: int
    pi1: Tuple[str, ...]
    decomposition: Optional[str] = None


def _golden_text() -> str:
    try:
        if hasattr(resources, "files"):
            return resources.files("reflectrace").joinpath("data", "golden.json").read_text(encoding="utf-8")
    except (ModuleNotFoundError, TypeError, AttributeError, FileNotFoundError):
        pass
    path = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data", "golden.json")
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


@lru_cache(maxsize=1)
def load_golden() -> Dict[str, GoldenExpectation]:
    raw = json.loads(_golden_text())
    table = {}
    for name, entry in raw.items():
        table[name] = GoldenExpectation(
            name=name,
            type_class=entry["type_class"],
            objects=entry["objects"],
            components=entry["components"],
            pi1=tuple(entry["pi1"]),
            decomposition=entry.get("decomposition"),
        )
    return table


def golden_for(name: str) -> Optional[GoldenExpectation]:
    return load_golden().get(name)


def tag_name(tag: GroupTag, sys: CoxeterSystem) -> str:
    """Rendered tag, with "W" for a Coxeter presentation of the system itself."""
    if tag.kind == COXETER and coxeter_matrices_isomorphic(tag.matrix, sys.matrix):
        return WHOLE_GROUP
    return tag.render()


def match_pi1(expected: Sequence[str], actual: Sequence[str]) -> Tuple[bool, List[str], List[str]]:
    """Multiset comparison; returns (equal, missing, unexpected)."""
    want, got = Counter(expected), Counter(actual)
    missing = sorted((want - got).elements())
    unexpected = sorted((got - want).elements())
    return not missing and not unexpected, missing, unexpected
