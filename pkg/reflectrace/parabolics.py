"""
Finite parabolic subgroups W_T and their trace groupoids.

A spherical W_T is enumerated completely, then conjugacy classes and
centralizers are read off a precomputed multiplication table.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .coxeter import DEFAULT_BALL_CAP, CoxeterSystem, Element, canonical_word, is_spherical
from .errors import CapExceededError, NotInGroupError, NotSphericalError
from .scalars import QMatrix

logger = logging.getLogger(__name__)


def subset_key(subset: Iterable[int]) -> Tuple[int, Tuple[int, ...]]:
    members = tuple(sorted(subset))
    return (len(members), members)


@dataclass
class FiniteParabolic:
    """All elements of a finite W_T, sorted ShortLex by canonical word."""

    type: FrozenSet[int]
    elements: List[Element]
    _index: Dict[QMatrix, int] = field(default_factory=dict, repr=False)
    _table: Optional[List[List[int]]] = field(default=None, repr=False)
    _inverse: Optional[List[int]] = field(default=None, repr=False)

    def __post_init__(self):
        self._index = {w.matrix: i for i, w in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, w: Element) -> bool:
        return w.matrix in self._index

    def index(self, w: Element) -> int:
        try:
            return self._index[w.matrix]
        except KeyError:
            raise NotInGroupError(f"element {w.word} is not in W_{sorted(self.type)}") from None

    def canonical(self, w: Element) -> Element:
        """The stored copy of w, carrying its canonical word."""
        return self.elements[self.index(w)]

    def table(self) -> List[List[int]]:
        if self._table is None:
            n = self.order
            self._table = [[self._index[(a * b).matrix] for b in self.elements] for a in self.elements]
            identity = 0
            self._inverse = [row.index(identity) for row in self._table]
            logger.debug(f"Multiplication table for W_{sorted(self.type)}: {n}x{n}")
        return self._table

    def inverse_index(self, i: int) -> int:
        self.table()
        return self._inverse[i]

    def product(self, a: Element, b: Element) -> Element:
        return self.elements[self.table()[self.index(a)][self.index(b)]]

    def inverse(self, w: Element) -> Element:
        return self.elements[self.inverse_index(self.index(w))]

    def conjugate_index(self, g: int, w: int) -> int:
        table = self.table()
        return table[table[g][w]][self.inverse_index(g)]


@dataclass
class TraceSummand:
    """One conjugacy class of W_T: the groupoid piece */C(representative)."""

    representative: Element
    class_elements: List[Element]
    centralizer: List[Element]


@dataclass
class TraceDecomposition:
    parabolic: FiniteParabolic
    summands: List[TraceSummand]


def enumerate_parabolic(sys: CoxeterSystem, T: Iterable[int], cap: int = DEFAULT_BALL_CAP) -> FiniteParabolic:
    """BFS closure of W_T inside W; terminates because W_T is finite."""
    members = frozenset(T)
    if not is_spherical(sys, members):
        names = ", ".join(sys.generators[s] for s in sorted(members))
        raise NotSphericalError(f"W_T is infinite for T = {{{names}}}")
    generators = sorted(members)
    seen = {sys.identity.matrix: sys.identity}
    frontier = [sys.identity]
    while frontier:
        next_frontier = []
        for w in frontier:
            for s in generators:
                candidate = sys.times_generator(w, s)
                if candidate.matrix not in seen:
                    seen[candidate.matrix] = candidate
                    next_frontier.append(candidate)
                    if len(seen) > cap:
                        raise CapExceededError(f"parabolic W_{generators} exceeds cap of {cap} elements")
        frontier = next_frontier
    elements = [Element(w.matrix, canonical_word(sys, w)) for w in seen.values()]
    elements.sort(key=lambda w: (len(w.word), w.word))
    return FiniteParabolic(type=members, elements=elements)


def conjugacy_classes(P: FiniteParabolic) -> List[List[Element]]:
    """Conjugation orbits, each listed ShortLex; classes ordered by representative."""
    assigned = [False] * P.order
    classes = []
    for w in range(P.order):
        if assigned[w]:
            continue
        orbit = sorted({P.conjugate_index(g, w) for g in range(P.order)})
        for i in orbit:
            assigned[i] = True
        classes.append([P.elements[i] for i in orbit])
    return classes


def centralizer_in_parabolic(P: FiniteParabolic, w: Element) -> List[Element]:
    table = P.table()
    i = P.index(w)
    return [P.elements[g] for g in range(P.order) if table[g][i] == table[i][g]]


def trace_decomposition(P: FiniteParabolic) -> TraceDecomposition:
    """Tr(W_T) = W_T/W_T as a disjoint union of */C(w) over classes."""
    summands = []
    for orbit in conjugacy_classes(P):
        representative = orbit[0]
        summands.append(TraceSummand(
            representative=representative,
            class_elements=orbit,
            centralizer=centralizer_in_parabolic(P, representative),
        ))
    return TraceDecomposition(parabolic=P, summands=summands)


class ParabolicCache:
    """Enumerated parabolics of one system, keyed by generator subset."""

    def __init__(self, sys: CoxeterSystem, cap: int = DEFAULT_BALL_CAP):
        self.sys = sys
        self.cap = cap
        self._groups: Dict[FrozenSet[int], FiniteParabolic] = {}

    def __getitem__(self, T: Iterable[int]) -> FiniteParabolic:
        key = frozenset(T)
        if key not in self._groups:
            self._groups[key] = enumerate_parabolic(self.sys, key, self.cap)
        return self._groups[key]
