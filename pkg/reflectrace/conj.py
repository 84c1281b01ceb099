"""
Conjugacy in the full group W, with certificates.

Decisions are layered: a conjugation-invariant that differs proves
non-conjugacy, a bounded search over conjugators proves conjugacy, and
anything else is reported as Unknown at the searched radius. Nothing here
looks at the Grothendieck construction.
"""

import logging
from dataclasses import dataclass, fields
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .coxeter import (
    AFFINE,
    DEFAULT_BALL_CAP,
    DEFAULT_FOLD_CAP,
    FINITE,
    CayleyBall,
    ConePoint,
    CoxeterSystem,
    Element,
    abelianization_class,
    act,
    dual_basis_point,
    element_order,
    fold,
    is_spherical,
    point_reflect,
)
from .errors import CapExceededError, FoldError, NotAffineError
from .facets import FacetInSpace, facet_fix_check, facets_in_ball
from .scalars import ONE, ZERO, QMatrix, QScalar, Sign, fixed_space, kernel

logger = logging.getLogger(__name__)

DEFAULT_ORDER_CAP = 48
DEFAULT_CONJ_RADIUS = 6
MAX_WITNESS_RADIUS = 60

FacePointId = Tuple[FrozenSet[int], Tuple[QScalar, ...]]


@dataclass(frozen=True)
class InvariantVector:
    """
    Conjugation invariants of an element, compared field by field in
    declaration order. `order` is None when the order cap was reached.
    """

    order: Optional[int]
    char_poly: Tuple[QScalar, ...]
    fixed_dim: int
    abelianization: Tuple[int, ...]
    folded_fixed_point: Optional[FacePointId] = None
    translation_orbit: Optional[Tuple[QScalar, ...]] = None

    def first_difference(self, other: "InvariantVector") -> Optional[str]:
        for f in fields(self):
            if getattr(self, f.name) != getattr(other, f.name):
                return f.name
        return None


CONJUGATE = "conjugate"
NOT_CONJUGATE = "not_conjugate"
UNKNOWN = "unknown"

# NotConjugate reason when every element of a finite W was tried as a conjugator
EXHAUSTIVE_ORBIT = "exhaustive_orbit"


@dataclass(frozen=True)
class ConjugacyVerdict:
    """
    Outcome of one conjugacy query.

    For NotConjugate, `invariant` names the first InvariantVector field that
    differs, or EXHAUSTIVE_ORBIT when the invariants agree and a search over
    the whole finite group found no conjugator.
    """

    kind: str
    conjugator: Optional[Element] = None
    invariant: Optional[str] = None
    radius: Optional[int] = None

    @classmethod
    def conjugate(cls, g: Element) -> "ConjugacyVerdict":
        return cls(CONJUGATE, conjugator=g)

    @classmethod
    def not_conjugate(cls, invariant: str) -> "ConjugacyVerdict":
        return cls(NOT_CONJUGATE, invariant=invariant)

    @classmethod
    def unknown(cls, radius: int) -> "ConjugacyVerdict":
        return cls(UNKNOWN, radius=radius)

    def __str__(self) -> str:
        if self.kind == CONJUGATE:
            return f"Conjugate({self.conjugator.word})"
        if self.kind == NOT_CONJUGATE:
            return f"NotConjugate({self.invariant})"
        return f"Unknown({self.radius})"


# --- linear algebra helpers ---

def characteristic_polynomial(M: QMatrix) -> Tuple[QScalar, ...]:
    """Coefficients of det(xI - M), leading first (Faddeev-LeVerrier)."""
    n = M.dim
    coefficients = [ONE]
    current = QMatrix._from_rows(tuple((ZERO,) * n for _ in range(n)))
    for k in range(1, n + 1):
        product = M @ current
        current = QMatrix._from_rows(tuple(
            tuple(entry + coefficients[-1] if i == j else entry for j, entry in enumerate(row))
            for i, row in enumerate(product.rows)
        ))
        coefficients.append(-(M @ current).trace() / k)
    return tuple(coefficients)


def null_root(sys: CoxeterSystem) -> Tuple[QScalar, ...]:
    """The positive generator delta of the radical of B (affine type)."""
    if sys.type_class != AFFINE:
        raise NotAffineError(f"{sys.name or 'system'} is {sys.type_class}, not affine")
    basis = kernel(sys.bilinear_form)
    delta = basis[0]
    total = ZERO
    for c in delta:
        total = total + c
    if total.sign() is Sign.NEGATIVE:
        delta = tuple(-c for c in delta)
    return delta


def _level(delta: Sequence[QScalar], coords: Sequence[QScalar]) -> QScalar:
    total = ZERO
    for d, c in zip(delta, coords):
        if d and c:
            total = total + d * c
    return total


def special_node(sys: CoxeterSystem, delta: Sequence[QScalar]) -> int:
    """Least index with minimal delta coefficient whose complement is spherical."""
    candidates = sorted(range(sys.rank), key=lambda s: (delta[s], s))
    for s in candidates:
        if is_spherical(sys, set(range(sys.rank)) - {s}):
            return s
    raise NotAffineError("no special node: removing any generator leaves an infinite group")


def _normalize_point(q: ConePoint) -> Tuple[QScalar, ...]:
    first = next((c for c in q.coords if not c.is_zero()), None)
    if first is None:
        return q.coords
    return tuple(c / first for c in q.coords)


def _fold_in_subgroup(sys: CoxeterSystem, p: ConePoint, generators: Sequence[int], cap: int) -> ConePoint:
    q = p
    for _ in range(cap):
        negative = [s for s in generators if q.coords[s].sign() is Sign.NEGATIVE]
        if not negative:
            return q
        q = point_reflect(sys, negative[0], q)
    raise FoldError(f"point outside Tits cone or cap too low (cap={cap})")


# --- invariants ---

def folded_fixed_point(sys: CoxeterSystem, w: Element, fold_cap: int = DEFAULT_FOLD_CAP,
                       order_cap: int = DEFAULT_ORDER_CAP) -> Optional[FacePointId]:
    """
    When w fixes a single point of X, the face type and normalized
    coordinates of its image in the closed fundamental chamber.

    Off the affine case the fixed point is the sum of the w-orbit of the
    chamber point, so only elements of finite order qualify.
    """
    basis = fixed_space(w.matrix.transpose())
    minimal = 0 if sys.type_class == FINITE else 1
    if len(basis) != minimal:
        return None
    if minimal == 0:
        return (frozenset(range(sys.rank)), (ZERO,) * sys.rank)
    v = basis[0]
    if sys.type_class == AFFINE:
        level = _level(null_root(sys), v)
        if level.is_zero():
            return None
        if level.sign() is Sign.NEGATIVE:
            v = tuple(-c for c in v)
        _, q = fold(sys, ConePoint(tuple(v)), fold_cap)
    else:
        order = element_order(sys, w, order_cap)
        if order is None:
            return None
        current = dual_basis_point(sys, range(sys.rank))
        total = current.coords
        for _ in range(order - 1):
            current = act(sys, w, current)
            total = tuple(a + b for a, b in zip(total, current.coords))
        _, q = fold(sys, ConePoint(total), fold_cap)
    return (q.zero_set(), _normalize_point(q))


def translation_vector(sys: CoxeterSystem, w: Element) -> Optional[Tuple[QScalar, ...]]:
    """
    lambda with w(alpha_s) = alpha_s - lambda_s delta, when the linear part
    of w is trivial; None otherwise.
    """
    delta = null_root(sys)
    pivot = next(i for i, d in enumerate(delta) if not d.is_zero())
    values = []
    for s in range(sys.rank):
        column = w.matrix.column(s)
        diff = [c - (ONE if i == s else ZERO) for i, c in enumerate(column)]
        ratio = diff[pivot] / delta[pivot]
        if any(d != ratio * delta[i] for i, d in enumerate(diff)):
            return None
        values.append(-ratio)
    return tuple(values)


def translation_orbit(sys: CoxeterSystem, w: Element, fold_cap: int = DEFAULT_FOLD_CAP) -> Optional[Tuple[QScalar, ...]]:
    """Dominant representative of the translation vector under the finite Weyl group."""
    if sys.type_class != AFFINE:
        return None
    vector = translation_vector(sys, w)
    if vector is None:
        return None
    s0 = special_node(sys, null_root(sys))
    finite_generators = [s for s in range(sys.rank) if s != s0]
    folded = _fold_in_subgroup(sys, ConePoint(vector), finite_generators, fold_cap)
    return tuple(folded.coords[s] for s in finite_generators)


def invariants(sys: CoxeterSystem, w: Element, order_cap: int = DEFAULT_ORDER_CAP,
               fold_cap: int = DEFAULT_FOLD_CAP) -> InvariantVector:
    return InvariantVector(
        order=element_order(sys, w, order_cap),
        char_poly=characteristic_polynomial(w.matrix),
        fixed_dim=len(fixed_space(w.matrix)),
        abelianization=abelianization_class(sys, w),
        folded_fixed_point=folded_fixed_point(sys, w, fold_cap, order_cap),
        translation_orbit=translation_orbit(sys, w, fold_cap),
    )


def is_torsion(sys: CoxeterSystem, w: Element, order_cap: int = DEFAULT_ORDER_CAP) -> bool:
    return element_order(sys, w, order_cap) is not None


# --- decisions ---

class ConjugacyOracle:
    """Conjugacy queries against one system, sharing a Cayley ball and invariant cache."""

    def __init__(self, sys: CoxeterSystem, order_cap: int = DEFAULT_ORDER_CAP,
                 fold_cap: int = DEFAULT_FOLD_CAP, cayley: Optional[CayleyBall] = None,
                 ball_cap: int = DEFAULT_BALL_CAP):
        self.sys = sys
        self.order_cap = order_cap
        self.fold_cap = fold_cap
        self.cayley = cayley or CayleyBall(sys, ball_cap)
        self._invariants: Dict[QMatrix, InvariantVector] = {}

    def invariants(self, w: Element) -> InvariantVector:
        if w.matrix not in self._invariants:
            self._invariants[w.matrix] = invariants(self.sys, w, self.order_cap, self.fold_cap)
        return self._invariants[w.matrix]

    def decide(self, w: Element, w_prime: Element, radius: int) -> ConjugacyVerdict:
        difference = self.invariants(w).first_difference(self.invariants(w_prime))
        if difference is not None:
            return ConjugacyVerdict.not_conjugate(difference)
        self.cayley.extend_to(radius + 1)
        for k in range(radius + 1):
            for g in self.cayley.layer(k):
                if (g * w).matrix == (w_prime * g).matrix:
                    return ConjugacyVerdict.conjugate(g)
        if self.cayley.exhausted and self.cayley.radius <= radius + 1:
            return ConjugacyVerdict.not_conjugate(EXHAUSTIVE_ORBIT)
        return ConjugacyVerdict.unknown(radius)

    def centralizer_ball(self, w: Element, L: int) -> List[Element]:
        return [g for g in self.cayley.elements(L) if (g * w).matrix == (w * g).matrix]


def conjugacy_decide(sys: CoxeterSystem, w: Element, w_prime: Element, radius: int = DEFAULT_CONJ_RADIUS,
                     order_cap: int = DEFAULT_ORDER_CAP) -> ConjugacyVerdict:
    """NotConjugate on a differing invariant, Conjugate on a found g, else Unknown."""
    if radius < 0:
        raise ValueError("radius must be non-negative")
    return ConjugacyOracle(sys, order_cap).decide(w, w_prime, radius)


def verify_conjugator(sys: CoxeterSystem, g: Element, w: Element, w_prime: Element) -> bool:
    return (g * w).matrix == (w_prime * g).matrix


def centralizer_ball(sys: CoxeterSystem, w: Element, L: int, ball_cap: int = DEFAULT_BALL_CAP) -> List[Element]:
    """{g in ball(L) : g w = w g}."""
    return ConjugacyOracle(sys, ball_cap=ball_cap).centralizer_ball(w, L)


def translation_witnesses(sys: CoxeterSystem, n: int, ball_cap: int = DEFAULT_BALL_CAP,
                          cayley: Optional[CayleyBall] = None,
                          max_radius: int = MAX_WITNESS_RADIUS) -> List[Element]:
    """
    n translations with pairwise distinct dominant translation vectors.

    Raises:
        CapExceededError: fewer than n found within max_radius, or the ball
            outgrew its cap
    """
    if sys.type_class != AFFINE:
        raise NotAffineError(f"translation witnesses need an affine system, got {sys.type_class}")
    if n < 1:
        raise ValueError("n must be at least 1")
    cayley = cayley or CayleyBall(sys, ball_cap)
    found: Dict[Tuple[QScalar, ...], Element] = {}
    radius = 0
    while len(found) < n and radius < max_radius:
        radius += 1
        for w in cayley.layer(radius):
            orbit = translation_orbit(sys, w)
            if orbit is None or all(c.is_zero() for c in orbit) or orbit in found:
                continue
            found[orbit] = w
            if len(found) == n:
                break
    if len(found) < n:
        raise CapExceededError(f"only {len(found)} of {n} translation orbits found up to radius {radius}")
    logger.debug(f"Translation witnesses found up to radius {radius}")
    return list(found.values())[:n]


def stabilized_facet(sys: CoxeterSystem, w: Element, L: int,
                     cayley: Optional[CayleyBall] = None,
                     ball_cap: int = DEFAULT_BALL_CAP) -> Optional[FacetInSpace]:
    """Least facet of facets_in_ball(L) that w maps to itself."""
    for f in facets_in_ball(sys, L, cayley=cayley, ball_cap=ball_cap):
        setwise, _, _ = facet_fix_check(sys, w, f)
        if setwise:
            return f
    return None
