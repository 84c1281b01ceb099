"""
Facets of the reflection arrangement, in the combinatorial model.

Faces of the closed fundamental chamber correspond to spherical subsets
T of S (the chamber itself is T = {}), and an arbitrary facet is a pair
(T, g) with g the minimal-length representative of the coset gW_T. The
inclusion order on subsets is the reverse of the face order: I <= J
(I in the closure of J) iff T_J is contained in T_I.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .coxeter import (
    DEFAULT_BALL_CAP,
    CayleyBall,
    ConePoint,
    CoxeterSystem,
    Element,
    act,
    canonical_word,
    dual_basis_point,
    is_spherical,
    right_descents,
)
from .parabolics import ParabolicCache, subset_key

logger = logging.getLogger(__name__)

SphericalSubset = FrozenSet[int]


@dataclass(frozen=True)
class FacePoset:
    """Spherical subsets ordered by inclusion, with covering pairs (smaller, larger)."""

    nodes: Tuple[SphericalSubset, ...]
    covers: Tuple[Tuple[SphericalSubset, SphericalSubset], ...]

    def __contains__(self, T) -> bool:
        return frozenset(T) in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def maximal(self) -> List[SphericalSubset]:
        return [T for T in self.nodes if not any(a == T for a, _ in self.covers)]


@dataclass(frozen=True)
class FacetInSpace:
    """A facet g.F_T: type T and minimal coset representative g."""

    type: SphericalSubset
    coset_rep: Element


def spherical_subsets(sys: CoxeterSystem) -> FacePoset:
    """All T with B|_T positive definite, graded by size."""
    nodes: List[SphericalSubset] = [frozenset()]
    accepted = {frozenset()}
    for size in range(1, sys.rank + 1):
        for subset in combinations(range(sys.rank), size):
            T = frozenset(subset)
            # faces of a spherical subset are spherical, so only extend accepted ones
            if not all(T - {s} in accepted for s in T):
                continue
            if is_spherical(sys, T):
                accepted.add(T)
                nodes.append(T)
    covers = []
    for T in nodes:
        for s in range(sys.rank):
            if s not in T and (T | {s}) in accepted:
                covers.append((T, T | {s}))
    logger.debug(f"Spherical subsets of {sys.name or 'system'}: {len(nodes)}")
    return FacePoset(nodes=tuple(nodes), covers=tuple(covers))


def minimal_coset_rep(sys: CoxeterSystem, g: Element, T: Iterable[int]) -> Element:
    """Strip right descents lying in T until none remain."""
    members = frozenset(T)
    current = g
    while True:
        inside = right_descents(sys, current) & members
        if not inside:
            return current
        current = sys.times_generator(current, min(inside))


def make_facet(sys: CoxeterSystem, T: Iterable[int], g: Element) -> FacetInSpace:
    members = frozenset(T)
    rep = minimal_coset_rep(sys, g, members)
    return FacetInSpace(type=members, coset_rep=Element(rep.matrix, canonical_word(sys, rep)))


def chamber_face(sys: CoxeterSystem, T: Iterable[int]) -> FacetInSpace:
    return FacetInSpace(type=frozenset(T), coset_rep=sys.identity)


def facet_key(f: FacetInSpace) -> Tuple:
    return subset_key(f.type) + (len(f.coset_rep.word), f.coset_rep.word)


def facets_in_ball(sys: CoxeterSystem, L: int, poset: Optional[FacePoset] = None,
                   cayley: Optional[CayleyBall] = None, ball_cap: int = DEFAULT_BALL_CAP) -> List[FacetInSpace]:
    """All (T, g) with g a minimal coset representative of length <= L."""
    if L < 0:
        raise ValueError("ball radius must be non-negative")
    poset = poset or spherical_subsets(sys)
    cayley = cayley or CayleyBall(sys, ball_cap)
    facets = []
    for g in cayley.elements(L):
        descents = right_descents(sys, g)
        for T in poset.nodes:
            if not (descents & T):
                facets.append(FacetInSpace(type=T, coset_rep=Element(g.matrix, canonical_word(sys, g))))
    facets.sort(key=facet_key)
    return facets


def act_on_facet(sys: CoxeterSystem, w: Element, f: FacetInSpace) -> FacetInSpace:
    return make_facet(sys, f.type, w * f.coset_rep)


def _in_parabolic(sys: CoxeterSystem, h: Element, T: SphericalSubset) -> bool:
    # every reduced word of an element of W_T uses only letters of T
    return set(canonical_word(sys, h)) <= T


def interior_point(sys: CoxeterSystem, f: FacetInSpace) -> ConePoint:
    """g.rho_T with rho_T the sum of dual basis vectors outside T."""
    rho = dual_basis_point(sys, set(range(sys.rank)) - f.type)
    return act(sys, f.coset_rep, rho)


def facet_fix_check(sys: CoxeterSystem, w: Element, f: FacetInSpace) -> Tuple[bool, bool, bool]:
    """
    Three independent tests of "w fixes the facet f".

    setwise: w.gW_T = gW_T as cosets. pointwise: w fixes g.e*_u for every
    u outside T, hence every point of the facet. member: g^-1 w g in W_T.
    """
    g = f.coset_rep
    setwise = act_on_facet(sys, w, f).coset_rep == g
    pointwise = True
    for u in range(sys.rank):
        if u in f.type:
            continue
        vertex = act(sys, g, dual_basis_point(sys, [u]))
        if act(sys, w, vertex) != vertex:
            pointwise = False
            break
    member = _in_parabolic(sys, sys.inverse(g) * w * g, f.type)
    return setwise, pointwise, member


def facet_leq(sys: CoxeterSystem, I: FacetInSpace, J: FacetInSpace) -> bool:
    """I <= J, i.e. I lies in the closure of J."""
    if not J.type <= I.type:
        return False
    return _in_parabolic(sys, sys.inverse(I.coset_rep) * J.coset_rep, I.type)


def star_facets(sys: CoxeterSystem, I: FacetInSpace, parabolics: Optional[ParabolicCache] = None,
                ball_cap: int = DEFAULT_BALL_CAP) -> List[FacetInSpace]:
    """All facets J >= I: pairs (T_J within T_I, g_I h) with h in W_{T_I}."""
    parabolics = parabolics or ParabolicCache(sys, ball_cap)
    group = parabolics[I.type]
    out = []
    for size in range(len(I.type) + 1):
        for subset in combinations(sorted(I.type), size):
            T_J = frozenset(subset)
            for h in group.elements:
                if right_descents(sys, h) & T_J:
                    continue
                out.append(make_facet(sys, T_J, I.coset_rep * h))
    out.sort(key=facet_key)
    return out


def stabilizer_of_facet(sys: CoxeterSystem, I: FacetInSpace, parabolics: Optional[ParabolicCache] = None,
                        ball_cap: int = DEFAULT_BALL_CAP) -> List[Element]:
    """W_I = g W_{T_I} g^-1, the pointwise stabilizer of I."""
    parabolics = parabolics or ParabolicCache(sys, ball_cap)
    g = I.coset_rep
    g_inv = sys.inverse(g)
    return [g * h * g_inv for h in parabolics[I.type].elements]


def star_orbits(sys: CoxeterSystem, I: FacetInSpace, parabolics: Optional[ParabolicCache] = None,
                ball_cap: int = DEFAULT_BALL_CAP) -> List[List[FacetInSpace]]:
    """Partition of star(I) into W_I-orbits."""
    parabolics = parabolics or ParabolicCache(sys, ball_cap)
    star = star_facets(sys, I, parabolics)
    stabilizer = stabilizer_of_facet(sys, I, parabolics)
    remaining = set(star)
    orbits = []
    for f in star:
        if f not in remaining:
            continue
        orbit = {act_on_facet(sys, w, f) for w in stabilizer}
        remaining -= orbit
        orbits.append(sorted(orbit, key=facet_key))
    return orbits


def star_orbit_transversal(sys: CoxeterSystem, I: FacetInSpace,
                           parabolics: Optional[ParabolicCache] = None,
                           ball_cap: int = DEFAULT_BALL_CAP) -> Dict[SphericalSubset, List[FacetInSpace]]:
    """W_I-orbits of the star keyed by the face of g_I.C met by the orbit."""
    out: Dict[SphericalSubset, List[FacetInSpace]] = {}
    for orbit in star_orbits(sys, I, parabolics, ball_cap):
        out[orbit[0].type] = orbit
    return out
