"""
The theorem checker.

Puts the Grothendieck-construction side (hocolim) next to the conjugacy
oracle (conj) and turns every comparison into a pass/fail/unknown result:
injectivity on components, well-definedness, fullness and faithfulness of
the maps on fundamental groups, plus the finite exhaustive check and the
secondary claims (amalgam presentation, star reindexing, infinitely many
translation classes, surjectivity onto facet stabilizers).
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .config import ReflectraceConfig
from .conj import (
    CONJUGATE,
    NOT_CONJUGATE,
    ConjugacyOracle,
    ConjugacyVerdict,
    translation_vector,
    translation_witnesses,
)
from .coxeter import AFFINE, DEFAULT_BALL_CAP, FINITE, CayleyBall, CoxeterSystem, Element, element_order
from .errors import CapExceededError, NotAffineError, NotFiniteError
from .facets import (
    FacePoset,
    act_on_facet,
    chamber_face,
    facet_fix_check,
    facets_in_ball,
    spherical_subsets,
    star_facets,
    star_orbits,
)
from .golden import GoldenExpectation, golden_for, match_pi1, tag_name
from .hocolim import ComponentPresentation, HocolimResult, compute_hocolim
from .parabolics import ParabolicCache, centralizer_in_parabolic, conjugacy_classes
from .presentations import (
    COXETER,
    DIRECT_PRODUCT,
    INFINITE_CYCLIC,
    TRIVIAL,
    canonical_cyclic,
    coxeter_matrices_isomorphic,
    coxeter_relators,
    default_names,
    letters,
    spell,
)
from .report import (
    FAIL,
    PASS,
    UNKNOWN,
    ClaimResult,
    ComponentSummary,
    TheoremReport,
    combine,
    overall_status,
)
from .scalars import QMatrix

logger = logging.getLogger(__name__)


# --- helpers ---

def _evaluate(sys: CoxeterSystem, word: Sequence[int], labels: Sequence[Element]) -> Element:
    """Image of a relator word under generator i -> labels[i - 1]."""
    result = sys.identity
    for x in word:
        label = labels[abs(x) - 1]
        result = result * (label if x > 0 else sys.inverse(label))
    return result


def _verdict_text(sys: CoxeterSystem, verdict: ConjugacyVerdict) -> str:
    if verdict.kind == CONJUGATE:
        return f"Conjugate({sys.word_names(verdict.conjugator.word)})"
    return str(verdict)


@dataclass
class SubgroupBall:
    """Elements of <generators> reached by words of length <= radius."""

    elements: Dict[QMatrix, Element]
    radius: int
    exhausted: bool

    def __contains__(self, w: Element) -> bool:
        return w.matrix in self.elements

    def __len__(self) -> int:
        return len(self.elements)


def subgroup_ball(sys: CoxeterSystem, generators: Sequence[Element], radius: Optional[int],
                  cap: int, targets: Optional[Set[QMatrix]] = None) -> SubgroupBall:
    """
    Breadth-first search in the subgroup generated by `generators` and their
    inverses. Stops at `radius`, when the subgroup is exhausted, or as soon
    as every matrix in `targets` has been reached.

    Raises:
        CapExceededError: more than `cap` elements
    """
    steps: List[Element] = []
    for g in generators:
        steps.append(g)
        inverse = sys.inverse(g)
        if inverse.matrix != g.matrix:
            steps.append(inverse)
    found: Dict[QMatrix, Element] = {sys.identity.matrix: sys.identity}
    frontier = [sys.identity]
    missing = set(targets or ()) - set(found)
    depth = 0
    while frontier and (radius is None or depth < radius):
        if targets is not None and not missing:
            break
        depth += 1
        next_frontier = []
        for w in frontier:
            for step in steps:
                candidate = w * step
                if candidate.matrix in found:
                    continue
                found[candidate.matrix] = candidate
                missing.discard(candidate.matrix)
                next_frontier.append(candidate)
                if len(found) > cap:
                    raise CapExceededError(f"subgroup search exceeds cap of {cap} elements")
        frontier = next_frontier
    return SubgroupBall(elements=found, radius=depth, exhausted=not frontier)


def infinite_order_certificate(sys: CoxeterSystem, y: Element, cap: int) -> Optional[bool]:
    """
    True when y certainly has infinite order, False when a finite order was
    found, None when neither could be shown.

    In affine type some power y^k with k <= cap has trivial linear part; a
    nonzero translation vector then proves infinite order.
    """
    if sys.type_class == AFFINE:
        power = y
        for _ in range(cap):
            if power.is_identity():
                return False
            vector = translation_vector(sys, power)
            if vector is not None:
                return any(not c.is_zero() for c in vector)
            power = power * y
        return None
    if element_order(sys, y, cap) is not None:
        return False
    return None


# --- pi_0 ---

@dataclass
class Pi0Result:
    verdicts: List[List[ConjugacyVerdict]]
    status: str
    messages: List[str] = field(default_factory=list)


def check_pi0_injectivity(sys: CoxeterSystem, radius: int, hocolim: Optional[HocolimResult] = None,
                          oracle: Optional[ConjugacyOracle] = None,
                          ball_cap: int = DEFAULT_BALL_CAP) -> Pi0Result:
    """
    Pairwise conjugacy verdicts between component base elements.

    Off-diagonal Conjugate is a certified contradiction. Within a component
    every path certificate is re-checked exactly and cross-validated against
    the oracle at the certificate's own length.
    """
    hocolim = hocolim or compute_hocolim(sys, ball_cap=ball_cap)
    oracle = oracle or ConjugacyOracle(sys, ball_cap=ball_cap)
    gc = hocolim.category
    bases = [gc.objects[c.base].element for c in hocolim.components]
    n = len(bases)
    statuses: List[str] = []
    messages: List[str] = []

    verdicts: List[List[Optional[ConjugacyVerdict]]] = [[None] * n for _ in range(n)]
    for i in range(n):
        verdicts[i][i] = ConjugacyVerdict.conjugate(sys.identity)
        for j in range(i + 1, n):
            verdict = oracle.decide(bases[i], bases[j], radius)
            if verdict.kind == CONJUGATE:
                g = verdict.conjugator
                logger.error(f"Components {i} and {j} have conjugate base elements")
                messages.append(f"components {i} and {j}: {_verdict_text(sys, verdict)}")
                statuses.append(FAIL)
                mirrored = ConjugacyVerdict.conjugate(sys.inverse(g))
            else:
                statuses.append(PASS if verdict.kind == NOT_CONJUGATE else UNKNOWN)
                mirrored = verdict
            verdicts[i][j] = verdict
            verdicts[j][i] = mirrored

    for component in hocolim.components:
        w_base = gc.objects[component.base].element
        for i in component.objects:
            c = component.certificates[i]
            w_i = gc.objects[i].element
            if (c * w_base).matrix != (w_i * c).matrix:
                messages.append(f"path certificate fails for {gc.describe_object(i)}")
                statuses.append(FAIL)
                continue
            verdict = oracle.decide(w_base, w_i, len(c.word))
            if verdict.kind != CONJUGATE:
                messages.append(f"oracle disagrees with certificate for {gc.describe_object(i)}: {verdict}")
                statuses.append(FAIL)

    status = combine(statuses)
    logger.info(f"pi_0 injectivity over {n} components: {status}")
    return Pi0Result(verdicts=verdicts, status=status, messages=messages)


# --- pi_1 ---

@dataclass
class Pi1Result:
    well_defined: str
    central: str
    fullness: str
    faithfulness: str
    recognized: str
    status: str
    messages: List[str] = field(default_factory=list)


def _faithfulness(sys: CoxeterSystem, cp: ComponentPresentation, config: ReflectraceConfig) -> Tuple[str, str]:
    tag = cp.recognized
    labels = cp.simplified_labels()
    P = cp.simplified

    if tag.kind == TRIVIAL:
        return PASS, "trivial group"

    order = tag.order
    if order is not None:
        try:
            image = subgroup_ball(sys, labels, None, cap=order)
        except CapExceededError:
            return FAIL, f"image of phi has more than {order} elements"
        if len(image) == order:
            return PASS, f"image of phi has {order} elements"
        return FAIL, f"image of phi has {len(image)} elements, pi_1 has {order}"

    if tag.kind == COXETER and coxeter_matrices_isomorphic(tag.matrix, sys.matrix):
        # a surjection from a group isomorphic to W onto W is injective (W is Hopfian)
        simple = {sys.generator(s).matrix for s in range(sys.rank)}
        try:
            reached = subgroup_ball(sys, labels, config.subgroup_radius, config.ball_cap, targets=simple)
        except CapExceededError:
            return UNKNOWN, "unverified: subgroup search exceeded cap"
        if all(m in reached.elements for m in simple):
            return PASS, "phi is onto W and pi_1 is isomorphic to W"
        return UNKNOWN, "unverified: simple reflections not reached"

    if tag.kind == INFINITE_CYCLIC:
        certificate = infinite_order_certificate(sys, labels[0], config.order_cap)
        if certificate is True:
            return PASS, "generator image has infinite order"
        if certificate is False:
            return FAIL, "generator image has finite order"
        return UNKNOWN, "unverified: order of generator image"

    if tag.kind == DIRECT_PRODUCT and P.generator_count == 2 and order is None:
        involution = next(abs(r[0]) for r in P.relators if len(letters(r)) == 1)
        x, y = labels[involution - 1], labels[2 - involution]
        if x.is_identity():
            return FAIL, "involution maps to the identity"
        certificate = infinite_order_certificate(sys, y, config.order_cap)
        if certificate is True:
            return PASS, "involution image nontrivial, free generator image of infinite order"
        if certificate is False:
            return FAIL, "free generator image has finite order"
        return UNKNOWN, "unverified: order of free generator image"

    return UNKNOWN, "unverified"


def check_pi1(sys: CoxeterSystem, cp: ComponentPresentation, L: int,
              config: Optional[ReflectraceConfig] = None,
              oracle: Optional[ConjugacyOracle] = None) -> Pi1Result:
    """
    (a) every relator maps to the identity; (b) every label commutes with
    the base element; (c) the centralizer ball of radius L lies in the
    subgroup generated by the labels; (d) phi is injective where that can
    be certified.
    """
    config = config or ReflectraceConfig()
    oracle = oracle or ConjugacyOracle(sys, config.order_cap, config.fold_cap, ball_cap=config.ball_cap)
    w_base = cp.base.element
    messages: List[str] = []

    bad = [r for r in cp.presentation.relators if not _evaluate(sys, r, cp.labels).is_identity()]
    well_defined = FAIL if bad else PASS
    if bad:
        messages.append(f"{len(bad)} relators with nontrivial image")

    off = [k for k, label in enumerate(cp.labels) if (label * w_base).matrix != (w_base * label).matrix]
    central = FAIL if off else PASS
    if off:
        messages.append(f"{len(off)} labels outside the centralizer")

    labels = cp.simplified_labels()
    targets = {g.matrix for g in oracle.centralizer_ball(w_base, L)}
    try:
        reached = subgroup_ball(sys, labels, config.subgroup_radius, config.ball_cap, targets=targets)
        outside = [m for m in targets if m not in reached.elements]
    except CapExceededError:
        outside = list(targets)
        messages.append("subgroup search exceeded cap")
    if outside:
        fullness = UNKNOWN
        messages.append(f"{len(outside)} centralizer elements not reached at radius {config.subgroup_radius}")
    else:
        fullness = PASS

    if cp.recognized is None or not cp.recognized.is_known():
        faithfulness = UNKNOWN
        messages.append("pi_1 not recognized")
    else:
        faithfulness, note = _faithfulness(sys, cp, config)
        messages.append(note)

    recognized = tag_name(cp.recognized, sys) if cp.recognized is not None else "?"
    recognition = PASS if cp.recognized is not None and cp.recognized.is_known() else UNKNOWN
    status = combine([well_defined, central, fullness, faithfulness, recognition])
    return Pi1Result(well_defined=well_defined, central=central, fullness=fullness,
                     faithfulness=faithfulness, recognized=recognized, status=status, messages=messages)


# --- finite type ---

def finite_exact_check(sys: CoxeterSystem, hocolim: Optional[HocolimResult] = None,
                       parabolics: Optional[ParabolicCache] = None,
                       ball_cap: int = DEFAULT_BALL_CAP) -> ClaimResult:
    """Components against conjugacy classes of W, classwise centralizer orders against pi_1."""
    if sys.type_class != FINITE:
        raise NotFiniteError(f"{sys.name or 'system'} is {sys.type_class}, not finite")
    parabolics = parabolics or ParabolicCache(sys, ball_cap)
    hocolim = hocolim or compute_hocolim(sys, parabolics=parabolics, ball_cap=ball_cap)
    W = parabolics[range(sys.rank)]
    classes = conjugacy_classes(W)
    class_of = {w.matrix: k for k, cls in enumerate(classes) for w in cls}

    gc = hocolim.category
    hit: Dict[int, int] = {}
    messages: List[str] = []
    statuses: List[str] = []
    orders = []
    for cp in hocolim.presentations:
        w = cp.base.element
        k = class_of[w.matrix]
        if k in hit:
            messages.append(f"components {hit[k]} and {cp.component.index} meet the same class")
            statuses.append(FAIL)
        hit[k] = cp.component.index
        centralizer = len(centralizer_in_parabolic(W, w))
        orders.append(centralizer)
        if cp.recognized is None or cp.recognized.order is None:
            messages.append(f"component {cp.component.index}: pi_1 order not determined")
            statuses.append(UNKNOWN)
        elif cp.recognized.order != centralizer:
            messages.append(f"component {cp.component.index} at {gc.describe_object(cp.component.base)}: "
                            f"|pi_1| = {cp.recognized.order}, centralizer has {centralizer}")
            statuses.append(FAIL)
    if len(hit) != len(classes):
        messages.append(f"{len(classes) - len(hit)} classes not met by any component")
        statuses.append(FAIL)
    return ClaimResult(
        name="finite_exact",
        status=combine(statuses),
        details={"classes": len(classes), "components": len(hocolim.components), "centralizer_orders": orders},
        messages=messages,
    )


# --- claims ---

def amalgam_relators(sys: CoxeterSystem, poset: Optional[FacePoset] = None,
                     parabolics: Optional[ParabolicCache] = None,
                     ball_cap: int = DEFAULT_BALL_CAP) -> Tuple[Tuple[int, ...], ...]:
    """
    Relators of the colimit of the finite W_T over the spherical poset:
    s^k and (st)^m with the orders measured inside each enumerated W_T.
    """
    poset = poset or spherical_subsets(sys)
    parabolics = parabolics or ParabolicCache(sys, ball_cap)
    relators = set()
    for T in poset.nodes:
        group = parabolics[T]
        members = sorted(T)
        for s in members:
            k = element_order(sys, sys.generator(s), group.order)
            relators.add((s + 1,) * k)
        for i, s in enumerate(members):
            for t in members[i + 1:]:
                m = element_order(sys, sys.generator(s) * sys.generator(t), group.order)
                relators.add(canonical_cyclic((s + 1, t + 1) * m))
    return tuple(sorted(relators, key=lambda r: (len(r), r)))


def amalgam_vs_coxeter(sys: CoxeterSystem, poset: Optional[FacePoset] = None,
                       parabolics: Optional[ParabolicCache] = None,
                       ball_cap: int = DEFAULT_BALL_CAP) -> ClaimResult:
    amalgam = amalgam_relators(sys, poset, parabolics, ball_cap)
    coxeter = tuple(sorted(coxeter_relators(sys.matrix), key=lambda r: (len(r), r)))
    status = PASS if amalgam == coxeter else FAIL
    names = sys.generators
    messages = []
    if status == FAIL:
        messages.append("presentations differ after normalization")
    return ClaimResult(
        name="amalgam",
        status=status,
        details={
            "relators": [" ".join(names[abs(x) - 1] for x in r) for r in amalgam],
            "coxeter_relators": len(coxeter),
        },
        messages=messages,
    )


def lemma_groupoid_check(sys: CoxeterSystem, I, L: int, parabolics: Optional[ParabolicCache] = None,
                         cayley: Optional[CayleyBall] = None, poset: Optional[FacePoset] = None,
                         ball_cap: int = DEFAULT_BALL_CAP) -> ClaimResult:
    """
    For the chamber face of type I and facets J >= I within ball(L):
    {(J, w) : w(J) = J} = {(J, w) : w fixes J pointwise} over w in W_I,
    the pair count is the sum of |W_{T_J}|, every W_I-orbit of the star
    meets the chamber's faces exactly once, and smaller faces have
    smaller stars.
    """
    parabolics = parabolics or ParabolicCache(sys, ball_cap)
    poset = poset or spherical_subsets(sys)
    T_I = frozenset(I)
    face = chamber_face(sys, T_I)
    group = parabolics[T_I]
    in_ball = set(facets_in_ball(sys, L, poset=poset, cayley=cayley, ball_cap=ball_cap))
    star = [J for J in star_facets(sys, face, parabolics) if J in in_ball]
    messages: List[str] = []
    statuses: List[str] = []

    setwise_pairs = set()
    pointwise_pairs = set()
    for J in star:
        for k, w in enumerate(group.elements):
            setwise, pointwise, member = facet_fix_check(sys, w, J)
            if setwise:
                setwise_pairs.add((J, k))
            if pointwise:
                pointwise_pairs.add((J, k))
            if setwise != member:
                messages.append(f"setwise and coset membership disagree on facet {sorted(J.type)}")
                statuses.append(FAIL)
    if setwise_pairs != pointwise_pairs:
        messages.append(f"{len(setwise_pairs ^ pointwise_pairs)} pairs fixed setwise but not pointwise")
        statuses.append(FAIL)
    expected_pairs = sum(parabolics[J.type].order for J in star)
    if len(setwise_pairs) != expected_pairs:
        messages.append(f"{len(setwise_pairs)} fixed pairs, expected {expected_pairs}")
        statuses.append(FAIL)

    orbits = star_orbits(sys, face, parabolics)
    for orbit in orbits:
        in_chamber = [J for J in orbit if J.coset_rep.is_identity()]
        if len(in_chamber) != 1:
            messages.append(f"orbit of type {sorted(orbit[0].type)} meets the chamber {len(in_chamber)} times")
            statuses.append(FAIL)

    full_star = set(star_facets(sys, face, parabolics))
    for T in poset.nodes:
        if T <= T_I and not set(star_facets(sys, chamber_face(sys, T), parabolics)) <= full_star:
            messages.append(f"star of face {sorted(T)} is not inside star of face {sorted(T_I)}")
            statuses.append(FAIL)

    names = [sys.generators[s] for s in sorted(T_I)]
    return ClaimResult(
        name="lemma_groupoid",
        status=combine(statuses),
        details={"subset": names, "radius": L, "star_facets": len(star),
                 "fixed_pairs": len(setwise_pairs), "orbits": len(orbits)},
        messages=messages,
    )


@dataclass
class Pi0Witness:
    witnesses: List[Element]
    component_count: int
    status: str
    messages: List[str] = field(default_factory=list)

    def to_claim(self, sys: CoxeterSystem) -> ClaimResult:
        return ClaimResult(
            name="pi0_witness",
            status=self.status,
            details={
                "witnesses": [sys.word_names(w.word) for w in self.witnesses],
                "pi0_hocolim": self.component_count,
            },
            messages=list(self.messages),
        )


def pi0_infinite_witness(sys: CoxeterSystem, n: int, hocolim: Optional[HocolimResult] = None,
                         oracle: Optional[ConjugacyOracle] = None,
                         ball_cap: int = DEFAULT_BALL_CAP) -> Pi0Witness:
    """n pairwise non-conjugate translations against the finite count of components."""
    if sys.type_class != AFFINE:
        raise NotAffineError(f"{sys.name or 'system'} is {sys.type_class}, not affine")
    oracle = oracle or ConjugacyOracle(sys, ball_cap=ball_cap)
    hocolim = hocolim or compute_hocolim(sys, ball_cap=ball_cap)
    statuses: List[str] = []
    messages: List[str] = []
    try:
        witnesses = translation_witnesses(sys, n, cayley=oracle.cayley)
    except CapExceededError as e:
        logger.warning(f"Translation witnesses: {e}")
        witnesses = []
        messages.append(str(e))
        statuses.append(UNKNOWN)
    for i, w in enumerate(witnesses):
        for v in witnesses[i + 1:]:
            verdict = oracle.decide(w, v, 0)
            if verdict.kind == CONJUGATE:
                messages.append(f"witnesses {sys.word_names(w.word)} and {sys.word_names(v.word)} are conjugate")
                statuses.append(FAIL)
            elif verdict.kind != NOT_CONJUGATE:
                statuses.append(UNKNOWN)
    count = len(hocolim.components)
    logger.info(f"{len(witnesses)} translation classes against {count} components")
    return Pi0Witness(witnesses=witnesses, component_count=count, status=combine(statuses), messages=messages)


def check_wf_surjectivity(sys: CoxeterSystem, L: int, radius: int, hocolim: Optional[HocolimResult] = None,
                          oracle: Optional[ConjugacyOracle] = None, poset: Optional[FacePoset] = None,
                          ball_cap: int = DEFAULT_BALL_CAP) -> ClaimResult:
    """
    Every element of ball(L) that maps some facet of facets_in_ball(L) to
    itself is conjugate to the base element of some component.
    """
    hocolim = hocolim or compute_hocolim(sys, ball_cap=ball_cap)
    oracle = oracle or ConjugacyOracle(sys, ball_cap=ball_cap)
    facets = facets_in_ball(sys, L, poset=poset, cayley=oracle.cayley)
    bases = [hocolim.category.objects[c.base].element for c in hocolim.components]
    statuses: List[str] = []
    messages: List[str] = []
    sampled = 0
    for w in oracle.cayley.elements(L):
        if not any(act_on_facet(sys, w, f) == f for f in facets):
            continue
        sampled += 1
        verdicts = [oracle.decide(b, w, radius) for b in bases]
        if any(v.kind == CONJUGATE for v in verdicts):
            statuses.append(PASS)
        elif all(v.kind == NOT_CONJUGATE for v in verdicts):
            messages.append(f"{sys.word_names(w.word)} stabilizes a facet but meets no component")
            statuses.append(FAIL)
        else:
            messages.append(f"{sys.word_names(w.word)}: unresolved at radius {radius}")
            statuses.append(UNKNOWN)
    return ClaimResult(
        name="wf_surjectivity",
        status=combine(statuses),
        details={"radius": L, "conj_radius": radius, "sampled": sampled},
        messages=messages,
    )


def golden_pi1_check(sys: CoxeterSystem, hocolim: HocolimResult, golden: GoldenExpectation) -> ClaimResult:
    names = [tag_name(cp.recognized, sys) for cp in hocolim.presentations]
    statuses: List[str] = []
    messages: List[str] = []
    if len(hocolim.category.objects) != golden.objects:
        messages.append(f"{len(hocolim.category.objects)} objects, expected {golden.objects}")
        statuses.append(FAIL)
    if len(hocolim.components) != golden.components:
        messages.append(f"{len(hocolim.components)} components, expected {golden.components}")
        statuses.append(FAIL)
    equal, missing, unexpected = match_pi1(golden.pi1, names)
    if not equal:
        if any(not cp.recognized.is_known() for cp in hocolim.presentations):
            statuses.append(UNKNOWN)
        else:
            statuses.append(FAIL)
        messages.append(f"missing {missing}, unexpected {unexpected}")
    return ClaimResult(
        name="golden_pi1",
        status=combine(statuses),
        details={"expected": list(golden.pi1), "recognized": names},
        messages=messages,
    )


def _expected_per_component(names: List[str], golden: Optional[GoldenExpectation]) -> List[Optional[str]]:
    if golden is None:
        return [None] * len(names)
    remaining = Counter(golden.pi1)
    out: List[Optional[str]] = [None] * len(names)
    for i, name in enumerate(names):
        if remaining[name] > 0:
            out[i] = name
            remaining[name] -= 1
    leftover = sorted(remaining.elements())
    for i in range(len(out)):
        if out[i] is None and leftover:
            out[i] = leftover.pop(0)
    return out


# --- orchestration ---

def verify_system(sys: CoxeterSystem, config: Optional[ReflectraceConfig] = None,
                  cayley: Optional[CayleyBall] = None, golden: Optional[GoldenExpectation] = None,
                  claims: bool = True) -> TheoremReport:
    """Run every check on one system and assemble the report."""
    config = config or ReflectraceConfig()
    golden = golden or golden_for(sys.name)
    logger.info(f"Verifying {sys.name or 'system'} ({sys.type_class})...")

    parabolics = ParabolicCache(sys, config.ball_cap)
    poset = spherical_subsets(sys)
    oracle = ConjugacyOracle(sys, config.order_cap, config.fold_cap,
                             cayley=cayley or CayleyBall(sys, config.ball_cap), ball_cap=config.ball_cap)
    hocolim = compute_hocolim(sys, coset_cap=config.coset_cap, parabolics=parabolics)
    gc = hocolim.category

    pi0 = check_pi0_injectivity(sys, config.conj_radius, hocolim, oracle)
    results: Dict[str, ClaimResult] = {
        "pi0_injectivity": ClaimResult("pi0_injectivity", pi0.status, {"components": len(hocolim.components)},
                                       pi0.messages),
    }

    summaries: List[ComponentSummary] = []
    pi1_results = [check_pi1(sys, cp, config.centralizer_radius, config, oracle) for cp in hocolim.presentations]
    names = [r.recognized for r in pi1_results]
    expected = _expected_per_component(names, golden)
    for k, (cp, r) in enumerate(zip(hocolim.presentations, pi1_results)):
        P = cp.simplified
        summaries.append(ComponentSummary(
            index=cp.component.index,
            base=gc.describe_object(cp.component.base),
            objects=cp.component.size,
            generators=P.generator_count,
            relators=[spell(r, default_names(P.generator_count)) for r in P.relators],
            recognized=cp.recognized.render(),
            expected=expected[k],
            pi0_verdicts=[_verdict_text(sys, v) for v in pi0.verdicts[k]],
            well_defined=r.well_defined,
            central=r.central,
            fullness=r.fullness,
            faithfulness=r.faithfulness,
            status=r.status,
            messages=r.messages,
        ))

    if golden is not None:
        results["golden_pi1"] = golden_pi1_check(sys, hocolim, golden)
    if sys.type_class == FINITE:
        results["finite_exact"] = finite_exact_check(sys, hocolim, parabolics, config.ball_cap)
    if claims:
        results.update(run_claims(sys, config, hocolim, oracle, parabolics, poset))

    overall = overall_status([s.status for s in summaries] + [c.status for c in results.values()])
    logger.info(f"{sys.name or 'system'}: {overall}")
    return TheoremReport(
        system=sys.name,
        type_class=sys.type_class,
        spherical_poset=[[sys.generators[s] for s in sorted(T)] for T in poset.nodes],
        components=summaries,
        claims=results,
        overall=overall,
    )


def run_claims(sys: CoxeterSystem, config: ReflectraceConfig, hocolim: Optional[HocolimResult] = None,
               oracle: Optional[ConjugacyOracle] = None, parabolics: Optional[ParabolicCache] = None,
               poset: Optional[FacePoset] = None) -> Dict[str, ClaimResult]:
    """The secondary claims: amalgam, star lemma for every spherical subset, pi_0 witness, W^f surjectivity."""
    parabolics = parabolics or ParabolicCache(sys, config.ball_cap)
    poset = poset or spherical_subsets(sys)
    oracle = oracle or ConjugacyOracle(sys, config.order_cap, config.fold_cap, ball_cap=config.ball_cap)
    hocolim = hocolim or compute_hocolim(sys, coset_cap=config.coset_cap, parabolics=parabolics)

    out: Dict[str, ClaimResult] = {"amalgam": amalgam_vs_coxeter(sys, poset, parabolics, config.ball_cap)}

    lemma = [lemma_groupoid_check(sys, T, config.lemma_radius, parabolics, oracle.cayley, poset, config.ball_cap)
             for T in poset.nodes]
    out["lemma_groupoid"] = ClaimResult(
        name="lemma_groupoid",
        status=combine(c.status for c in lemma),
        details={"radius": config.lemma_radius, "subsets": [c.details["subset"] for c in lemma]},
        messages=[m for c in lemma for m in c.messages],
    )

    if sys.type_class == AFFINE:
        witness = pi0_infinite_witness(sys, config.witness_count, hocolim, oracle, config.ball_cap)
        out["pi0_witness"] = witness.to_claim(sys)

    out["wf_surjectivity"] = check_wf_surjectivity(sys, config.wf_radius, config.conj_radius,
                                                   hocolim, oracle, poset, config.ball_cap)
    return out
