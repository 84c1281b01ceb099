"""
The Grothendieck construction of T -> Tr(W_T) over the spherical poset.

Objects are pairs (T, w) with w in W_T. A morphism (T <= T', u) with u in
W_T' goes from (T, w) to (T', u w u^-1). The category is finite, so every
morphism is kept as a generator and every composable pair gives a
relation triangle. Components and fundamental groups of the nerve are read
off directly.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx
from networkx.utils import UnionFind

from .coxeter import DEFAULT_BALL_CAP, CoxeterSystem, Element, canonical_word
from .errors import ReflectraceError
from .facets import FacePoset, spherical_subsets
from .parabolics import ParabolicCache, subset_key
from .presentations import DEFAULT_COSET_CAP, GroupTag, Presentation, recognize, tietze_simplify

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GCObject:
    type: FrozenSet[int]
    element: Element

    def sort_key(self) -> Tuple:
        return subset_key(self.type) + (len(self.element.word), self.element.word)


@dataclass(frozen=True)
class GCMorphism:
    """(T <= T', u) starting at `source`; lands on objects[target]."""

    source: int
    target: int
    target_type: FrozenSet[int]
    conjugator: Element

    def is_identity(self) -> bool:
        return self.source == self.target and self.conjugator.is_identity()


@dataclass
class GCCategory:
    sys: CoxeterSystem
    poset: FacePoset
    parabolics: ParabolicCache
    objects: List[GCObject]
    morphisms: List[GCMorphism]
    triangles: List[Tuple[int, int, int]]
    _object_index: Dict[Tuple[FrozenSet[int], Element], int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._object_index = {(o.type, o.element): i for i, o in enumerate(self.objects)}

    def object_index(self, T, w: Element) -> int:
        return self._object_index[(frozenset(T), w)]

    def describe_object(self, i: int) -> str:
        obj = self.objects[i]
        names = ",".join(self.sys.generators[s] for s in sorted(obj.type))
        return f"({{{names}}}, {self.sys.word_names(obj.element.word)})"


@dataclass
class Component:
    """A connected component with a spanning tree and path certificates."""

    index: int
    base: int
    objects: List[int]
    certificates: Dict[int, Element]
    tree: List[Tuple[int, bool]]
    morphisms: List[int]

    @property
    def size(self) -> int:
        return len(self.objects)


@dataclass
class ComponentPresentation:
    """
    pi_1 of one component at its base object.

    `labels[i]` is phi of generator i + 1 of `presentation`: the element of
    C_W(w_base) obtained by running the loop through the tree.
    """

    component: Component
    base: GCObject
    presentation: Presentation
    labels: List[Element]
    generator_morphisms: List[int]
    spanning_tree: List[Tuple[int, bool]]
    simplified: Optional[Presentation] = None
    recognized: Optional[GroupTag] = None

    def simplified_labels(self) -> List[Element]:
        if self.simplified is None:
            raise ValueError("presentation has not been simplified")
        return [self.labels[g - 1] for g in self.simplified.origin]


def build_grothendieck(sys: CoxeterSystem, parabolics: Optional[ParabolicCache] = None,
                       poset: Optional[FacePoset] = None,
                       ball_cap: int = DEFAULT_BALL_CAP) -> GCCategory:
    """All objects, all morphisms and all composition triangles."""
    logger.info(f"Building Grothendieck construction for {sys.name or 'system'}...")
    poset = poset or spherical_subsets(sys)
    parabolics = parabolics or ParabolicCache(sys, ball_cap)

    objects = [GCObject(T, w) for T in poset.nodes for w in parabolics[T].elements]
    objects.sort(key=GCObject.sort_key)
    index = {(o.type, o.element): i for i, o in enumerate(objects)}

    supersets = {T: [U for U in poset.nodes if T <= U] for T in poset.nodes}

    morphisms: List[GCMorphism] = []
    lookup: Dict[Tuple[int, FrozenSet[int], int], int] = {}
    for i, obj in enumerate(objects):
        for U in supersets[obj.type]:
            group = parabolics[U]
            w = group.index(obj.element)
            for u in range(group.order):
                image = group.elements[group.conjugate_index(u, w)]
                lookup[(i, U, u)] = len(morphisms)
                morphisms.append(GCMorphism(
                    source=i,
                    target=index[(U, image)],
                    target_type=U,
                    conjugator=group.elements[u],
                ))

    triangles: List[Tuple[int, int, int]] = []
    for f_index, f in enumerate(morphisms):
        middle = f.target
        for U in supersets[f.target_type]:
            group = parabolics[U]
            u = group.index(f.conjugator)
            for v in range(group.order):
                g_index = lookup[(middle, U, v)]
                h_index = lookup[(f.source, U, group.table()[v][u])]
                triangles.append((f_index, g_index, h_index))

    logger.info(f"Grothendieck construction: {len(objects)} objects, {len(morphisms)} morphisms, "
                f"{len(triangles)} triangles")
    return GCCategory(sys=sys, poset=poset, parabolics=parabolics,
                      objects=objects, morphisms=morphisms, triangles=triangles)


def components(gc: GCCategory) -> List[Component]:
    """pi_0 by union-find, plus BFS spanning trees from the least object."""
    forest = UnionFind(range(len(gc.objects)))
    for m in gc.morphisms:
        forest.union(m.source, m.target)
    groups = sorted((sorted(group) for group in forest.to_sets()), key=lambda g: g[0])
    member_of = {}
    for c, group in enumerate(groups):
        for i in group:
            member_of[i] = c

    per_component: List[List[int]] = [[] for _ in groups]
    for k, m in enumerate(gc.morphisms):
        per_component[member_of[m.source]].append(k)

    out = []
    for c, group in enumerate(groups):
        base = group[0]
        graph = nx.Graph()
        graph.add_nodes_from(group)
        for k in per_component[c]:
            m = gc.morphisms[k]
            if m.source != m.target and not graph.has_edge(m.source, m.target):
                graph.add_edge(m.source, m.target, morphism=k)

        certificates = {base: gc.sys.identity}
        tree: List[Tuple[int, bool]] = []
        for parent, child in nx.bfs_edges(graph, base):
            k = graph[parent][child]["morphism"]
            m = gc.morphisms[k]
            if m.source == parent:
                step = m.conjugator
                tree.append((k, True))
            else:
                step = gc.sys.inverse(m.conjugator)
                tree.append((k, False))
            path = step * certificates[parent]
            certificates[child] = Element(path.matrix, canonical_word(gc.sys, path))

        w_base = gc.objects[base].element
        for i in group:
            c_i = certificates[i]
            if gc.sys.conjugate(c_i, w_base) != gc.objects[i].element:
                logger.error(f"Path certificate failed for object {gc.describe_object(i)}")
                raise ReflectraceError(f"path certificate does not conjugate base to {gc.describe_object(i)}")

        out.append(Component(index=c, base=base, objects=group, certificates=certificates,
                             tree=tree, morphisms=per_component[c]))
    logger.info(f"Found {len(out)} components")
    return out


def _label_priority(label: Element) -> Tuple:
    return (label.is_identity(), len(label.word), label.word)


def pi1_presentation(gc: GCCategory, component: Component, simplify: bool = True) -> ComponentPresentation:
    """
    Generators are the non-tree, non-identity morphisms; relators come from
    composition triangles. Generators are numbered most-worth-keeping first,
    so Tietze elimination leaves short nontrivial labels behind.
    """
    sys = gc.sys
    tree_edges = {k for k, _ in component.tree}
    candidates = []
    for k in component.morphisms:
        m = gc.morphisms[k]
        if k in tree_edges or m.is_identity():
            continue
        c_src = component.certificates[m.source]
        c_tgt = component.certificates[m.target]
        label = sys.inverse(c_tgt) * m.conjugator * c_src
        label = Element(label.matrix, canonical_word(sys, label))
        candidates.append((_label_priority(label), k, label))
    candidates.sort(key=lambda item: (item[0], item[1]))

    number = {k: i + 1 for i, (_, k, _) in enumerate(candidates)}
    labels = [label for _, _, label in candidates]

    members = set(component.objects)
    relators = []
    for f, g, h in gc.triangles:
        if gc.morphisms[f].source not in members:
            continue
        word = []
        for k, sign in ((g, 1), (f, 1), (h, -1)):
            if k in number:
                word.append(sign * number[k])
        if word:
            relators.append(tuple(word))

    presentation = Presentation(generator_count=len(candidates), relators=tuple(relators))
    logger.debug(f"Component {component.index}: {presentation.generator_count} generators, "
                 f"{len(relators)} relators before simplification")
    result = ComponentPresentation(
        component=component,
        base=gc.objects[component.base],
        presentation=presentation,
        labels=labels,
        generator_morphisms=[k for _, k, _ in candidates],
        spanning_tree=list(component.tree),
    )
    if simplify:
        result.simplified = tietze_simplify(presentation)
    return result


def recognize_component(cp: ComponentPresentation, coset_cap: int = DEFAULT_COSET_CAP) -> GroupTag:
    if cp.simplified is None:
        cp.simplified = tietze_simplify(cp.presentation)
    cp.recognized = recognize(cp.simplified, coset_cap=coset_cap, simplify=False)
    return cp.recognized


@dataclass
class HocolimResult:
    """Everything the verifier needs about the left-hand side."""

    category: GCCategory
    components: List[Component]
    presentations: List[ComponentPresentation]


def compute_hocolim(sys: CoxeterSystem, coset_cap: int = DEFAULT_COSET_CAP,
                    parabolics: Optional[ParabolicCache] = None,
                    ball_cap: int = DEFAULT_BALL_CAP) -> HocolimResult:
    gc = build_grothendieck(sys, parabolics, ball_cap=ball_cap)
    comps = components(gc)
    presentations = []
    for component in comps:
        cp = pi1_presentation(gc, component)
        tag = recognize_component(cp, coset_cap)
        logger.info(f"Component {component.index} at {gc.describe_object(component.base)}: "
                    f"{component.size} objects, pi_1 = {tag}")
        presentations.append(cp)
    return HocolimResult(category=gc, components=comps, presentations=presentations)
