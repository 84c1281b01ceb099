"""
Coxeter systems and their geometric (Tits) representation.

Elements of W are stored as exact matrices acting on the root space, with a
witness word carried alongside. Points of the Tits cone are stored by their
pairings with the simple roots, so a point lies in the closed fundamental
chamber exactly when every coordinate is non-negative.
"""

import logging
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from networkx.utils import UnionFind

from .errors import CapExceededError, FoldError, UnsupportedLabelError
from .scalars import ONE, ZERO, QMatrix, QScalar, Sign, cos_pi_over

logger = logging.getLogger(__name__)

INF = math.inf
SUPPORTED_LABELS = (2, 3, 4, 5, 6, INF)

DEFAULT_FOLD_CAP = 10000
DEFAULT_BALL_CAP = 50000

FINITE = "finite"
AFFINE = "affine"
INDEFINITE = "indefinite"

Word = Tuple[int, ...]


def parse_label(value) -> float:
    """Turn a config/user label into an int or math.inf."""
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "infinity", "oo", "∞"):
            return INF
        try:
            value = int(text)
        except ValueError:
            raise UnsupportedLabelError(value) from None
    if value == INF:
        return INF
    if isinstance(value, float) and value.is_integer():
        value = int(value)
    return value


def format_label(label) -> str:
    return "inf" if label == INF else str(label)


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric matrix of Coxeter labels, diagonal 1, math.inf for no relation."""

    labels: Tuple[Tuple[float, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(parse_label(x) for x in row) for row in self.labels)
        object.__setattr__(self, "labels", rows)
        n = len(rows)
        if n == 0:
            raise ValueError("Coxeter matrix must have rank at least 1")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"Coxeter matrix row {i} has {len(row)} entries, expected {n}")
            if row[i] != 1:
                raise ValueError(f"Coxeter matrix diagonal entry {i} must be 1, got {format_label(row[i])}")
            for j, label in enumerate(row):
                if i == j:
                    continue
                if label not in SUPPORTED_LABELS:
                    raise UnsupportedLabelError(label)
                if rows[j][i] != label:
                    raise ValueError(f"Coxeter matrix is not symmetric at ({i}, {j})")

    @property
    def rank(self) -> int:
        return len(self.labels)

    def __getitem__(self, index: Tuple[int, int]):
        i, j = index
        return self.labels[i][j]

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "CoxeterMatrix":
        return cls(tuple(tuple(row) for row in rows))


@dataclass(frozen=True)
class Element:
    """
    A group element: exact root-space matrix plus a witness word.

    Equality and hashing look only at the matrix; two words for the same
    element compare equal.
    """

    matrix: QMatrix
    word: Word = ()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __mul__(self, other: "Element") -> "Element":
        return Element(self.matrix @ other.matrix, self.word + other.word)

    def is_identity(self) -> bool:
        return self.matrix.is_identity()


@dataclass(frozen=True)
class ConePoint:
    """A point given by its pairings with the simple roots."""

    coords: Tuple[QScalar, ...]

    def is_dominant(self) -> bool:
        return all(c.sign() is not Sign.NEGATIVE for c in self.coords)

    def zero_set(self) -> FrozenSet[int]:
        return frozenset(i for i, c in enumerate(self.coords) if c.is_zero())


@dataclass
class CoxeterSystem:
    """
    A Coxeter system with its Tits representation.

    `simple_reflections[s]` is the matrix of s on the simple-root basis;
    column t is the image of alpha_t.
    """

    matrix: CoxeterMatrix
    generators: Tuple[str, ...]
    bilinear_form: QMatrix
    simple_reflections: Tuple[QMatrix, ...]
    type_class: str
    name: str = ""
    _identity: Element = field(init=False, repr=False)
    _odd_components: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False)
    _component_of: Tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        self._identity = Element(QMatrix.identity(self.rank), ())
        self._odd_components = odd_components(self.matrix)
        component_of = [0] * self.rank
        for index, members in enumerate(self._odd_components):
            for s in members:
                component_of[s] = index
        self._component_of = tuple(component_of)

    @property
    def rank(self) -> int:
        return self.matrix.rank

    @property
    def identity(self) -> Element:
        return self._identity

    def component_of(self, s: int) -> int:
        return self._component_of[s]

    @property
    def odd_component_list(self) -> Tuple[Tuple[int, ...], ...]:
        return self._odd_components

    def generator(self, s: int) -> Element:
        return Element(self.simple_reflections[s], (s,))

    def generator_index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r}; expected one of {', '.join(self.generators)}") from None

    def word_names(self, word: Sequence[int]) -> str:
        if not word:
            return "e"
        return " ".join(self.generators[s] for s in word)

    # --- multiplication by a single generator ---

    def times_generator(self, w: Element, s: int) -> Element:
        """w * s. Only columns t with B(s, t) != 0 change."""
        rows = w.matrix.rows
        b_row = self.bilinear_form.rows[s]
        new_rows = []
        for row in rows:
            pivot = row[s]
            if pivot.is_zero():
                new_rows.append(row)
                continue
            new_rows.append(tuple(
                entry if b_row[t].is_zero() else entry - (b_row[t] + b_row[t]) * pivot
                for t, entry in enumerate(row)
            ))
        return Element(QMatrix._from_rows(tuple(new_rows)), w.word + (s,))

    def generator_times(self, s: int, w: Element) -> Element:
        """s * w. Only row s changes."""
        rows = w.matrix.rows
        b_row = self.bilinear_form.rows[s]
        new_row = list(rows[s])
        for t, coefficient in enumerate(b_row):
            if coefficient.is_zero():
                continue
            factor = coefficient + coefficient
            new_row = [a - factor * b for a, b in zip(new_row, rows[t])]
        new_rows = rows[:s] + (tuple(new_row),) + rows[s + 1:]
        return Element(QMatrix._from_rows(new_rows), (s,) + w.word)

    def inverse(self, w: Element) -> Element:
        result = self.identity
        for s in w.word:
            result = self.generator_times(s, result)
        return result

    def conjugate(self, g: Element, w: Element) -> Element:
        """g w g^-1."""
        return g * w * self.inverse(g)

    def multiply(self, *elements: Element) -> Element:
        result = self.identity
        for element in elements:
            result = result * element
        return result


def bilinear_entry(label) -> QScalar:
    """B(alpha_s, alpha_t) = -cos(pi/m), with -1 for m = inf."""
    return -cos_pi_over(label)


def principal_minors(matrix: QMatrix) -> Dict[Tuple[int, ...], QScalar]:
    minors = {}
    for size in range(1, matrix.dim + 1):
        for subset in combinations(range(matrix.dim), size):
            minors[subset] = matrix.submatrix(subset).determinant()
    return minors


def classify_form(form: QMatrix) -> str:
    """finite if positive definite, affine if PSD and singular, else indefinite."""
    if all(m.sign() is Sign.POSITIVE for m in form.leading_principal_minors()):
        return FINITE
    if all(m.sign() is not Sign.NEGATIVE for m in principal_minors(form).values()):
        return AFFINE
    return INDEFINITE


def odd_components(matrix: CoxeterMatrix) -> Tuple[Tuple[int, ...], ...]:
    """Connected components of the graph joining s, t when m_st is odd."""
    forest = UnionFind(range(matrix.rank))
    for s, t in combinations(range(matrix.rank), 2):
        label = matrix[s, t]
        if label != INF and label % 2 == 1:
            forest.union(s, t)
    groups = [tuple(sorted(group)) for group in forest.to_sets()]
    return tuple(sorted(groups))


def build_system(m: CoxeterMatrix, generators: Optional[Sequence[str]] = None, name: str = "") -> CoxeterSystem:
    """Build the Tits representation of a Coxeter matrix exactly."""
    n = m.rank
    if generators is None:
        generators = tuple(f"s{i}" for i in range(n))
    generators = tuple(generators)
    if len(generators) != n:
        raise ValueError(f"expected {n} generator names, got {len(generators)}")
    if len(set(generators)) != n:
        raise ValueError("generator names must be distinct")

    form = QMatrix([[bilinear_entry(m[i, j]) for j in range(n)] for i in range(n)])
    reflections = []
    for s in range(n):
        rows = [list(row) for row in QMatrix.identity(n).rows]
        for t in range(n):
            rows[s][t] = rows[s][t] - form[s, t] * 2
        reflections.append(QMatrix(rows))
    type_class = classify_form(form)
    logger.debug(f"Built {name or 'system'} of rank {n}: {type_class}")
    return CoxeterSystem(
        matrix=m,
        generators=generators,
        bilinear_form=form,
        simple_reflections=tuple(reflections),
        type_class=type_class,
        name=name,
    )


def elem_from_word(sys: CoxeterSystem, word: Iterable[int]) -> Element:
    result = sys.identity
    for s in word:
        if not 0 <= s < sys.rank:
            raise IndexError(f"generator index {s} out of range for rank {sys.rank}")
        result = sys.times_generator(result, s)
    return result


def is_negative_root(column: Sequence[QScalar]) -> bool:
    # roots are either non-negative or non-positive combinations of simple roots
    return any(c.sign() is Sign.NEGATIVE for c in column)


def right_descents(sys: CoxeterSystem, w: Element) -> FrozenSet[int]:
    """{s : w(alpha_s) is a negative root}."""
    return frozenset(s for s in range(sys.rank) if is_negative_root(w.matrix.column(s)))


def left_descents(sys: CoxeterSystem, w: Element) -> FrozenSet[int]:
    return right_descents(sys, sys.inverse(w))


def canonical_word(sys: CoxeterSystem, w: Element) -> Word:
    """
    Reduced word obtained by repeatedly stripping the smallest right descent.

    Read right to left this is the lexicographically least reduced word, so
    it is a normal form: it depends only on the matrix.
    """
    suffix: List[int] = []
    current = w
    while True:
        descents = right_descents(sys, current)
        if not descents:
            break
        s = min(descents)
        suffix.append(s)
        current = sys.times_generator(current, s)
    return tuple(reversed(suffix))


def reduce(sys: CoxeterSystem, w: Element) -> Element:
    """The same element carrying its canonical word."""
    return Element(w.matrix, canonical_word(sys, w))


def length(sys: CoxeterSystem, w: Element) -> int:
    return len(canonical_word(sys, w))


def shortlex_key(sys: CoxeterSystem, w: Element) -> Tuple[int, Word]:
    word = canonical_word(sys, w)
    return (len(word), word)


def element_order(sys: CoxeterSystem, w: Element, cap: int) -> Optional[int]:
    """Order of w, or None if w^k != e for all k <= cap."""
    power = w.matrix
    for k in range(1, cap + 1):
        if power.is_identity():
            return k
        power = power @ w.matrix
    return None


# --- cone points ---

def point_reflect(sys: CoxeterSystem, s: int, p: ConePoint) -> ConePoint:
    """s.p: pairing with alpha_t becomes p_t - 2 B(s, t) p_s."""
    ps = p.coords[s]
    if ps.is_zero():
        return p
    b_row = sys.bilinear_form.rows[s]
    return ConePoint(tuple(
        c if b_row[t].is_zero() else c - (b_row[t] + b_row[t]) * ps
        for t, c in enumerate(p.coords)
    ))


def act(sys: CoxeterSystem, w: Element, p: ConePoint) -> ConePoint:
    """w.p, applying the witness word right to left."""
    for s in reversed(w.word):
        p = point_reflect(sys, s, p)
    return p


def fold(sys: CoxeterSystem, p: ConePoint, cap: int = DEFAULT_FOLD_CAP) -> Tuple[Element, ConePoint]:
    """
    Move p into the closed fundamental chamber.

    Returns (g, q) with q = g.p and every coordinate of q non-negative.
    """
    g = sys.identity
    q = p
    for _ in range(cap):
        negative = [s for s, c in enumerate(q.coords) if c.sign() is Sign.NEGATIVE]
        if not negative:
            return g, q
        s = negative[0]
        q = point_reflect(sys, s, q)
        g = sys.generator_times(s, g)
    if q.is_dominant():
        return g, q
    raise FoldError(f"point outside Tits cone or cap too low (cap={cap})")


def dual_basis_point(sys: CoxeterSystem, support: Iterable[int]) -> ConePoint:
    """Sum of the dual basis vectors over `support`."""
    members = set(support)
    return ConePoint(tuple(ONE if s in members else ZERO for s in range(sys.rank)))


# --- Cayley ball ---

class CayleyBall:
    """
    Breadth-first enumeration of W by word length.

    `layers[k]` holds the elements of length exactly k, each carrying a
    reduced word. Elements are deduplicated by matrix.
    """

    def __init__(self, sys: CoxeterSystem, cap: int = DEFAULT_BALL_CAP):
        self.sys = sys
        self.cap = cap
        self.layers: List[List[Element]] = [[sys.identity]]
        self._seen: Dict[QMatrix, Element] = {sys.identity.matrix: sys.identity}

    @property
    def radius(self) -> int:
        return len(self.layers) - 1

    @property
    def exhausted(self) -> bool:
        """True when the last layer is empty, i.e. W is finite and fully listed."""
        return not self.layers[-1]

    def __len__(self) -> int:
        return len(self._seen)

    def __contains__(self, w: Element) -> bool:
        return w.matrix in self._seen

    def lookup(self, w: Element) -> Optional[Element]:
        return self._seen.get(w.matrix)

    def extend_to(self, radius: int) -> "CayleyBall":
        while self.radius < radius and not self.exhausted:
            layer: List[Element] = []
            for w in self.layers[-1]:
                for s in range(self.sys.rank):
                    if w.word and w.word[-1] == s:
                        continue
                    candidate = self.sys.times_generator(w, s)
                    if candidate.matrix in self._seen:
                        continue
                    self._seen[candidate.matrix] = candidate
                    layer.append(candidate)
                    if len(self._seen) > self.cap:
                        raise CapExceededError(
                            f"ball of radius {self.radius + 1} exceeds cap of {self.cap} elements"
                        )
            self.layers.append(layer)
            logger.debug(f"Ball layer {self.radius}: {len(layer)} elements")
        return self

    def elements(self, radius: Optional[int] = None) -> List[Element]:
        if radius is None:
            radius = self.radius
        self.extend_to(radius)
        out: List[Element] = []
        for layer in self.layers[: radius + 1]:
            out.extend(layer)
        return out

    def layer(self, k: int) -> List[Element]:
        self.extend_to(k)
        return self.layers[k] if k < len(self.layers) else []

    @classmethod
    def from_layers(cls, sys: CoxeterSystem, layers: List[List[Element]], cap: int = DEFAULT_BALL_CAP) -> "CayleyBall":
        ball = cls(sys, cap)
        ball.layers = [list(layer) for layer in layers]
        ball._seen = {w.matrix: w for layer in ball.layers for w in layer}
        return ball


def ball(sys: CoxeterSystem, L: int, cap: int = DEFAULT_BALL_CAP) -> List[Element]:
    """All elements of length <= L, ordered by length then discovery."""
    if L < 0:
        raise ValueError("ball radius must be non-negative")
    return CayleyBall(sys, cap).elements(L)


def abelianization_class(sys: CoxeterSystem, w: Element) -> Tuple[int, ...]:
    """Image of w in W^ab = (Z/2)^c, one coordinate per odd-graph component."""
    counts = [0] * len(sys.odd_component_list)
    for s in w.word:
        counts[sys.component_of(s)] ^= 1
    return tuple(counts)


def is_spherical(sys: CoxeterSystem, subset: Iterable[int]) -> bool:
    """W_T is finite iff B restricted to T is positive definite."""
    indices = sorted(subset)
    if not indices:
        return True
    restricted = sys.bilinear_form.submatrix(indices)
    return all(m.sign() is Sign.POSITIVE for m in restricted.leading_principal_minors())
