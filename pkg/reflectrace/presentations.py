"""
Finite group presentations: Tietze simplification and recognition.

Words are tuples of non-zero integers; generator i is the letter i and its
inverse is -i (generators are numbered from 1). Relators are treated as
cyclic words.
"""

import logging
import math
import string
from dataclasses import dataclass
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Set, Tuple

from sympy import Matrix, ZZ
from sympy.combinatorics.coset_table import coset_enumeration_r
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group
from sympy.matrices.normalforms import smith_normal_form

from .coxeter import FINITE, INF, CoxeterMatrix, build_system, format_label
from .errors import UnsupportedLabelError

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]

DEFAULT_COSET_CAP = 2000
MAX_TIETZE_ROUNDS = 10000
SUBSTRING_RELATOR_LIMIT = 60


# --- words ---

def invert(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def free_reduce(word: Sequence[int]) -> Word:
    out: List[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = free_reduce(word)
    start, end = 0, len(w)
    while end - start > 1 and w[start] == -w[end - 1]:
        start += 1
        end -= 1
    return w[start:end]


def _letter_key(word: Sequence[int]) -> Tuple[Tuple[int, bool], ...]:
    return tuple((abs(x), x < 0) for x in word)


def canonical_cyclic(word: Sequence[int]) -> Word:
    """Least rotation of the word or its inverse, positive letters first."""
    w = cyclic_reduce(word)
    if not w:
        return ()
    candidates = []
    for base in (w, invert(w)):
        for i in range(len(base)):
            candidates.append(base[i:] + base[:i])
    return min(candidates, key=_letter_key)


def syllables(word: Sequence[int]) -> List[Tuple[int, int]]:
    """Maximal powers (generator, exponent), as in x^3 y^-1 -> [(x, 3), (y, -1)]."""
    out: List[Tuple[int, int]] = []
    for x in word:
        g, e = abs(x), (1 if x > 0 else -1)
        if out and out[-1][0] == g:
            out[-1] = (g, out[-1][1] + e)
        else:
            out.append((g, e))
    return [(g, e) for g, e in out if e]


def from_syllables(parts: Sequence[Tuple[int, int]]) -> Word:
    out: List[int] = []
    for g, e in parts:
        out.extend([g if e > 0 else -g] * abs(e))
    return free_reduce(out)


def exponent_sum(word: Sequence[int], g: int) -> int:
    return sum(1 if x == g else -1 for x in word if abs(x) == g)


def letters(word: Sequence[int]) -> Set[int]:
    return {abs(x) for x in word}


def spell(word: Sequence[int], names: Sequence[str]) -> str:
    if not word:
        return "1"
    parts = []
    for g, e in syllables(word):
        name = names[g - 1]
        parts.append(name if e == 1 else f"{name}^{e}")
    return " ".join(parts)


def default_names(count: int) -> Tuple[str, ...]:
    if count <= len(string.ascii_lowercase):
        return tuple(string.ascii_lowercase[:count])
    return tuple(f"x{i}" for i in range(1, count + 1))


@dataclass(frozen=True)
class Presentation:
    """
    <x_1, ..., x_n | relators>.

    `origin[i]` is the number the i-th generator had in the presentation this
    one was derived from, so labels survive simplification.
    """

    generator_count: int
    relators: Tuple[Word, ...] = ()
    origin: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "relators", tuple(tuple(r) for r in self.relators))
        if not self.origin:
            object.__setattr__(self, "origin", tuple(range(1, self.generator_count + 1)))
        if len(self.origin) != self.generator_count:
            raise ValueError("origin must name every generator")
        for r in self.relators:
            for x in r:
                if x == 0 or abs(x) > self.generator_count:
                    raise ValueError(f"relator letter {x} outside 1..{self.generator_count}")

    def describe(self, names: Optional[Sequence[str]] = None) -> str:
        names = names or default_names(self.generator_count)
        gens = ", ".join(names[: self.generator_count])
        rels = ", ".join(spell(r, names) for r in self.relators)
        return f"<{gens} | {rels}>"

    def __str__(self) -> str:
        return self.describe()


# --- abelianization ---

@dataclass(frozen=True)
class AbelianInvariants:
    """Z^free_rank + sum of Z/t for t in torsion."""

    torsion: Tuple[int, ...]
    free_rank: int

    @property
    def order(self) -> Optional[int]:
        if self.free_rank:
            return None
        return math.prod(self.torsion)

    def __str__(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def _invariant_factors(values: Sequence[int]) -> List[int]:
    """Rewrite any diagonal into a divisibility chain d_1 | d_2 | ..."""
    d = sorted(values)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = math.gcd(d[i], d[j])
            d[i], d[j] = g, d[i] * d[j] // g
    return d


def abelianization(P: Presentation) -> AbelianInvariants:
    """Invariant factors of the relation matrix via Smith normal form."""
    n = P.generator_count
    if n == 0:
        return AbelianInvariants((), 0)
    rows = [[exponent_sum(r, g) for g in range(1, n + 1)] for r in P.relators]
    rows = [row for row in rows if any(row)]
    if not rows:
        return AbelianInvariants((), n)
    snf = smith_normal_form(Matrix(rows), domain=ZZ)
    diagonal = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    nonzero = _invariant_factors([d for d in diagonal if d])
    torsion = tuple(d for d in nonzero if d > 1)
    return AbelianInvariants(torsion, n - len(nonzero))


# --- Tietze ---

class _TietzeState:
    def __init__(self, P: Presentation, priority: Sequence[int]):
        self.alive: List[int] = list(range(1, P.generator_count + 1))
        self.origin = dict(zip(self.alive, P.origin))
        self.rank = {g: i for i, g in enumerate(priority)}
        self.relators: List[Word] = list(P.relators)

    # relator housekeeping

    def power_orders(self) -> Dict[int, int]:
        orders: Dict[int, int] = {}
        for r in self.relators:
            w = cyclic_reduce(r)
            if w and len(letters(w)) == 1:
                g = abs(w[0])
                orders[g] = math.gcd(orders.get(g, 0), len(w))
        return orders

    def reduce_powers(self, word: Word, orders: Dict[int, int]) -> Word:
        while True:
            w = cyclic_reduce(word)
            if not w or len(letters(w)) == 1:
                return w
            # rotate so no syllable wraps around the end
            shift = next(i for i in range(len(w)) if abs(w[i]) != abs(w[i - 1]))
            w = w[shift:] + w[:shift]
            parts = []
            for g, e in syllables(w):
                n = orders.get(g)
                if n:
                    e %= n
                    if e > n / 2:
                        e -= n
                parts.append((g, e))
            reduced = from_syllables(parts)
            if reduced == w:
                return reduced
            word = reduced

    def normalize(self) -> None:
        orders = self.power_orders()
        out = {(g,) * n for g, n in orders.items()}
        for r in self.relators:
            if r and len(letters(r)) == 1:
                continue
            reduced = canonical_cyclic(self.reduce_powers(r, orders))
            if reduced:
                out.add(reduced)
        self.relators = sorted((canonical_cyclic(r) for r in out), key=lambda r: (len(r), _letter_key(r)))

    # moves

    def eliminate_one(self) -> bool:
        best = None
        for index, r in enumerate(self.relators):
            counts: Dict[int, int] = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            for g, c in counts.items():
                if c != 1:
                    continue
                key = (len(r), -self.rank.get(g, len(self.rank) + g), index)
                if best is None or key < best[0]:
                    best = (key, index, g)
        if best is None:
            return False
        _, index, g = best
        r = self.relators.pop(index)
        position = next(i for i, x in enumerate(r) if abs(x) == g)
        rotated = r[position:] + r[:position]
        rest = rotated[1:]
        expression = invert(rest) if rotated[0] > 0 else rest
        inverse_expression = invert(expression)
        substituted = []
        for relator in self.relators:
            out: List[int] = []
            for x in relator:
                if x == g:
                    out.extend(expression)
                elif x == -g:
                    out.extend(inverse_expression)
                else:
                    out.append(x)
            substituted.append(free_reduce(out))
        self.relators = substituted
        self.alive.remove(g)
        logger.debug(f"Eliminated generator {g} via relator of length {len(r)}")
        return True

    def _is_commutator(self, r: Word, x: int, g: int, orders: Dict[int, int]) -> bool:
        if len(r) != 4 or letters(r) != {x, g}:
            return False
        if abs(r[0]) == abs(r[1]) or abs(r[1]) == abs(r[2]) or abs(r[2]) == abs(r[3]):
            return False
        for h in (x, g):
            e = exponent_sum(r, h)
            n = orders.get(h)
            if (e % n if n else e) != 0:
                return False
        return True

    def collect_central(self) -> bool:
        """Move a central finite-order generator to the end of every relator."""
        orders = self.power_orders()
        changed = False
        for x in sorted(orders, key=lambda h: self.rank.get(h, 0)):
            others = [g for g in self.alive if g != x]
            if not others:
                continue
            commutators = set()
            for g in others:
                found = [r for r in self.relators if self._is_commutator(r, x, g, orders)]
                if not found:
                    break
                commutators.update(found)
            else:
                n = orders[x]
                rewritten = []
                for r in self.relators:
                    if r in commutators or x not in letters(r) or letters(r) == {x}:
                        rewritten.append(r)
                        continue
                    e = exponent_sum(r, x) % n
                    collected = free_reduce(tuple(y for y in r if abs(y) != x) + (x,) * e)
                    if canonical_cyclic(collected) != canonical_cyclic(r):
                        changed = True
                    rewritten.append(collected)
                self.relators = rewritten
                if changed:
                    return True
        return changed

    def shorten_by_substrings(self) -> bool:
        """Replace more than half of a relator s inside r by the rest of s."""
        if len(self.relators) > SUBSTRING_RELATOR_LIMIT:
            return False
        for si, s in enumerate(self.relators):
            n = len(s)
            if n < 2:
                continue
            variants = set()
            for base in (s, invert(s)):
                for i in range(n):
                    variants.add(base[i:] + base[:i])
            for ri, r in enumerate(self.relators):
                if ri == si or len(r) < n // 2 + 1:
                    continue
                for t in sorted(variants):
                    for k in range(n, n // 2, -1):
                        u, v = t[:k], t[k:]
                        if len(u) > len(r):
                            continue
                        doubled = r + r
                        for start in range(len(r)):
                            if doubled[start:start + k] == u:
                                remainder = doubled[start + k:start + len(r)]
                                replaced = cyclic_reduce(invert(v) + remainder)
                                if len(replaced) < len(r):
                                    self.relators[ri] = replaced
                                    return True
        return False

    def result(self) -> Presentation:
        number = {g: i + 1 for i, g in enumerate(self.alive)}
        relators = []
        for r in self.relators:
            relators.append(tuple(number[x] if x > 0 else -number[-x] for x in r))
        return Presentation(
            generator_count=len(self.alive),
            relators=tuple(relators),
            origin=tuple(self.origin[g] for g in self.alive),
        )


def tietze_simplify(P: Presentation, priority: Optional[Sequence[int]] = None) -> Presentation:
    """
    Simplify P to a fixed point of a deterministic Tietze strategy.

    `priority` lists generators most-worth-keeping first; elimination
    removes the least wanted generator occurring once in a shortest relator.
    """
    if priority is None:
        priority = range(1, P.generator_count + 1)
    state = _TietzeState(P, list(priority))
    seen = set()
    for _ in range(MAX_TIETZE_ROUNDS):
        state.normalize()
        snapshot = (tuple(state.alive), tuple(state.relators))
        if snapshot in seen:
            break
        seen.add(snapshot)
        if state.eliminate_one():
            continue
        if state.collect_central():
            continue
        if state.shorten_by_substrings():
            continue
        break
    state.normalize()
    simplified = state.result()
    logger.debug(f"Tietze: {P.generator_count} generators/{len(P.relators)} relators -> "
                 f"{simplified.generator_count}/{len(simplified.relators)}")
    return simplified


# --- recognition ---

TRIVIAL = "trivial"
INFINITE_CYCLIC = "Z"
CYCLIC = "cyclic"
FINITE_OF_ORDER = "finite"
DIRECT_PRODUCT = "direct_product"
COXETER = "coxeter"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class GroupTag:
    """A recognized isomorphism type; never a guess."""

    kind: str
    n: Optional[int] = None
    factors: Tuple["GroupTag", ...] = ()
    matrix: Optional[CoxeterMatrix] = None

    @property
    def order(self) -> Optional[int]:
        if self.kind == TRIVIAL:
            return 1
        if self.kind in (CYCLIC, FINITE_OF_ORDER):
            return self.n
        if self.kind == DIRECT_PRODUCT:
            orders = [f.order for f in self.factors]
            return None if None in orders else math.prod(orders)
        return None

    def is_known(self) -> bool:
        return self.kind != UNKNOWN

    def render(self) -> str:
        if self.kind == TRIVIAL:
            return "1"
        if self.kind == INFINITE_CYCLIC:
            return "Z"
        if self.kind == CYCLIC:
            return f"C{self.n}"
        if self.kind == FINITE_OF_ORDER:
            return f"G({self.n})"
        if self.kind == DIRECT_PRODUCT:
            return "×".join(f.render() for f in self.factors)
        if self.kind == COXETER:
            return f"W({coxeter_name(self.matrix)})"
        return "?"

    def __str__(self) -> str:
        return self.render()


def trivial() -> GroupTag:
    return GroupTag(TRIVIAL)


def cyclic(n: int) -> GroupTag:
    return trivial() if n == 1 else GroupTag(CYCLIC, n=n)


def infinite_cyclic() -> GroupTag:
    return GroupTag(INFINITE_CYCLIC)


def direct_product(*factors: GroupTag) -> GroupTag:
    if len(factors) == 1:
        return factors[0]
    return GroupTag(DIRECT_PRODUCT, factors=tuple(factors))


def finite_of_order(k: int) -> GroupTag:
    return GroupTag(FINITE_OF_ORDER, n=k)


def coxeter_group(matrix: CoxeterMatrix) -> GroupTag:
    return GroupTag(COXETER, matrix=matrix)


def unknown() -> GroupTag:
    return GroupTag(UNKNOWN)


def coxeter_name(matrix: CoxeterMatrix) -> str:
    if matrix.rank == 1:
        return "A1"
    if matrix.rank == 2:
        m = matrix[0, 1]
        return "inf-dihedral" if m == INF else f"I2({m})"
    if matrix.rank == 3:
        labels = sorted((matrix[0, 1], matrix[0, 2], matrix[1, 2]))
        return "triangle(" + ",".join(format_label(m) for m in labels) + ")"
    return f"rank-{matrix.rank}"


def coxeter_matrices_isomorphic(a: CoxeterMatrix, b: CoxeterMatrix) -> bool:
    """Equal up to renaming the generators."""
    if a.rank != b.rank:
        return False
    n = a.rank
    for perm in permutations(range(n)):
        if all(a[i, j] == b[perm[i], perm[j]] for i in range(n) for j in range(n)):
            return True
    return False


def coxeter_relators(matrix: CoxeterMatrix) -> Tuple[Word, ...]:
    """s^2 and (st)^m for m finite, in canonical cyclic form."""
    relators = {(s + 1, s + 1) for s in range(matrix.rank)}
    for s in range(matrix.rank):
        for t in range(s + 1, matrix.rank):
            m = matrix[s, t]
            if m != INF:
                relators.add(canonical_cyclic((s + 1, t + 1) * int(m)))
    return tuple(sorted(relators, key=lambda r: (len(r), _letter_key(r))))


def match_coxeter(P: Presentation) -> Optional[CoxeterMatrix]:
    """Read P as <S | s^2, (st)^m> if it has exactly that shape."""
    n = P.generator_count
    involutions = set()
    pair_orders: Dict[Tuple[int, int], int] = {}
    for r in P.relators:
        used = letters(r)
        if len(used) == 1:
            if len(r) != 2:
                return None
            involutions.add(abs(r[0]))
            continue
        if len(used) != 2 or len(r) % 2 or any(x < 0 for x in r):
            return None
        if any(r[i] == r[i - 1] for i in range(len(r))):
            return None
        x, y = sorted(used)
        key = (x, y)
        pair_orders[key] = math.gcd(pair_orders.get(key, 0), len(r) // 2)
    if involutions != set(range(1, n + 1)):
        return None
    if any(m < 2 for m in pair_orders.values()):
        return None
    rows = [[1 if i == j else INF for j in range(n)] for i in range(n)]
    for (x, y), m in pair_orders.items():
        rows[x - 1][y - 1] = rows[y - 1][x - 1] = m
    try:
        return CoxeterMatrix.from_rows(rows)
    except UnsupportedLabelError:
        return None


def _match_c2_times_z(P: Presentation) -> bool:
    if P.generator_count != 2:
        return False
    powers = [r for r in P.relators if len(letters(r)) == 1]
    if len(powers) != 1 or len(powers[0]) != 2:
        return False
    x = abs(powers[0][0])
    y = 3 - x
    others = [r for r in P.relators if len(letters(r)) == 2]
    if len(others) != len(P.relators) - 1 or not others:
        return False
    for r in others:
        if len(r) != 4 or exponent_sum(r, y) != 0:
            return False
        if sorted(a for a in r if abs(a) == x) != [x, x]:
            return False
        if any(abs(r[i]) == abs(r[i - 1]) for i in range(4)):
            return False
    return True


def todd_coxeter_order(P: Presentation, coset_cap: int = DEFAULT_COSET_CAP) -> Optional[int]:
    """|G| by coset enumeration over the trivial subgroup, None past the cap."""
    n = P.generator_count
    if n == 0:
        return 1
    F, *gens = free_group(", ".join(f"x{i}" for i in range(1, n + 1)))
    relators = []
    for r in P.relators:
        element = F.identity
        for x in r:
            element = element * (gens[x - 1] if x > 0 else gens[-x - 1] ** -1)
        relators.append(element)
    group = FpGroup(F, relators)
    try:
        table = coset_enumeration_r(group, [], max_cosets=coset_cap)
    except ValueError:
        logger.debug(f"Coset enumeration exceeded {coset_cap} cosets")
        return None
    return sum(1 for i, p in enumerate(table.p) if p == i)


def recognize(P: Presentation, coset_cap: int = DEFAULT_COSET_CAP, simplify: bool = True) -> GroupTag:
    """Name the group presented by P, or return Unknown."""
    if simplify:
        P = tietze_simplify(P)
    n = P.generator_count
    if n == 0:
        return trivial()
    if n == 1:
        g = 0
        for r in P.relators:
            g = math.gcd(g, exponent_sum(r, 1))
        if g == 0:
            return infinite_cyclic()
        return cyclic(g)

    matrix = match_coxeter(P)
    if matrix is not None:
        if all(matrix[i, j] == 2 for i in range(n) for j in range(n) if i != j):
            return direct_product(*(cyclic(2) for _ in range(n)))
        if build_system(matrix).type_class != FINITE:
            return coxeter_group(matrix)

    if _match_c2_times_z(P):
        return direct_product(cyclic(2), infinite_cyclic())

    order = todd_coxeter_order(P, coset_cap)
    if order is None:
        return unknown()
    invariants = abelianization(P)
    if invariants.order == order:
        if len(invariants.torsion) <= 1:
            return cyclic(order)
        if all(t == 2 for t in invariants.torsion):
            return direct_product(*(cyclic(2) for _ in invariants.torsion))
    return finite_of_order(order)
