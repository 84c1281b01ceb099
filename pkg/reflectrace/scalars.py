"""
Exact scalars and matrices over Q(√2, √3, √5)

Every coefficient of the geometric representation of a Coxeter matrix with
labels in {2, 3, 4, 5, 6, inf} lies in this field. A scalar is stored as 8
rational coordinates with respect to the basis

    1, √2, √3, √5, √6, √10, √15, √30

so equality is coordinate equality. Signs of nonzero values are decided with
mpmath interval arithmetic at doubling precision.
"""

from __future__ import annotations

import enum
import logging
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import mpmath

from .errors import ScalarDivisionError

logger = logging.getLogger(__name__)

BASIS_RADICANDS: Tuple[int, ...] = (1, 2, 3, 5, 6, 10, 15, 30)
_PRIMES: Tuple[int, ...] = (2, 3, 5)

# bit k of a mask marks the k-th prime under the square root
_MASKS: Tuple[int, ...] = (0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111)
_INDEX_OF_MASK = {mask: index for index, mask in enumerate(_MASKS)}

INITIAL_SIGN_PRECISION = 64
MAX_SIGN_PRECISION = 1 << 20

_ZERO = Fraction(0)
_ONE = Fraction(1)

RationalLike = Union[int, Fraction]


def _prime_product(mask: int) -> int:
    product = 1
    for bit, prime in enumerate(_PRIMES):
        if mask >> bit & 1:
            product *= prime
    return product


def _build_multiplication_table() -> Tuple[Tuple[Tuple[int, int], ...], ...]:
    table = []
    for mask_i in _MASKS:
        row = []
        for mask_j in _MASKS:
            row.append((_INDEX_OF_MASK[mask_i ^ mask_j], _prime_product(mask_i & mask_j)))
        table.append(tuple(row))
    return tuple(table)


# (i, j) -> (k, c): basis_i * basis_j = c * basis_k
MULTIPLICATION_TABLE = _build_multiplication_table()


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


@total_ordering
class QScalar:
    """An exact element of Q(√2, √3, √5). Immutable."""

    __slots__ = ("_coords", "_hash")

    def __init__(self, coords: Iterable[RationalLike] = ()):
        values = tuple(Fraction(c) for c in coords)
        if len(values) > len(BASIS_RADICANDS):
            raise ValueError(f"expected at most 8 coordinates, got {len(values)}")
        self._coords = values + (_ZERO,) * (len(BASIS_RADICANDS) - len(values))
        self._hash = None

    @classmethod
    def _from_tuple(cls, coords: Tuple[Fraction, ...]) -> "QScalar":
        obj = object.__new__(cls)
        obj._coords = coords
        obj._hash = None
        return obj

    @classmethod
    def from_rational(cls, value: RationalLike) -> "QScalar":
        return cls._from_tuple((Fraction(value),) + (_ZERO,) * 7)

    @classmethod
    def radical(cls, radicand: int, coefficient: RationalLike = 1) -> "QScalar":
        """coefficient * sqrt(radicand) for a radicand of the basis."""
        try:
            index = BASIS_RADICANDS.index(radicand)
        except ValueError:
            raise ValueError(f"√{radicand} is not a basis element of Q(√2, √3, √5)") from None
        coords = [_ZERO] * 8
        coords[index] = Fraction(coefficient)
        return cls._from_tuple(tuple(coords))

    @property
    def coords(self) -> Tuple[Fraction, ...]:
        return self._coords

    def is_zero(self) -> bool:
        return not any(self._coords)

    def is_rational(self) -> bool:
        return not any(self._coords[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self._coords[0]

    # --- arithmetic ---

    def __add__(self, other) -> "QScalar":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return QScalar._from_tuple(tuple(a + b for a, b in zip(self._coords, other._coords)))

    __radd__ = __add__

    def __neg__(self) -> "QScalar":
        return QScalar._from_tuple(tuple(-a for a in self._coords))

    def __sub__(self, other) -> "QScalar":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return QScalar._from_tuple(tuple(a - b for a, b in zip(self._coords, other._coords)))

    def __rsub__(self, other) -> "QScalar":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other) -> "QScalar":
        if isinstance(other, (int, Fraction)):
            return QScalar._from_tuple(tuple(a * other for a in self._coords))
        if not isinstance(other, QScalar):
            return NotImplemented
        left = [(i, a) for i, a in enumerate(self._coords) if a]
        right = [(j, b) for j, b in enumerate(other._coords) if b]
        if not left or not right:
            return ZERO
        result = [_ZERO] * 8
        for i, a in left:
            table_row = MULTIPLICATION_TABLE[i]
            for j, b in right:
                k, c = table_row[j]
                result[k] += a * b * c
        return QScalar._from_tuple(tuple(result))

    __rmul__ = __mul__

    def conjugate(self, prime: int) -> "QScalar":
        """The Galois conjugate sending √prime to -√prime."""
        bit = _PRIMES.index(prime)
        return QScalar._from_tuple(
            tuple(-a if _MASKS[i] >> bit & 1 else a for i, a in enumerate(self._coords))
        )

    def inverse(self) -> "QScalar":
        if self.is_zero():
            raise ScalarDivisionError("division by zero in Q(√2, √3, √5)")
        numerator = ONE
        norm = self
        for prime in _PRIMES:
            conj = norm.conjugate(prime)
            numerator = numerator * conj
            norm = norm * conj
        # norm is now rational
        return numerator * (_ONE / norm._coords[0])

    def __truediv__(self, other) -> "QScalar":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ScalarDivisionError("division by zero in Q(√2, √3, √5)")
            return QScalar._from_tuple(tuple(a / other for a in self._coords))
        if not isinstance(other, QScalar):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "QScalar":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> "QScalar":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # --- comparison ---

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._coords == other._coords

    def __lt__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() is Sign.NEGATIVE

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self._coords[0])
            else:
                self._hash = hash(self._coords)
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    # --- sign determination ---

    def interval(self, prec: int):
        """An mpmath interval enclosing the real value at `prec` bits."""
        iv = mpmath.iv
        saved = iv.prec
        iv.prec = prec
        try:
            total = iv.mpf(0)
            for coefficient, radicand in zip(self._coords, BASIS_RADICANDS):
                if not coefficient:
                    continue
                term = iv.mpf(coefficient.numerator) / coefficient.denominator
                if radicand != 1:
                    term = term * iv.sqrt(radicand)
                total = total + term
            return total
        finally:
            iv.prec = saved

    def sign(self) -> Sign:
        if self.is_zero():
            return Sign.ZERO
        if self.is_rational():
            return Sign.POSITIVE if self._coords[0] > 0 else Sign.NEGATIVE
        prec = INITIAL_SIGN_PRECISION
        while prec <= MAX_SIGN_PRECISION:
            enclosure = self.interval(prec)
            if enclosure.a > 0:
                return Sign.POSITIVE
            if enclosure.b < 0:
                return Sign.NEGATIVE
            logger.debug(f"Sign of {self} undecided at {prec} bits, doubling")
            prec *= 2
        raise ArithmeticError(f"could not separate {self} from zero at {MAX_SIGN_PRECISION} bits")

    def __float__(self) -> float:
        return float(sum(float(c) * (r ** 0.5) for c, r in zip(self._coords, BASIS_RADICANDS) if c))

    # --- display ---

    def __repr__(self) -> str:
        return f"QScalar({str(self)!r})"

    def __str__(self) -> str:
        terms = []
        for coefficient, radicand in zip(self._coords, BASIS_RADICANDS):
            if not coefficient:
                continue
            if radicand == 1:
                terms.append(str(coefficient))
                continue
            if coefficient == 1:
                text = f"√{radicand}"
            elif coefficient == -1:
                text = f"-√{radicand}"
            elif coefficient.denominator == 1:
                text = f"{coefficient}√{radicand}"
            else:
                text = f"({coefficient})√{radicand}"
            terms.append(text)
        if not terms:
            return "0"
        out = terms[0]
        for term in terms[1:]:
            out += term if term.startswith("-") else f"+{term}"
        return out


ZERO = QScalar.from_rational(0)
ONE = QScalar.from_rational(1)


def _coerce(value) -> Optional[QScalar]:
    if isinstance(value, QScalar):
        return value
    if isinstance(value, (int, Fraction)):
        return QScalar.from_rational(value)
    return None


def as_qscalar(value) -> QScalar:
    scalar = _coerce(value)
    if scalar is None:
        raise TypeError(f"cannot interpret {value!r} as an element of Q(√2, √3, √5)")
    return scalar


def arith(a: QScalar, b: QScalar, op: str) -> QScalar:
    """Field arithmetic by operation name: add, sub, mul or div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation: {op}")


def sign(a: QScalar) -> Sign:
    return as_qscalar(a).sign()


# cos(pi/m) for the supported Coxeter labels; inf follows the -1 convention for B
_COS_PI_OVER = {
    1: QScalar.from_rational(-1),
    2: ZERO,
    3: QScalar.from_rational(Fraction(1, 2)),
    4: QScalar.radical(2, Fraction(1, 2)),
    5: QScalar((Fraction(1, 4), 0, 0, Fraction(1, 4))),
    6: QScalar.radical(3, Fraction(1, 2)),
}


def cos_pi_over(label) -> QScalar:
    """cos(pi/m), with cos(pi/inf) taken as 1."""
    if label == float("inf"):
        return ONE
    return _COS_PI_OVER[label]


# --- vectors ---

QVector = Tuple[QScalar, ...]


def zero_vector(dim: int) -> QVector:
    return (ZERO,) * dim


def basis_vector(dim: int, index: int) -> QVector:
    return tuple(ONE if i == index else ZERO for i in range(dim))


def vector_add(u: Sequence[QScalar], v: Sequence[QScalar]) -> QVector:
    return tuple(a + b for a, b in zip(u, v))


def vector_scale(u: Sequence[QScalar], c) -> QVector:
    return tuple(a * c for a in u)


def dot(u: Sequence[QScalar], v: Sequence[QScalar]) -> QScalar:
    total = ZERO
    for a, b in zip(u, v):
        if a and b:
            total = total + a * b
    return total


class QMatrix:
    """A square matrix over Q(√2, √3, √5), row-major. Immutable."""

    __slots__ = ("dim", "rows", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        converted = tuple(tuple(as_qscalar(x) for x in row) for row in rows)
        if not converted or any(len(row) != len(converted) for row in converted):
            raise ValueError("QMatrix must be square and non-empty")
        self.dim = len(converted)
        self.rows = converted
        self._hash = None

    @classmethod
    def _from_rows(cls, rows: Tuple[Tuple[QScalar, ...], ...]) -> "QMatrix":
        obj = object.__new__(cls)
        obj.dim = len(rows)
        obj.rows = rows
        obj._hash = None
        return obj

    @classmethod
    def identity(cls, dim: int) -> "QMatrix":
        return cls._from_rows(tuple(basis_vector(dim, i) for i in range(dim)))

    def __getitem__(self, index: Tuple[int, int]) -> QScalar:
        i, j = index
        return self.rows[i][j]

    def column(self, j: int) -> QVector:
        return tuple(row[j] for row in self.rows)

    def transpose(self) -> "QMatrix":
        return QMatrix._from_rows(tuple(zip(*self.rows)))

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        columns = list(zip(*other.rows))
        return QMatrix._from_rows(
            tuple(tuple(dot(row, column) for column in columns) for row in self.rows)
        )

    def apply(self, vector: Sequence[QScalar]) -> QVector:
        return tuple(dot(row, vector) for row in self.rows)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix._from_rows(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def is_identity(self) -> bool:
        return all(
            entry == (ONE if i == j else ZERO)
            for i, row in enumerate(self.rows)
            for j, entry in enumerate(row)
        )

    def trace(self) -> QScalar:
        total = ZERO
        for i in range(self.dim):
            total = total + self.rows[i][i]
        return total

    def submatrix(self, indices: Sequence[int]) -> "QMatrix":
        return QMatrix._from_rows(tuple(tuple(self.rows[i][j] for j in indices) for i in indices))

    def determinant(self) -> QScalar:
        """Fraction-free (Bareiss) determinant with row pivoting."""
        n = self.dim
        rows = [list(row) for row in self.rows]
        previous = ONE
        negate = False
        for k in range(n - 1):
            if rows[k][k].is_zero():
                swap = next((i for i in range(k + 1, n) if not rows[i][k].is_zero()), None)
                if swap is None:
                    return ZERO
                rows[k], rows[swap] = rows[swap], rows[k]
                negate = not negate
            pivot = rows[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    rows[i][j] = (rows[i][j] * pivot - rows[i][k] * rows[k][j]) / previous
            previous = pivot
        det = rows[n - 1][n - 1]
        return -det if negate else det

    def leading_principal_minors(self) -> List[QScalar]:
        return [self.submatrix(range(k)).determinant() for k in range(1, self.dim + 1)]

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in row) for row in self.rows)
        return f"QMatrix([{body}])"


def _row_echelon(matrix: QMatrix) -> Tuple[List[List[QScalar]], List[int]]:
    """Fraction-free forward elimination; returns echelon rows and pivot columns."""
    n = matrix.dim
    rows = [list(row) for row in matrix.rows]
    pivots: List[int] = []
    previous = ONE
    r = 0
    for c in range(n):
        if r == n:
            break
        p = next((i for i in range(r, n) if not rows[i][c].is_zero()), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pivot = rows[r][c]
        for i in range(r + 1, n):
            factor = rows[i][c]
            if factor.is_zero():
                rows[i] = [x / previous * pivot for x in rows[i]] if previous != ONE else rows[i]
                continue
            rows[i] = [(pivot * a - factor * b) / previous for a, b in zip(rows[i], rows[r])]
        previous = pivot
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(matrix: QMatrix) -> int:
    return len(_row_echelon(matrix)[1])


def kernel(matrix: QMatrix) -> List[QVector]:
    """Exact basis of the null space, one vector per free column."""
    n = matrix.dim
    rows, pivots = _row_echelon(matrix)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * n
        x[f] = ONE
        for r in reversed(range(len(pivots))):
            c = pivots[r]
            acc = ZERO
            for j in range(c + 1, n):
                if x[j] and rows[r][j]:
                    acc = acc + rows[r][j] * x[j]
            x[c] = -acc / rows[r][c]
        basis.append(tuple(x))
    return basis


def fixed_space(matrix: QMatrix) -> List[QVector]:
    """Exact basis of {v : M v = v}."""
    return kernel(matrix - QMatrix.identity(matrix.dim))
