"""Exact rational linear maps between finite-dimensional spaces.

Objects are plain dimensions. A morphism ``n -> m`` is an ``m x n`` matrix over
the rationals. Tensor products follow the Kronecker ordering, so in a basis
vector of ``X (x) Y`` the index of the left factor varies slowest.

Entries are kept sparsely, one dictionary per column, and every value is either
an ``int`` or a ``Fraction`` with denominator larger than one.  Zeros are never
stored, which makes equality a plain structural comparison.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]

__all__ = [
    "Rational",
    "LinMap",
    "ShapeError",
    "NotIdempotentError",
    "Splitting",
    "as_rational",
    "identity",
    "zero",
    "compose",
    "tensor",
    "flip",
    "split_idempotent",
    "first_difference",
    "format_scalar",
]


class ShapeError(ValueError):
    """Raised when maps are combined with incompatible dimensions."""


class NotIdempotentError(ValueError):
    """Raised by :func:`split_idempotent` when ``e o e != e``."""

    def __init__(self, message: str, witness: tuple | None = None):
        super().__init__(message)
        self.witness = witness


def _clean(value) -> Scalar:
    if type(value) is int:
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return int(value)
    if isinstance(value, str):
        return _clean(Fraction(value.strip()))
    raise TypeError(f"exact rational expected, got {type(value).__name__}: {value!r}")


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``'p/q'`` string to a ``Fraction``."""
    return Fraction(_clean(value))


def format_scalar(value: Scalar) -> str:
    value = _clean(value)
    if type(value) is int:
        return str(value)
    return f"{value.numerator}/{value.denominator}"


def _check_dim(n) -> int:
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ShapeError(f"dimension must be a non-negative int, got {n!r}")
    return n


class LinMap:
    """A linear map ``dom -> cod`` stored as sparse rational columns."""

    __slots__ = ("dom", "cod", "_cols")
    __hash__ = None  # mutable-looking container semantics; compare by value

    def __init__(self, dom: int, cod: int, cols: Sequence[Mapping[int, Scalar]]):
        self.dom = _check_dim(dom)
        self.cod = _check_dim(cod)
        if len(cols) != dom:
            raise ShapeError(f"expected {dom} columns, got {len(cols)}")
        built = []
        for col in cols:
            clean = {}
            for r, v in col.items():
                if not 0 <= r < cod:
                    raise ShapeError(f"row index {r} outside codomain of dimension {cod}")
                v = _clean(v)
                if v:
                    clean[r] = v
            built.append(clean)
        self._cols = tuple(built)

    @classmethod
    def _raw(cls, dom: int, cod: int, cols: tuple) -> "LinMap":
        obj = cls.__new__(cls)
        obj.dom = dom
        obj.cod = cod
        obj._cols = cols
        return obj

    # construction -----------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], dom: int | None = None) -> "LinMap":
        """Build from a dense row-major matrix.  ``dom`` is needed only when
        there are no rows (a map into the zero space)."""
        cod = len(rows)
        if cod == 0:
            if dom is None:
                raise ShapeError("dom must be given for a map with no rows")
            return zero(dom, 0)
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise ShapeError("ragged rows")
        width = widths.pop()
        if dom is not None and dom != width:
            raise ShapeError(f"rows have width {width}, expected {dom}")
        cols = [dict() for _ in range(width)]
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                v = _clean(v)
                if v:
                    cols[j][i] = v
        return cls._raw(width, cod, tuple(cols))

    @classmethod
    def from_function(cls, dom: int, cod: int, image: Callable[[int], Mapping[int, Scalar] | Iterable]) -> "LinMap":
        """Build from the images of basis vectors.

        ``image(j)`` returns either a mapping ``row -> coefficient`` or an
        iterable of ``(row, coefficient)`` pairs; repeated rows are summed.
        """
        cols = []
        for j in range(dom):
            out = image(j)
            items = out.items() if isinstance(out, Mapping) else (out or ())
            col: dict[int, Scalar] = {}
            for r, v in items:
                if not 0 <= r < cod:
                    raise ShapeError(f"row index {r} outside codomain of dimension {cod}")
                col[r] = col.get(r, 0) + _clean(v)
            cols.append({r: _clean(v) for r, v in col.items() if v})
        return cls._raw(dom, cod, tuple(cols))

    @classmethod
    def from_entries(cls, dom: int, cod: int, entries: Mapping[tuple[int, int], Scalar]) -> "LinMap":
        cols = [dict() for _ in range(dom)]
        for (i, j), v in entries.items():
            cols[j][i] = v
        return cls(dom, cod, cols)

    # inspection -------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.cod, self.dom)

    def entry(self, row: int, col: int) -> Scalar:
        return self._cols[col].get(row, 0)

    def column(self, col: int) -> dict[int, Scalar]:
        return dict(self._cols[col])

    def columns(self) -> tuple:
        return self._cols

    def rows(self) -> list[list[Scalar]]:
        dense = [[0] * self.dom for _ in range(self.cod)]
        for j, col in enumerate(self._cols):
            for i, v in col.items():
                dense[i][j] = v
        return dense

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self._cols)

    def is_zero(self) -> bool:
        return not any(self._cols)

    def __repr__(self) -> str:
        if self.dom * self.cod <= 64:
            body = "; ".join(" ".join(format_scalar(v) for v in row) for row in self.rows())
            return f"LinMap({self.dom}->{self.cod}: [{body}])"
        return f"LinMap({self.dom}->{self.cod}, nnz={self.nnz})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinMap):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self._cols == other._cols

    # algebra of maps --------------------------------------------------
    def compose(self, other: "LinMap") -> "LinMap":
        """Return ``self o other`` (apply ``other`` first)."""
        if other.cod != self.dom:
            raise ShapeError(f"cannot compose {self.dom}->{self.cod} after {other.dom}->{other.cod}")
        mine = self._cols
        out = []
        for col in other._cols:
            acc: dict[int, Scalar] = {}
            for k, v in col.items():
                for i, w in mine[k].items():
                    acc[i] = acc.get(i, 0) + v * w
            out.append({i: _clean(x) for i, x in acc.items() if x})
        return LinMap._raw(other.dom, self.cod, tuple(out))

    __matmul__ = compose

    def tensor(self, other: "LinMap") -> "LinMap":
        """Kronecker product ``self (x) other``."""
        m = other.cod
        theirs = other._cols
        out = []
        for a in self._cols:
            for b in theirs:
                if not a or not b:
                    out.append({})
                    continue
                col = {}
                for i, v in a.items():
                    base = i * m
                    for k, w in b.items():
                        col[base + k] = _clean(v * w)
                out.append(col)
        return LinMap._raw(self.dom * other.dom, self.cod * m, tuple(out))

    __xor__ = tensor

    def __add__(self, other: "LinMap") -> "LinMap":
        if not isinstance(other, LinMap):
            return NotImplemented
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        out = []
        for a, b in zip(self._cols, other._cols):
            col = dict(a)
            for i, v in b.items():
                col[i] = col.get(i, 0) + v
            out.append({i: _clean(v) for i, v in col.items() if v})
        return LinMap._raw(self.dom, self.cod, tuple(out))

    def __neg__(self) -> "LinMap":
        return LinMap._raw(self.dom, self.cod, tuple({i: -v for i, v in c.items()} for c in self._cols))

    def __sub__(self, other: "LinMap") -> "LinMap":
        return self + (-other)

    def scale(self, c) -> "LinMap":
        c = _clean(c)
        if not c:
            return zero(self.dom, self.cod)
        return LinMap._raw(self.dom, self.cod, tuple({i: _clean(v * c) for i, v in col.items()} for col in self._cols))

    def __rmul__(self, c) -> "LinMap":
        if isinstance(c, LinMap):
            return NotImplemented
        return self.scale(c)

    def transpose(self) -> "LinMap":
        cols = [dict() for _ in range(self.cod)]
        for j, col in enumerate(self._cols):
            for i, v in col.items():
                cols[i][j] = v
        return LinMap._raw(self.cod, self.dom, tuple(cols))

    @property
    def T(self) -> "LinMap":
        return self.transpose()

    # dense elimination -------------------------------------------------
    def rank(self) -> int:
        return len(_rref(self.rows(), self.dom)[1])

    def inverse(self) -> "LinMap":
        """Exact inverse; raises ``ValueError`` for singular or non-square maps."""
        if self.dom != self.cod:
            raise ShapeError(f"non-square map {self.dom}->{self.cod} has no inverse")
        n = self.dom
        aug = [row + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(self.rows())]
        reduced, pivots = _rref(aug, n)
        if len(pivots) < n:
            raise ValueError("map is singular")
        return LinMap.from_rows([row[n:] for row in reduced[:n]], dom=n)

    def is_invertible(self) -> bool:
        return self.dom == self.cod and self.rank() == self.dom


def _rref(rows: list[list], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Gauss-Jordan elimination over the rationals on the first ``ncols``
    columns.  The pivot in each column is the lowest-index usable row."""
    m = [[Fraction(v) for v in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        if lead != 1:
            m[r] = [v / lead for v in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                factor = m[k][c]
                m[k] = [a - factor * b for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


# free functions ---------------------------------------------------------

def identity(n: int) -> LinMap:
    n = _check_dim(n)
    return LinMap._raw(n, n, tuple({j: 1} for j in range(n)))


def zero(dom: int, cod: int) -> LinMap:
    return LinMap._raw(_check_dim(dom), _check_dim(cod), tuple({} for _ in range(dom)))


def compose(*maps: LinMap) -> LinMap:
    """``compose(f, g, h) == f o g o h``."""
    if not maps:
        raise ValueError("compose needs at least one map")
    out = maps[-1]
    for f in reversed(maps[:-1]):
        out = f.compose(out)
    return out


def tensor(*maps: LinMap) -> LinMap:
    if not maps:
        return identity(1)
    out = maps[0]
    for f in maps[1:]:
        out = out.tensor(f)
    return out


def flip(m: int, n: int) -> LinMap:
    """The symmetry ``X (x) Y -> Y (x) X`` for ``dim X = m``, ``dim Y = n``."""
    _check_dim(m), _check_dim(n)
    return LinMap._raw(m * n, m * n, tuple({b * m + a: 1} for a in range(m) for b in range(n)))


def first_difference(lhs: LinMap, rhs: LinMap) -> tuple[int, int, Scalar, Scalar] | None:
    """The first ``(row, col, lhs_entry, rhs_entry)`` where the maps differ,
    scanning columns in order, or ``None`` when they are equal."""
    if lhs.shape != rhs.shape:
        raise ShapeError(f"cannot compare {lhs.shape} with {rhs.shape}")
    for j, (a, b) in enumerate(zip(lhs._cols, rhs._cols)):
        if a != b:
            for i in sorted(set(a) | set(b)):
                if a.get(i, 0) != b.get(i, 0):
                    return (i, j, a.get(i, 0), b.get(i, 0))
    return None


@dataclass(frozen=True)
class Splitting:
    """An idempotent factored through its image: ``injection o projection``
    is the idempotent and ``projection o injection`` is the identity."""

    image_dim: int
    injection: LinMap
    projection: LinMap

    def __post_init__(self):
        n = self.injection.cod
        if self.injection.dom != self.image_dim or self.projection.shape != (self.image_dim, n):
            raise ShapeError("splitting maps do not match the image dimension")

    @property
    def idempotent(self) -> LinMap:
        return self.injection @ self.projection

    def is_valid_for(self, e: LinMap) -> bool:
        return self.idempotent == e and self.projection @ self.injection == identity(self.image_dim)


def split_idempotent(e: LinMap) -> Splitting:
    """Factor an idempotent as ``e = injection o projection``.

    The injection consists of the pivot columns of ``e`` and the projection of
    the non-zero rows of its reduced row echelon form, so
    ``[[1, 1], [0, 0]]`` splits as ``(1, 0)^T`` followed by ``(1 1)``.
    """
    if e.dom != e.cod:
        raise ShapeError(f"idempotent must be square, got {e.dom}->{e.cod}")
    diff = first_difference(e @ e, e)
    if diff is not None:
        raise NotIdempotentError("map is not idempotent", diff)
    n = e.dom
    reduced, pivots = _rref(e.rows(), n)
    r = len(pivots)
    injection = LinMap._raw(r, n, tuple(e._cols[p] for p in pivots))
    projection = LinMap.from_rows(reduced[:r], dom=n) if r else zero(n, 0)
    return Splitting(r, injection, projection)
