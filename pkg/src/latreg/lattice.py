"""Vertex sums, joins, and the determinant family over named data columns.

A *direction* is a multiset of column names; the empty multiset is the
constant measure 1 ("unity").  Over a dataset, the *vertex* of two
directions is the sum over rows of their product,

    V(a, b) = sum_i a_i * b_i,

so V(1, 1) = n, V(1, x) = sum(x), V(x, y) = sum(x * y), and so on.  A
:class:`Lattice` caches all pairwise vertices for a set of directions.
Products of vertex values ("joins") combine into signed 2x2 and 3x3
determinants; these carry the sufficient statistics for every least
squares fit in :mod:`latreg.estimators`:

    det2(a, b, c, d) = V(a,b) V(c,d) - V(a,d) V(c,b)

covers the variance family (for instance det2(1,1,x,x) = n sum(x^2) -
sum(x)^2, which is n^2 times the population variance), and 3x3
determinants over a vertex matrix cover the three-regressor systems.

All sums are accumulated with exact compensated summation
(:func:`math.fsum`); the determinant formulas subtract near-equal
products, so sloppy accumulation would surface directly in the results.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ColumnNotFoundError, EmptyDataError, MissingVertexError

__all__ = [
    "Direction",
    "UNITY",
    "Dataset",
    "Lattice",
    "DeterminantKind",
    "build_lattice",
    "join",
    "det2",
    "det3_general",
    "form_determinant",
    "scaled_sigma",
    "measure_catalog",
]


@dataclass(frozen=True, init=False)
class Direction:
    """A measure axis: unity (no factors), a column, or a product of columns.

    Factor order is irrelevant, so ``Direction("x", "y")`` equals
    ``Direction("y", "x")``.  Repeated factors are allowed and denote
    powers (``Direction("x", "x")`` is the x^2 axis).
    """

    factors: tuple[str, ...]

    def __init__(self, *factors: str):
        object.__setattr__(self, "factors", tuple(sorted(factors)))

    @property
    def is_unity(self) -> bool:
        return not self.factors

    @property
    def level(self) -> int:
        """Number of factors (0 for unity)."""
        return len(self.factors)

    @property
    def label(self) -> str:
        """Human-readable name: ``"1"``, ``"x"``, ``"x*y"``."""
        return "1" if self.is_unity else "*".join(self.factors)

    def __mul__(self, other: "Direction") -> "Direction":
        return Direction(*(self.factors + other.factors))

    def __repr__(self) -> str:
        return "Direction({})".format(", ".join(repr(f) for f in self.factors))


#: The constant measure 1.
UNITY = Direction()


class Dataset:
    """Named numeric columns of equal length n >= 1.

    Columns are stored as read-only float64 arrays; the dataset is
    immutable after construction and safe to share across threads.
    Degenerate but well-formed data (n = 1, constant columns) is accepted
    here; degeneracy only matters, and is diagnosed, when determinants
    are solved.
    """

    def __init__(self, columns: Mapping[str, Sequence[float] | np.ndarray]):
        if not columns:
            raise EmptyDataError("dataset has no columns")
        cols: dict[str, np.ndarray] = {}
        n: int | None = None
        for name, values in columns.items():
            arr = np.array(values, dtype=float)
            if arr.ndim != 1:
                raise ValueError(f"column {name!r} is not one-dimensional")
            if n is None:
                n = arr.shape[0]
            elif arr.shape[0] != n:
                raise ValueError(
                    f"column {name!r} has length {arr.shape[0]}, expected {n}")
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"column {name!r} contains non-finite values")
            arr.flags.writeable = False
            cols[name] = arr
        if n == 0:
            raise EmptyDataError("dataset has no rows")
        self._columns = cols
        self.n: int = int(n)  # type: ignore[arg-type]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self._columns)

    def column(self, name: str) -> np.ndarray:
        try:
            return self._columns[name]
        except KeyError:
            raise ColumnNotFoundError(name) from None

    def evaluate(self, direction: Direction) -> np.ndarray:
        """Per-row values of a direction: the product of its factor
        columns, or a vector of ones for unity."""
        out = np.ones(self.n)
        for factor in direction.factors:
            out = out * self.column(factor)
        return out

    def __repr__(self) -> str:
        return f"Dataset(n={self.n}, columns={list(self._columns)})"


def _vertex_key(a: Direction, b: Direction) -> tuple[tuple[str, ...], tuple[str, ...]]:
    return (a.factors, b.factors) if a.factors <= b.factors else (b.factors, a.factors)


class Lattice:
    """Cached pairwise vertex sums V(a, b) over a dataset.

    Built eagerly by :func:`build_lattice`; immutable afterwards.  Each
    vertex combines exactly two directions (``order`` is 2), though the
    directions themselves may be products, so interaction terms induce
    higher-order sums.
    """

    order = 2

    def __init__(self, source: Dataset, directions: Sequence[Direction],
                 vertices: Mapping[tuple, float]):
        self.source = source
        self.directions = tuple(directions)
        self._vertices = dict(vertices)

    def vertex(self, a: Direction, b: Direction) -> float:
        """V(a, b); symmetric in its arguments."""
        try:
            return self._vertices[_vertex_key(a, b)]
        except KeyError:
            raise MissingVertexError(
                f"vertex ({a.label}, {b.label}) is not cached; "
                "rebuild the lattice with both directions") from None

    def __repr__(self) -> str:
        return "Lattice(n={}, directions=[{}])".format(
            self.source.n, ", ".join(d.label for d in self.directions))


def build_lattice(data: Dataset, directions: Sequence[Direction]) -> Lattice:
    """Compute all pairwise vertices over ``directions``.

    Parameters
    ----------
    data : Dataset
        Source observations.
    directions : sequence of Direction
        Axes to cache, which must be non-empty and include unity.
        Duplicates are dropped, order otherwise preserved.

    Returns
    -------
    Lattice
        Symmetric vertex cache; V(a, b) available for every pair.

    Raises
    ------
    ColumnNotFoundError
        If a direction names a column missing from ``data``.
    ValueError
        If ``directions`` is empty or unity is missing.
    """
    dirs: list[Direction] = []
    for d in directions:
        if d not in dirs:
            dirs.append(d)
    if not dirs:
        raise ValueError("directions must be non-empty")
    if UNITY not in dirs:
        raise ValueError("directions must include unity")

    values = {d: data.evaluate(d) for d in dirs}
    vertices: dict[tuple, float] = {}
    for i, a in enumerate(dirs):
        for b in dirs[i:]:
            vertices[_vertex_key(a, b)] = math.fsum(values[a] * values[b])
    return Lattice(data, dirs, vertices)


def join(lat: Lattice, pairs: Sequence[tuple[Direction, Direction]]) -> float:
    """Product of two or three cached vertex values.

    ``join(lat, [(a, b), (c, d)])`` is the two-vertex join
    V(a,b) * V(c,d); a third pair gives the three-vertex join used by the
    3x3 determinants.
    """
    if len(pairs) not in (2, 3):
        raise ValueError(f"join takes 2 or 3 vertex pairs, got {len(pairs)}")
    return math.prod(lat.vertex(a, b) for a, b in pairs)


def det2(lat: Lattice, a: Direction, b: Direction,
         c: Direction, d: Direction) -> float:
    """Signed difference of joins: V(a,b) V(c,d) - V(a,d) V(c,b).

    Antisymmetric under swapping b and d: det2(a,b,c,d) = -det2(a,d,c,b).
    """
    return lat.vertex(a, b) * lat.vertex(c, d) - lat.vertex(a, d) * lat.vertex(c, b)


def det3_general(lat: Lattice, rows: Sequence[Direction],
                 cols: Sequence[Direction]) -> float:
    """3x3 determinant of the vertex matrix M[i][j] = V(rows[i], cols[j]).

    Cofactor expansion along the first row; equal to the signed sum of
    the six three-vertex joins.
    """
    if len(rows) != 3 or len(cols) != 3:
        raise ValueError("det3_general takes exactly 3 row and 3 column directions")
    (m00, m01, m02), (m10, m11, m12), (m20, m21, m22) = (
        [lat.vertex(r, c) for c in cols] for r in rows)
    return (m00 * (m11 * m22 - m12 * m21)
            - m01 * (m10 * m22 - m12 * m20)
            + m02 * (m10 * m21 - m11 * m20))


@dataclass(frozen=True)
class DeterminantKind:
    """A named member of the determinant family, tagged with the
    directions it combines.  Use the classmethod constructors."""

    tag: str
    directions: tuple[Direction, ...]

    @classmethod
    def variance(cls, a: Direction) -> "DeterminantKind":
        """n sum(a^2) - sum(a)^2, i.e. n^2 times the population variance."""
        return cls("variance", (a,))

    @classmethod
    def covariance(cls, a: Direction, b: Direction) -> "DeterminantKind":
        """n sum(ab) - sum(a) sum(b), i.e. n^2 times the population covariance."""
        return cls("covariance", (a, b))

    @classmethod
    def internal_covariance(cls, a: Direction, b: Direction) -> "DeterminantKind":
        """sum(a) sum(b^2) - sum(b) sum(ab): the level-one/level-two mixed
        determinant with subscripts (1, a, b, b)."""
        return cls("internal_covariance", (a, b))

    @classmethod
    def base_variance(cls, a: Direction, b: Direction) -> "DeterminantKind":
        """sum(a^2) sum(b^2) - sum(ab)^2: the level-two determinant that is
        the denominator of non-response estimates."""
        return cls("base_variance", (a, b))

    @classmethod
    def general2(cls, a: Direction, b: Direction,
                 c: Direction, d: Direction) -> "DeterminantKind":
        """Arbitrary four-subscript determinant V(a,b)V(c,d) - V(a,d)V(c,b)."""
        return cls("general2", (a, b, c, d))

    @classmethod
    def form1(cls, a: Direction, b: Direction, c: Direction) -> "DeterminantKind":
        """Symmetric 3x3 determinant with rows = cols = (a, b, c): the
        denominator of a three-regressor system."""
        return cls("form1", (a, b, c))

    @classmethod
    def form2(cls, a: Direction, b: Direction, c: Direction,
              d: Direction) -> "DeterminantKind":
        """form1(a, b, c) with the first column direction replaced by d:
        the numerator determinant of a three-regressor system.  Reduces to
        form1 when d = a."""
        return cls("form2", (a, b, c, d))


def form_determinant(lat: Lattice, kind: DeterminantKind) -> float:
    """Evaluate any member of the determinant family on a lattice."""
    t, ds = kind.tag, kind.directions
    if t == "variance":
        (a,) = ds
        return det2(lat, UNITY, UNITY, a, a)
    if t == "covariance":
        a, b = ds
        return det2(lat, UNITY, UNITY, a, b)
    if t == "internal_covariance":
        a, b = ds
        return det2(lat, UNITY, a, b, b)
    if t == "base_variance":
        a, b = ds
        return det2(lat, a, a, b, b)
    if t == "general2":
        return det2(lat, *ds)
    if t == "form1":
        return det3_general(lat, ds, ds)
    if t == "form2":
        a, b, c, d = ds
        return det3_general(lat, (a, b, c), (d, b, c))
    raise ValueError(f"unknown determinant kind {t!r}")


#: Kinds that admit the sigma = delta / n^2 rescaling.
_SIGMA_KINDS = ("variance", "covariance", "internal_covariance", "base_variance")


def scaled_sigma(lat: Lattice, kind: DeterminantKind) -> float:
    """Determinant divided by n^2 (population-style scaling).

    Only defined for the variance, covariance, internal covariance, and
    base variance kinds; the n^2 factor is exactly what those
    determinants carry over the plain moment.
    """
    if kind.tag not in _SIGMA_KINDS:
        raise ValueError(f"no sigma scaling for determinant kind {kind.tag!r}")
    n = lat.source.n
    return form_determinant(lat, kind) / float(n * n)


def _subscript_key(prefix: str, dirs: Iterable[Direction]) -> str:
    return prefix + "".join(d.label for d in dirs)


def measure_catalog(data: Dataset, columns: Sequence[str]) -> dict[str, float]:
    """All vertices and named determinants for two or three columns.

    Returns an ordered mapping whose keys follow the subscript naming of
    the determinant family: ``v_1x`` for vertices, ``delta_11xx`` for
    determinants, and ``sigma_11xx`` for the delta / n^2 rescalings.
    Keys concatenate column names directly, so single-character column
    names read exactly like the subscripts.
    """
    if len(columns) not in (2, 3):
        raise ValueError("measure catalog requires 2 or 3 columns")
    if len(set(columns)) != len(columns):
        raise ValueError("measure catalog columns must be distinct")
    dirs = [Direction(c) for c in columns]
    lat = build_lattice(data, [UNITY, *dirs])

    out: dict[str, float] = {}
    axes = [UNITY, *dirs]
    for i, a in enumerate(axes):
        for b in axes[i:]:
            out[_subscript_key("v_", (a, b))] = lat.vertex(a, b)

    variances = [DeterminantKind.variance(a) for a in dirs]
    covariances = [DeterminantKind.covariance(a, b)
                   for a, b in itertools.combinations(dirs, 2)]
    internals = []
    for a, b in itertools.combinations(dirs, 2):
        internals.append(DeterminantKind.internal_covariance(b, a))
        internals.append(DeterminantKind.internal_covariance(a, b))
    bases = [DeterminantKind.base_variance(a, b)
             for a, b in itertools.combinations(dirs, 2)]

    def delta_key(kind: DeterminantKind) -> str:
        if kind.tag == "variance":
            (a,) = kind.directions
            subs = (UNITY, UNITY, a, a)
        elif kind.tag == "covariance":
            a, b = kind.directions
            subs = (UNITY, UNITY, a, b)
        elif kind.tag == "internal_covariance":
            a, b = kind.directions
            subs = (UNITY, a, b, b)
        else:
            a, b = kind.directions
            subs = (a, a, b, b)
        return _subscript_key("delta_", subs)

    named = variances + covariances + internals + bases
    for kind in named:
        out[delta_key(kind)] = form_determinant(lat, kind)
    if len(dirs) == 3:
        a, b, c = dirs
        out[_subscript_key("delta_", (a, a, b, b, c, c))] = form_determinant(
            lat, DeterminantKind.form1(a, b, c))
    for kind in named:
        out["sigma_" + delta_key(kind)[len("delta_"):]] = scaled_sigma(lat, kind)
    return out
