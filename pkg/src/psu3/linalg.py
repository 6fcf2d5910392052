"""Exact sparse linear algebra over Q(sqrt 3).

Vectors are plain dicts ``key -> Scalar`` with no zero entries.  Keys can be
anything hashable and sortable among themselves (index tuples, ints, pairs).
Everything is Gaussian elimination; there are no tolerances.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence

from .scalar import ONE, ZERO, Scalar

Vector = dict

__all__ = [
    "Echelon",
    "nullspace",
    "rank",
    "solve",
    "invert",
    "Subspace",
    "axpy",
    "dot",
    "scale",
]


def axpy(y: Vector, a: Scalar, x: Vector) -> None:
    """In place ``y += a*x``."""
    for k, v in x.items():
        w = y.get(k)
        if w is None:
            y[k] = a * v
        else:
            w = w + a * v
            if w:
                y[k] = w
            else:
                del y[k]


def scale(x: Vector, a: Scalar) -> Vector:
    if not a:
        return {}
    return {k: v * a for k, v in x.items()}


def dot(x: Vector, y: Vector) -> Scalar:
    if len(x) > len(y):
        x, y = y, x
    total = ZERO
    for k, v in x.items():
        w = y.get(k)
        if w is not None:
            total = total + v * w
    return total


class Echelon:
    """Incrementally maintained reduced row echelon form.

    ``add(row)`` reduces the row against the current pivots and, if something
    survives, makes it a new pivot row.  Rows may carry a ``tag`` vector that
    undergoes the same operations (used to track combinations).
    """

    def __init__(self, key=None) -> None:
        self.pivots: dict[Hashable, Vector] = {}
        self.tags: dict[Hashable, Vector] = {}
        self._key = key

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Vector, tag: Vector | None = None):
        row = dict(row)
        tag = dict(tag) if tag is not None else None
        for c in [c for c in row if c in self.pivots]:
            f = row.get(c)
            if f is None:
                continue
            axpy(row, -f, self.pivots[c])
            if tag is not None:
                axpy(tag, -f, self.tags[c])
        return row, tag

    def add(self, row: Vector, tag: Vector | None = None) -> bool:
        row, tag = self.reduce(row, tag)
        if not row:
            return False
        c = min(row, key=self._key) if self._key else min(row)
        inv = ONE / row[c]
        row = scale(row, inv)
        if tag is not None:
            tag = scale(tag, inv)
        for p, prow in self.pivots.items():
            f = prow.get(c)
            if f is not None:
                axpy(prow, -f, row)
                if tag is not None:
                    axpy(self.tags[p], -f, tag)
        self.pivots[c] = row
        if tag is not None:
            self.tags[c] = tag
        return True

    def contains(self, row: Vector) -> bool:
        return not self.reduce(row)[0]


def rank(vectors: Iterable[Vector]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return len(ech)


def nullspace(equations: Iterable[Vector], variables: Sequence[Hashable], key=None) -> list[Vector]:
    """Basis of ``{x : <eq, x> = 0 for every equation}`` over the given variables."""
    order = {v: i for i, v in enumerate(variables)}
    ech = Echelon(key=key or order.__getitem__)
    for eq in equations:
        for k in eq:
            if k not in order:
                raise KeyError(f"equation uses unknown variable {k!r}")
        ech.add(eq)
    basis = []
    for f in variables:
        if f in ech.pivots:
            continue
        x = {f: ONE}
        for p, row in ech.pivots.items():
            c = row.get(f)
            if c is not None:
                x[p] = -c
        basis.append(x)
    return basis


def solve(equations: Sequence[Vector], rhs: Sequence[Scalar], variables: Sequence[Hashable]):
    """One solution of ``<eq_i, x> = rhs_i`` or None if inconsistent."""
    order = {v: i for i, v in enumerate(variables)}
    sentinel = ("__rhs__",)
    ech = Echelon(key=lambda k: order.get(k, len(order)))
    for eq, b in zip(equations, rhs):
        row = dict(eq)
        if b:
            row[sentinel] = -b if isinstance(b, Scalar) else -Scalar(b)
        ech.add(row)
    if sentinel in ech.pivots:
        return None
    x = {}
    for p, row in ech.pivots.items():
        c = row.get(sentinel)
        if c is not None:
            x[p] = -c
    return x


def invert(matrix: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
    n = len(matrix)
    ech = Echelon()
    for i, row in enumerate(matrix):
        ech.add({j: v for j, v in enumerate(row) if v}, {i: ONE})
    if len(ech) != n:
        raise ZeroDivisionError("singular matrix")
    out = [[ZERO] * n for _ in range(n)]
    for p, tag in ech.tags.items():
        for j, v in tag.items():
            out[p][j] = v
    return out


class Subspace:
    """A subspace given by a spanning basis, with exact orthogonal projection.

    The inner product is the coordinate dot product of the underlying dict
    vectors.  The basis must be linearly independent.
    """

    def __init__(self, basis: Sequence[Vector]) -> None:
        self.basis = [dict(b) for b in basis]
        n = len(self.basis)
        gram = [[dot(self.basis[i], self.basis[j]) for j in range(n)] for i in range(n)]
        self._ginv = invert(gram) if n else []

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, v: Vector) -> list[Scalar]:
        """Coefficients of the orthogonal projection of v in the given basis."""
        rhs = [dot(b, v) for b in self.basis]
        return [
            sum((g * r for g, r in zip(row, rhs) if g and r), ZERO) for row in self._ginv
        ]

    def combine(self, coords: Sequence[Scalar]) -> Vector:
        out: Vector = {}
        for c, b in zip(coords, self.basis):
            if c:
                axpy(out, c, b)
        return out

    def project(self, v: Vector) -> Vector:
        return self.combine(self.coordinates(v))

    def contains(self, v: Vector) -> bool:
        p = self.project(v)
        diff = dict(v)
        axpy(diff, -ONE, p)
        return not diff
