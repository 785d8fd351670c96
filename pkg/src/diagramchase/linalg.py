"""Exact linear algebra: matrices, canonical subspaces and quotients.

Subspaces are kept in reduced row echelon form, so two subspaces are equal
as sets exactly when their basis arrays are equal entrywise.  That makes
every downstream exactness or homology statement a decidable array check.
All values are immutable after construction.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, InputError, NotInduced
from .fields import Field


def _arrays_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and bool(np.equal(a, b).all())


def rref_array(field: Field, a: np.ndarray) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form of ``a``; returns (rref copy, pivot columns)."""
    a = a.copy()
    rows, cols = a.shape
    pivots = []
    fast = a.dtype == np.int64
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        pivot_row = r + int(nz[0])
        if pivot_row != r:
            a[[r, pivot_row]] = a[[pivot_row, r]]
        a[r] = field.reduce(a[r] * field.inv(a[r, c]))
        others = np.flatnonzero(a[:, c])
        others = others[others != r]
        if others.size:
            if fast:
                a[others] = field.reduce(a[others] - np.outer(a[others, c], a[r]))
            else:
                for i in others:
                    a[i] = field.reduce(a[i] - a[i, c] * a[r])
        pivots.append(c)
        r += 1
    return a, tuple(pivots)


class LinearMap:
    """A matrix with explicit domain (cols) and codomain (rows) dimensions."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, data: np.ndarray):
        if data.ndim != 2:
            raise DimensionMismatch("matrix data must be 2-dimensional")
        self.field = field
        self.rows, self.cols = data.shape
        self.data = field.reduce(data)
        self.data.setflags(write=False)

    @classmethod
    def from_rows(cls, field: Field, entries, rows: int | None = None, cols: int | None = None) -> LinearMap:
        return cls(field, field.array(entries, rows, cols))

    @classmethod
    def zero(cls, field: Field, rows: int, cols: int) -> LinearMap:
        return cls(field, field.zeros(rows, cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> LinearMap:
        return cls(field, field.identity(n))

    def __matmul__(self, other: LinearMap) -> LinearMap:
        """Composition self o other (apply ``other`` first)."""
        if self.field != other.field:
            raise DimensionMismatch("field mismatch in composition")
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot compose {self.rows}x{self.cols} after {other.rows}x{other.cols}")
        return LinearMap(self.field, self.field.matmul(self.data, other.data))

    def __add__(self, other: LinearMap) -> LinearMap:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in sum")
        return LinearMap(self.field, self.field.reduce(self.data + other.data))

    def __sub__(self, other: LinearMap) -> LinearMap:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in difference")
        return LinearMap(self.field, self.field.reduce(self.data - other.data))

    def scale(self, c) -> LinearMap:
        return LinearMap(self.field, self.field.reduce(self.data * self.field.scalar(c)))

    def apply(self, v: np.ndarray) -> np.ndarray:
        if v.shape != (self.cols,):
            raise DimensionMismatch(f"vector of dim {v.shape} fed to {self.rows}x{self.cols} map")
        return self.field.reduce(self.data @ v)

    def transpose(self) -> LinearMap:
        return LinearMap(self.field, self.data.T.copy())

    def is_zero(self) -> bool:
        return bool(np.equal(self.data, 0).all())

    def __eq__(self, other):
        return (isinstance(other, LinearMap) and self.field == other.field
                and _arrays_equal(self.data, other.data))

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.data.tobytes() if self.data.dtype == np.int64 else str(self.data)))

    def __repr__(self):
        return f"LinearMap({self.field}, {self.rows}x{self.cols})"


class Subspace:
    """A subspace of F^n held as a reduced row echelon basis.

    Canonicity: any two generating sets of the same subspace produce the
    identical basis array, so ``==`` decides equality of subspaces.
    """

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: Field, ambient_dim: int, basis: np.ndarray, pivots: tuple[int, ...]):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.basis.setflags(write=False)
        self.pivots = pivots

    @classmethod
    def from_generators(cls, field: Field, ambient_dim: int, vectors: np.ndarray) -> Subspace:
        """Canonical subspace spanned by the rows of ``vectors``."""
        if vectors.ndim != 2 or vectors.shape[1] != ambient_dim:
            raise DimensionMismatch(
                f"generators of shape {vectors.shape} in ambient dim {ambient_dim}")
        reduced, pivots = rref_array(field, field.reduce(vectors))
        return cls(field, ambient_dim, reduced[: len(pivots)].copy(), pivots)

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> Subspace:
        return cls(field, ambient_dim, field.zeros(0, ambient_dim), ())

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> Subspace:
        return cls(field, ambient_dim, field.identity(ambient_dim), tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def reduce_vector(self, v: np.ndarray) -> np.ndarray:
        """Residue of ``v`` after clearing its pivot coordinates; zero iff v lies here."""
        if v.shape != (self.ambient_dim,):
            raise DimensionMismatch("vector/ambient mismatch")
        if self.dim == 0:
            return self.field.reduce(v.copy())
        coeffs = v[list(self.pivots)]
        return self.field.reduce(v - coeffs @ self.basis)

    def contains(self, v: np.ndarray) -> bool:
        return bool(np.equal(self.reduce_vector(v), 0).all())

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def coordinates_of(self, v: np.ndarray) -> np.ndarray:
        """Coefficients of ``v`` in this basis; raises if v is not a member."""
        if not self.contains(v):
            raise InputError("vector does not lie in the subspace")
        return self.field.reduce(v[list(self.pivots)].copy())

    def _check_same_ambient(self, other: Subspace):
        if self.field != other.field or self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("subspaces live in different ambient spaces")

    def __add__(self, other: Subspace) -> Subspace:
        self._check_same_ambient(other)
        stacked = np.vstack([self.basis, other.basis])
        return Subspace.from_generators(self.field, self.ambient_dim, stacked)

    def intersect(self, other: Subspace) -> Subspace:
        self._check_same_ambient(other)
        # Rows (x, y) with x*A = y*B span the pairs of coefficients; the
        # kernel of [A; -B]^T picks them out.
        stacked = np.vstack([self.basis, self.field.reduce(-other.basis)]).T
        coeff_pairs = kernel(LinearMap(self.field, stacked))
        gens = self.field.matmul(coeff_pairs.basis[:, : self.dim], self.basis)
        return Subspace.from_generators(self.field, self.ambient_dim, gens)

    def __and__(self, other: Subspace) -> Subspace:
        return self.intersect(other)

    def __le__(self, other: Subspace) -> bool:
        self._check_same_ambient(other)
        return all(other.contains(row) for row in self.basis)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.field == other.field
                and self.ambient_dim == other.ambient_dim
                and _arrays_equal(self.basis, other.basis))

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.pivots))

    def inclusion(self) -> LinearMap:
        """The inclusion of this subspace into its ambient space, in basis coordinates."""
        return LinearMap(self.field, self.basis.T.copy())

    def enumerate_vectors(self):
        """Every element, for enumeration oracles over finite fields."""
        for coeffs in self.field.iter_vectors(self.dim):
            yield self.field.reduce(coeffs @ self.basis) if self.dim else self.field.vector([0] * self.ambient_dim)

    def __repr__(self):
        return f"Subspace(dim {self.dim} of F^{self.ambient_dim} over {self.field})"


class QuotientSpace:
    """F^n modulo a subspace, with an explicit projection and section.

    The section picks the representative whose coordinates vanish on the
    subspace's pivot columns, so projection o section is the identity and
    the kernel of the projection is exactly the subspace.
    """

    __slots__ = ("field", "ambient_dim", "subspace", "dim", "projection", "section")

    def __init__(self, subspace: Subspace):
        field = subspace.field
        n = subspace.ambient_dim
        self.field = field
        self.ambient_dim = n
        self.subspace = subspace
        nonpivots = [j for j in range(n) if j not in set(subspace.pivots)]
        self.dim = len(nonpivots)
        proj = field.zeros(self.dim, n)
        for k, j in enumerate(nonpivots):
            proj[k, j] = field.scalar(1)
        for i, pc in enumerate(subspace.pivots):
            proj[:, pc] = field.reduce(-subspace.basis[i, nonpivots])
        self.projection = LinearMap(field, proj)
        sec = field.zeros(n, self.dim)
        for k, j in enumerate(nonpivots):
            sec[j, k] = field.scalar(1)
        self.section = LinearMap(field, sec)

    def project(self, v: np.ndarray) -> np.ndarray:
        return self.projection.apply(v)

    def represent(self, w: np.ndarray) -> np.ndarray:
        return self.section.apply(w)

    def __eq__(self, other):
        return isinstance(other, QuotientSpace) and self.subspace == other.subspace

    def __hash__(self):
        return hash(self.subspace)

    def __repr__(self):
        return f"QuotientSpace(F^{self.ambient_dim} / dim-{self.subspace.dim} subspace)"


def rref(m: LinearMap) -> tuple[LinearMap, int, list[int]]:
    """Unique reduced row echelon form of ``m`` with rank and pivot columns."""
    reduced, pivots = rref_array(m.field, m.data)
    return LinearMap(m.field, reduced), len(pivots), list(pivots)


def kernel(m: LinearMap) -> Subspace:
    """{x : m x = 0} as a canonical subspace of the domain."""
    reduced, pivots = rref_array(m.field, m.data)
    field = m.field
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    gens = field.zeros(len(free), m.cols)
    for k, fc in enumerate(free):
        gens[k, fc] = field.scalar(1)
        for i, pc in enumerate(pivots):
            gens[k, pc] = -reduced[i, fc]
    return Subspace.from_generators(field, m.cols, gens)


def image(m: LinearMap) -> Subspace:
    """Column space of ``m`` as a canonical subspace of the codomain."""
    return Subspace.from_generators(m.field, m.rows, m.data.T.copy())


def quotient(ambient_dim: int, w: Subspace) -> QuotientSpace:
    """The quotient of F^ambient_dim by ``w``."""
    if w.ambient_dim != ambient_dim:
        raise DimensionMismatch(
            f"subspace of F^{w.ambient_dim} cannot divide F^{ambient_dim}")
    return QuotientSpace(w)


def cokernel(m: LinearMap) -> QuotientSpace:
    return QuotientSpace(image(m))


def induced_map(f: LinearMap, u: Subspace, w: Subspace) -> LinearMap:
    """The matrix of f restricted to u, in the basis coordinates of u and w.

    Requires f(u) <= w; the error names the first violating basis vector.
    """
    if u.ambient_dim != f.cols or w.ambient_dim != f.rows:
        raise DimensionMismatch("subspace ambients do not match the map")
    cols = f.field.zeros(w.dim, u.dim)
    for j, b in enumerate(u.basis):
        y = f.apply(b)
        if not w.contains(y):
            raise NotInduced(
                f"image of basis vector {j} is not in the target subspace", j, y)
        cols[:, j] = y[list(w.pivots)]
    return LinearMap(f.field, cols)


def quotient_map(f: LinearMap, source: QuotientSpace, target: QuotientSpace) -> LinearMap:
    """The map induced by f on quotients; requires f(source.subspace) <= target.subspace."""
    if source.ambient_dim != f.cols or target.ambient_dim != f.rows:
        raise DimensionMismatch("quotient ambients do not match the map")
    for j, b in enumerate(source.subspace.basis):
        y = f.apply(b)
        if not target.subspace.contains(y):
            raise NotInduced(
                f"image of modded-out basis vector {j} is not modded out in the target", j, y)
    return target.projection @ f @ source.section


def solve(m: LinearMap, b: np.ndarray) -> np.ndarray | None:
    """One solution x of m x = b with the free variables set to zero, or None."""
    if b.shape != (m.rows,):
        raise DimensionMismatch("right-hand side has wrong dimension")
    aug = np.hstack([m.data, b.reshape(-1, 1)])
    reduced, pivots = rref_array(m.field, aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = m.field.zeros(1, m.cols)[0]
    for i, pc in enumerate(pivots):
        x[pc] = reduced[i, m.cols]
    return m.field.reduce(x)


def matrix_inverse(m: LinearMap) -> LinearMap:
    if m.rows != m.cols:
        raise DimensionMismatch("only square matrices invert")
    aug = np.hstack([m.data, m.field.identity(m.rows)])
    reduced, pivots = rref_array(m.field, aug)
    if list(pivots) != list(range(m.rows)):
        raise InputError("matrix is singular")
    return LinearMap(m.field, reduced[:, m.rows:].copy())


def rank(m: LinearMap) -> int:
    return len(rref_array(m.field, m.data)[1])
