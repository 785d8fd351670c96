"""Relations on products of vector spaces.

A relation on B x A is a subspace of B (+) A, coordinates left block first.
Graphs of maps, inverses and compositions make these behave like partial
multivalued maps; they drive every connecting-map construction in the
package.  The composition is computed by one intersection and one
projection inside B (+) A (+) C, then canonicalized, so it can be checked
independently against elementwise enumeration at small dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, HypothesisFailure
from .fields import Field
from .linalg import LinearMap, Subspace, image, kernel, solve


class Relation:
    __slots__ = ("field", "left_dim", "right_dim", "space")

    def __init__(self, left_dim: int, right_dim: int, space: Subspace):
        if space.ambient_dim != left_dim + right_dim:
            raise DimensionMismatch("relation subspace has the wrong ambient dimension")
        self.field = space.field
        self.left_dim = left_dim
        self.right_dim = right_dim
        self.space = space

    @classmethod
    def graph(cls, f: LinearMap) -> Relation:
        """The relation {(f(a), a)} on codomain x domain."""
        gens = np.hstack([f.data.T.copy(), f.field.identity(f.cols)])
        space = Subspace.from_generators(f.field, f.rows + f.cols, gens)
        return cls(f.rows, f.cols, space)

    @classmethod
    def zero(cls, field: Field, left_dim: int, right_dim: int) -> Relation:
        return cls(left_dim, right_dim, Subspace.zero(field, left_dim + right_dim))

    @classmethod
    def full(cls, field: Field, left_dim: int, right_dim: int) -> Relation:
        return cls(left_dim, right_dim, Subspace.full(field, left_dim + right_dim))

    @property
    def dim(self) -> int:
        return self.space.dim

    def inverse(self) -> Relation:
        l, r = self.left_dim, self.right_dim
        swapped = np.hstack([self.space.basis[:, l:], self.space.basis[:, :l]])
        return Relation(r, l, Subspace.from_generators(self.field, l + r, swapped))

    def compose(self, other: Relation) -> Relation:
        """Relation {(b, c) : exists a with (b, a) in self and (a, c) in other}."""
        if self.field != other.field:
            raise DimensionMismatch("field mismatch in relation composition")
        if self.right_dim != other.left_dim:
            raise DimensionMismatch(
                f"middle dimensions differ: {self.right_dim} vs {other.left_dim}")
        nb, na, nc = self.left_dim, self.right_dim, other.right_dim
        field = self.field
        # self (+) C inside B (+) A (+) C
        first = np.hstack([self.space.basis, field.zeros(self.space.dim, nc)])
        first = np.vstack([first, np.hstack([field.zeros(nc, nb + na), field.identity(nc)])])
        # B (+) other
        second = np.hstack([field.zeros(other.space.dim, nb), other.space.basis])
        second = np.vstack([np.hstack([field.identity(nb), field.zeros(nb, na + nc)]), second])
        lhs = Subspace.from_generators(field, nb + na + nc, first)
        rhs = Subspace.from_generators(field, nb + na + nc, second)
        both = lhs & rhs
        projected = np.hstack([both.basis[:, :nb], both.basis[:, nb + na:]])
        return Relation(nb, nc, Subspace.from_generators(field, nb + nc, projected))

    def __matmul__(self, other: Relation) -> Relation:
        return self.compose(other)

    def member(self, b: np.ndarray, a: np.ndarray) -> bool:
        if b.shape != (self.left_dim,) or a.shape != (self.right_dim,):
            raise DimensionMismatch("member vectors have wrong dimensions")
        return self.space.contains(np.hstack([b, a]))

    def witnesses(self, a: np.ndarray) -> tuple[np.ndarray | None, Subspace]:
        """All b with (b, a) related: a particular one plus the homogeneous part.

        The homogeneous part {b : (b, 0) related} is returned even when no
        particular witness exists.
        """
        if a.shape != (self.right_dim,):
            raise DimensionMismatch("witness query has wrong dimension")
        basis = self.space.basis
        right_block = basis[:, self.left_dim:]
        left_block = basis[:, : self.left_dim]
        coeffs = solve(LinearMap(self.field, right_block.T.copy()), a)
        particular = None
        if coeffs is not None:
            particular = self.field.reduce(coeffs @ left_block) if self.dim else self.field.vector(
                [0] * self.left_dim)
        homogeneous_coeffs = kernel(LinearMap(self.field, right_block.T.copy()))
        gens = self.field.matmul(homogeneous_coeffs.basis, left_block) if self.dim else self.field.zeros(0, self.left_dim)
        homogeneous = Subspace.from_generators(self.field, self.left_dim, gens)
        return particular, homogeneous

    def left_project(self) -> Subspace:
        """{b : exists a with (b, a) related}."""
        return Subspace.from_generators(
            self.field, self.left_dim, self.space.basis[:, : self.left_dim].copy())

    def right_project(self) -> Subspace:
        """{a : exists b with (b, a) related}."""
        return Subspace.from_generators(
            self.field, self.right_dim, self.space.basis[:, self.left_dim:].copy())

    def __eq__(self, other):
        return (isinstance(other, Relation) and self.left_dim == other.left_dim
                and self.right_dim == other.right_dim and self.space == other.space)

    def __hash__(self):
        return hash((self.left_dim, self.right_dim, self.space))

    def __repr__(self):
        return f"Relation({self.left_dim}x{self.right_dim}, dim {self.dim})"


def graph(f: LinearMap) -> Relation:
    return Relation.graph(f)


# Exhaustive checks stay cheap up to this total number of field elements
# per enumerated space.
_ENUM_DIM_LIMIT = 3


@dataclass(frozen=True)
class CrossReport:
    """Verdicts for the three membership claims of a one-row/one-column cross.

    ``enumeration_agrees`` is None when the field or dimensions rule out
    exhaustive element checking.
    """

    image_transfer: bool
    kernel_domain: bool
    kernel_codomain: bool
    enumeration_agrees: bool | None

    @property
    def all_ok(self) -> bool:
        verdicts = self.image_transfer and self.kernel_domain and self.kernel_codomain
        return verdicts and self.enumeration_agrees is not False


def _padded(field, left_full: int, sub: Subspace, right_side: bool) -> Subspace:
    """Subspace F^left_full (+) sub, or sub (+) F^right if right_side is False."""
    if right_side:
        gens = np.vstack([
            np.hstack([field.identity(left_full), field.zeros(left_full, sub.ambient_dim)]),
            np.hstack([field.zeros(sub.dim, left_full), sub.basis]),
        ])
        return Subspace.from_generators(field, left_full + sub.ambient_dim, gens)
    gens = np.vstack([
        np.hstack([sub.basis, field.zeros(sub.dim, left_full)]),
        np.hstack([field.zeros(left_full, sub.ambient_dim), field.identity(left_full)]),
    ])
    return Subspace.from_generators(field, sub.ambient_dim + left_full, gens)


def verify_cross_lemma(beta1: LinearMap, beta2: LinearMap,
                       f: LinearMap, g: LinearMap) -> CrossReport:
    """Check the three claims about a cross with exact row and column.

    The cross has row A -f-> B2 -g-> C and column B1 -beta1-> B2 -beta2-> B3,
    exact at B2 both ways (verified first; failures raise HypothesisFailure).

    Claims, all decided as equalities of canonical subspaces:
      * image_transfer: inside the relation g o beta2^{-1}, the pairs whose
        B3 entry lies in Im(beta2 f) are exactly those whose C entry lies in
        Im(g beta1).
      * kernel_domain: Ker(beta2 f) = {a : some b1 has (b1, a) in beta1^{-1} o f}.
      * kernel_codomain: Ker(g beta1) = {b1 : some a has (b1, a) in beta1^{-1} o f}.

    Over an enumerable field with all dimensions at most 3 the verdicts are
    re-derived by exhaustive element enumeration.
    """
    field = f.field
    b2 = f.rows
    if beta1.rows != b2 or beta2.cols != b2 or g.cols != b2:
        raise DimensionMismatch("cross maps do not share the center space")
    if image(f) != kernel(g):
        raise HypothesisFailure("row not exact at the center", location="row at B2")
    if image(beta1) != kernel(beta2):
        raise HypothesisFailure("column not exact at the center", location="column at B2")

    u = graph(g) @ graph(beta2).inverse()          # relation on C x B3
    v = graph(beta1).inverse() @ graph(f)          # relation on B1 x A

    im_b2f = image(beta2 @ f)
    im_gb1 = image(g @ beta1)
    lhs = u.space & _padded(field, g.rows, im_b2f, right_side=True)
    rhs = u.space & _padded(field, beta2.rows, im_gb1, right_side=False)
    image_transfer = lhs == rhs

    kernel_domain = kernel(beta2 @ f) == v.right_project()
    kernel_codomain = kernel(g @ beta1) == v.left_project()

    dims = (f.cols, beta1.cols, b2, beta2.rows, g.rows)
    enumeration_agrees = None
    if field.enumerable and max(dims, default=0) <= _ENUM_DIM_LIMIT:
        enum_1 = all(
            (im_b2f.contains(b3) == im_gb1.contains(c))
            for c in field.iter_vectors(g.rows)
            for b3 in field.iter_vectors(beta2.rows)
            if u.member(c, b3))
        enum_2a = all(
            (not any(beta2.apply(f.apply(a)))) == any(v.member(b1, a) for b1 in field.iter_vectors(beta1.cols))
            for a in field.iter_vectors(f.cols))
        enum_2b = all(
            (not any(g.apply(beta1.apply(b1)))) == any(v.member(b1, a) for a in field.iter_vectors(f.cols))
            for b1 in field.iter_vectors(beta1.cols))
        enumeration_agrees = (enum_1 == image_transfer
                              and enum_2a == kernel_domain
                              and enum_2b == kernel_codomain)

    return CrossReport(image_transfer, kernel_domain, kernel_codomain, enumeration_agrees)
