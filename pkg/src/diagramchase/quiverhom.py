"""Quiver representations, Hom spaces and the Hom grid of two sequences.

A representation assigns a space to each vertex and a map to each arrow of
a finite quiver (path algebras without relations).  Hom(X, Y) is computed
as the kernel of the naturality constraints, with the solution coordinates
ordered lexicographically by (vertex, row, column) so all downstream bases
and grids are reproducible bit for bit.

Applying Hom to a short exact sequence 0 -> A -> B -> C -> 0 and a right
exact sequence X -> Y -> Z -> 0 yields a 4x4 commutative grid with exact
rows and columns whose cokernel complexes the comparison lemma relates;
``additivity_check`` reports the resulting dimension bookkeeping for the
presented functor together with a direct-summand probe.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, HypothesisFailure, InputError, TheoremViolation
from .fields import Field, PrimeField
from .genrand import Xorshift64Star, random_scalar
from .grids import COKERNEL, Grid, StaircaseShape
from .linalg import LinearMap, Subspace, image, kernel, solve


class Quiver:
    __slots__ = ("vertex_count", "arrows")

    def __init__(self, vertex_count: int, arrows):
        self.vertex_count = int(vertex_count)
        self.arrows = [(int(s), int(t)) for (s, t) in arrows]
        for (s, t) in self.arrows:
            if not (0 <= s < self.vertex_count and 0 <= t < self.vertex_count):
                raise InputError(f"arrow ({s}, {t}) outside vertex range")

    def __eq__(self, other):
        return (isinstance(other, Quiver) and self.vertex_count == other.vertex_count
                and self.arrows == other.arrows)

    def __hash__(self):
        return hash((self.vertex_count, tuple(self.arrows)))

    def __repr__(self):
        return f"Quiver({self.vertex_count} vertices, {len(self.arrows)} arrows)"


class Representation:
    __slots__ = ("field", "quiver", "vertex_dims", "arrow_maps")

    def __init__(self, field: Field, quiver: Quiver, vertex_dims, arrow_maps):
        self.field = field
        self.quiver = quiver
        self.vertex_dims = [int(d) for d in vertex_dims]
        self.arrow_maps = list(arrow_maps)
        if len(self.vertex_dims) != quiver.vertex_count:
            raise DimensionMismatch("one dimension per vertex required")
        if len(self.arrow_maps) != len(quiver.arrows):
            raise DimensionMismatch("one map per arrow required")
        for a, (s, t) in enumerate(quiver.arrows):
            m = self.arrow_maps[a]
            if m.cols != self.vertex_dims[s] or m.rows != self.vertex_dims[t]:
                raise DimensionMismatch(f"map of arrow {a} has the wrong shape")

    @classmethod
    def zero(cls, field: Field, quiver: Quiver) -> Representation:
        dims = [0] * quiver.vertex_count
        maps = [LinearMap.zero(field, 0, 0) for _ in quiver.arrows]
        return cls(field, quiver, dims, maps)

    def direct_sum(self, other: Representation) -> Representation:
        if self.quiver != other.quiver or self.field != other.field:
            raise DimensionMismatch("direct sum needs matching quiver and field")
        dims = [a + b for a, b in zip(self.vertex_dims, other.vertex_dims)]
        maps = []
        for a, (s, t) in enumerate(self.quiver.arrows):
            block = self.field.zeros(dims[t], dims[s])
            m1, m2 = self.arrow_maps[a], other.arrow_maps[a]
            block[: m1.rows, : m1.cols] = m1.data
            block[m1.rows:, m1.cols:] = m2.data
            maps.append(LinearMap(self.field, block))
        return Representation(self.field, self.quiver, dims, maps)

    @property
    def total_dim(self) -> int:
        return sum(self.vertex_dims)

    def __repr__(self):
        return f"Representation(dims {self.vertex_dims} over {self.field})"


class RepMap:
    """A vertexwise collection of maps commuting with all arrow maps."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source: Representation, target: Representation, components):
        if source.quiver != target.quiver or source.field != target.field:
            raise DimensionMismatch("representation map needs matching quiver and field")
        self.source = source
        self.target = target
        self.components = list(components)
        for v in range(source.quiver.vertex_count):
            c = self.components[v]
            if c.cols != source.vertex_dims[v] or c.rows != target.vertex_dims[v]:
                raise DimensionMismatch(f"component at vertex {v} has the wrong shape")
        for a, (s, t) in enumerate(source.quiver.arrows):
            lhs = target.arrow_maps[a] @ self.components[s]
            rhs = self.components[t] @ source.arrow_maps[a]
            if lhs != rhs:
                raise HypothesisFailure(
                    f"components do not commute with arrow {a}", location=f"arrow {a}")

    @classmethod
    def identity(cls, rep: Representation) -> RepMap:
        return cls(rep, rep, [LinearMap.identity(rep.field, d) for d in rep.vertex_dims])

    @classmethod
    def zero(cls, source: Representation, target: Representation) -> RepMap:
        comps = [LinearMap.zero(source.field, dt, ds)
                 for ds, dt in zip(source.vertex_dims, target.vertex_dims)]
        return cls(source, target, comps)

    def __matmul__(self, other: RepMap) -> RepMap:
        return RepMap(other.source, self.target,
                      [a @ b for a, b in zip(self.components, other.components)])

    def __eq__(self, other):
        return (isinstance(other, RepMap) and self.components == other.components
                and self.source.vertex_dims == other.source.vertex_dims
                and self.target.vertex_dims == other.target.vertex_dims)

    def __hash__(self):
        return hash(tuple(self.components))

    def __repr__(self):
        return f"RepMap({self.source.vertex_dims} -> {self.target.vertex_dims})"


def _vec_offsets(x: Representation, y: Representation):
    offsets = []
    total = 0
    for v in range(x.quiver.vertex_count):
        offsets.append(total)
        total += x.vertex_dims[v] * y.vertex_dims[v]
    return offsets, total


def _vectorize(rm_components, x: Representation, y: Representation) -> np.ndarray:
    parts = [c.data.reshape(-1) for c in rm_components]
    return x.field.reduce(np.concatenate(parts) if parts else x.field.vector([]))


def _unvectorize(vec, x: Representation, y: Representation) -> RepMap:
    offsets, _ = _vec_offsets(x, y)
    comps = []
    for v in range(x.quiver.vertex_count):
        rows, cols = y.vertex_dims[v], x.vertex_dims[v]
        chunk = vec[offsets[v]: offsets[v] + rows * cols]
        comps.append(LinearMap(x.field, chunk.reshape(rows, cols).copy()))
    return RepMap(x, y, comps)


def hom_solution(x: Representation, y: Representation) -> Subspace:
    """Canonical solution space of the naturality constraints inside the
    vectorized component space."""
    if x.quiver != y.quiver or x.field != y.field:
        raise DimensionMismatch("Hom needs matching quiver and field")
    field = x.field
    offsets, total = _vec_offsets(x, y)
    rows = sum(y.vertex_dims[t] * x.vertex_dims[s] for (s, t) in x.quiver.arrows)
    system = field.zeros(rows, total)
    eq = 0
    for a, (s, t) in enumerate(x.quiver.arrows):
        xm, ym = x.arrow_maps[a].data, y.arrow_maps[a].data
        for i in range(y.vertex_dims[t]):
            for j in range(x.vertex_dims[s]):
                for k in range(y.vertex_dims[s]):
                    system[eq, offsets[s] + k * x.vertex_dims[s] + j] += ym[i, k]
                for l in range(x.vertex_dims[t]):
                    system[eq, offsets[t] + i * x.vertex_dims[t] + l] -= xm[l, j]
                eq += 1
    return kernel(LinearMap(field, system))


def hom_space(x: Representation, y: Representation) -> tuple[int, list[RepMap]]:
    """Dimension and deterministic canonical basis of Hom(x, y)."""
    sol = hom_solution(x, y)
    return sol.dim, [_unvectorize(row, x, y) for row in sol.basis]


def hom_map_covariant(w: Representation, g: RepMap) -> LinearMap:
    """Post-composition Hom(w, source of g) -> Hom(w, target of g) in the
    canonical bases."""
    dom = hom_solution(w, g.source)
    cod = hom_solution(w, g.target)
    field = w.field
    matrix = field.zeros(cod.dim, dom.dim)
    for j, row in enumerate(dom.basis):
        phi = _unvectorize(row, w, g.source)
        composed = g @ phi
        matrix[:, j] = cod.coordinates_of(_vectorize(composed.components, w, g.target))
    return LinearMap(field, matrix)


def hom_map_contravariant(u: RepMap, a: Representation) -> LinearMap:
    """Pre-composition Hom(target of u, a) -> Hom(source of u, a)."""
    dom = hom_solution(u.target, a)
    cod = hom_solution(u.source, a)
    field = a.field
    matrix = field.zeros(cod.dim, dom.dim)
    for j, row in enumerate(dom.basis):
        psi = _unvectorize(row, u.target, a)
        composed = psi @ u
        matrix[:, j] = cod.coordinates_of(_vectorize(composed.components, u.source, a))
    return LinearMap(field, matrix)


@dataclass(frozen=True)
class ShortExactSequence:
    """0 -> first -> middle -> last -> 0, vertexwise exact."""

    first: Representation
    middle: Representation
    last: Representation
    incl: RepMap
    proj: RepMap

    def validate(self):
        if self.incl.target.vertex_dims != self.proj.source.vertex_dims:
            raise HypothesisFailure("inclusion and projection disagree on the middle module")
        for v in range(self.first.quiver.vertex_count):
            if kernel(self.incl.components[v]).dim != 0:
                raise HypothesisFailure(f"inclusion not injective at vertex {v}",
                                        location=f"vertex {v}")
            if image(self.incl.components[v]) != kernel(self.proj.components[v]):
                raise HypothesisFailure(f"not exact at the middle module, vertex {v}",
                                        location=f"vertex {v}")
            if image(self.proj.components[v]).dim != self.last.vertex_dims[v]:
                raise HypothesisFailure(f"projection not onto at vertex {v}",
                                        location=f"vertex {v}")


@dataclass(frozen=True)
class RightExactSequence:
    """first -> middle -> last -> 0, vertexwise exact at middle and last."""

    first: Representation
    middle: Representation
    last: Representation
    map: RepMap
    proj: RepMap

    def validate(self):
        for v in range(self.first.quiver.vertex_count):
            if image(self.map.components[v]) != kernel(self.proj.components[v]):
                raise HypothesisFailure(f"not exact at the middle module, vertex {v}",
                                        location=f"vertex {v}")
            if image(self.proj.components[v]).dim != self.last.vertex_dims[v]:
                raise HypothesisFailure(f"projection not onto at vertex {v}",
                                        location=f"vertex {v}")


def hom_grid(a_seq: ShortExactSequence, e_seq: RightExactSequence) -> Grid:
    """The 4x4 Hom grid of both sequences, zero border included, oriented
    toward the Hom(first, last) corner; validation re-derives left exactness
    of Hom numerically and must pass."""
    a_seq.validate()
    e_seq.validate()
    field = a_seq.first.field
    if field != e_seq.first.field or a_seq.first.quiver != e_seq.first.quiver:
        raise DimensionMismatch("sequences live over different quivers or fields")
    contra_modules = [e_seq.first, e_seq.middle, e_seq.last, None]    # X, Y, Z, border
    co_modules = [a_seq.last, a_seq.middle, a_seq.first, None]        # C, B, A, border
    dims = {}
    for i, m in enumerate(contra_modules):
        for j, a in enumerate(co_modules):
            dims[(i, j)] = 0 if m is None or a is None else hom_solution(m, a).dim
    hmaps = {}
    vmaps = {}
    for i, m in enumerate(contra_modules):
        if m is None:
            for j in range(3):
                hmaps[(i, j)] = LinearMap.zero(field, 0, 0)
            continue
        hmaps[(i, 0)] = hom_map_covariant(m, a_seq.proj)
        hmaps[(i, 1)] = hom_map_covariant(m, a_seq.incl)
        hmaps[(i, 2)] = LinearMap.zero(field, dims[(i, 2)], 0)
    for j, a in enumerate(co_modules):
        if a is None:
            for i in range(3):
                vmaps[(i, j)] = LinearMap.zero(field, 0, 0)
            continue
        vmaps[(0, j)] = hom_map_contravariant(e_seq.map, a)
        vmaps[(1, j)] = hom_map_contravariant(e_seq.proj, a)
        vmaps[(2, j)] = LinearMap.zero(field, dims[(2, j)], 0)
    grid = Grid(field, StaircaseShape([4, 4, 4, 4]), dims, hmaps, vmaps, COKERNEL)
    report = grid.validate()
    if not report.ok:
        raise TheoremViolation(
            f"Hom grid failed validation: squares {report.non_commuting}, "
            f"rows {report.row_inexact}, cols {report.col_inexact}")
    return grid


def functor_dim(e_seq: RightExactSequence, a: Representation) -> int:
    """Dimension of the functor presented by the sequence, evaluated at ``a``:
    the cokernel dimension of pre-composition with the presenting map."""
    e_seq.validate()
    pre = hom_map_contravariant(e_seq.map, a)
    return pre.rows - image(pre).dim


@dataclass(frozen=True)
class AdditivityReport:
    """Functor dims on a short exact sequence, the additivity defect, the two
    cokernel-complex homology dim lists, and a direct-summand probe for the
    last module inside the direct sum of the presenting modules.

    ``exhaustive`` is False when the probe used randomized restarts, in which
    case a False flag is only heuristic evidence.
    """

    dim_at_first: int
    dim_at_middle: int
    dim_at_last: int
    defect: int
    corner_column_homology: list
    corner_row_homology: list
    summand_flag: bool
    exhaustive: bool


_EXHAUSTIVE_LIMIT = 16
_RESTARTS = 64


def _is_summand(last: Representation, ambient: Representation, seed: int = 0) -> tuple[bool, bool]:
    """Search for a split pair (into, back) with back o into = identity.

    Returns (found, exhaustive).  Exhaustive enumeration over GF(2) when the
    Hom spaces are small; otherwise seeded alternating linear solves.
    """
    field = last.field
    if last.total_dim == 0:
        return True, True
    into_dim, into_basis = hom_space(last, ambient)
    back_dim, back_basis = hom_space(ambient, last)
    if into_dim == 0 or back_dim == 0:
        return False, True
    ident = RepMap.identity(last)

    if isinstance(field, PrimeField) and field.p == 2 and into_dim * back_dim <= _EXHAUSTIVE_LIMIT:
        for into_coeffs in field.iter_vectors(into_dim):
            if not into_coeffs.any():
                continue
            into = _combine(into_basis, into_coeffs, last, ambient)
            for back_coeffs in field.iter_vectors(back_dim):
                back = _combine(back_basis, back_coeffs, ambient, last)
                if back @ into == ident:
                    return True, True
        return False, True

    rng = Xorshift64Star(seed)
    for _ in range(_RESTARTS):
        coeffs = field.vector([random_scalar(field, rng) for _ in range(into_dim)])
        into = _combine(into_basis, coeffs, last, ambient)
        if _solve_section(back_basis, into, last, ambient) is not None:
            return True, False
        coeffs = field.vector([random_scalar(field, rng) for _ in range(back_dim)])
        back = _combine(back_basis, coeffs, ambient, last)
        if _solve_retraction(into_basis, back, last, ambient) is not None:
            return True, False
    return False, False


def _combine(basis, coeffs, source, target) -> RepMap:
    field = source.field
    comps = []
    for v in range(source.quiver.vertex_count):
        acc = field.zeros(target.vertex_dims[v], source.vertex_dims[v])
        for c, rm in zip(coeffs, basis):
            acc = field.reduce(acc + c * rm.components[v].data)
        comps.append(LinearMap(field, acc))
    return RepMap(source, target, comps)


def _split_system(field, basis_products):
    rows = sum(p.rows * p.cols for p in basis_products[0]) if basis_products else 0
    system = field.zeros(rows, len(basis_products))
    for j, prods in enumerate(basis_products):
        system[:, j] = np.concatenate([p.data.reshape(-1) for p in prods]) if prods else field.vector([])
    return system


def _solve_section(back_basis, into: RepMap, last, ambient):
    """Linear solve for back with back o into = identity, given into."""
    field = last.field
    prods = [[(rm @ into).components[v] for v in range(last.quiver.vertex_count)]
             for rm in back_basis]
    system = _split_system(field, prods)
    ident = np.concatenate([LinearMap.identity(field, d).data.reshape(-1)
                            for d in last.vertex_dims])
    return solve(LinearMap(field, system), field.reduce(ident))


def _solve_retraction(into_basis, back: RepMap, last, ambient):
    field = last.field
    prods = [[(back @ rm).components[v] for v in range(last.quiver.vertex_count)]
             for rm in into_basis]
    system = _split_system(field, prods)
    ident = np.concatenate([LinearMap.identity(field, d).data.reshape(-1)
                            for d in last.vertex_dims])
    return solve(LinearMap(field, system), field.reduce(ident))


def quotient_representation(y: Representation, subspaces) -> tuple[Representation, RepMap]:
    """Quotient of a representation by a vertexwise family of subspaces that
    every arrow map carries into itself (for example the image of a map)."""
    from .linalg import quotient, quotient_map

    field = y.field
    quots = [quotient(y.vertex_dims[v], subspaces[v])
             for v in range(y.quiver.vertex_count)]
    dims = [q.dim for q in quots]
    maps = [quotient_map(y.arrow_maps[a], quots[s], quots[t])
            for a, (s, t) in enumerate(y.quiver.arrows)]
    z = Representation(field, y.quiver, dims, maps)
    proj = RepMap(y, z, [q.projection for q in quots])
    return z, proj


def random_representation(field: Field, quiver: Quiver, max_dim: int,
                          rng: Xorshift64Star) -> Representation:
    from .genrand import random_matrix

    dims = [rng.randint(0, max_dim) for _ in range(quiver.vertex_count)]
    maps = [random_matrix(field, dims[t], dims[s], rng) for (s, t) in quiver.arrows]
    return Representation(field, quiver, dims, maps)


def random_rep_map(x: Representation, y: Representation, rng: Xorshift64Star) -> RepMap:
    """A seeded natural map: a random combination of the canonical Hom basis."""
    dim, basis = hom_space(x, y)
    if dim == 0:
        return RepMap.zero(x, y)
    coeffs = x.field.vector([random_scalar(x.field, rng) for _ in range(dim)])
    return _combine(basis, coeffs, x, y)


def random_short_exact(field: Field, quiver: Quiver, max_dim: int,
                       rng: Xorshift64Star) -> ShortExactSequence:
    """A seeded extension 0 -> A -> A(+)C -> C -> 0 with upper-triangular
    arrow maps, so non-split middles occur."""
    from .genrand import random_matrix

    first = random_representation(field, quiver, max_dim, rng)
    last = random_representation(field, quiver, max_dim, rng)
    dims = [a + c for a, c in zip(first.vertex_dims, last.vertex_dims)]
    maps = []
    for a, (s, t) in enumerate(quiver.arrows):
        block = field.zeros(dims[t], dims[s])
        fa, la = first.arrow_maps[a], last.arrow_maps[a]
        block[: fa.rows, : fa.cols] = fa.data
        block[fa.rows:, fa.cols:] = la.data
        twist = random_matrix(field, fa.rows, la.cols, rng)
        block[: fa.rows, fa.cols:] = twist.data
        maps.append(LinearMap(field, block))
    middle = Representation(field, quiver, dims, maps)
    incl = RepMap(first, middle, [
        LinearMap(field, np.vstack([field.identity(d), field.zeros(dims[v] - d, d)]))
        for v, d in enumerate(first.vertex_dims)])
    proj = RepMap(middle, last, [
        LinearMap(field, np.hstack([field.zeros(d, dims[v] - d), field.identity(d)]))
        for v, d in enumerate(last.vertex_dims)])
    seq = ShortExactSequence(first, middle, last, incl, proj)
    seq.validate()
    return seq


def random_right_exact(field: Field, quiver: Quiver, max_dim: int,
                       rng: Xorshift64Star) -> RightExactSequence:
    """A seeded presentation X -> Y -> Y/Im -> 0."""
    x = random_representation(field, quiver, max_dim, rng)
    y = random_representation(field, quiver, max_dim, rng)
    u = random_rep_map(x, y, rng)
    z, proj = quotient_representation(y, [image(c) for c in u.components])
    seq = RightExactSequence(x, y, z, u, proj)
    seq.validate()
    return seq


def additivity_check(a_seq: ShortExactSequence, e_seq: RightExactSequence,
                     seed: int = 0) -> AdditivityReport:
    """Evaluate the presented functor on the short exact sequence and report
    the additivity defect alongside the grid's two homology dim lists.

    The summand probe asks whether the last module of the sequence splits off
    the direct sum of the three presenting modules.  The defect/summand
    implication is only claimed for distinguished sequences, which the caller
    asserts; this reports the numbers.
    """
    grid = hom_grid(a_seq, e_seq)
    column_h, row_h = grid.ccl_homology_dims()
    dim_first = functor_dim(e_seq, a_seq.first)
    dim_middle = functor_dim(e_seq, a_seq.middle)
    dim_last = functor_dim(e_seq, a_seq.last)
    ambient = e_seq.first.direct_sum(e_seq.middle).direct_sum(e_seq.last)
    flag, exhaustive = _is_summand(a_seq.last, ambient, seed=seed)
    return AdditivityReport(
        dim_at_first=dim_first,
        dim_at_middle=dim_middle,
        dim_at_last=dim_last,
        defect=dim_first + dim_last - dim_middle,
        corner_column_homology=column_h,
        corner_row_homology=row_h,
        summand_flag=flag,
        exhaustive=exhaustive,
    )
