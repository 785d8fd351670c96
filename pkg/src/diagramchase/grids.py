"""Staircase-shaped commutative grids with exact rows and columns.

A grid assigns a vector space to each lattice cell of a staircase region
(row lengths non-increasing, rows left-aligned) and a linear map to each
horizontal and vertical edge.  The ``orientation`` flag fixes the arrow
directions: ``kernel`` grids point away from the top-left corner (right and
down) and support the kernel-complex comparison; ``cokernel`` grids point
toward the top-left corner and support the cokernel-complex comparison,
which is computed by dualizing (transposing every matrix reverses all
arrows in place) and reusing the kernel-side machinery.

Position numbering in all reports is 1-based from the distinguished corner,
with the explicit leading zero term of each extracted complex sitting at
internal index 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import ChainComplex, HomologyAt
from .errors import (
    DimensionMismatch,
    HypothesisFailure,
    InputError,
    RegionMissing,
    TheoremViolation,
)
from .fields import Field
from .linalg import (
    LinearMap,
    QuotientSpace,
    Subspace,
    cokernel,
    image,
    induced_map,
    kernel,
    matrix_inverse,
    quotient_map,
    rank,
)
from .relations import Relation, graph

KERNEL = "kernel"
COKERNEL = "cokernel"


class StaircaseShape:
    """Row lengths of a staircase region; row i occupies columns 0..len-1."""

    __slots__ = ("row_lengths",)

    def __init__(self, row_lengths):
        lengths = tuple(int(x) for x in row_lengths)
        if not lengths or any(x < 1 for x in lengths):
            raise InputError("row lengths must be a non-empty list of positive integers")
        if any(lengths[i] < lengths[i + 1] for i in range(len(lengths) - 1)):
            raise InputError("row lengths must be non-increasing")
        self.row_lengths = lengths

    @property
    def n_rows(self) -> int:
        return len(self.row_lengths)

    @property
    def n_cols(self) -> int:
        return self.row_lengths[0]

    def has_cell(self, i: int, j: int) -> bool:
        return 0 <= i < self.n_rows and 0 <= j < self.row_lengths[i]

    def cells(self):
        for i, length in enumerate(self.row_lengths):
            for j in range(length):
                yield (i, j)

    def col_height(self, j: int) -> int:
        return sum(1 for length in self.row_lengths if length > j)

    def __eq__(self, other):
        return isinstance(other, StaircaseShape) and self.row_lengths == other.row_lengths

    def __hash__(self):
        return hash(self.row_lengths)

    def __repr__(self):
        return f"StaircaseShape({list(self.row_lengths)})"


@dataclass(frozen=True)
class ValidationReport:
    """Failed squares and inexact interior positions, 1-based coordinates."""

    non_commuting: list
    row_inexact: list
    col_inexact: list

    @property
    def ok(self) -> bool:
        return not (self.non_commuting or self.row_inexact or self.col_inexact)


@dataclass(frozen=True)
class HomologyIso:
    """An explicit invertible matrix between two homology spaces."""

    position: int
    source: HomologyAt
    target: HomologyAt
    matrix: LinearMap


@dataclass(frozen=True)
class CorollaryReport:
    """Homology dims of both three-term kernel sequences on a [3,3,2] grid.

    Equality is asserted at positions 1 and 2 only; position 3 dims are
    recorded without any claim.
    """

    top_dims: list
    left_dims: list
    equal_at_1: bool
    equal_at_2: bool


class Grid:
    def __init__(self, field: Field, shape: StaircaseShape, dims: dict,
                 hmaps: dict, vmaps: dict, orientation: str = KERNEL):
        if orientation not in (KERNEL, COKERNEL):
            raise InputError(f"orientation must be kernel or cokernel, got {orientation!r}")
        self.field = field
        self.shape = shape
        self.orientation = orientation
        self.dims = {c: int(dims[c]) for c in shape.cells()}
        if set(dims) != set(self.dims):
            raise InputError("space dims must be given exactly on the staircase cells")
        if any(d < 0 for d in self.dims.values()):
            raise InputError("space dims must be non-negative")
        self.hmaps = dict(hmaps)
        self.vmaps = dict(vmaps)
        self._validation = None
        if set(self.hmaps) != set(self.hmap_slots()):
            raise InputError("horizontal maps must be given exactly on interior edges")
        if set(self.vmaps) != set(self.vmap_slots()):
            raise InputError("vertical maps must be given exactly on interior edges")
        for (i, j), m in self.hmaps.items():
            src, tgt = self.hmap_ends(i, j)
            if m.cols != self.dims[src] or m.rows != self.dims[tgt] or m.field != field:
                raise DimensionMismatch(f"horizontal map at {(i + 1, j + 1)} has wrong shape")
        for (i, j), m in self.vmaps.items():
            src, tgt = self.vmap_ends(i, j)
            if m.cols != self.dims[src] or m.rows != self.dims[tgt] or m.field != field:
                raise DimensionMismatch(f"vertical map at {(i + 1, j + 1)} has wrong shape")

    def hmap_slots(self):
        return [(i, j) for (i, j) in self.shape.cells() if self.shape.has_cell(i, j + 1)]

    def vmap_slots(self):
        return [(i, j) for (i, j) in self.shape.cells() if self.shape.has_cell(i + 1, j)]

    def hmap_ends(self, i, j):
        """(source cell, target cell) of the horizontal edge at (i, j)."""
        if self.orientation == KERNEL:
            return (i, j), (i, j + 1)
        return (i, j + 1), (i, j)

    def vmap_ends(self, i, j):
        if self.orientation == KERNEL:
            return (i, j), (i + 1, j)
        return (i + 1, j), (i, j)

    # ------------------------------------------------------------------
    # validation and duality

    def validate(self) -> ValidationReport:
        """Report every non-commuting square and inexact interior position."""
        if self._validation is not None:
            return self._validation
        non_commuting = []
        for (i, j) in self.shape.cells():
            if not (self.shape.has_cell(i + 1, j + 1) and self.shape.has_cell(i, j + 1)
                    and self.shape.has_cell(i + 1, j)):
                continue
            if self.orientation == KERNEL:
                path_a = self.vmaps[(i, j + 1)] @ self.hmaps[(i, j)]
                path_b = self.hmaps[(i + 1, j)] @ self.vmaps[(i, j)]
            else:
                path_a = self.hmaps[(i, j)] @ self.vmaps[(i, j + 1)]
                path_b = self.vmaps[(i, j)] @ self.hmaps[(i + 1, j)]
            if path_a != path_b:
                non_commuting.append((i + 1, j + 1))

        row_inexact = []
        for i, length in enumerate(self.shape.row_lengths):
            for j in range(1, length - 1):
                if self.orientation == KERNEL:
                    incoming, outgoing = self.hmaps[(i, j - 1)], self.hmaps[(i, j)]
                else:
                    incoming, outgoing = self.hmaps[(i, j)], self.hmaps[(i, j - 1)]
                if image(incoming) != kernel(outgoing):
                    row_inexact.append((i + 1, j + 1))

        col_inexact = []
        for j in range(self.shape.n_cols):
            height = self.shape.col_height(j)
            for i in range(1, height - 1):
                if self.orientation == KERNEL:
                    incoming, outgoing = self.vmaps[(i - 1, j)], self.vmaps[(i, j)]
                else:
                    incoming, outgoing = self.vmaps[(i, j)], self.vmaps[(i - 1, j)]
                if image(incoming) != kernel(outgoing):
                    col_inexact.append((i + 1, j + 1))

        self._validation = ValidationReport(non_commuting, row_inexact, col_inexact)
        return self._validation

    def _require_valid(self):
        report = self.validate()
        if not report.ok:
            raise HypothesisFailure(
                f"grid violates hypotheses: non-commuting squares {report.non_commuting}, "
                f"rows inexact at {report.row_inexact}, columns inexact at {report.col_inexact}",
                location="grid validation")

    def _require_orientation(self, orientation: str):
        if self.orientation != orientation:
            raise HypothesisFailure(
                f"operation needs a {orientation}-oriented grid, got {self.orientation}",
                location="orientation")

    def dualize(self) -> Grid:
        """Transpose every matrix, which reverses all arrows in place."""
        return Grid(
            self.field, self.shape, self.dims,
            {k: m.transpose() for k, m in self.hmaps.items()},
            {k: m.transpose() for k, m in self.vmaps.items()},
            KERNEL if self.orientation == COKERNEL else COKERNEL,
        )

    # ------------------------------------------------------------------
    # kernel complexes (kernel orientation)

    def _top_parts(self):
        """Kernel subspaces along the top row, their complex, closure flag."""
        self._require_orientation(KERNEL)
        n_terms = self.shape.row_lengths[1] if self.shape.n_rows >= 2 else 0
        kernels = [kernel(self.vmaps[(0, j)]) for j in range(n_terms)]
        dims = [0] + [k.dim for k in kernels]
        maps = []
        if n_terms:
            maps.append(LinearMap.zero(self.field, kernels[0].dim, 0))
        for j in range(n_terms - 1):
            maps.append(induced_map(self.hmaps[(0, j)], kernels[j], kernels[j + 1]))
        has_closure = n_terms and self.shape.has_cell(0, n_terms)
        if has_closure:
            dims.append(self.dims[(0, n_terms)])
            maps.append(self.hmaps[(0, n_terms - 1)] @ kernels[-1].inclusion())
        return ChainComplex(self.field, dims, maps), kernels, bool(has_closure)

    def _left_parts(self):
        self._require_orientation(KERNEL)
        n_terms = sum(1 for length in self.shape.row_lengths if length >= 2)
        kernels = [kernel(self.hmaps[(i, 0)]) for i in range(n_terms)]
        dims = [0] + [k.dim for k in kernels]
        maps = []
        if n_terms:
            maps.append(LinearMap.zero(self.field, kernels[0].dim, 0))
        for i in range(n_terms - 1):
            maps.append(induced_map(self.vmaps[(i, 0)], kernels[i], kernels[i + 1]))
        has_closure = n_terms and self.shape.has_cell(n_terms, 0)
        if has_closure:
            dims.append(self.dims[(n_terms, 0)])
            maps.append(self.vmaps[(n_terms - 1, 0)] @ kernels[-1].inclusion())
        return ChainComplex(self.field, dims, maps), kernels, bool(has_closure)

    def kernel_complex_top(self) -> ChainComplex:
        """0 -> Ker(first vertical) -> Ker(second vertical) -> ... with maps
        induced by the top-row horizontal maps."""
        self._require_valid()
        return self._top_parts()[0]

    def kernel_complex_left(self) -> ChainComplex:
        self._require_valid()
        return self._left_parts()[0]

    # ------------------------------------------------------------------
    # comparison positions

    def admissible_positions(self) -> list[int]:
        """Positions n whose full antidiagonal region {i+j <= n} lies in the shape."""
        out = []
        n = 1
        while all(self.shape.has_cell(k, n - k) for k in range(n + 1)):
            out.append(n)
            n += 1
        return out

    def _require_region(self, n: int):
        if n < 1:
            raise InputError("positions are 1-based")
        missing = [(k + 1, n - k + 1) for k in range(n + 1)
                   if not self.shape.has_cell(k, n - k)]
        if missing:
            raise RegionMissing(
                f"comparison at position {n} needs staircase cells {missing} (1-based)",
                n, missing)

    def antidiagonal_relation(self, n: int) -> Relation:
        """The relation between the n-th left kernel term and the n-th top
        kernel term, built by chaining inverted horizontal graphs and vertical
        graphs down the antidiagonal through the grid."""
        self._require_valid()
        self._require_region(n)
        _, top_kernels, _ = self._top_parts()
        _, left_kernels, _ = self._left_parts()
        rel = graph(top_kernels[n - 1].inclusion())
        for k in range(n - 1):
            i, j = k, n - 2 - k
            rel = graph(self.hmaps[(i, j)]).inverse() @ rel
            rel = graph(self.vmaps[(i, j)]) @ rel
        return graph(left_kernels[n - 1].inclusion()).inverse() @ rel

    def kcl_homology_iso(self, n: int) -> HomologyIso:
        """Explicit isomorphism from top-complex homology to left-complex
        homology at position n, via witnesses of the antidiagonal relation.

        Witness choice is deterministic (free variables zero) and checked to
        be irrelevant: the homogeneous part of the relation must consist of
        left-complex boundaries.  Any failure on a validated grid raises
        TheoremViolation.
        """
        chase = self.antidiagonal_relation(n)
        top_complex, _, _ = self._top_parts()
        left_complex, _, _ = self._left_parts()
        h_top = top_complex.homology_at(n)
        h_left = left_complex.homology_at(n)
        if h_top.dim != h_left.dim:
            raise TheoremViolation(
                f"homology dims differ at position {n}: {h_top.dim} vs {h_left.dim}")
        zero_right = self.field.vector([0] * chase.right_dim)
        _, homogeneous = chase.witnesses(zero_right)
        if not homogeneous <= h_left.boundaries:
            raise TheoremViolation(
                f"witness ambiguity at position {n} is not boundary-contained")
        matrix = self.field.zeros(h_left.dim, h_top.dim)
        for col in range(h_top.dim):
            unit = self.field.vector([1 if k == col else 0 for k in range(h_top.dim)])
            cycle = h_top.representative(unit)
            witness, _ = chase.witnesses(cycle)
            if witness is None:
                raise TheoremViolation(f"no witness for a cycle at position {n}")
            if not h_left.cycles.contains(witness):
                raise TheoremViolation(f"witness at position {n} is not a cycle")
            matrix[:, col] = h_left.class_of_vector(witness)
            if homogeneous.dim:
                shifted = self.field.reduce(witness + homogeneous.basis.sum(axis=0))
                if not np.equal(h_left.class_of_vector(shifted), matrix[:, col]).all():
                    raise TheoremViolation(
                        f"witness choice changed the homology class at position {n}")
        iso = LinearMap(self.field, matrix)
        if h_top.dim != h_left.dim or rank(iso) != h_top.dim:
            raise TheoremViolation(f"comparison matrix at position {n} is not invertible")
        return HomologyIso(n, h_top, h_left, iso)

    def kcl_homology_dims(self) -> tuple[list[int], list[int]]:
        """Homology dims of the top and left kernel complexes at every
        admissible position (equal elementwise on valid grids)."""
        self._require_valid()
        positions = self.admissible_positions()
        top_complex, _, _ = self._top_parts()
        left_complex, _, _ = self._left_parts()
        top_dims = top_complex.homology_dims()
        left_dims = left_complex.homology_dims()
        return [top_dims[p] for p in positions], [left_dims[p] for p in positions]

    # ------------------------------------------------------------------
    # cokernel complexes (cokernel orientation), by duality

    def cokernel_complex_right(self) -> ChainComplex:
        """Cokernels of the horizontal maps feeding the corner column, with
        maps induced by the vertical maps, as the transposed reversal of the
        dual grid's left kernel complex."""
        self._require_orientation(COKERNEL)
        self._require_valid()
        return _transpose_reverse(self.dualize()._left_parts()[0])

    def cokernel_complex_bottom(self) -> ChainComplex:
        self._require_orientation(COKERNEL)
        self._require_valid()
        return _transpose_reverse(self.dualize()._top_parts()[0])

    def ccl_homology_dims(self) -> tuple[list[int], list[int]]:
        """(corner column, corner row) cokernel-complex homology dims at every
        admissible position, ordered outward from the corner."""
        self._require_orientation(COKERNEL)
        self._require_valid()
        top_dims, left_dims = self.dualize().kcl_homology_dims()
        return left_dims, top_dims

    def direct_cokernel_complexes(self) -> tuple[ChainComplex, ChainComplex]:
        """Quotient-space construction of both cokernel complexes, independent
        of the duality path; the oracle the delegation is checked against."""
        self._require_orientation(COKERNEL)
        self._require_valid()
        return self._direct_cokernel("right"), self._direct_cokernel("bottom")

    def _direct_cokernel(self, side: str) -> ChainComplex:
        if side == "right":
            n_terms = sum(1 for length in self.shape.row_lengths if length >= 2)
            edge = lambda k: self.hmaps[(k, 0)]
            step = lambda k: self.vmaps[(k, 0)]
            closure_cell = (n_terms, 0)
        else:
            n_terms = self.shape.row_lengths[1] if self.shape.n_rows >= 2 else 0
            edge = lambda k: self.vmaps[(0, k)]
            step = lambda k: self.hmaps[(0, k)]
            closure_cell = (0, n_terms)
        quots = [cokernel(edge(k)) for k in range(n_terms)]
        dims = []
        maps = []
        if n_terms and self.shape.has_cell(*closure_cell):
            dims.append(self.dims[closure_cell])
            maps.append(quots[-1].projection @ step(n_terms - 1))
        for k in range(n_terms - 1, -1, -1):
            dims.append(quots[k].dim)
            if k:
                maps.append(quotient_map(step(k - 1), quots[k], quots[k - 1]))
        if n_terms:
            maps.append(LinearMap.zero(self.field, 0, quots[0].dim))
        elif self.shape.has_cell(*closure_cell):
            dims.append(self.dims[closure_cell])
            maps.append(LinearMap.zero(self.field, 0, dims[-1]))
        dims.append(0)
        return ChainComplex(self.field, dims, maps)

    def _direct_index(self, side: str, n: int) -> int:
        """List index of position n (1-based from the corner) in the direct
        cokernel complex for the given side."""
        if side == "right":
            n_terms = sum(1 for length in self.shape.row_lengths if length >= 2)
            closure = self.shape.has_cell(n_terms, 0)
        else:
            n_terms = self.shape.row_lengths[1] if self.shape.n_rows >= 2 else 0
            closure = self.shape.has_cell(0, n_terms)
        if not 1 <= n <= n_terms:
            raise InputError(f"position {n} outside 1..{n_terms}")
        return (1 if n_terms and closure else 0) + n_terms - n

    def ccl_homology_iso(self, n: int) -> HomologyIso:
        """Explicit isomorphism from corner-column homology to corner-row
        homology at position n, transported from the dual grid's kernel-side
        chase through the canonical cokernel/transpose-kernel pairings."""
        self._require_orientation(COKERNEL)
        self._require_valid()
        dual = self.dualize()
        chase_iso = dual.kcl_homology_iso(n)
        right_direct, bottom_direct = self.direct_cokernel_complexes()
        h_right = right_direct.homology_at(self._direct_index("right", n))
        h_bottom = bottom_direct.homology_at(self._direct_index("bottom", n))
        pair_right = _homology_pairing(
            h_right, chase_iso.target,
            _term_pairing(kernel(self.hmaps[(n - 1, 0)].transpose()),
                          cokernel(self.hmaps[(n - 1, 0)])))
        pair_bottom = _homology_pairing(
            h_bottom, chase_iso.source,
            _term_pairing(kernel(self.vmaps[(0, n - 1)].transpose()),
                          cokernel(self.vmaps[(0, n - 1)])))
        try:
            matrix = matrix_inverse(pair_bottom) @ chase_iso.matrix.transpose() @ pair_right
        except InputError as exc:
            raise TheoremViolation(f"degenerate homology pairing at position {n}") from exc
        if matrix.rows != matrix.cols or rank(matrix) != matrix.rows:
            raise TheoremViolation(f"transported matrix at position {n} is not invertible")
        return HomologyIso(n, h_right, h_bottom, matrix)


def _transpose_reverse(c: ChainComplex) -> ChainComplex:
    dims = list(reversed(c.dims))
    maps = [m.transpose() for m in reversed(c.maps)]
    return ChainComplex(c.field, dims, maps)


def _term_pairing(dual_kernel: Subspace, primal_quotient: QuotientSpace) -> LinearMap:
    """Evaluation pairing between Ker(w^T) and the cokernel of w, as a matrix
    with rows indexed by kernel coordinates and columns by quotient coordinates."""
    field = dual_kernel.field
    return LinearMap(field, field.matmul(dual_kernel.basis, primal_quotient.section.data))


def _homology_pairing(primal: HomologyAt, dual: HomologyAt, term_pairing: LinearMap) -> LinearMap:
    """Pairing matrix between primal homology (columns) and dual homology (rows)."""
    rep_primal = primal.representative_matrix()
    rep_dual = dual.representative_matrix()
    return rep_dual.transpose() @ term_pairing @ rep_primal


def corollary_check(grid: Grid) -> CorollaryReport:
    """Compare homology of the two three-term kernel sequences on the
    corner-shaped grid with row lengths [3, 3, 2]."""
    grid._require_orientation(KERNEL)
    if grid.shape.row_lengths != (3, 3, 2):
        raise HypothesisFailure(
            f"expected row lengths (3, 3, 2), got {list(grid.shape.row_lengths)}",
            location="shape")
    grid._require_valid()
    top = grid.kernel_complex_top().homology_dims()[1:4]
    left = grid.kernel_complex_left().homology_dims()[1:4]
    return CorollaryReport(top, left, top[0] == left[0], top[1] == left[1])


def conjugate_grid(grid: Grid, vertex_maps: dict) -> Grid:
    """Change basis at every cell by the given invertible maps, transporting
    every edge map; preserves commutativity and exactness."""
    inverses = {c: matrix_inverse(m) for c, m in vertex_maps.items()}
    new_h = {}
    for slot, m in grid.hmaps.items():
        src, tgt = grid.hmap_ends(*slot)
        new_h[slot] = vertex_maps[tgt] @ m @ inverses[src]
    new_v = {}
    for slot, m in grid.vmaps.items():
        src, tgt = grid.vmap_ends(*slot)
        new_v[slot] = vertex_maps[tgt] @ m @ inverses[src]
    return Grid(grid.field, grid.shape, grid.dims, new_h, new_v, grid.orientation)
