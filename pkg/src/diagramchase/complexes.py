"""Finite chain complexes with explicit homology representatives.

A complex is a list of dimensions and consecutive maps; validity of the
squared-composite-zero condition is checked explicitly rather than assumed,
since sequences built by taking kernels or cokernels of grid maps arrive
only as candidate complexes.  Boundary convention: the complex is not
assumed to extend, so cycles at the last position are the full space and
boundaries at position 0 vanish.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InputError, NotAComplex
from .linalg import LinearMap, QuotientSpace, Subspace, image, kernel, quotient


class ChainComplex:
    __slots__ = ("field", "dims", "maps")

    def __init__(self, field, dims: list[int], maps: list[LinearMap]):
        if len(maps) != max(len(dims) - 1, 0):
            raise DimensionMismatch("need exactly one map between consecutive terms")
        for i, m in enumerate(maps):
            if m.cols != dims[i] or m.rows != dims[i + 1]:
                raise DimensionMismatch(
                    f"map {i} has shape {m.rows}x{m.cols}, expected {dims[i+1]}x{dims[i]}")
            if m.field != field:
                raise DimensionMismatch("maps live over different fields")
        self.field = field
        self.dims = list(dims)
        self.maps = list(maps)

    def __len__(self) -> int:
        return len(self.dims)

    def is_complex(self) -> bool:
        return self.first_noncomplex_index() is None

    def first_noncomplex_index(self) -> int | None:
        for i in range(len(self.maps) - 1):
            if not (self.maps[i + 1] @ self.maps[i]).is_zero():
                return i
        return None

    def _require_complex(self):
        bad = self.first_noncomplex_index()
        if bad is not None:
            raise NotAComplex(f"maps {bad} and {bad + 1} do not compose to zero", bad)

    def homology_at(self, i: int) -> HomologyAt:
        self._require_complex()
        if not 0 <= i < len(self.dims):
            raise InputError(f"position {i} outside complex of length {len(self.dims)}")
        field = self.field
        if i < len(self.maps):
            cycles = kernel(self.maps[i])
        else:
            cycles = Subspace.full(field, self.dims[i])
        if i > 0:
            boundaries = image(self.maps[i - 1])
        else:
            boundaries = Subspace.zero(field, self.dims[i])
        coords = field.zeros(len(boundaries.basis), cycles.dim)
        for k, row in enumerate(boundaries.basis):
            coords[k] = cycles.coordinates_of(row)
        boundaries_in_cycles = Subspace.from_generators(field, cycles.dim, coords)
        quot = quotient(cycles.dim, boundaries_in_cycles)
        return HomologyAt(
            position=i,
            cycles=cycles,
            boundaries=boundaries,
            dim=cycles.dim - boundaries.dim,
            quotient=quot,
            class_of=quot.projection,
        )

    def homology_dims(self) -> list[int]:
        self._require_complex()
        out = []
        for i in range(len(self.dims)):
            cyc = kernel(self.maps[i]).dim if i < len(self.maps) else self.dims[i]
            bnd = image(self.maps[i - 1]).dim if i > 0 else 0
            out.append(cyc - bnd)
        return out

    def is_exact_at(self, i: int) -> bool:
        self._require_complex()
        if not 0 <= i < len(self.dims):
            raise InputError(f"position {i} outside complex of length {len(self.dims)}")
        cyc = kernel(self.maps[i]) if i < len(self.maps) else Subspace.full(self.field, self.dims[i])
        bnd = image(self.maps[i - 1]) if i > 0 else Subspace.zero(self.field, self.dims[i])
        return cyc == bnd

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * d for i, d in enumerate(self.dims))

    def __repr__(self):
        return f"ChainComplex({self.dims} over {self.field})"


@dataclass(frozen=True)
class HomologyAt:
    """Homology of a complex at one position, with explicit coordinates.

    ``cycles`` and ``boundaries`` live in the term's coordinates; ``class_of``
    maps cycle coordinates onto homology coordinates and the quotient's
    section picks deterministic representatives back.
    """

    position: int
    cycles: Subspace
    boundaries: Subspace
    dim: int
    quotient: QuotientSpace
    class_of: LinearMap

    def class_of_vector(self, v: np.ndarray) -> np.ndarray:
        """Homology class of a cycle given in term coordinates."""
        return self.class_of.apply(self.cycles.coordinates_of(v))

    def representative(self, h: np.ndarray) -> np.ndarray:
        """A cycle in term coordinates representing the class ``h``."""
        return self.representative_matrix().apply(h)

    def representative_matrix(self) -> LinearMap:
        """Homology coordinates to term coordinates, via the section."""
        return self.cycles.inclusion() @ self.quotient.section
