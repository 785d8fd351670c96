"""The six-term kernel/cokernel sequence of a commuting two-row ladder.

Given the ladder

        A --f--> B --g--> C -> 0
        |        |        |
      alpha     beta    gamma
        v        v        v
  0 -> A' --f'-> B' --g'-> C'

with both squares commuting, the top row exact at B with g onto, and the
bottom row exact at B' with f' injective, there is a connecting map
delta: Ker gamma -> Cok alpha making

  Ker alpha -> Ker beta -> Ker gamma -> Cok alpha -> Cok beta -> Cok gamma

exact at the four interior positions.  ``snake`` builds delta by chasing
the relation (project to Cok alpha) o f'^{-1} o beta o g^{-1} on Ker gamma;
``snake_via_grids`` re-derives everything through the kernel- and
cokernel-complex comparisons on two auxiliary grids and must agree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import ChainComplex
from .errors import DimensionMismatch, HypothesisFailure, TheoremViolation
from .grids import COKERNEL, KERNEL, Grid, StaircaseShape, corollary_check
from .linalg import (
    LinearMap,
    QuotientSpace,
    Subspace,
    cokernel,
    image,
    induced_map,
    kernel,
    quotient_map,
)
from .relations import Relation, graph


class SnakeInput:
    """The seven maps of the ladder; ``validate`` checks every hypothesis."""

    __slots__ = ("field", "f", "g", "fp", "gp", "alpha", "beta", "gamma")

    def __init__(self, f: LinearMap, g: LinearMap, fp: LinearMap, gp: LinearMap,
                 alpha: LinearMap, beta: LinearMap, gamma: LinearMap):
        self.field = f.field
        self.f, self.g, self.fp, self.gp = f, g, fp, gp
        self.alpha, self.beta, self.gamma = alpha, beta, gamma
        shapes = {
            "f": (g.cols, alpha.cols), "g": (gamma.cols, f.rows),
            "fp": (gp.cols, alpha.rows), "gp": (gamma.rows, fp.rows),
            "beta": (fp.rows, f.rows),
        }
        for name, (rows, cols) in shapes.items():
            m = getattr(self, name)
            if (m.rows, m.cols) != (rows, cols):
                raise DimensionMismatch(
                    f"{name} should be {rows}x{cols}, got {m.rows}x{m.cols}")
        if any(getattr(self, n).field != self.field
               for n in ("g", "fp", "gp", "alpha", "beta", "gamma")):
            raise DimensionMismatch("all maps must share one field")

    def validate(self):
        """Raise HypothesisFailure naming the first failing square or position."""
        if self.fp @ self.alpha != self.beta @ self.f:
            raise HypothesisFailure("left square does not commute", location="square A-B-A'-B'")
        if self.gp @ self.beta != self.gamma @ self.g:
            raise HypothesisFailure("right square does not commute", location="square B-C-B'-C'")
        if image(self.f) != kernel(self.g):
            raise HypothesisFailure("top row not exact at B", location="top row at B")
        if image(self.g).dim != self.g.rows:
            raise HypothesisFailure("g must be onto", location="top row at C")
        if image(self.fp) != kernel(self.gp):
            raise HypothesisFailure("bottom row not exact at B'", location="bottom row at B'")
        if kernel(self.fp).dim != 0:
            raise HypothesisFailure("f' must be injective", location="bottom row at A'")


@dataclass(frozen=True)
class SnakeResult:
    """Six-term complex, connecting map, exactness verdicts and addenda.

    ``exact`` covers the four interior positions (Ker beta, Ker gamma,
    Cok alpha, Cok beta).  Each addendum pair holds both properties of its
    biconditional: (f injective?, induced Ker alpha -> Ker beta injective?)
    and (g' onto?, induced Cok beta -> Cok gamma onto?).
    """

    six_term: ChainComplex
    delta: LinearMap
    exact: list
    f_monic_iff: tuple
    gp_epi_iff: tuple
    ker_alpha: Subspace
    ker_beta: Subspace
    ker_gamma: Subspace
    cok_alpha: QuotientSpace
    cok_beta: QuotientSpace
    cok_gamma: QuotientSpace

    @property
    def all_exact(self) -> bool:
        return all(self.exact)

    @property
    def addenda_hold(self) -> bool:
        return (self.f_monic_iff[0] == self.f_monic_iff[1]
                and self.gp_epi_iff[0] == self.gp_epi_iff[1])


class _Parts:
    """Kernels, cokernels and the six induced maps shared by both routes."""

    def __init__(self, inp: SnakeInput):
        self.ker_alpha = kernel(inp.alpha)
        self.ker_beta = kernel(inp.beta)
        self.ker_gamma = kernel(inp.gamma)
        self.cok_alpha = cokernel(inp.alpha)
        self.cok_beta = cokernel(inp.beta)
        self.cok_gamma = cokernel(inp.gamma)
        self.f_ker = induced_map(inp.f, self.ker_alpha, self.ker_beta)
        self.g_ker = induced_map(inp.g, self.ker_beta, self.ker_gamma)
        self.f_cok = quotient_map(inp.fp, self.cok_alpha, self.cok_beta)
        self.g_cok = quotient_map(inp.gp, self.cok_beta, self.cok_gamma)


def _assemble(inp: SnakeInput, parts: _Parts, delta: LinearMap) -> SnakeResult:
    six = ChainComplex(
        inp.field,
        [parts.ker_alpha.dim, parts.ker_beta.dim, parts.ker_gamma.dim,
         parts.cok_alpha.dim, parts.cok_beta.dim, parts.cok_gamma.dim],
        [parts.f_ker, parts.g_ker, delta, parts.f_cok, parts.g_cok])
    if not six.is_complex():
        raise TheoremViolation("six-term sequence failed to be a complex")
    exact = [six.is_exact_at(i) for i in (1, 2, 3, 4)]
    f_monic_iff = (kernel(inp.f).dim == 0, kernel(parts.f_ker).dim == 0)
    gp_epi_iff = (image(inp.gp).dim == inp.gp.rows,
                  image(parts.g_cok).dim == parts.g_cok.rows)
    return SnakeResult(
        six_term=six, delta=delta, exact=exact,
        f_monic_iff=f_monic_iff, gp_epi_iff=gp_epi_iff,
        ker_alpha=parts.ker_alpha, ker_beta=parts.ker_beta, ker_gamma=parts.ker_gamma,
        cok_alpha=parts.cok_alpha, cok_beta=parts.cok_beta, cok_gamma=parts.cok_gamma)


def snake(inp: SnakeInput) -> SnakeResult:
    """Connecting map by relation chase, plus the verified six-term sequence."""
    inp.validate()
    parts = _Parts(inp)
    field = inp.field
    chase = (graph(parts.cok_alpha.projection)
             @ graph(inp.fp).inverse()
             @ graph(inp.beta)
             @ graph(inp.g).inverse()
             @ graph(parts.ker_gamma.inclusion()))
    _, ambiguity = chase.witnesses(field.vector([0] * parts.ker_gamma.dim))
    if ambiguity.dim != 0:
        raise TheoremViolation("connecting map is multivalued; ambiguity escaped Im(alpha)")
    columns = field.zeros(parts.cok_alpha.dim, parts.ker_gamma.dim)
    for j in range(parts.ker_gamma.dim):
        unit = field.vector([1 if t == j else 0 for t in range(parts.ker_gamma.dim)])
        value, _ = chase.witnesses(unit)
        if value is None:
            raise TheoremViolation("connecting map undefined on a kernel element")
        columns[:, j] = value
    delta = LinearMap(field, columns)
    return _assemble(inp, parts, delta)


def snake_via_grids(inp: SnakeInput) -> SnakeResult:
    """Independent derivation through the two complex-comparison lemmas.

    The kernel side runs the three-term corollary on the ladder extended by
    its cokernel row; the cokernel side runs the cokernel-complex comparison
    on the ladder extended by its kernel row, and the connecting map falls
    out of the comparison isomorphism at position 3.
    """
    inp.validate()
    parts = _Parts(inp)
    field = inp.field

    extended = Grid(
        field, StaircaseShape([3, 3, 2]),
        {(0, 0): inp.f.cols, (0, 1): inp.f.rows, (0, 2): inp.g.rows,
         (1, 0): inp.fp.cols, (1, 1): inp.fp.rows, (1, 2): inp.gp.rows,
         (2, 0): parts.cok_alpha.dim, (2, 1): parts.cok_beta.dim},
        {(0, 0): inp.f, (0, 1): inp.g, (1, 0): inp.fp, (1, 1): inp.gp,
         (2, 0): parts.f_cok},
        {(0, 0): inp.alpha, (0, 1): inp.beta, (0, 2): inp.gamma,
         (1, 0): parts.cok_alpha.projection, (1, 1): parts.cok_beta.projection},
        KERNEL)
    if not extended.validate().ok:
        raise TheoremViolation("cokernel-extended ladder failed validation")
    report = corollary_check(extended)
    if not (report.equal_at_1 and report.equal_at_2):
        raise TheoremViolation("kernel-side homology comparison failed")

    ker_f = kernel(inp.f)
    ker_f_ker = kernel(parts.f_ker)
    augmented = Grid(
        field, StaircaseShape([4, 4, 4, 1]),
        {(0, 0): inp.gp.rows, (0, 1): inp.fp.rows, (0, 2): inp.fp.cols, (0, 3): 0,
         (1, 0): inp.g.rows, (1, 1): inp.f.rows, (1, 2): inp.f.cols, (1, 3): ker_f.dim,
         (2, 0): parts.ker_gamma.dim, (2, 1): parts.ker_beta.dim,
         (2, 2): parts.ker_alpha.dim, (2, 3): ker_f_ker.dim,
         (3, 0): 0},
        {(0, 0): inp.gp, (0, 1): inp.fp, (0, 2): LinearMap.zero(field, inp.fp.cols, 0),
         (1, 0): inp.g, (1, 1): inp.f, (1, 2): ker_f.inclusion(),
         (2, 0): parts.g_ker, (2, 1): parts.f_ker, (2, 2): ker_f_ker.inclusion()},
        {(0, 0): inp.gamma, (0, 1): inp.beta, (0, 2): inp.alpha,
         (0, 3): LinearMap.zero(field, 0, ker_f.dim),
         (1, 0): parts.ker_gamma.inclusion(), (1, 1): parts.ker_beta.inclusion(),
         (1, 2): parts.ker_alpha.inclusion(),
         (1, 3): induced_map(parts.ker_alpha.inclusion(), ker_f_ker, ker_f),
         (2, 0): LinearMap.zero(field, parts.ker_gamma.dim, 0)},
        COKERNEL)
    if not augmented.validate().ok:
        raise TheoremViolation("kernel-extended ladder failed validation")
    right_dims, bottom_dims = augmented.ccl_homology_dims()
    if right_dims != bottom_dims:
        raise TheoremViolation("cokernel-side homology comparison failed")

    iso = augmented.ccl_homology_iso(3)
    source_quotient = cokernel(parts.g_ker)
    if iso.source.cycles.dim != source_quotient.dim or iso.source.boundaries.dim != 0:
        raise TheoremViolation("comparison source is not the plain cokernel")
    delta = (iso.target.representative_matrix()
             @ iso.matrix
             @ iso.source.class_of
             @ source_quotient.projection)
    return _assemble(inp, parts, delta)
