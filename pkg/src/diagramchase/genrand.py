"""Seeded generators of valid instances.

Everything is a pure function of its GenConfig: equal configs give
bit-identical output.  The random stream is xorshift64* (seed mixed through
one splitmix64 step so the all-zero state cannot occur); the algorithm name
is exported so reports can cite it.

Instances are built so their defining hypotheses hold by construction:
exact complexes and grids are direct sums of identity intervals or identity
squares conjugated by invertible basis changes, crosses and snake inputs
are assembled from quotient projections.  Every instance is re-verified by
the owning module's validator before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .complexes import ChainComplex
from .errors import InputError, TheoremViolation
from .fields import Field
from .grids import COKERNEL, KERNEL, Grid, StaircaseShape, conjugate_grid
from .linalg import LinearMap, image, kernel, matrix_inverse, quotient, solve
from .snake import SnakeInput

PRNG_ALGORITHM = "xorshift64star"

_MASK = (1 << 64) - 1
_MULT = 2685821657736338717


class Xorshift64Star:
    """64-bit xorshift* stream; tiny, portable, reproducible."""

    def __init__(self, seed: int):
        s = (int(seed) + 0x9E3779B97F4A7C15) & _MASK
        s = ((s ^ (s >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        s = ((s ^ (s >> 27)) * 0x94D049BB133111EB) & _MASK
        s ^= s >> 31
        self.state = s if s else 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self.state
        x ^= (x >> 12)
        x ^= (x << 25) & _MASK
        x ^= (x >> 27)
        self.state = x
        return (x * _MULT) & _MASK

    def below(self, n: int) -> int:
        """Uniform-ish integer in [0, n); modulo bias is irrelevant here."""
        if n <= 0:
            raise InputError("below() needs a positive bound")
        return self.next_u64() % n

    def randint(self, lo: int, hi: int) -> int:
        """Integer in [lo, hi] inclusive."""
        return lo + self.below(hi - lo + 1)


@dataclass(frozen=True)
class GenConfig:
    seed: int
    field: Field
    max_dim: int = 4
    shape: StaircaseShape | None = None
    force_f_monic: bool | None = None
    force_gp_epi: bool | None = None

    def __post_init__(self):
        if self.max_dim < 1:
            raise InputError("max_dim must be at least 1")

    def rng(self, salt: int = 0) -> Xorshift64Star:
        return Xorshift64Star(self.seed * 1000003 + salt)


def random_scalar(field: Field, rng: Xorshift64Star):
    from .fields import PrimeField
    if isinstance(field, PrimeField):
        return rng.below(field.p)
    from fractions import Fraction
    return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


def random_matrix(field: Field, rows: int, cols: int, rng: Xorshift64Star) -> LinearMap:
    data = field.zeros(rows, cols)
    for i in range(rows):
        for j in range(cols):
            data[i, j] = field.scalar(random_scalar(field, rng))
    return LinearMap(field, data)


def random_invertible(field: Field, n: int, rng: Xorshift64Star) -> LinearMap:
    """Product of seeded elementary row operations, invertible by construction."""
    data = field.identity(n)
    if n == 0:
        return LinearMap(field, data)
    for _ in range(2 * n * n):
        op = rng.below(3)
        if n < 2 and op != 1:
            continue
        if op == 0:
            i, j = rng.below(n), rng.below(n)
            if i != j:
                data[[i, j]] = data[[j, i]]
        elif op == 1 and n >= 1:
            i = rng.below(n)
            c = random_scalar(field, rng)
            if field.scalar(c) != field.scalar(0):
                data[i] = field.reduce(data[i] * field.scalar(c))
        else:
            i, j = rng.below(n), rng.below(n)
            if i != j:
                data[i] = field.reduce(data[i] + field.scalar(random_scalar(field, rng)) * data[j])
    return LinearMap(field, data)


def random_full_rank(field: Field, rows: int, cols: int, rng: Xorshift64Star) -> LinearMap:
    """A matrix of rank min(rows, cols)."""
    n, m = rows, cols
    block = field.zeros(n, m)
    for k in range(min(n, m)):
        block[k, k] = field.scalar(1)
    return random_invertible(field, n, rng) @ LinearMap(field, block) @ random_invertible(field, m, rng)


def random_exact_complex(cfg: GenConfig, length: int) -> ChainComplex:
    """An exact-at-interior complex with ``length`` terms: a direct sum of
    identity intervals at adjacent positions, conjugated at every term."""
    if length < 2:
        raise InputError("need at least two terms")
    rng = cfg.rng(salt=1)
    interval_counts = []
    prev = 0
    for _ in range(length - 1):
        cap = min(cfg.max_dim - prev, cfg.max_dim // 2)
        c = rng.randint(0, cap) if cap > 0 else 0
        interval_counts.append(c)
        prev = c
    dims = []
    for i in range(length):
        left = interval_counts[i - 1] if i >= 1 else 0
        right = interval_counts[i] if i < length - 1 else 0
        dims.append(left + right)
    maps = []
    for i in range(length - 1):
        m = cfg.field.zeros(dims[i + 1], dims[i])
        # the interval block maps identically onto the next term's left block
        left = interval_counts[i - 1] if i >= 1 else 0
        for k in range(interval_counts[i]):
            m[k, left + k] = cfg.field.scalar(1)
        maps.append(LinearMap(cfg.field, m))
    changes = [random_invertible(cfg.field, d, rng) for d in dims]
    maps = [changes[i + 1] @ maps[i] @ matrix_inverse(changes[i]) for i in range(length - 1)]
    result = ChainComplex(cfg.field, dims, maps)
    if not result.is_complex():
        raise TheoremViolation("generator produced a non-complex")
    for i in range(1, length - 1):
        if not result.is_exact_at(i):
            raise TheoremViolation("generator produced an inexact complex")
    return result


def _hook_cells(n: int):
    """Cells of the antidiagonal hook summand carrying one unit of homology
    at comparison position n: a zigzag of identity edges whose two loose ends
    sit in the n-th kernel (or cokernel) terms on both sides."""
    sources = [(k, n - 2 - k) for k in range(n - 1)]
    sinks = [(k, n - 1 - k) for k in range(n)]
    return sources, sinks


def random_exact_grid(cfg: GenConfig, orientation: str = KERNEL) -> Grid:
    """A valid grid on cfg.shape: a direct sum of antidiagonal hook summands
    (each contributing one matched unit of comparison homology at a chosen
    position) and elementary identity squares, conjugated at every vertex."""
    if cfg.shape is None:
        raise InputError("grid generation needs a shape in the config")
    shape = cfg.shape
    rng = cfg.rng(salt=2)
    dims = {c: 0 for c in shape.cells()}

    hook_positions = []
    n = 1
    while all(shape.has_cell(k, n - k) for k in range(n + 1)):
        hook_positions.append(n)
        n += 1
    hooks = []
    for pos in hook_positions:
        sources, sinks = _hook_cells(pos)
        cap = min(cfg.max_dim - dims[c] for c in sources + sinks)
        count = rng.randint(0, min(cap, 2)) if cap > 0 else 0
        if count:
            hooks.append((pos, count))
            for c in sources + sinks:
                dims[c] += count

    anchors = []
    for (i, j) in shape.cells():
        if not (shape.has_cell(i, j + 1) and shape.has_cell(i + 1, j)
                and shape.has_cell(i + 1, j + 1)):
            continue
        covered = [(i, j), (i, j + 1), (i + 1, j), (i + 1, j + 1)]
        cap = min(cfg.max_dim - dims[c] for c in covered)
        count = rng.randint(0, cap) if cap > 0 else 0
        if count:
            anchors.append(((i, j), count))
            for c in covered:
                dims[c] += count

    field = cfg.field
    hmat = {}
    vmat = {}
    for slot in _hslots(shape):
        src, tgt = _ends(slot, True, orientation)
        hmat[slot] = field.zeros(dims[tgt], dims[src])
    for slot in _vslots(shape):
        src, tgt = _ends(slot, False, orientation)
        vmat[slot] = field.zeros(dims[tgt], dims[src])
    placed = {c: 0 for c in shape.cells()}

    def wire(slot, horizontal, starts, count):
        src, tgt = _ends(slot, horizontal, orientation)
        mat = hmat[slot] if horizontal else vmat[slot]
        for k in range(count):
            mat[starts[tgt] + k, starts[src] + k] = field.scalar(1)

    # blocks within each cell are allocated to summands in placement order
    for (pos, count) in hooks:
        sources, sinks = _hook_cells(pos)
        starts = {c: placed[c] for c in sources + sinks}
        for c in sources + sinks:
            placed[c] += count
        for k, cell in enumerate(sources):
            wire(cell, True, starts, count)          # source -> right sink
            wire(cell, False, starts, count)         # source -> lower sink
    for (anchor, count) in anchors:
        i, j = anchor
        cells = [(i, j), (i, j + 1), (i + 1, j), (i + 1, j + 1)]
        starts = {c: placed[c] for c in cells}
        for c in cells:
            placed[c] += count
        for slot, horizontal in (((i, j), True), ((i + 1, j), True),
                                 ((i, j), False), ((i, j + 1), False)):
            wire(slot, horizontal, starts, count)

    hmaps = {slot: LinearMap(field, m) for slot, m in hmat.items()}
    vmaps = {slot: LinearMap(field, m) for slot, m in vmat.items()}
    grid = Grid(field, shape, dims, hmaps, vmaps, orientation)
    changes = {c: random_invertible(field, dims[c], rng) for c in shape.cells()}
    grid = conjugate_grid(grid, changes)
    if not grid.validate().ok:
        raise TheoremViolation("generator produced an invalid grid")
    return grid


def _hslots(shape: StaircaseShape):
    return [(i, j) for (i, j) in shape.cells() if shape.has_cell(i, j + 1)]


def _vslots(shape: StaircaseShape):
    return [(i, j) for (i, j) in shape.cells() if shape.has_cell(i + 1, j)]


def _ends(slot, horizontal: bool, orientation: str):
    i, j = slot
    a, b = ((i, j), (i, j + 1)) if horizontal else ((i, j), (i + 1, j))
    return (a, b) if orientation == KERNEL else (b, a)


def random_cross(cfg: GenConfig) -> tuple[LinearMap, LinearMap, LinearMap, LinearMap]:
    """(beta1, beta2, f, g) with the row A -f-> B2 -g-> C and the column
    B1 -beta1-> B2 -beta2-> B3 exact at B2, by quotient construction."""
    rng = cfg.rng(salt=3)
    field = cfg.field
    m = cfg.max_dim
    b2 = rng.randint(0, m)

    def exact_pair(salt_rank):
        r = rng.randint(0, b2)
        src_extra = rng.randint(0, max(m - r, 0))
        into = random_full_rank(field, b2, r, rng)
        first = into @ random_full_rank(field, r, r + src_extra, rng)
        quot = quotient(b2, image(first))
        out_extra = rng.randint(0, max(m - quot.dim, 0))
        embed = random_full_rank(field, quot.dim + out_extra, quot.dim, rng)
        second = embed @ quot.projection
        return first, second

    f, g = exact_pair(0)
    beta1, beta2 = exact_pair(1)
    if image(f) != kernel(g) or image(beta1) != kernel(beta2):
        raise TheoremViolation("generator produced an inexact cross")
    return beta1, beta2, f, g


def random_snake_input(cfg: GenConfig) -> SnakeInput:
    """A valid snake diagram; see SnakeInput for the hypotheses.

    force_f_monic / force_gp_epi pin the two addendum-relevant properties so
    suites can cover all four combinations.
    """
    rng = cfg.rng(salt=4)
    field = cfg.field
    m = cfg.max_dim
    dim_b = rng.randint(0, m)
    if cfg.force_f_monic is True:
        dim_a = rng.randint(0, dim_b)
        f = random_full_rank(field, dim_b, dim_a, rng)
    elif cfg.force_f_monic is False:
        dim_a = rng.randint(1, m)
        f = random_matrix(field, dim_b, dim_a, rng)
        squash = field.identity(dim_a)
        squash[:, 0] = 0
        f = f @ LinearMap(field, squash)
    else:
        dim_a = rng.randint(0, m)
        f = random_matrix(field, dim_b, dim_a, rng)
    top_quot = quotient(dim_b, image(f))
    g = top_quot.projection

    dim_ap = rng.randint(0, m)
    dim_bp = dim_ap + rng.randint(0, max(m - dim_ap, 0))
    fp = random_full_rank(field, dim_bp, dim_ap, rng)
    bottom_quot = quotient(dim_bp, image(fp))
    if cfg.force_gp_epi is True:
        extra = 0
    elif cfg.force_gp_epi is False:
        extra = rng.randint(1, 2)
    else:
        extra = rng.randint(0, 1)
    embed = random_full_rank(field, bottom_quot.dim + extra, bottom_quot.dim, rng)
    gp = embed @ bottom_quot.projection

    # beta exists iff alpha kills Ker f (it must in any commuting ladder with
    # f' injective), so sample alpha through the quotient by Ker f
    ker_f_quot = quotient(dim_a, kernel(f))
    alpha = random_matrix(field, dim_ap, ker_f_quot.dim, rng) @ ker_f_quot.projection
    # solve beta f = fp alpha entrywise in vec(beta)
    target = fp @ alpha
    rows_eq = dim_bp * dim_a
    system = field.zeros(rows_eq, dim_bp * dim_b)
    rhs = field.zeros(rows_eq, 1)[:, 0] if rows_eq else field.vector([])
    for i in range(dim_bp):
        for j in range(dim_a):
            eq = i * dim_a + j
            rhs[eq] = target.data[i, j]
            for k in range(dim_b):
                system[eq, i * dim_b + k] = f.data[k, j]
    sys_map = LinearMap(field, system)
    particular = solve(sys_map, rhs)
    if particular is None:
        raise TheoremViolation("commuting-square system must be solvable")
    homogeneous = kernel(sys_map)
    combo = particular.copy()
    for row in homogeneous.basis:
        combo = field.reduce(combo + field.scalar(random_scalar(field, rng)) * row)
    beta = LinearMap(field, combo.reshape(dim_bp, dim_b) if combo.size else field.zeros(dim_bp, dim_b))

    gamma_cols = field.zeros(gp.rows, g.rows)
    for j in range(g.rows):
        unit = field.vector([1 if t == j else 0 for t in range(g.rows)])
        pre = solve(g, unit)
        if pre is None:
            raise TheoremViolation("top projection must be surjective")
        gamma_cols[:, j] = gp.apply(beta.apply(pre))
    gamma = LinearMap(field, gamma_cols)

    snake_input = SnakeInput(f=f, g=g, fp=fp, gp=gp, alpha=alpha, beta=beta, gamma=gamma)
    snake_input.validate()
    return snake_input
