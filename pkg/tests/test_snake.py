import numpy as np
import pytest

from conftest import F2, F5, subspace_set

from diagramchase.errors import HypothesisFailure
from diagramchase.genrand import GenConfig, random_snake_input
from diagramchase.linalg import LinearMap, Subspace
from diagramchase.relations import graph
from diagramchase.snake import SnakeInput, snake, snake_via_grids


def worked_example():
    """A = 0, B = C = F2 with g = id; A' = B' = F2, C' = 0 with f' = id."""
    return SnakeInput(
        f=LinearMap.zero(F2, 1, 0),
        g=LinearMap.identity(F2, 1),
        fp=LinearMap.identity(F2, 1),
        gp=LinearMap.zero(F2, 0, 1),
        alpha=LinearMap.zero(F2, 1, 0),
        beta=LinearMap.identity(F2, 1),
        gamma=LinearMap.zero(F2, 0, 1),
    )


def zero_input():
    z = LinearMap.zero(F2, 0, 0)
    return SnakeInput(f=z, g=z, fp=z, gp=z, alpha=z, beta=z, gamma=z)


def brute_delta_relation(inp, result):
    """Definitional connecting relation: pairs ([a'], c) with g(b) = c and
    f'(a') = beta(b) for some b, coordinates matching the computed output."""
    field = inp.field
    kg = result.ker_gamma
    qa = result.cok_alpha
    pairs = []
    for c_coords in field.iter_vectors(kg.dim):
        c_ambient = kg.inclusion().apply(c_coords)
        for b in field.iter_vectors(inp.g.cols):
            if list(inp.g.apply(b)) != list(c_ambient):
                continue
            for a_prime in field.iter_vectors(inp.fp.cols):
                if list(inp.fp.apply(a_prime)) != list(inp.beta.apply(b)):
                    continue
                pairs.append(np.hstack([qa.project(a_prime), c_coords]))
    gens = (np.array(pairs, dtype=kg.basis.dtype) if pairs
            else field.zeros(0, qa.dim + kg.dim))
    return Subspace.from_generators(field, qa.dim + kg.dim, gens)


def total_dim(inp):
    return (inp.f.cols + inp.f.rows + inp.g.rows
            + inp.fp.cols + inp.fp.rows + inp.gp.rows)


# ---------------------------------------------------------------- basics

def test_zero_input():
    result = snake(zero_input())
    assert result.all_exact and result.addenda_hold
    assert result.six_term.dims == [0, 0, 0, 0, 0, 0]


def test_worked_example_delta_is_identity():
    result = snake(worked_example())
    assert result.delta.data.tolist() == [[1]]
    assert result.six_term.dims == [0, 0, 1, 1, 0, 0]
    assert result.all_exact


def test_worked_example_brute_force():
    inp = worked_example()
    result = snake(inp)
    assert graph(result.delta).space == brute_delta_relation(inp, result)


def test_zero_vertical_maps_family():
    # alpha = beta = gamma = 0: delta becomes the induced map C -> A'
    for seed in range(10):
        inp = random_snake_input(GenConfig(seed, F2, max_dim=2))
        zero_a = LinearMap.zero(F2, inp.alpha.rows, inp.alpha.cols)
        zero_b = LinearMap.zero(F2, inp.beta.rows, inp.beta.cols)
        zero_c = LinearMap.zero(F2, inp.gamma.rows, inp.gamma.cols)
        flat = SnakeInput(f=inp.f, g=inp.g, fp=inp.fp, gp=inp.gp,
                          alpha=zero_a, beta=zero_b, gamma=zero_c)
        result = snake(flat)
        assert result.ker_gamma.dim == inp.g.rows
        assert result.cok_alpha.dim == inp.fp.cols
        assert result.all_exact
        assert graph(result.delta).space == brute_delta_relation(flat, result)


# ---------------------------------------------------------------- hypothesis errors

def test_rejects_noncommuting_square():
    ident = LinearMap.identity(F2, 1)
    to_zero = LinearMap.zero(F2, 0, 1)
    bad = SnakeInput(f=ident, g=to_zero, fp=ident, gp=to_zero,
                     alpha=ident, beta=LinearMap.zero(F2, 1, 1),
                     gamma=LinearMap.zero(F2, 0, 0))
    with pytest.raises(HypothesisFailure) as err:
        snake(bad)
    assert "square" in str(err.value.location)


def test_rejects_non_epi_g():
    ident = LinearMap.identity(F2, 1)
    zero = LinearMap.zero(F2, 1, 1)
    bad = SnakeInput(f=ident, g=zero, fp=ident, gp=zero,
                     alpha=ident, beta=ident, gamma=ident)
    with pytest.raises(HypothesisFailure):
        snake(bad)


def test_rejects_non_monic_fp():
    # bottom row F2 -0-> F2 -id-> F2 is exact at B' but f' is not injective
    ident = LinearMap.identity(F2, 1)
    zero = LinearMap.zero(F2, 1, 1)
    bad = SnakeInput(f=zero, g=ident, fp=zero, gp=ident,
                     alpha=zero, beta=zero, gamma=zero)
    with pytest.raises(HypothesisFailure) as err:
        snake(bad)
    assert "injective" in str(err.value)


# ---------------------------------------------------------------- generated sweep

def test_six_term_exactness_sweep():
    for seed in range(40):
        field = F2 if seed % 2 == 0 else F5
        inp = random_snake_input(GenConfig(seed, field, max_dim=3))
        result = snake(inp)
        assert result.six_term.is_complex()
        assert result.all_exact, (seed, result.exact)
        assert result.addenda_hold


def test_brute_force_delta_sweep():
    checked = 0
    for seed in range(40):
        inp = random_snake_input(GenConfig(seed, F2, max_dim=2))
        if total_dim(inp) > 8:
            continue
        result = snake(inp)
        assert graph(result.delta).space == brute_delta_relation(inp, result)
        checked += 1
    assert checked >= 10


def test_via_grids_agrees_with_chase():
    for seed in range(25):
        field = F2 if seed % 2 == 0 else F5
        inp = random_snake_input(GenConfig(seed, field, max_dim=3))
        one = snake(inp)
        two = snake_via_grids(inp)
        assert one.delta == two.delta
        assert graph(one.delta) == graph(two.delta)
        assert one.six_term.homology_dims() == two.six_term.homology_dims()
        assert one.exact == two.exact


def test_via_grids_on_worked_examples():
    for inp in (zero_input(), worked_example()):
        assert snake_via_grids(inp).delta == snake(inp).delta


def test_addenda_cover_all_four_combinations():
    seen = {}
    for seed in range(40):
        monic = [True, False][seed % 2]
        epi = [True, False][(seed // 2) % 2]
        inp = random_snake_input(
            GenConfig(seed, F2, max_dim=3, force_f_monic=monic, force_gp_epi=epi))
        result = snake(inp)
        assert result.f_monic_iff[0] == monic
        assert result.gp_epi_iff[0] == epi
        assert result.addenda_hold
        seen[(monic, epi)] = seen.get((monic, epi), 0) + 1
    assert set(seen) == {(True, True), (True, False), (False, True), (False, False)}
