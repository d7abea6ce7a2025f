from math import comb, pi, sqrt

import numpy as np
import pytest

from conftest import polyfield_cart, proper_angles, reference_transform
from tentomo import (
    BasisIndex,
    QuadratureSpec,
    basis_field,
    basis_norm,
    binomial_window_sum,
    disc_quadrature,
    divergence,
    enumerate_basis,
    eval_field,
    pointwise_inner,
    pointwise_norm_sq,
    singular_function,
    singular_value,
    subspace_dim,
    transform_polyfield,
)


# ---------------------------------------------------------------------------
# index bookkeeping
# ---------------------------------------------------------------------------
def test_index_validation():
    BasisIndex(+1, 1, 3, 2)  # k up to (n+m)//2 is fine
    with pytest.raises(ValueError):
        BasisIndex(0, 1, 3, 1)
    with pytest.raises(ValueError):
        BasisIndex(+1, -1, 3, 1)
    with pytest.raises(ValueError):
        BasisIndex(+1, 1, -2, 0)
    with pytest.raises(ValueError):
        BasisIndex(+1, 1, 3, 3)


def test_index_hashable_frozen():
    idx = BasisIndex(-1, 2, 4, 1)
    assert idx in {idx}
    with pytest.raises(Exception):
        idx.k = 2


def test_degenerate_rule():
    # at 2k = m + n only one of the two sign combinations survives
    assert BasisIndex(+1, 1, 3, 2).degenerate          # odd n kills +1
    assert not BasisIndex(-1, 1, 3, 2).degenerate
    assert BasisIndex(-1, 0, 4, 2).degenerate          # even n kills -1
    assert not BasisIndex(+1, 0, 4, 2).degenerate
    assert not BasisIndex(+1, 1, 3, 1).degenerate      # off the diagonal: both live
    assert not BasisIndex(-1, 1, 3, 1).degenerate


def test_binomial_window_sum():
    assert binomial_window_sum(0, 5, 2) == 1
    assert binomial_window_sum(1, 5, 0) == 1
    assert binomial_window_sum(1, 5, 3) == 2
    assert binomial_window_sum(2, 0, 1) == 2          # window collapses to p = 1
    assert binomial_window_sum(2, 3, 1) == 3
    assert binomial_window_sum(2, 3, 2) == 4
    for m in range(4):
        for n in range(6):
            for k in range((n + m) // 2 + 1):
                expect = sum(comb(m, p) for p in range(max(0, k - n), min(k, m) + 1))
                assert binomial_window_sum(m, n, k) == expect


@pytest.mark.parametrize("m", [0, 1, 2, 3])
@pytest.mark.parametrize("n_max", [0, 1, 2, 5, 12])
def test_enumeration_length_is_subspace_dim(m, n_max):
    idxs = enumerate_basis(m, n_max)
    assert len(idxs) == subspace_dim(m, n_max)
    assert subspace_dim(m, n_max) == (n_max + 1) * (n_max + 2 + 2 * m) // 2
    assert len(set(idxs)) == len(idxs)
    assert not any(idx.degenerate for idx in idxs)


def test_enumeration_order():
    idxs = enumerate_basis(1, 3)
    keys = [(idx.n, idx.k, 0 if idx.sign > 0 else 1) for idx in idxs]
    assert keys == sorted(keys)
    with pytest.raises(ValueError):
        subspace_dim(-1, 3)


# ---------------------------------------------------------------------------
# singular values
# ---------------------------------------------------------------------------
def test_singular_values_scalar():
    for idx in enumerate_basis(0, 8):
        assert singular_value(idx) == sqrt(8 * pi / (idx.n + 1))


def test_singular_values_vector():
    for idx in enumerate_basis(1, 8):
        if idx.k == 0:
            assert singular_value(idx) == sqrt(4 * pi / (idx.n + 1))
        else:
            assert singular_value(idx) == sqrt(8 * pi / (idx.n + 1))


def test_singular_values_rank2():
    for idx in enumerate_basis(2, 8):
        n, k = idx.n, idx.k
        if k == 0:
            expect = sqrt(2 * pi / (n + 1))
        elif k == 1:
            expect = sqrt(4 * pi) if n == 0 else sqrt(6 * pi / (n + 1))
        else:
            expect = sqrt(8 * pi / (n + 1))
        assert singular_value(idx) == expect, idx


def test_singular_value_sign_independent():
    assert singular_value(BasisIndex(+1, 1, 4, 1)) == singular_value(BasisIndex(-1, 1, 4, 1))


# ---------------------------------------------------------------------------
# basis fields
# ---------------------------------------------------------------------------
def test_basis_fields_divergence_free():
    for m in (1, 2):
        for idx in enumerate_basis(m, 5):
            div = divergence(basis_field(idx))
            worst = max(c.max_abs_coeff() for c in div.comps)
            assert worst < 1e-10, idx


def test_basis_fields_real_valued():
    for m in (0, 1, 2):
        for idx in enumerate_basis(m, 4):
            F = basis_field(idx)
            assert F.real_valued, idx
            assert F.degree == idx.n, idx


def test_degenerate_index_gives_zero_field():
    F = basis_field(BasisIndex(+1, 1, 3, 2))
    assert all(c.is_zero for c in F.comps)
    with pytest.raises(ValueError):
        basis_norm(BasisIndex(+1, 1, 3, 2))


def test_basis_norm_matches_quadrature():
    quad = QuadratureSpec.for_degree(12)
    z, w = disc_quadrature(quad)
    for m in (0, 1, 2):
        for idx in enumerate_basis(m, 4):
            F = basis_field(idx)
            density = pointwise_norm_sq(m, eval_field(F, z))
            norm = sqrt(float(np.sum(w * density)))
            assert abs(norm - basis_norm(idx)) < 1e-9, idx


def test_basis_fields_orthogonal():
    quad = QuadratureSpec.for_degree(10)
    z, w = disc_quadrature(quad)
    for m in (1, 2):
        idxs = enumerate_basis(m, 3)
        fields = {idx: eval_field(basis_field(idx), z) for idx in idxs}
        for i, a in enumerate(idxs):
            for b in idxs[i + 1:]:
                val = float(np.sum(w * pointwise_inner(m, fields[a], fields[b])).real)
                assert abs(val) < 1e-9, (a, b)


# ---------------------------------------------------------------------------
# singular functions
# ---------------------------------------------------------------------------
def test_singular_functions_orthonormal_on_torus():
    # rectangle rule on the angle torus is exact for these trig products
    P = 64
    beta, phi = np.meshgrid(
        2 * pi * np.arange(P) / P, 2 * pi * np.arange(P) / P, indexing="ij"
    )
    w = (2 * pi / P) ** 2
    idxs = enumerate_basis(1, 4)
    vals = {idx: singular_function(idx, beta, phi) for idx in idxs}
    for i, a in enumerate(idxs):
        assert abs(w * np.sum(vals[a] * vals[a]) - 1.0) < 1e-12, a
        for b in idxs[i + 1:]:
            assert abs(w * np.sum(vals[a] * vals[b])) < 1e-12, (a, b)


def test_singular_function_degenerate_is_zero():
    idx = BasisIndex(+1, 1, 3, 2)
    rng = np.random.default_rng(0)
    beta, phi = proper_angles(rng, 10)
    np.testing.assert_allclose(singular_function(idx, beta, phi), 0.0, atol=1e-15)


def test_singular_function_scalar_return():
    assert isinstance(singular_function(BasisIndex(+1, 0, 2, 1), 0.3, 0.1), float)


# ---------------------------------------------------------------------------
# the singular relation itself
# ---------------------------------------------------------------------------
def test_transform_of_unit_basis_is_sigma_times_singular_function():
    rng = np.random.default_rng(42)
    beta, phi = proper_angles(rng, 12)
    for m in (0, 1, 2):
        for idx in enumerate_basis(m, 4):
            F = basis_field(idx)
            got = transform_polyfield(F, beta, phi) / basis_norm(idx)
            want = singular_value(idx) * singular_function(idx, beta, phi)
            np.testing.assert_allclose(got, want, atol=1e-10, err_msg=str(idx))


def test_singular_relation_against_reference_quadrature():
    # same relation, but the chord integral done by an independent quadrature
    rng = np.random.default_rng(43)
    beta, phi = proper_angles(rng, 4)
    for idx in [BasisIndex(+1, 1, 3, 1), BasisIndex(+1, 2, 2, 2), BasisIndex(+1, 0, 4, 1)]:
        F = basis_field(idx)
        cart = polyfield_cart(F)
        for b, p in zip(beta, phi):
            got = reference_transform(idx.m, cart, b, p) / basis_norm(idx)
            want = singular_value(idx) * singular_function(idx, b, p)
            assert abs(got - want) < 1e-10, idx
