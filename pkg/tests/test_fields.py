import numpy as np
import pytest

from conftest import random_real_polyfield, random_real_scalar_poly
from tentomo import (
    GridField,
    Poly2,
    PolyField,
    complex_to_real,
    d_sym,
    divergence,
    eval_field,
    pointwise_inner,
    pointwise_norm_sq,
    real_to_complex,
    sample_to_grid,
)
from tentomo.fields import grid_coords, inside_disc_mask


# ---------------------------------------------------------------------------
# real <-> complex component conversion
# ---------------------------------------------------------------------------
def test_vector_conversion_explicit():
    a1, a2 = 0.7, -1.3
    A1, A0 = real_to_complex(1, [a1, a2])
    assert abs(A1 - 0.5 * (a1 - 1j * a2)) < 1e-15
    assert abs(A0 - 0.5 * (a1 + 1j * a2)) < 1e-15


def test_rank2_conversion_explicit():
    a11, a12, a22 = 0.9, -0.4, 0.3
    A2, A1, A0 = real_to_complex(2, [a11, a12, a22])
    assert abs(A2 - 0.25 * (a11 - a22 - 2j * a12)) < 1e-15
    assert abs(A1 - 0.25 * (a11 + a22)) < 1e-15
    assert abs(A0 - np.conj(A2)) < 1e-15


@pytest.mark.parametrize("m", [0, 1, 2, 3, 4])
def test_conversion_round_trip(m):
    rng = np.random.default_rng(m)
    a = list(rng.normal(size=m + 1))
    A = real_to_complex(m, a)
    # reality condition
    for k in range(m + 1):
        assert abs(A[k] - np.conj(A[m - k])) < 1e-14
    back = complex_to_real(m, A)
    np.testing.assert_allclose(back, a, atol=1e-13)


def test_conversion_on_arrays():
    rng = np.random.default_rng(1)
    a = [rng.normal(size=(3, 4)) for _ in range(3)]
    back = complex_to_real(2, real_to_complex(2, a))
    for got, want in zip(back, a):
        np.testing.assert_allclose(got, want, atol=1e-13)


def test_conversion_length_mismatch():
    with pytest.raises(ValueError):
        real_to_complex(2, [1.0, 2.0])
    with pytest.raises(ValueError):
        complex_to_real(1, [1.0, 2.0, 3.0])


# ---------------------------------------------------------------------------
# pointwise inner product
# ---------------------------------------------------------------------------
def test_inner_product_is_vector_dot():
    rng = np.random.default_rng(2)
    a = rng.normal(size=2)
    b = rng.normal(size=2)
    val = pointwise_inner(1, real_to_complex(1, list(a)), real_to_complex(1, list(b)))
    assert abs(val - np.dot(a, b)) < 1e-13


def test_inner_product_is_rank2_contraction():
    rng = np.random.default_rng(3)
    a11, a12, a22 = rng.normal(size=3)
    b11, b12, b22 = rng.normal(size=3)
    # full contraction sum_{ij} a_ij b_ij with a_21 = a_12
    expect = a11 * b11 + 2.0 * a12 * b12 + a22 * b22
    val = pointwise_inner(
        2, real_to_complex(2, [a11, a12, a22]), real_to_complex(2, [b11, b12, b22])
    )
    assert abs(val - expect) < 1e-13


def test_norm_sq_nonnegative():
    rng = np.random.default_rng(4)
    for m in (0, 1, 2, 3):
        A = real_to_complex(m, list(rng.normal(size=m + 1)))
        v = pointwise_norm_sq(m, A)
        assert v >= 0.0
        assert abs(v - pointwise_inner(m, A, A).real) < 1e-13


def test_inner_component_mismatch():
    with pytest.raises(ValueError):
        pointwise_inner(1, [1.0], [1.0, 2.0])


# ---------------------------------------------------------------------------
# PolyField structure
# ---------------------------------------------------------------------------
def test_polyfield_validation():
    with pytest.raises(ValueError):
        PolyField(-1, [])
    with pytest.raises(ValueError):
        PolyField(1, [Poly2.one()])
    F = PolyField(0, [Poly2.one()])
    assert F.degree == 0
    assert PolyField.zero(2).comps[0].is_zero


def test_real_valued_flag():
    rng = np.random.default_rng(5)
    F = random_real_polyfield(rng, 1, 3)
    assert F.real_valued
    G = PolyField(1, [Poly2.monomial(1, 0, 1.0), Poly2.zero()])
    assert not G.real_valued


def test_eval_field_shapes():
    rng = np.random.default_rng(6)
    F = random_real_polyfield(rng, 2, 2)
    z = np.array([0.1 + 0.2j, -0.3j])
    vals = eval_field(F, z)
    assert len(vals) == 3
    assert vals[0].shape == (2,)


# ---------------------------------------------------------------------------
# tensor calculus
# ---------------------------------------------------------------------------
def test_d_sym_then_divergence_is_laplacian():
    # for a scalar u: div(d(u)) = u_xx + u_yy = 4 u_{z zbar}
    rng = np.random.default_rng(7)
    u = random_real_scalar_poly(rng, 5)
    lap = divergence(d_sym(PolyField(0, [u])))
    expect = 4.0 * u.dz().dzbar()
    assert (lap.comps[0] - expect).max_abs_coeff() < 1e-12


def test_d_sym_rank_and_symmetrization():
    # d of a vector field: (dv)_xy must be (v1_y + v2_x)/2
    rng = np.random.default_rng(8)
    V = random_real_polyfield(rng, 1, 3)
    dV = d_sym(V)
    assert dV.m == 2
    # check against finite differences of the Cartesian components
    z0 = 0.31 - 0.12j
    h = 1e-6

    def cart(z):
        return complex_to_real(1, eval_field(V, z))

    a1_x = (cart(z0 + h)[0] - cart(z0 - h)[0]) / (2 * h)
    a1_y = (cart(z0 + 1j * h)[0] - cart(z0 - 1j * h)[0]) / (2 * h)
    a2_x = (cart(z0 + h)[1] - cart(z0 - h)[1]) / (2 * h)
    a2_y = (cart(z0 + 1j * h)[1] - cart(z0 - 1j * h)[1]) / (2 * h)
    d11, d12, d22 = complex_to_real(2, eval_field(dV, z0))
    assert abs(d11 - a1_x) < 1e-8
    assert abs(d12 - 0.5 * (a1_y + a2_x)) < 1e-8
    assert abs(d22 - a2_y) < 1e-8


def test_divergence_explicit_vector():
    # v = (x^2 y, -x y^2) has divergence 2xy - 2xy = 0
    x = Poly2({(1, 0): 0.5, (0, 1): 0.5})
    y = Poly2({(1, 0): -0.5j, (0, 1): 0.5j})
    v1 = x * x * y
    v2 = -1.0 * x * y * y
    V = PolyField(1, real_to_complex(1, [v1, v2]))
    div = divergence(V)
    assert div.comps[0].max_abs_coeff() < 1e-14


def test_divergence_requires_rank():
    with pytest.raises(ValueError):
        divergence(PolyField(0, [Poly2.one()]))


# ---------------------------------------------------------------------------
# grids
# ---------------------------------------------------------------------------
def test_grid_coords_centers():
    X, Y = grid_coords(4, 2)
    assert X.shape == (2, 4)
    np.testing.assert_allclose(X[0], [-0.75, -0.25, 0.25, 0.75])
    np.testing.assert_allclose(Y[:, 0], [-0.5, 0.5])


def test_inside_disc_mask():
    mask = inside_disc_mask(16, 16)
    assert not mask[0, 0]          # corner is outside
    assert mask[8, 8]              # center is inside
    assert mask.sum() < 16 * 16


def test_gridfield_validation():
    with pytest.raises(ValueError):
        GridField(1, np.zeros((1, 4, 4)))
    with pytest.raises(ValueError):
        GridField(0, np.zeros((4, 4)))
    gf = GridField(1, np.zeros((2, 3, 5)))
    assert (gf.ny, gf.nx) == (3, 5)


def test_sample_to_grid_matches_direct_eval():
    rng = np.random.default_rng(9)
    F = random_real_polyfield(rng, 1, 3)
    gf = sample_to_grid(F, 32, 32)
    X, Y = grid_coords(32, 32)
    mask = inside_disc_mask(32, 32)
    cart = complex_to_real(1, eval_field(F, X + 1j * Y))
    for s in range(2):
        np.testing.assert_allclose(gf.data[s][mask], cart[s][mask], atol=1e-12)
        np.testing.assert_allclose(gf.data[s][~mask], 0.0)


def test_sample_to_grid_rejects_complex_field():
    F = PolyField(1, [Poly2.monomial(1, 0), Poly2.zero()])
    with pytest.raises(ValueError):
        sample_to_grid(F, 8, 8)
