"""Four-dimensional and mixed-component cases exercising the general paths:
non-identity morphisms, quotient maps between local algebras, and cycles
seen through a projection."""

import math

import numpy as np
import pytest

import holoalg as ha
from holoalg.catalog import bidual

from conftest import assert_coords


@pytest.fixture(scope="module")
def b4():
    return bidual()


@pytest.fixture(scope="module")
def quotient_to_dual(b4, dual):
    """C[x,y]/(x^2,y^2) ->> C[eps]: x -> eps, y -> 0, xy -> 0."""
    return ha.build_morphism(b4, dual, [[1, 0, 0, 0], [0, 1, 0, 0]])


def test_bidual_validates_and_decomposes(b4):
    assert np.abs(b4.unit_coords - [1, 0, 0, 0]).max() < 1e-12
    dec = ha.artin_decompose(b4)
    assert dec.count == 1
    assert ha.nilradical(b4).shape == (4, 3)
    prof = ha.profile(b4, dec)
    assert prof.heights == (3,)
    assert prof.components[0].widths == (2, 1)


def test_bidual_gamma_identities(b4, quotient_to_dual):
    for phi in (ha.identity_morphism(b4), quotient_to_dual):
        beta = phi.target.alpha
        lhs = np.einsum("rli,jrk->jkli", beta, phi.gamma)
        rhs = np.einsum("jir,klr->jkli", phi.gamma, beta)
        assert np.abs(lhs - rhs).max() < 1e-12
        alpha = phi.source.alpha
        lhs2 = np.einsum("ril,jkr->jkil", phi.gamma, alpha)
        rhs2 = np.einsum("jis,ksl->jkil", phi.gamma, phi.gamma)
        assert np.abs(lhs2 - rhs2).max() < 1e-12


def test_bidual_gcru_and_residuals(b4):
    phi = ha.identity_morphism(b4)
    system = ha.gcru_system(phi)
    assert system.equation_count == 3 * 4
    cube = ha.PowerSeries.polynomial(
        phi, b4.zero(), [b4.zero(), b4.zero(), b4.zero(), b4.unit()])
    rng = np.random.default_rng(61)
    for _ in range(5):
        Z = b4.random_element(rng)
        assert ha.gcru_residual(cube.sampler(), phi, Z, h=1e-4) < 1e-5
    conj = ha.conjugation_sampler(b4)
    assert ha.gcru_residual(conj, phi, b4.random_element(rng), h=1e-4) > 1.0


def test_quotient_morphism_residual(b4, dual, quotient_to_dual):
    # f(Z) = phi(Z)^2 + (1 + 2 eps) phi(Z) is phi-holomorphic
    phi = quotient_to_dual
    f = ha.PowerSeries.polynomial(phi, b4.zero(),
                                  [dual.zero(), dual.element([1, 2]), dual.unit()])
    rng = np.random.default_rng(62)
    for _ in range(5):
        Z = b4.random_element(rng)
        assert ha.gcru_residual(f.sampler(), phi, Z, h=1e-4) < 1e-6
        assert ha.dij_residual(f.sampler(), phi, Z, h=1e-4) < 1e-6


def test_canonical_form_through_quotient(b4, dual, quotient_to_dual):
    # height of the pair is min(3, 2) = 2: g~(z + X) = g(z) + g'(z) phi(X)
    g = ha.ScalarSeries(dual, 0.0,
                        rule=lambda j: math.exp(-math.lgamma(j + 1)) * dual.unit())
    cf = ha.canonical_form(g, quotient_to_dual)
    assert cf.heights == (2,)
    z, a, b, c = 0.4, 1.5, -2.0, 3.0
    got = cf.evaluate(b4.element([z, a, b, c]))
    assert_coords(got, [math.exp(z), math.exp(z) * a], tol=1e-10)
    f = cf.sampler()
    assert ha.gcru_residual(f, quotient_to_dual, b4.element([0.1, 1, 2, 3]), h=1e-4) < 1e-6


def test_invert_matches_series_in_dim4(b4):
    dec = ha.artin_decompose(b4)
    rng = np.random.default_rng(63)
    for _ in range(10):
        z = b4.random_element(rng) + b4.scalar(3.0)
        assert (z.invert() - ha.invert_via_series(z, dec)).coord_norm() < 1e-10


def test_index_and_cif_in_dim4(b4):
    phi = ha.identity_morphism(b4)
    circ = ha.Path.circle(b4.zero(), 1.0)
    Z0 = b4.element([0.0, 2.0, -1.0, 5.0])  # nilpotent shift off the center
    idx = ha.index_spectral(circ, Z0, phi)
    assert idx.values == (1,)
    quad = ha.index_quadrature(circ, Z0, phi)
    assert (quad - idx.element).coord_norm() < 1e-8
    cube = ha.PowerSeries.polynomial(
        phi, b4.zero(), [b4.element([1, 0, 0, 2]), b4.zero(), b4.zero(), b4.unit()])
    value = ha.cif_value(cube.sampler(), circ, Z0, phi)
    assert (value - cube(Z0)).coord_norm() < 1e-8


def test_cif_through_spectral_projection(dual, cline, sigma_dual):
    # f = sigma itself is sigma-holomorphic; the reproducing formula holds
    f = ha.FunctionSampler(sigma_dual.apply, dual, cline)
    circ = ha.Path.circle(dual.zero(), 1.0)
    Z0 = dual.element([0.3, 5.0])
    value = ha.cif_value(f, circ, Z0, sigma_dual)
    assert_coords(value, [0.3], tol=1e-8)
    idx = ha.index_spectral(circ, Z0, sigma_dual)
    assert idx.values == (1,)


def test_index_through_component_projection(dual, dual_plus_c):
    # project dual (+) C onto the dual factor; only that component is active
    proj = ha.build_morphism(dual_plus_c, dual,
                             [[1, 0, 0], [0, 1, 0]])
    circ = ha.Path.circle(dual_plus_c.zero(), 1.0)
    # second (C) component far outside the circle: irrelevant through proj
    Z0 = dual_plus_c.element([0.2, 3.0, 50.0])
    report = ha.admissibility(circ, Z0, proj)
    assert report.admissible and len(report.active_components) == 1
    idx = ha.index_spectral(circ, Z0, proj)
    assert idx.values == (1,)
    quad = ha.index_quadrature(circ, Z0, proj)
    assert (quad - idx.element).coord_norm() < 1e-8


def test_taylor_from_contour_dim4(b4):
    phi = ha.identity_morphism(b4)
    coeffs = [b4.element([1, 1, 0, 0]), b4.element([0, 0, 1, 0]),
              b4.element([0.5, 0, 0, -1])]
    poly = ha.PowerSeries.polynomial(phi, b4.zero(), coeffs)
    series = ha.taylor_from_contour(poly.sampler(), ha.Path.circle(b4.zero(), 1.0),
                                    b4.zero(), 2, phi)
    for k in range(3):
        assert (series.coefficient(k) - coeffs[k]).coord_norm() < 1e-8
