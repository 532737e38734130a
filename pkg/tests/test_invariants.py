from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from oracles import hilbert_function, poly_dict, socle_dims
from qgor.fields import PrimeField, RationalField
from qgor.ideals import ideal, maximal_ideal
from qgor.invariants import (
    InhomogeneousError,
    NotArtinianError,
    hilbert_table,
    is_irreducible_mprimary,
    is_m_primary,
    krull_dimension,
    mu_homogeneous,
    socle_dimension,
    vdim_artinian,
)
from qgor.poly import PolynomialRing

Q = RationalField()
F101 = PrimeField(101)


def test_dimensions():
    S = PolynomialRing(Q, "XYZT")
    X, Y, Z, T = S.gens()
    assert krull_dimension(ideal(S, X * Y, X * T, Z * Y, Z * T)) == 2
    assert krull_dimension(ideal(S)) == 4
    assert krull_dimension(maximal_ideal(S)) == 0
    assert krull_dimension(ideal(S, S.one())) == -1
    assert krull_dimension(ideal(S, X**2 + Y**2 + Z**2 + T**2)) == 3


def test_two_planes_plus_parameters_has_length_three():
    # K[X,Z]/(X^2, XZ, Z^2) after substituting Y = -X, T = -Z
    S = PolynomialRing(Q, "XYZT")
    X, Y, Z, T = S.gens()
    J = ideal(S, X * Y, X * T, Z * Y, Z * T, X + Y, Z + T)
    assert vdim_artinian(J) == 3
    assert socle_dimension(J) == 2


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_hilbert_function_matches_linear_algebra(seed, k):
    S = PolynomialRing(F101, "xyz")
    gens = [S.random_homogeneous_form(2 + (i % 2), seed + i) for i in range(k)]
    J = ideal(S, *gens)
    table = hilbert_table(J, 6)
    dicts = [poly_dict(g) for g in gens]
    assert table.as_list() == [hilbert_function(dicts, 3, e, 101) for e in range(7)]


def test_artinian_hilbert_table():
    S = PolynomialRing(Q, "xy")
    x, y = S.gens()
    t = hilbert_table(ideal(S, x**2, y**3))
    assert t.artinian and t.as_list() == [1, 2, 2, 1] and t.total == 6
    with pytest.raises(ValueError):
        hilbert_table(ideal(S, x**2))
    with pytest.raises(NotArtinianError):
        vdim_artinian(ideal(S, x))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_socle_matches_linear_algebra(seed):
    S = PolynomialRing(F101, "xyz")
    x, y, z = S.gens()
    extra = [S.random_homogeneous_form(2, seed + i) for i in range(3)]
    J = ideal(S, x**3, y**3, z**3, *extra)
    assert is_m_primary(J)
    dicts = [poly_dict(g) for g in J.gens]
    assert socle_dimension(J) == sum(socle_dims(dicts, 3, 101, 7))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_mu_matches_linear_algebra(seed):
    S = PolynomialRing(F101, "xyz")
    x, y, z = S.gens()
    gens = [S.random_homogeneous_form(d, seed + i) for i, d in enumerate((2, 2, 3, 3))]
    J = ideal(S, *gens)
    m = [poly_dict(v * g) for v in S.gens() for g in gens]
    dicts = [poly_dict(g) for g in gens]
    expected = sum(hilbert_function(m, 3, e, 101) - hilbert_function(dicts, 3, e, 101) for e in range(4))
    assert mu_homogeneous(J) == expected


def test_mu_over_quotient():
    S = PolynomialRing(Q, "XY")
    X, Y = S.gens()
    I = ideal(S, X**5 * Y**5)
    assert mu_homogeneous(ideal(S, X**2 * Y**2, X**5 * Y**5), I) == 1
    assert mu_homogeneous(ideal(S, X**4 * Y**3, X**3 * Y**4), I) == 2
    assert mu_homogeneous(I, I) == 0
    with pytest.raises(InhomogeneousError):
        mu_homogeneous(ideal(S, X + 1))


@pytest.mark.parametrize("a,b", [(1, 1), (2, 2), (2, 3), (1, 4), (3, 5)])
def test_pure_power_ideals_are_irreducible(a, b):
    S = PolynomialRing(Q, "xy")
    x, y = S.gens()
    verdict, cert = is_irreducible_mprimary(ideal(S, x**a, y**b))
    assert verdict and cert.socle_dimension == 1


def test_reducible_examples_and_certificate():
    S = PolynomialRing(Q, "xy")
    x, y = S.gens()
    verdict, cert = is_irreducible_mprimary(ideal(S, x**2, x * y, y**2))
    assert not verdict and cert.socle_dimension == 2 and not cert.mu_identity
    verdict, cert = is_irreducible_mprimary(ideal(S, x**2, y**2))
    assert verdict and cert.mu_identity and cert.criteria_agree
    # the generator-count identity misses ideals containing a variable
    verdict, cert = is_irreducible_mprimary(ideal(S, x, y**2))
    assert verdict and not cert.mu_identity and not cert.criteria_agree
    with pytest.raises(NotArtinianError):
        is_irreducible_mprimary(ideal(S, x))
