from fractions import Fraction

import pytest

from monobound.chern_invariants import (
    FamilySpec,
    TruncSeries,
    betti_vector,
    binomial_series,
    c_invariant,
    chern_total_dual_cotangent,
    complete_intersection,
    euler_characteristic,
    hypersurface,
    invariants_of,
    projective_space,
    section_of,
)
from monobound.errors import ValidationError
from monobound.variety_bounds import VarietyInvariants, descend


def all_test_families():
    specs = [projective_space(n) for n in range(1, 7)]
    specs += [hypersurface(n, delta)
              for n in range(1, 5) for delta in range(1, 7)]
    specs += [complete_intersection(n, (d1, d2))
              for n in range(1, 4)
              for d1 in range(1, 5) for d2 in range(d1, 5)]
    return specs


def chi_by_betti(spec):
    """Euler characteristic re-assembled from the Betti vector and duality."""
    b = (1,) + betti_vector(spec)
    full = b + tuple(b[spec.n - k] for k in range(1, spec.n + 1))
    return sum((-1) ** i * bi for i, bi in enumerate(full))


def test_series_arithmetic():
    s = TruncSeries.from_ints([1, 1], 3)
    assert (s * s).coeffs == tuple(map(Fraction, (1, 2, 1, 0)))
    assert s.pow(3).coeffs == tuple(map(Fraction, (1, 3, 3, 1)))


def test_series_inversion_exactness():
    for delta in range(1, 21):
        for order in range(1, 11):
            s = binomial_series(delta, 1, order)
            product = s * s.inverse()
            assert product.coeffs[0] == 1
            assert all(c == 0 for c in product.coeffs[1:])


def test_series_inverse_requires_unit():
    with pytest.raises(ValidationError):
        TruncSeries.from_ints([0, 1], 2).inverse()


def test_family_validation():
    with pytest.raises(ValidationError):
        FamilySpec("projective_space", 2, (3,))
    with pytest.raises(ValidationError):
        FamilySpec("hypersurface", 2, ())
    with pytest.raises(ValidationError):
        FamilySpec("hypersurface", 2, (0,))
    with pytest.raises(ValidationError):
        FamilySpec("blowup", 2, ())
    with pytest.raises(ValidationError):
        projective_space(0)


def test_tangent_chern_series_examples():
    assert chern_total_dual_cotangent(projective_space(2)).coeffs == \
        tuple(map(Fraction, (1, 3, 3)))
    assert chern_total_dual_cotangent(hypersurface(2, 4)).coeffs == \
        tuple(map(Fraction, (1, 0, 6)))
    assert chern_total_dual_cotangent(hypersurface(2, 2)).coeffs == \
        tuple(map(Fraction, (1, 2, 2)))


def test_c_invariant_projective_space():
    for n in range(2, 7):
        spec = projective_space(n)
        for i in range(1, n):
            assert c_invariant(spec, i) == n + 1 - i


def test_c_invariant_surfaces():
    assert c_invariant(hypersurface(2, 4), 1) == -4
    assert c_invariant(hypersurface(2, 2), 1) == 2


def test_c_invariant_plane_curve_genus_oracle():
    # a hyperplane section of a degree-delta surface in P^3 is a smooth
    # plane curve of degree delta: chi = 2 - (delta-1)(delta-2)
    for delta in range(1, 7):
        expected = 2 - (delta - 1) * (delta - 2)
        assert c_invariant(hypersurface(2, delta), 1) == expected


def test_c_invariant_range():
    with pytest.raises(ValidationError):
        c_invariant(projective_space(3), 3)
    with pytest.raises(ValidationError):
        c_invariant(projective_space(3), 0)


def test_betti_vector_examples():
    assert betti_vector(projective_space(3)) == (0, 1, 0)
    assert betti_vector(hypersurface(2, 4)) == (0, 22)
    assert betti_vector(hypersurface(2, 3)) == (0, 7)


def test_k3_golden_values():
    spec = hypersurface(2, 4)
    assert euler_characteristic(spec) == 24
    assert invariants_of(spec) == VarietyInvariants(n=2, b=(0, 22), c=(-4,))


def test_hypersurface_euler_characteristic_formula():
    # chi of a smooth surface of degree delta in P^3: delta(delta^2 - 4delta + 6)
    for delta in range(1, 9):
        assert euler_characteristic(hypersurface(2, delta)) == \
            delta * (delta ** 2 - 4 * delta + 6)


def test_duality_reproduces_chi():
    for spec in all_test_families():
        assert chi_by_betti(spec) == euler_characteristic(spec)


def test_invariants_of_examples():
    assert invariants_of(projective_space(2)) == \
        VarietyInvariants(n=2, b=(0, 1), c=(2,))
    assert invariants_of(projective_space(1)) == \
        VarietyInvariants(n=1, b=(0,), c=())


def test_section_of_families():
    assert section_of(projective_space(4)) == projective_space(3)
    assert section_of(hypersurface(3, 4)) == hypersurface(2, 4)
    assert section_of(complete_intersection(2, (2, 3))) == \
        complete_intersection(1, (2, 3))
    with pytest.raises(ValidationError):
        section_of(projective_space(1))


def test_two_path_consistency():
    # the series formula for c_i against the Euler characteristic of the
    # independently constructed i-fold section family
    for spec in all_test_families():
        section = spec
        for i in range(1, spec.n):
            section = section_of(section)
            assert c_invariant(spec, i) == euler_characteristic(section)


def test_descend_matches_section_family():
    for spec in all_test_families():
        if spec.n < 2:
            continue
        assert descend(invariants_of(spec)) == invariants_of(section_of(spec))
