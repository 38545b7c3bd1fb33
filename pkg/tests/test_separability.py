import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from gaussent import sampling
from gaussent.errors import DomainError, InvalidArgumentError
from gaussent.separability import (
    Bipartition,
    as_bipartition,
    average_log_negativity,
    classify_purities,
    delta_bounds,
    entropy_of_entanglement,
    eof_function,
    eof_symmetric,
    glems,
    glems_upper_is_minimum_uncertainty,
    gmems,
    is_ppt,
    log_negativity,
    negativity,
    negativity_from_log_negativity,
    partial_transpose,
    pt_min_eigenvalue,
    pt_spectrum,
    pt_symplectic_pair,
    two_mode_invariants,
    two_mode_standard_form,
)
from gaussent.states import entropy_function, thermal, two_mode_squeezed
from gaussent.symplectic import apply, direct_sum, symplectic_spectrum

seeds = st.integers(0, 2**32 - 1)
purity = st.floats(0.05, 1.0)


def test_bipartition_validation():
    assert Bipartition((2, 0), (1,)).side_a == (0, 2)
    with pytest.raises(InvalidArgumentError):
        Bipartition((0,), (0, 1))
    with pytest.raises(InvalidArgumentError):
        Bipartition((), (1,))
    with pytest.raises(InvalidArgumentError):
        Bipartition((0,), (3,)).check(2)
    bp = as_bipartition([1], 3)
    assert bp.side_b == (0, 2)
    assert as_bipartition(1, 2) == Bipartition((1,), (0,))
    assert as_bipartition(([0], [2]), 3).modes == (0, 2)


def test_partial_transpose_flips_side_momenta():
    cm = two_mode_squeezed(0.5).cm
    pt = partial_transpose(cm, [0])
    np.testing.assert_allclose(pt[1, 3], -cm[1, 3])
    np.testing.assert_allclose(pt[0, 2], cm[0, 2])
    with pytest.raises(InvalidArgumentError):
        partial_transpose(np.eye(6), Bipartition((0,), (1,)))


@pytest.mark.parametrize("r", [0.1, 0.5, 1.5])
def test_tms_negativities(r):
    cm = two_mode_squeezed(r).cm
    np.testing.assert_allclose(pt_spectrum(cm, [0]), [np.exp(-2 * r), np.exp(2 * r)], rtol=1e-12)
    assert log_negativity(cm, [0]) == pytest.approx(2 * r, rel=1e-12)
    assert negativity(cm, [0]) == pytest.approx((np.exp(2 * r) - 1) / 2, rel=1e-12)
    assert entropy_of_entanglement(cm, [1]) == pytest.approx(entropy_function(np.cosh(2 * r)), rel=1e-12)


@given(seed=seeds, n=st.integers(2, 4))
def test_negativity_log_negativity_relation(seed, n):
    cm = sampling.random_state(n, np.random.default_rng(seed), nu_max=1.5, max_squeeze=1.5).cm
    en = log_negativity(cm, [0])
    assert en >= 0
    assert negativity(cm, [0]) == pytest.approx(negativity_from_log_negativity(en), rel=1e-9, abs=1e-12)
    assert is_ppt(cm, [0]) == (en == 0) or en < 1e-9


@given(seed=seeds, n=st.integers(1, 3), m=st.integers(1, 3))
def test_product_states_are_ppt(seed, n, m):
    rng = np.random.default_rng(seed)
    cm = direct_sum(sampling.random_state(n, rng).cm, sampling.random_state(m, rng).cm)
    assert is_ppt(cm, list(range(n)))
    assert log_negativity(cm, list(range(n))) == 0.0


def test_restricted_partition_traces_out_rest():
    cm = direct_sum(two_mode_squeezed(0.3).cm, np.eye(2))
    assert log_negativity(cm, Bipartition((0,), (1,))) == pytest.approx(0.6)
    assert log_negativity(cm, Bipartition((0,), (2,))) == 0.0


def test_unphysical_inputs_raise():
    with pytest.raises(DomainError):
        pt_min_eigenvalue(np.diag([0.5, 0.5, 1, 1]), [0])
    with pytest.raises(DomainError):
        entropy_of_entanglement(thermal([2.0, 2.0]), [0])


@given(seed=seeds)
def test_standard_form_invariance(seed):
    rng = np.random.default_rng(seed)
    cm = sampling.random_two_mode(rng).cm
    sf = two_mode_standard_form(cm)
    assert sf.c_plus >= abs(sf.c_minus) - 1e-12
    np.testing.assert_allclose(symplectic_spectrum(sf.matrix()), symplectic_spectrum(cm), rtol=1e-7)
    local = direct_sum(sampling.random_symplectic(1, rng, 1.0), sampling.random_symplectic(1, rng, 1.0))
    sf2 = two_mode_standard_form(apply(local, cm))
    np.testing.assert_allclose(
        [sf2.a, sf2.b, sf2.c_plus, sf2.c_minus], [sf.a, sf.b, sf.c_plus, sf.c_minus], rtol=1e-7, atol=1e-8
    )
    np.testing.assert_allclose(pt_symplectic_pair(sf), pt_spectrum(cm, [0]), rtol=1e-7)
    inv = two_mode_invariants(cm)
    assert inv.mu == pytest.approx(1 / np.sqrt(np.linalg.det(cm)), rel=1e-9)


def test_standard_form_requires_two_modes():
    with pytest.raises(InvalidArgumentError):
        two_mode_standard_form(np.eye(6))


def test_eof_of_tms():
    r = 0.8
    c2, s2 = np.cosh(r) ** 2, np.sinh(r) ** 2
    expected = c2 * np.log(c2) - s2 * np.log(s2)
    assert eof_symmetric(two_mode_squeezed(r)) == pytest.approx(expected, rel=1e-12)
    assert eof_function(1.0) == 0.0
    assert eof_function(1.5) == 0.0
    with pytest.raises(DomainError):
        eof_symmetric(direct_sum(np.eye(2), 2 * np.eye(2)))


@given(x=st.floats(1e-3, 0.999))
def test_eof_function_decreasing(x):
    assert eof_function(x) > eof_function(min(1.0, x * 1.001)) - 1e-15


def test_classify_purities_regions():
    assert classify_purities(0.5, 0.5, 0.2) == "unphysical-low"
    assert classify_purities(0.5, 0.5, 0.3) == "separable"
    assert classify_purities(0.5, 0.5, 0.99) == "entangled"
    assert classify_purities(0.9, 0.5, 0.9) == "unphysical-high"
    # sqrt(2) * mu1 mu2 / ... lies between the separable and entangled bounds
    mu1, mu2 = 0.8, 0.6
    p = mu1 * mu2
    sep, coex = p / (mu1 + mu2 - p), p / np.sqrt(mu1**2 + mu2**2 - p**2)
    assert classify_purities(mu1, mu2, 0.5 * (sep + coex)) == "coexistence"
    with pytest.raises(InvalidArgumentError):
        classify_purities(0.0, 0.5, 0.5)


@given(mu1=purity, mu2=purity, t=st.floats(0.01, 0.99))
def test_extremal_states(mu1, mu2, t):
    p = mu1 * mu2
    hi = p / (p + abs(mu1 - mu2))
    mu = p + t * (hi - p)
    assume(mu < hi and mu > p)
    lo_d, hi_d = delta_bounds(mu1, mu2, mu)
    assume(hi_d - lo_d > 1e-6)
    top, low = gmems(mu1, mu2, mu), glems(mu1, mu2, mu)
    for sf in (top, low):
        inv = sf.invariants
        assert inv.mu1 == pytest.approx(mu1, rel=1e-8) and inv.mu2 == pytest.approx(mu2, rel=1e-8)
        assert inv.mu == pytest.approx(mu, rel=1e-6)
    assert top.delta == pytest.approx(lo_d, rel=1e-8)
    assert low.delta == pytest.approx(hi_d, rel=1e-8)
    if glems_upper_is_minimum_uncertainty(mu1, mu2, mu):
        assert symplectic_spectrum(low.matrix())[0] == pytest.approx(1.0, abs=1e-6)
    assert pt_symplectic_pair(top)[0] <= pt_symplectic_pair(low)[0] + 1e-9
    avg = average_log_negativity(mu1, mu2, mu)
    en = [max(0.0, -np.log(pt_symplectic_pair(sf)[0])) for sf in (top, low)]
    assert avg == pytest.approx(0.5 * sum(en))


def test_extremal_states_reject_unphysical():
    with pytest.raises(DomainError):
        gmems(0.5, 0.5, 0.1)
