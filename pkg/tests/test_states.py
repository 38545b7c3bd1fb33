import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from gaussent import sampling, states
from gaussent.errors import DomainError, InvalidArgumentError, NumericError
from gaussent.states import (
    GaussianState,
    entropy_function,
    generalized_entropy,
    is_bona_fide,
    is_pure,
    linear_entropy,
    mean_photon_numbers,
    purity,
    reduce,
    renyi_entropy,
    rounding_slack,
    symplectic_rank,
    thermal,
    tr_rho_p_factor,
    two_mode_squeezed,
    vacuum,
    von_neumann_entropy,
    wigner_at,
)
from gaussent.symmetric import fully_symmetric_pure

seeds = st.integers(0, 2**32 - 1)


def test_state_is_immutable_and_validated():
    s = vacuum(2)
    assert s.n_modes == 2
    with pytest.raises(ValueError):
        s.cm[0, 0] = 3.0
    with pytest.raises(InvalidArgumentError):
        GaussianState(np.eye(3))
    with pytest.raises(InvalidArgumentError):
        GaussianState(np.array([[1.0, 0.5], [0.0, 1.0]]))
    with pytest.raises(InvalidArgumentError):
        GaussianState(np.eye(2), mean=[1.0, 2.0, 3.0])
    with pytest.raises(InvalidArgumentError):
        vacuum(0)


def test_thermal_and_photon_numbers():
    s = thermal([1.0, 3.0])
    np.testing.assert_array_equal(np.diag(s.cm), [1, 1, 3, 3])
    np.testing.assert_allclose(mean_photon_numbers([1.0, 3.0]), [0.0, 1.0])
    with pytest.raises(DomainError):
        thermal([0.5])


def test_bona_fide_boundary():
    assert is_bona_fide(np.eye(2))
    assert not is_bona_fide(np.diag([0.5, 1.5]))
    assert not is_bona_fide(np.diag([-1.0, 1.0]))
    assert is_bona_fide(np.diag([1 - 5e-10, 1 / (1 - 5e-10)]) * (1 - 5e-10))
    with pytest.raises(DomainError, match="not a physical covariance matrix"):
        states.require_bona_fide(np.diag([0.5, 0.5]))


def test_rounding_slack_accepts_ill_conditioned_pure_states():
    cm = fully_symmetric_pure(10, 1e3).cm
    assert rounding_slack(cm) > 1e-9
    assert is_bona_fide(cm)
    assert is_pure(cm, tol=1e-6)


def test_purity_and_entropies_of_thermal_mode():
    nu = 3.0
    s = thermal([nu])
    assert purity(s) == pytest.approx(1 / 3)
    assert linear_entropy(s) == pytest.approx(1 - 1 / 3)
    nbar = 1.0
    expected = (nbar + 1) * np.log(nbar + 1) - nbar * np.log(nbar)
    assert von_neumann_entropy(s) == pytest.approx(expected, rel=1e-12)
    assert entropy_function(1.0) == 0.0
    assert renyi_entropy(s, 2) == pytest.approx(np.log(3.0))
    assert generalized_entropy(s, 2) == pytest.approx(1 - 1 / 3)


@given(nu=st.floats(1.0, 50.0), p=st.floats(1.01, 6.0))
def test_single_mode_trace_factor(nu, p):
    # Tr rho^p of a thermal state from its Fock distribution.
    nbar = (nu - 1) / 2
    k = np.arange(4000)
    probs = (nbar / (nbar + 1)) ** k / (nbar + 1) if nbar > 0 else (k == 0).astype(float)
    direct = np.sum(probs**p)
    assert tr_rho_p_factor(nu, p) == pytest.approx(direct, rel=1e-9)


@given(seed=seeds, n=st.integers(1, 3), p=st.floats(1.1, 5.0))
def test_entropy_orderings(seed, n, p):
    s = sampling.random_state(n, np.random.default_rng(seed))
    assert 0 < purity(s) <= 1
    assert von_neumann_entropy(s) >= renyi_entropy(s, p) - 1e-12
    assert renyi_entropy(s, 2) == pytest.approx(-np.log(purity(s)), rel=1e-10)
    assert generalized_entropy(s, 2) == pytest.approx(linear_entropy(s), rel=1e-10, abs=1e-14)


def test_entropy_order_must_exceed_one():
    with pytest.raises(InvalidArgumentError):
        renyi_entropy(vacuum(1), 1.0)


def test_ranks_and_purity_flags():
    assert symplectic_rank(two_mode_squeezed(1.0)) == 0
    assert is_pure(two_mode_squeezed(1.0))
    assert symplectic_rank(thermal([1.0, 2.0, 3.0])) == 2
    assert not is_pure(thermal([1.0, 2.0]))


def test_reduce_selects_blocks_and_mean():
    cm = np.diag([1.0, 1.0, 2.0, 2.0, 3.0, 3.0])
    s = GaussianState(cm, mean=[0, 0, 1, 2, 3, 4])
    r = reduce(s, [2, 0])
    np.testing.assert_array_equal(np.diag(r.cm), [1, 1, 3, 3])
    np.testing.assert_array_equal(r.mean, [0, 0, 3, 4])
    with pytest.raises(InvalidArgumentError):
        reduce(s, [3])
    with pytest.raises(InvalidArgumentError):
        reduce(s, [1, 1])


def test_tms_reduction_is_thermal():
    r = 0.4
    red = reduce(two_mode_squeezed(r), [0])
    np.testing.assert_allclose(red.cm, np.cosh(2 * r) * np.eye(2), atol=1e-14)


def test_wigner_vacuum_value_and_displacement():
    assert wigner_at(vacuum(1), [0.0, 0.0]) == pytest.approx(1 / np.pi)
    s = GaussianState(np.eye(2), mean=[1.0, 0.0])
    assert wigner_at(s, [1.0, 0.0]) == pytest.approx(1 / np.pi)
    assert wigner_at(s, [0.0, 0.0]) == pytest.approx(np.exp(-0.5) / np.pi)
    with pytest.raises(InvalidArgumentError):
        wigner_at(vacuum(1), [0.0])


@pytest.mark.parametrize("cm", [np.diag([2.0, 0.8]), np.array([[2.0, 0.6], [0.6, 1.5]])])
def test_wigner_normalization_and_purity(cm):
    f = lambda p, q: wigner_at(cm, [q, p])  # noqa: E731
    total, _ = integrate.dblquad(f, -20, 20, -20, 20, epsabs=1e-11)
    assert total / 2 == pytest.approx(1.0, rel=1e-8)
    sq, _ = integrate.dblquad(lambda p, q: f(p, q) ** 2, -20, 20, -20, 20, epsabs=1e-12)
    assert np.pi * sq == pytest.approx(1 / np.sqrt(np.linalg.det(cm)), rel=1e-7)


def test_wigner_singular_matrix():
    with pytest.raises(NumericError):
        wigner_at(np.zeros((2, 2)), [0.0, 0.0])
