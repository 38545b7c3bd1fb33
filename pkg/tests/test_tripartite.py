import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import brentq

from gaussent import sampling
from gaussent import tripartite as tp
from gaussent.errors import DomainError, InvalidArgumentError
from gaussent.measures import contangle_function, minimize_m_squared
from gaussent.separability import is_ppt, log_negativity
from gaussent.states import is_pure, reduce, thermal, two_mode_squeezed
from gaussent.symplectic import direct_sum, seralian, symplectic_spectrum

seeds = st.integers(0, 2**32 - 1)


def triple(seed):
    return sampling.random_triangle_triple(np.random.default_rng(seed))


def test_triangle_inequality():
    assert tp.satisfies_triangle(2.0, 2.0, 2.0)
    assert tp.satisfies_triangle(1.0, 3.0, 3.0)
    assert not tp.satisfies_triangle(1.0, 1.0, 3.0)
    assert not tp.satisfies_triangle(0.5, 1.0, 1.0)
    with pytest.raises(DomainError):
        tp.pure_three_mode(1.0, 1.5, 4.0)


@given(seed=seeds)
def test_pure_three_mode_structure(seed):
    a = triple(seed)
    s = tp.pure_three_mode(*a)
    assert is_pure(s, tol=1e-7)
    np.testing.assert_allclose(tp.local_mixednesses(s), a, rtol=1e-12)
    assert np.linalg.det(s.cm) == pytest.approx(1.0, abs=1e-8)
    assert seralian(s) == pytest.approx(3.0, abs=1e-8)


def test_pure_three_mode_with_vacuum_mode():
    s = tp.pure_three_mode(1.0, 2.0, 2.0)
    np.testing.assert_allclose(s.cm[:2, 2:], 0.0, atol=1e-12)
    assert log_negativity(s, [1]) == pytest.approx(np.arccosh(2.0))


@given(seed=seeds)
def test_closed_form_pairs_match_rim(seed):
    a = np.array(triple(seed))
    s = tp.pure_three_mode(*a)
    rep = tp.residual_contangle_pure(*a)
    p = rep.probe_mode
    assert a[p] == a.min()
    others = [k for k in range(3) if k != p]
    for k, closed in zip(others, rep.pairwise):
        pair = reduce(s, sorted((p, k))).cm
        assert closed == pytest.approx(minimize_m_squared(pair, "contangle").value, abs=1e-7)
        assert (closed == 0.0) == is_ppt(pair, [0], tol=1e-9) or closed < 1e-9
    assert rep.one_to_rest == pytest.approx(contangle_function(a[p] ** 2))
    assert rep.value >= -1e-9


@given(seed=seeds)
def test_generic_residual_matches_closed_form(seed):
    a = triple(seed)
    closed = tp.residual_contangle_pure(*a)
    generic = tp.residual_contangle_generic(tp.pure_three_mode(*a))
    assert generic.value == pytest.approx(closed.value, abs=1e-6)
    assert len(generic.per_probe) == 3


def test_residual_of_bipartite_product_is_zero():
    rep = tp.residual_contangle_pure(1.0, 3.0, 3.0)
    assert rep.value == 0.0
    s = direct_sum(two_mode_squeezed(0.5).cm, np.eye(2))
    assert tp.residual_contangle_generic(s).value == pytest.approx(0.0, abs=1e-9)


def test_residual_generic_argument_checks():
    with pytest.raises(InvalidArgumentError):
        tp.residual_contangle_generic(np.eye(4))
    with pytest.raises(InvalidArgumentError):
        tp.residual_contangle_generic(np.eye(6), measure="logneg")


@given(a=st.floats(1.0, 20.0))
def test_ghzw_closed_forms(a):
    s = tp.ghzw(a)
    assert is_pure(s, tol=1e-7 * a)
    assert tp.ghzw_residual(a) == pytest.approx(tp.residual_contangle_pure(a, a, a).value, abs=1e-8)
    pair = reduce(s, [0, 1]).cm
    assert tp.ghzw_pairwise_contangle(a) == pytest.approx(minimize_m_squared(pair, "contangle").value, abs=1e-7)


def test_ghzw_pairwise_limit():
    assert tp.ghzw_pairwise_contangle(1e3) == pytest.approx(np.log(3.0) ** 2 / 4, abs=1e-5)
    with pytest.raises(DomainError):
        tp.ghzw(0.5)


@pytest.mark.parametrize("measure", tp.RESIDUAL_MEASURES)
def test_monogamy_on_random_mixed_states(measure):
    rng = np.random.default_rng(11)
    for _ in range(5):
        rep = tp.monogamy_check(sampling.random_state(3, rng, nu_max=2.0), measure)
        assert rep.violations == 0
        assert rep.min_slack >= -tp.VIOLATION_TOL


def test_monogamy_four_modes_gaussian_tangle():
    rep = tp.monogamy_check(tp.four_mode_promiscuous(0.4, 0.6), "gaussian_tangle")
    assert len(rep.rows) == 4 and rep.violations == 0


def test_monogamy_row_flags():
    row = tp.MonogamyRow(0, 1.0, 1.0 + 2 * tp.VIOLATION_TOL, (0.5, 0.5))
    assert row.violated and row.slack < 0
    with pytest.raises(InvalidArgumentError):
        tp.monogamy_check(np.eye(2))


def test_three_mode_classes():
    assert tp.three_mode_class(thermal([1.5, 1.5, 1.5])) == "ppt-all"
    assert tp.three_mode_class(tp.ghzw(2.0)) == "fully-inseparable"
    assert tp.three_mode_class(direct_sum(two_mode_squeezed(0.5).cm, np.eye(2))) == "one-mode-biseparable"
    with pytest.raises(InvalidArgumentError):
        tp.three_mode_class(np.eye(4))


@given(s=st.floats(0.0, 2.0), a=st.floats(0.0, 2.0))
def test_four_mode_blocks(s, a):
    cm = tp.four_mode_promiscuous(s, a).cm
    np.testing.assert_allclose(cm, tp.four_mode_promiscuous_blocks(s, a), atol=1e-10 * np.abs(cm).max())
    np.testing.assert_allclose(symplectic_spectrum(cm), 1.0, atol=1e-7 * np.abs(cm).max())


def test_four_mode_rejects_negative_squeezing():
    with pytest.raises(InvalidArgumentError):
        tp.four_mode_promiscuous(-0.1, 0.0)


@pytest.mark.parametrize("a,s", [(2.0, 2.5), (3.0, 3.5), (1.5, 1.6)])
def test_closed_form_branches_meet_continuously(a, s):
    grid = np.linspace(-0.99 * (s - 1), 0.99 * (s - 1), 2001)
    vals = np.array([tp._branch_test(a, s, d) for d in grid])
    flips = np.flatnonzero(np.diff(np.sign(vals)))
    assert flips.size
    for i in flips:
        d0 = brentq(lambda d: tp._branch_test(a, s, d), grid[i], grid[i + 1], xtol=1e-14)
        lo, hi = tp._closed_m(a, s, d0 - 1e-9), tp._closed_m(a, s, d0 + 1e-9)
        assert hi == pytest.approx(lo, abs=1e-6)
