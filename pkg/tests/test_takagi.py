import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hwl import takagi
from hwl.cube import theta_opt
from hwl.errors import UsageError
from hwl.oracle import brute_theta, theta_kt_profile
from hwl.takagi import (
    LemmaConstants,
    a,
    check_grid_constants,
    claim15_pairs,
    delta,
    f,
    lemma_suite_takagi,
    m,
    m_numerators,
    verify_appendix_grids,
    verify_claim15_grid,
)

dyadics = st.builds(lambda k, d: Fraction(k % ((1 << d) + 1), 1 << d), st.integers(0, 10**6), st.integers(0, 14))


def test_delta_examples():
    assert delta(1, Fraction(1, 2)) == Fraction(1, 2)
    assert delta(2, Fraction(1, 4)) == Fraction(1, 4)
    assert delta(4, Fraction(3, 8)) == 0
    with pytest.raises(UsageError):
        delta(0, Fraction(1, 2))
    with pytest.raises(UsageError):
        delta(1, Fraction(3, 2))


def test_m_examples():
    for n in range(1, 20):
        assert m(n, Fraction(1, 2)) == Fraction(1, 2)
    assert m(12, Fraction(171, 4096)) - 2 * Fraction(171, 4096) == Fraction(1, 8)
    assert m(12, Fraction(1877, 4096)) == Fraction(5, 8)


def test_f_examples():
    assert f(Fraction(1, 2)) == Fraction(3, 4)
    assert f(Fraction(1, 5)) < 0
    assert f(Fraction(16, 32)) * 32 == 24


def test_a_examples():
    for x in (Fraction(0), Fraction(1, 3), Fraction(1)):
        assert a(12, x, 0) == m(12, x)
    assert a(12, Fraction(1, 2), Fraction(171, 4096)) == Fraction(3, 4)
    assert a(12, Fraction(1, 2), Fraction(170, 4096)) < f(Fraction(1, 2))
    with pytest.raises(UsageError):
        a(12, Fraction(1, 4), Fraction(1, 2))


@given(dyadics, st.integers(1, 14))
def test_m_numerators_match_scalar(x, n):
    depth = 14
    M = m_numerators(n, depth)
    k = x * (1 << depth)
    assert Fraction(int(M[int(k)]), 1 << (depth + n - 1)) == m(n, x)


@given(dyadics, st.integers(2, 14))
def test_symmetry_and_doubling(x, n):
    assert m(n, 1 - x) == m(n, x)
    if x <= Fraction(1, 2):
        assert m(n - 1, 2 * x) == 2 * (m(n, x) - x)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_m_at_dyadics_is_scaled_min_boundary(n):
    for k in range((1 << n) + 1):
        assert m(n, Fraction(k, 1 << n)) * (1 << n) == brute_theta(n, k)


def test_parabola_identity_random_rationals():
    r = random.Random(11)
    for _ in range(1000):
        x = Fraction(r.randint(-999, 999), r.randint(1, 999))
        t = Fraction(r.randint(-999, 999), r.randint(1, 999))
        assert f(x - t) + f(x + t) + 2 * t - 2 * f(x) == 2 * t * (1 - Fraction(64, 7) * t)


def test_lemma_constants():
    c3 = LemmaConstants.of(3)
    assert c3.alpha == 1 and theta_opt(3, 1) - 2 == 1
    c6 = LemmaConstants.of(6)
    assert c6.alpha == 3 and theta_opt(6, 3) == 14 and 14 - 6 == 8
    assert theta_opt(5, 14) == 20 == 5 * 4
    assert LemmaConstants.of(12).y == Fraction(171, 4096)
    assert LemmaConstants.of(12).p == Fraction(1877, 4096)


def test_lemma_suite():
    counts = lemma_suite_takagi(12, 40)
    assert counts["alpha_identities"] == 38
    assert counts["parabola_identity"] == 1000
    assert all(v > 0 for v in counts.values())


def test_grid_constants():
    check_grid_constants()


def test_depth12_grids_exact():
    v1, v2 = verify_appendix_grids()
    assert v1.passed and v1.min_gap == 0
    i, j = v1.argmin
    c = lambda q: Fraction(q, 4096)
    assert a(12, c(i), c(j)) == max(f(c(i)), f(c(i + 1)))
    assert v2.passed and v2.strict and v2.min_gap > 0
    assert v2.min_gap == Fraction(6329, 1835008)
    assert abs(float(v2.min_gap) - 0.003) <= 0.0005
    i, j = v2.argmin
    assert j == 170
    assert a(12, c(i), c(j)) - f(c(i + 1)) == v2.min_gap
    d = v2.to_dict()
    assert d["min_gap"] == {"num": 6329, "den": 1835008}


def test_grid_fraction_spot_check():
    """Fraction evaluation on a random sample of region-(24) cells never beats the reported minimum."""
    v1, _ = verify_appendix_grids()
    r = random.Random(3)
    for _ in range(300):
        i = r.randint(takagi.GRID_I_LO, takagi.GRID_I_HI)
        j = r.randint(takagi.GRID_J_LO, takagi.GRID_J_HI)
        x, y = Fraction(i, 4096), Fraction(j, 4096)
        assert a(12, x, y) - max(f(x), f(x + Fraction(1, 4096))) >= v1.min_gap


def test_type_range_pairs():
    assert claim15_pairs(3) and all(t >= 1 for _, t in claim15_pairs(3))
    for k, t in claim15_pairs(7):
        assert 0 < 2 * t <= k <= 64
        assert Fraction(1, 24) <= Fraction(t, 128) <= Fraction(1, 24) + Fraction(7, 64)


@pytest.mark.parametrize("n", [3, 4, 8, 12])
def test_type_range_grid(n):
    assert verify_claim15_grid(n).passed


def test_type_range_with_true_theta_n5():
    rep = verify_claim15_grid(5, lambda k, t: theta_kt_profile(5, k).get(t))
    assert rep.passed


def test_curvature_mutation_is_visible(monkeypatch):
    monkeypatch.setattr(takagi, "CURVATURE", Fraction(8))
    v1, _ = verify_appendix_grids()
    assert not v1.passed and v1.min_gap < 0
