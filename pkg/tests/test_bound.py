from collections import Counter

import pytest
from hypothesis import given, strategies as st

from hwl.bound import (
    STAGES,
    TypeSequence,
    align_stage,
    clamp_stage,
    count_identities,
    gray_fixed_point,
    hat_sum,
    lower_bound_report,
    plateau_stage,
    random_sweep,
    rearrange_stage,
    s_sequence,
    theta_hat,
    window_inequality,
)
from hwl.cube import theta_opt
from hwl.embed import embedding_type_sequence, gray_embedding, gray_type_formula, sample_embedding
from hwl.errors import UsageError, ValidationError
from hwl.oracle import random_embedding


def test_theta_hat_examples():
    assert theta_hat(6, 8) == 48
    assert theta_hat(6, 13) == 48
    assert theta_hat(5, 0) == 16
    with pytest.raises(UsageError):
        theta_hat(6, 17)


def test_s_sequence():
    assert s_sequence(5).values == (4, 3, 2, 1, 0, 1, 2, 3, 4, 3, 2, 1, 0, 1, 2, 3)
    for n in range(3, 11):
        assert Counter(s_sequence(n).values) == Counter(gray_type_formula(n))
    assert hat_sum(6, s_sequence(6)) == 1504


def test_clamp_stage():
    g = TypeSequence(6, gray_type_formula(6))
    assert clamp_stage(g) == g
    assert clamp_stage(TypeSequence(6, (16,) * 32)).values == (8,) * 32
    sample = clamp_stage(embedding_type_sequence(sample_embedding()))
    assert max(sample) == 8


def test_align_gray():
    al = align_stage(TypeSequence(6, gray_type_formula(6)))
    assert al.mode == "antipodal"
    assert al.seq[0] == 8 and al.seq[16] == 8 and al.split == 16
    assert Counter(al.seq.values) == Counter(gray_type_formula(6))


def test_align_needs_two_peaks():
    with pytest.raises(ValidationError):
        align_stage(TypeSequence(4, (0, 1, 2, 1, 0, 1, 1, 1)))


@pytest.mark.parametrize("seed", range(40))
def test_align_is_a_continuous_permutation(seed):
    eta = random_embedding(6, seed)
    t1 = clamp_stage(embedding_type_sequence(eta))
    al = align_stage(t1)
    v = al.seq.values
    assert Counter(v) == Counter(t1.values)
    assert all(abs(v[i] - v[(i + 1) % len(v)]) <= 1 for i in range(len(v)))
    assert v[0] == 8 and v[al.split] == 8


def test_rearrange_and_plateau():
    seg = [4, 3, 3, 2, 3, 4, 4, 3, 4]
    h = rearrange_stage(seg, 5)
    assert h.m1 == 2
    assert h.t3[:2] == [4, 3] and h.t3[-2:] == [3, 4]
    assert sorted(h.t3) == sorted(seg)
    assert plateau_stage(h.t3, h.window, h.m1) == h.t4
    assert hat_sum(5, h.t4) <= hat_sum(5, h.t3)


def test_window_inequality_at_zero():
    for n in range(3, 10):
        lhs, rhs = window_inequality(n, 0)
        assert lhs == rhs == 1 << (n - 1)
        for m1 in range((1 << (n - 3)) + 1):
            lhs, rhs = window_inequality(n, m1)
            assert lhs <= rhs


def test_count_identities():
    assert sum(theta_opt(3, i) for i in range(5)) == 16
    assert 5 * theta_opt(3, 2) == 20 >= 2 * (0 + 3 + 4)
    assert count_identities(12)["pairs"] > 0


@pytest.mark.parametrize("n", range(5, 11))
def test_gray_fixed_point(n):
    rep = gray_fixed_point(n)
    assert set(rep.sums[s] for s in STAGES) == {rep.gray_total}


def test_gray_fixed_point_n6_sums():
    rep = lower_bound_report(gray_embedding(6))
    assert rep.verdict and all(rep.sums[s] == 1504 for s in STAGES)
    assert rep.stages["t3"] == rep.stages["t4"] == rep.stages["s"]


def test_sample_pipeline():
    rep = lower_bound_report(sample_embedding())
    assert rep.verdict and rep.label == "certified" and rep.mode == "antipodal"
    assert rep.wirelength == 1780 > 1504
    s = rep.sums
    assert rep.wirelength >= s["t"] == s["t1"] == s["t2"] == s["t3"] >= s["t4"] >= s["s"] == 1504
    assert (s["t"], s["t4"]) == (1552, 1544)
    csv_lines = rep.to_csv().splitlines()
    assert csv_lines[0] == "i,t,t1,t2,t3,t4,s"
    assert len(csv_lines) == 33


def test_small_n_label():
    rep = lower_bound_report(gray_embedding(4))
    assert rep.label == "formula-trusted" and rep.verdict
    with pytest.raises(UsageError):
        lower_bound_report(gray_embedding(2))


@given(st.integers(0, 10**9))
def test_random_embeddings_n5(seed):
    rep = lower_bound_report(random_embedding(5, seed))
    assert rep.verdict and rep.wirelength >= 368


def test_random_sweep_deterministic_across_workers():
    a = random_sweep(5, 200, seed=3, workers=1)
    b = random_sweep(5, 200, seed=3, workers=2)
    assert a == b and a["passed"]


def test_random_sweep_rejects_empty():
    with pytest.raises(UsageError):
        random_sweep(5, 0)
