import numpy as np
import pytest

from edgedist import oracle

# values fixed by earlier runs of this module at n = 200; guards against
# regressions in the rule or kernel assembly
D2_AT_M2 = 4.132241425051321e-01
D4_AT_M2 = 7.927027952882469e-01


def test_rule_properties():
    rule = oracle.build_rule(-2.0, n=64)
    assert rule.count == 64
    assert rule.nodes.shape == (64,) and rule.weights.shape == (64,)
    assert np.all(rule.nodes > -2.0)
    assert np.all(np.diff(rule.nodes) > 0.0)
    assert np.all(rule.weights > 0.0)


def test_argument_checks():
    with pytest.raises(ValueError):
        oracle.nystrom_d2(-10.5)
    with pytest.raises(ValueError):
        oracle.nystrom_d2(6.5)
    with pytest.raises(ValueError):
        oracle.nystrom_d2(-2.0, n=2001)
    with pytest.raises(ValueError):
        oracle.nystrom_d2(-2.0, lam=1.2)
    with pytest.raises(ValueError):
        oracle.nystrom_d2(-2.0, lam=-0.1)
    with pytest.raises(ValueError):
        oracle.nystrom_d4(-2.0, n=0)


def test_lambda_zero_is_one():
    assert oracle.nystrom_d2(-3.0, lam=0.0) == 1.0


def test_far_right_near_one():
    assert abs(oracle.nystrom_d2(6.0) - 1.0) <= 1e-8
    # mapped nodes reach past the Airy working range; those rows must
    # drop out as exact identity blocks rather than raise
    assert abs(oracle.nystrom_d2(5.9) - 1.0) <= 1e-8


def test_frozen_values():
    assert abs(oracle.nystrom_d2(-2.0) - D2_AT_M2) <= 1e-13
    assert abs(oracle.nystrom_d4(-2.0) - D4_AT_M2) <= 1e-12


def test_node_count_convergence():
    a = oracle.nystrom_d2(-4.0, n=150)
    b = oracle.nystrom_d2(-4.0, n=300)
    assert abs(a - b) <= 1e-9
    c = oracle._d4_lambda(-1.0, 1.0, 100)
    d = oracle._d4_lambda(-1.0, 1.0, 150)
    assert abs(c - d) <= 1e-9


def test_monotone_in_s_and_lambda():
    s_vals = np.linspace(-5.0, 3.0, 5)
    lams = np.linspace(0.0, 1.0, 5)
    grid = np.array([[oracle.nystrom_d2(s, lam=lam, n=100) for lam in lams]
                     for s in s_vals])
    assert np.all(grid > 0.0) and np.all(grid <= 1.0)
    # larger s leaves less kernel mass; larger lambda subtracts more
    assert np.all(np.diff(grid, axis=0) > -1e-14)
    assert np.all(np.diff(grid, axis=1) < 1e-14)
