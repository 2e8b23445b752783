import math

import numpy as np
import pytest

from sewitness.dynamics import evolve_reduced
from sewitness.qcore import partial_trace_env
from sewitness.states import (
    Kind,
    StateFamily,
    analytic_reduced_final,
    analytic_reduced_initial,
    build_state,
    max_entangled,
    pure_mixed,
    werner_like,
)

FAMILIES = [max_entangled, pure_mixed, werner_like]


def test_pure_mixed_zero_is_max_entangled():
    np.testing.assert_array_equal(build_state(pure_mixed(0)).mat, build_state(max_entangled()).mat)


def test_werner_one_is_maximally_mixed():
    np.testing.assert_allclose(build_state(werner_like(1)).mat, np.eye(4) / 4)


def test_max_entangled_entries():
    m = build_state(max_entangled()).mat
    expected = np.zeros((4, 4), dtype=complex)
    expected[1, 1] = expected[2, 2] = 0.5
    expected[2, 1] = 0.5j
    expected[1, 2] = -0.5j
    np.testing.assert_allclose(m, expected, atol=1e-15)


def test_p_out_of_range():
    with pytest.raises(ValueError):
        pure_mixed(1.2)
    with pytest.raises(ValueError):
        werner_like(-0.1)
    with pytest.raises(ValueError):
        StateFamily.parse("ghz")


def test_parse_selectors():
    assert StateFamily.parse("max-entangled").kind is Kind.MAX_ENTANGLED
    assert StateFamily.parse("pure-mixed", 0.3) == pure_mixed(0.3)
    assert StateFamily.parse("werner-like", 0.3).p == 0.3


@pytest.mark.parametrize(
    "family, expected",
    [
        (pure_mixed(1), np.diag([1, 0])),
        (pure_mixed(0), np.eye(2) / 2),
        (werner_like(0.3), np.eye(2) / 2),
    ],
)
def test_initial_examples(family, expected):
    np.testing.assert_allclose(analytic_reduced_initial(family).mat, expected, atol=1e-15)


def test_final_examples():
    a = 3 * math.pi / 8
    np.testing.assert_allclose(analytic_reduced_final(max_entangled(), a).mat, np.diag([0, 1]), atol=1e-15)
    for p in (0.0, 0.4, 1.0):
        np.testing.assert_allclose(analytic_reduced_final(pure_mixed(p), a).mat, np.diag([p, 2 - p]) / 2, atol=1e-15)
    for a in (0.2, 1.0):
        np.testing.assert_allclose(analytic_reduced_final(werner_like(1), a).mat, np.eye(2) / 2, atol=1e-15)


def test_closed_forms_match_generic(rng):
    for ctor in FAMILIES:
        for _ in range(100):
            f = ctor() if ctor is max_entangled else ctor(rng.uniform())
            a = rng.uniform(-3, 3)
            rho = build_state(f)
            np.testing.assert_allclose(analytic_reduced_final(f, a).mat, evolve_reduced(rho, a).mat, atol=1e-12)
            np.testing.assert_allclose(analytic_reduced_initial(f).mat, partial_trace_env(rho.mat), atol=1e-12)
