import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adaptive_bandits.linalg import PrecisionState, init_precision


def test_init_identity():
    s = init_precision(1.0, 2)
    np.testing.assert_array_equal(s.matrix, np.eye(2))
    np.testing.assert_array_equal(s.inverse, np.eye(2))
    assert s.logdet == 0.0


def test_init_logdet_and_scalar_inverse():
    assert init_precision(4.0, 3).logdet == pytest.approx(4.158883, abs=1e-6)
    np.testing.assert_allclose(init_precision(0.25, 1).inverse, [[4.0]])


@pytest.mark.parametrize("lam,dim", [(0.0, 2), (-1.0, 2), (1.0, 0)])
def test_init_rejects_bad_parameters(lam, dim):
    with pytest.raises(ValueError):
        init_precision(lam, dim)


def test_rank_one_update_example():
    s = init_precision(1.0, 2)
    s.rank_one_update([1.0, 0.0], 1.0)
    np.testing.assert_allclose(s.inverse, np.diag([0.5, 1.0]))
    assert s.logdet == pytest.approx(math.log(2))
    np.testing.assert_allclose(s.solve([1.0, 0.0]), [0.5, 0.0])


@pytest.mark.parametrize("v,c", [([1.0, 2.0], 0.0), ([0.0, 0.0], 3.0)])
def test_rank_one_update_noop(v, c):
    s = init_precision(2.0, 2)
    before = s.copy()
    s.rank_one_update(v, c)
    np.testing.assert_allclose(s.inverse, before.inverse)
    np.testing.assert_allclose(s.matrix, before.matrix)
    assert s.logdet == pytest.approx(before.logdet)


def test_dimension_mismatch_rejected():
    s = init_precision(1.0, 3)
    with pytest.raises(ValueError):
        s.rank_one_update([1.0, 0.0], 1.0)
    with pytest.raises(ValueError):
        s.mahalanobis_sq([1.0, 0.0])
    with pytest.raises(ValueError):
        s.solve([1.0])


def test_mahalanobis_examples():
    assert init_precision(1.0, 2).mahalanobis_sq([3.0, 4.0]) == pytest.approx(25.0)
    assert init_precision(2.0, 2).mahalanobis_sq([1.0, 1.0]) == pytest.approx(1.0)
    assert init_precision(2.0, 2).mahalanobis_sq([0.0, 0.0]) == 0.0
    np.testing.assert_array_equal(init_precision(1.0, 2).solve([5.0, -1.0]), [5.0, -1.0])
    np.testing.assert_array_equal(init_precision(1.0, 2).solve([0.0, 0.0]), [0.0, 0.0])


def _random_updates(rng, n, d):
    vs = rng.standard_normal((n, d))
    vs *= rng.uniform(0, 1, (n, 1)) / np.linalg.norm(vs, axis=1, keepdims=True)
    return vs, rng.uniform(0, 4, n)


def test_long_update_sequence_matches_dense():
    rng = np.random.default_rng(1)
    d = 6
    s = init_precision(0.5, d)
    vs, cs = _random_updates(rng, 1000, d)
    for v, c in zip(vs, cs):
        s.rank_one_update(v, c)
    dense = 0.5 * np.eye(d) + (vs.T * cs) @ vs
    np.testing.assert_allclose(s.matrix, dense, rtol=1e-12)
    np.testing.assert_allclose(s.inverse, np.linalg.inv(dense), rtol=1e-6, atol=1e-12)
    assert s.logdet == pytest.approx(np.linalg.slogdet(dense)[1], abs=1e-6)
    np.testing.assert_allclose(s.matrix @ s.inverse, np.eye(d), atol=1e-8)
    assert np.linalg.eigvalsh(s.matrix).min() >= 0.5 - 1e-9


def test_update_order_only_matters_through_rounding():
    rng = np.random.default_rng(2)
    vs, cs = _random_updates(rng, 300, 4)
    a, b = init_precision(1.0, 4), init_precision(1.0, 4)
    for v, c in zip(vs, cs):
        a.rank_one_update(v, c)
    for k in rng.permutation(len(vs)):
        b.rank_one_update(vs[k], cs[k])
    np.testing.assert_allclose(a.inverse, b.inverse, rtol=1e-6, atol=1e-12)
    assert a.logdet == pytest.approx(b.logdet, rel=1e-6)


def test_batched_state_matches_individual_states():
    rng = np.random.default_rng(3)
    lams = np.array([1.0, 0.25, 4.0])
    batch = PrecisionState(lams, 3)
    singles = [PrecisionState(lam, 3) for lam in lams]
    for _ in range(50):
        v = rng.uniform(-0.5, 0.5, 3)
        cs = rng.uniform(0, 2, 3)
        batch.rank_one_update(v, cs)
        for s, c in zip(singles, cs):
            s.rank_one_update(v, c)
    arms = rng.standard_normal((7, 3))
    for k, s in enumerate(singles):
        np.testing.assert_allclose(batch.inverse[k], s.inverse, rtol=1e-12)
        assert batch.logdet[k] == pytest.approx(s.logdet)
        np.testing.assert_allclose(batch.mahalanobis_sq(arms)[k], s.mahalanobis_sq(arms), rtol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=3, max_size=3), st.floats(-20, 20),
       st.integers(0, 2**32 - 1))
def test_mahalanobis_nonnegative_and_two_homogeneous(x, a, seed):
    rng = np.random.default_rng(seed)
    s = init_precision(rng.uniform(0.1, 2), 3)
    for _ in range(5):
        s.rank_one_update(rng.uniform(-1, 1, 3), rng.uniform(0, 4))
    x = np.array(x)
    base = s.mahalanobis_sq(x)
    assert base >= 0
    assert s.mahalanobis_sq(a * x) == pytest.approx(a * a * base, rel=1e-10, abs=1e-300)
