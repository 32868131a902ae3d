import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cavitybec import linalg
from cavitybec.errors import InvalidParameterError

METHODS = ["lapack", "jacobi"]


def random_symmetric(dim, seed, scale=1.0):
    A = np.random.default_rng(seed).normal(scale=scale, size=(dim, dim))
    return 0.5 * (A + A.T)


def check_contract(A, dec):
    w, V = dec
    dim = A.shape[0]
    norm = np.max(np.abs(A)) if A.size else 0.0
    assert np.all(np.diff(w) >= 0)
    assert np.max(np.abs(V.T @ V - np.eye(dim))) < 1e-10
    for k in range(dim):
        assert np.linalg.norm(A @ V[:, k] - w[k] * V[:, k]) <= 1e-10 * max(1.0, norm * dim)
    assert np.max(np.abs((V * w) @ V.T - A)) < 1e-9 * max(1.0, norm)
    assert abs(np.trace(A) - w.sum()) <= 1e-10 * dim * max(norm, 1.0)
    # sign gauge
    for k in range(dim):
        col = V[:, k]
        lead = np.argmax(np.abs(col) >= np.abs(col).max() * (1 - 1e-12))
        assert col[lead] >= 0


@pytest.mark.parametrize("method", METHODS)
def test_diagonal(method):
    w, V = linalg.eigh(np.diag([3.0, 1.0, 2.0]), method=method)
    np.testing.assert_array_equal(w, [1.0, 2.0, 3.0])
    np.testing.assert_allclose(V, np.eye(3)[:, [1, 2, 0]], atol=1e-15)


@pytest.mark.parametrize("method", METHODS)
def test_parity_matrix(method):
    w, V = linalg.eigh([[0.0, 1.0], [1.0, 0.0]], method=method)
    np.testing.assert_allclose(w, [-1.0, 1.0], atol=1e-15)
    r = 1 / np.sqrt(2)
    np.testing.assert_allclose(V, [[r, r], [-r, r]], atol=1e-15)


@pytest.mark.parametrize("method", METHODS)
def test_random_12(method):
    A = random_symmetric(12, 12)
    check_contract(A, linalg.eigh(A, method=method))


@pytest.mark.parametrize("method", METHODS)
@pytest.mark.parametrize("dim", [1, 2, 7, 33, 64])
def test_random_sizes(method, dim):
    A = random_symmetric(dim, dim, scale=50.0)
    check_contract(A, linalg.eigh(A, method=method))


@settings(max_examples=40, deadline=None)
@given(dim=st.integers(1, 24), seed=st.integers(0, 2 ** 32 - 1),
       scale=st.sampled_from([1e-3, 1.0, 1e4]))
def test_backends_agree(dim, seed, scale):
    A = random_symmetric(dim, seed, scale)
    lw, lV = linalg.eigh(A, method="lapack")
    jw, jV = linalg.eigh(A, method="jacobi")
    check_contract(A, (lw, lV))
    check_contract(A, (jw, jV))
    np.testing.assert_allclose(lw, jw, rtol=0, atol=1e-12 * scale * dim)
    gaps = np.diff(lw)
    if dim == 1 or gaps.min() > 1e-6 * scale:
        # simple spectrum: the gauge fixes the vectors uniquely
        np.testing.assert_allclose(lV, jV, atol=1e-8)


def test_stable_sort_on_ties():
    # a repeated eigenvalue keeps the input order of its eigenvectors
    w, V = linalg.eigh(np.diag([2.0, 1.0, 2.0]), method="jacobi")
    np.testing.assert_array_equal(w, [1.0, 2.0, 2.0])
    np.testing.assert_array_equal(V, np.eye(3)[:, [1, 0, 2]])


def test_gauge_tie_uses_first_entry():
    V = linalg.fix_sign_gauge(np.array([[-1.0], [1.0]]) / np.sqrt(2))
    assert V[0, 0] > 0


@pytest.mark.parametrize("bad", [np.ones((2, 3)), [[0.0, 1.0], [2.0, 0.0]],
                                 [[np.nan, 0.0], [0.0, 1.0]]])
def test_rejects_bad_input(bad):
    with pytest.raises(InvalidParameterError):
        linalg.eigh(bad)


def test_unknown_method():
    with pytest.raises(InvalidParameterError):
        linalg.eigh(np.eye(2), method="qr")
