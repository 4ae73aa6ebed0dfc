import numpy as np
import pytest
from hypothesis import given, strategies as st

from extbloch.errors import InputError
from extbloch.matrix import (
    DensityOperator, dagger, hermitian_eigensystem, is_psd, kron, kron_all, outer, partial_trace, projector, trace,
)
from extbloch.rand import ginibre, random_density, rng

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)

seeds = st.integers(0, 2**32 - 1)


def test_kron_identity_and_diagonal():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    assert np.array_equal(kron(np.diag([1, -1]), np.eye(2)), np.diag([1, 1, -1, -1]))


def test_kron_block_structure(gen):
    a, b = ginibre(2, 2, gen), ginibre(3, 3, gen)
    k = kron(a, b)
    assert k.shape == (6, 6)
    for i in range(2):
        for j in range(2):
            assert np.allclose(k[3 * i:3 * i + 3, 3 * j:3 * j + 3], a[i, j] * b, atol=1e-15)


@given(seeds, st.integers(1, 4), st.integers(1, 4))
def test_kron_trace_factorises(seed, n, m):
    g = rng(seed)
    a, b = ginibre(n, n, g), ginibre(m, m, g)
    assert abs(trace(kron(a, b)) - trace(a) * trace(b)) < 1e-12 * max(1.0, abs(trace(a) * trace(b)))


def test_kron_all_order():
    assert np.array_equal(kron_all(np.diag([1, 2]), np.diag([1, 3])), np.diag([1, 3, 2, 6]))


def test_partial_trace_product_state(gen):
    a, b = random_density(2, gen), random_density(3, gen)
    assert np.allclose(partial_trace(kron(a, b), 2, 3, "B"), a, atol=1e-12)
    assert np.allclose(partial_trace(kron(a, b), 2, 3, "A"), b, atol=1e-12)


def test_partial_trace_bell_projector():
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    assert np.allclose(partial_trace(projector(bell), 2, 2, "B"), np.eye(2) / 2, atol=1e-15)


@given(seeds, st.sampled_from([(2, 2), (2, 3), (3, 2), (2, 4)]))
def test_partial_trace_invariants(seed, dims):
    na, nb = dims
    g = rng(seed)
    a, b = ginibre(na, na, g), ginibre(nb, nb, g)
    d = random_density(na * nb, g)
    for side in "AB":
        assert abs(trace(partial_trace(d, na, nb, side)) - trace(d)) < 1e-12
    assert np.max(np.abs(partial_trace(kron(a, b), na, nb, "B") - a * trace(b))) < 1e-12 * max(1, np.max(np.abs(a)) * abs(trace(b)))


def test_partial_trace_rejects_bad_input():
    with pytest.raises(InputError):
        partial_trace(np.eye(5), 2, 3)
    with pytest.raises(InputError):
        partial_trace(np.eye(4), 2, 2, side="C")


def test_eigensystem_diagonal():
    w, v = hermitian_eigensystem(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(w, [1, 2, 3])
    assert np.allclose(np.abs(v), np.eye(3)[:, [1, 2, 0]])


def test_eigensystem_sigma_x():
    w, v = hermitian_eigensystem(SIGMA_X)
    assert np.allclose(w, [-1, 1])
    s = 1 / np.sqrt(2)
    assert np.isclose(abs(np.vdot(v[:, 0], [s, -s])), 1.0)
    assert np.isclose(abs(np.vdot(v[:, 1], [s, s])), 1.0)


@given(seeds)
def test_eigensystem_reconstruction(seed):
    g = ginibre(6, 6, rng(seed))
    h = g + dagger(g)
    w, v = hermitian_eigensystem(h)
    assert np.all(np.diff(w) >= 0)
    recon = sum(w[k] * outer(v[:, k], v[:, k]) for k in range(6))
    assert np.max(np.abs(recon - h)) < 1e-10
    assert np.max(np.abs(dagger(v) @ v - np.eye(6))) < 1e-10


def test_eigensystem_rejects_non_hermitian():
    with pytest.raises(InputError):
        hermitian_eigensystem(np.array([[0, 1], [0, 0]]))


def test_is_psd():
    assert is_psd(np.eye(2) / 2)
    assert not is_psd(np.diag([1.0, -0.1]), 1e-9)
    with pytest.raises(InputError):
        is_psd(np.array([[0, 1], [2, 0]]))


def test_density_operator_validation(gen):
    rho = DensityOperator(random_density(3, gen))
    assert rho.dim == 3
    with pytest.raises(ValueError):
        rho.matrix[0, 0] = 1
    with pytest.raises(InputError):
        DensityOperator(np.eye(2))
    with pytest.raises(InputError):
        DensityOperator(np.diag([1.1, -0.1]))
    with pytest.raises(InputError):
        DensityOperator([[0.5, 1], [0, 0.5]])
    with pytest.raises(InputError):
        DensityOperator([[np.nan, 0], [0, 1]])
