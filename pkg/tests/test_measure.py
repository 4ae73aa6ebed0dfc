import numpy as np
import pytest
from hypothesis import given, strategies as st

from extbloch.basis import gell_mann_basis
from extbloch.bloch import density_to_bloch
from extbloch.entangle import EntangledSpec, reduced_states
from extbloch.errors import InputError, VerificationError
from extbloch.matrix import projector
from extbloch.measure import (
    RNG_ALGORITHM, born_probabilities, canonical_simplex, collapse, outcome_probabilities, project_to_simplex,
    sample_counts, sample_outcomes, simplex_from_basis,
)
from extbloch.rand import random_density, random_unitary, rng

seeds = st.integers(0, 2**32 - 1)
ns = st.sampled_from([2, 3, 4, 6])


def test_qubit_simplex_vertices():
    s = canonical_simplex(gell_mann_basis(2))
    assert np.allclose(s.vertices, [[0, 0, 1], [0, 0, -1]])


@pytest.mark.parametrize("n", [3, 4])
def test_canonical_vertex_geometry(n):
    s = canonical_simplex(gell_mann_basis(n))
    v = s.vertices
    for j in range(n):
        assert abs(np.linalg.norm(v[j]) - 1) < 1e-12
        for k in range(j + 1, n):
            assert abs(v[j] @ v[k] + 1 / (n - 1)) < 1e-12


@given(seeds, ns)
def test_random_simplex_invariants(seed, n):
    s = simplex_from_basis(random_unitary(n, rng(seed)), gell_mann_basis(n))
    assert max(s.vertex_report().values()) < 1e-10


def test_rejects_non_orthonormal():
    with pytest.raises(InputError):
        simplex_from_basis([[1, 0], [1, 0]], gell_mann_basis(2))
    with pytest.raises(InputError):
        simplex_from_basis(np.eye(3), gell_mann_basis(2))


def test_projection_fixed_points():
    s = canonical_simplex(gell_mann_basis(3))
    for k in range(3):
        _, lam = project_to_simplex(s.vertices[k], s)
        assert np.allclose(lam, np.eye(3)[k], atol=1e-12)
    _, lam = project_to_simplex(np.zeros(8), s)
    assert np.allclose(lam, 1 / 3, atol=1e-12)


def test_quarter_amplitude_projection():
    spec = EntangledSpec.from_a1(2, 2, 0.5)
    da, _ = reduced_states(spec)
    basis = gell_mann_basis(2)
    s = simplex_from_basis([spec.psi_a, spec.phi_a], basis)
    _, lam = project_to_simplex(density_to_bloch(da, basis), s)
    assert np.allclose(lam, [0.25, 0.75], atol=1e-12)


@given(seeds, ns)
def test_barycentric_equals_born(seed, n):
    g = rng(seed)
    basis = gell_mann_basis(n)
    s = simplex_from_basis(random_unitary(n, g), basis)
    d = random_density(n, g)
    on, lam = project_to_simplex(density_to_bloch(d, basis), s)
    born = born_probabilities(d, s)
    # Born route: explicit Tr(D P_k)
    explicit = [np.trace(d @ projector(s.eigenbasis[:, k])).real for k in range(n)]
    assert np.max(np.abs(born - explicit)) < 1e-12
    assert np.max(np.abs(lam - born)) < 1e-10
    assert abs(lam.sum() - 1) < 1e-12
    assert lam.min() >= -1e-10
    on2, _ = project_to_simplex(on, s)
    assert np.max(np.abs(on2 - on)) < 1e-12


def test_born_examples():
    s = canonical_simplex(gell_mann_basis(3))
    assert np.allclose(born_probabilities(np.diag([0, 1.0, 0]), s), [0, 1, 0])
    assert np.allclose(born_probabilities(np.eye(3) / 3, s), 1 / 3)


def test_collapse(gen):
    basis = gell_mann_basis(3)
    s = simplex_from_basis(random_unitary(3, gen), basis)
    for k in range(3):
        p = collapse(s, k)
        assert np.max(np.abs(density_to_bloch(p, basis).components - s.vertices[k])) < 1e-12
        assert np.allclose(p.matrix @ p.matrix, p.matrix)
    q = canonical_simplex(gell_mann_basis(2))
    assert np.array_equal(collapse(q, 0).matrix, np.diag([1.0, 0]))
    with pytest.raises(InputError):
        collapse(s, 3)


def test_clamping():
    assert np.allclose(outcome_probabilities([1 + 5e-11, -5e-11]), [1, 0])
    with pytest.raises(VerificationError):
        outcome_probabilities([1.1, -0.1])


def test_eigenstate_sampling_is_deterministic_outcome():
    s = canonical_simplex(gell_mann_basis(2))
    rep = sample_outcomes([0, 0, 1], s, 5000, seed=9)
    assert rep.counts.tolist() == [5000, 0]


def test_sampling_statistics_and_reproducibility():
    s = canonical_simplex(gell_mann_basis(2))
    r = density_to_bloch(np.diag([0.25, 0.75]), s.basis)
    rep = sample_outcomes(r, s, 1_000_000, seed=2024)
    assert rep.counts.sum() == 1_000_000
    assert abs(rep.frequencies.sum() - 1) < 1e-12
    assert rep.max_deviation < 0.002
    again = sample_outcomes(r, s, 1_000_000, seed=2024)
    np.testing.assert_array_equal(rep.counts, again.counts)
    assert rep.algorithm == RNG_ALGORITHM


@pytest.mark.parametrize("workers", [2, 3, 8])
def test_parallel_matches_serial(workers):
    p = [0.1, 0.2, 0.3, 0.4]
    serial = sample_counts(p, 300_001, seed=77)
    np.testing.assert_array_equal(sample_counts(p, 300_001, seed=77, workers=workers), serial)


def test_sampling_rejects_bad_input():
    s = canonical_simplex(gell_mann_basis(3))
    bad = -density_to_bloch(np.diag([1.0, 0, 0]), s.basis).components
    with pytest.raises(InputError):
        sample_outcomes(bad, s, 10, 0)
    with pytest.raises(InputError):
        sample_counts([0.5, 0.5], 0, 0)
