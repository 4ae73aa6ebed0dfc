"""Measurement simplexes and Born-rule sampling.

A non-degenerate measurement with eigenbasis {|v_k>} is the (N-1)-simplex whose
vertices are the Bloch vectors of the projectors |v_k><v_k|. The state point is
projected orthogonally onto the simplex's affine hull; its barycentric
coordinates are the outcome probabilities.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .basis import GeneratorBasis
from .bloch import _components, bloch_to_density, density_to_bloch
from .errors import InputError, NumericalError, VerificationError
from .matrix import DEFAULT_TOL, DensityOperator, as_operator, projector

CLAMP_TOL = 1e-10
CHUNK_SHOTS = 1 << 16
RNG_ALGORITHM = f"numpy.PCG64+SeedSequence.spawn/chunk={CHUNK_SHOTS}"


@dataclass(frozen=True, eq=False)
class MeasurementSimplex:
    n: int
    eigenbasis: np.ndarray  # eigenvectors as columns
    vertices: np.ndarray  # shape (n, n*n - 1)
    basis: GeneratorBasis

    def vertex_report(self) -> dict:
        v = self.vertices
        gram = v @ v.T
        off = gram[~np.eye(self.n, dtype=bool)]
        return {
            "norm": float(np.max(np.abs(np.diag(gram) - 1.0))),
            "dot": float(np.max(np.abs(off + 1.0 / (self.n - 1)))),
            "barycenter": float(np.max(np.abs(v.mean(axis=0)))),
        }


def simplex_from_basis(eigenbasis, basis: GeneratorBasis, tol=DEFAULT_TOL) -> MeasurementSimplex:
    """``eigenbasis``: N orthonormal vectors, either as a list or as matrix columns."""
    if isinstance(eigenbasis, (list, tuple)):
        u = np.column_stack([np.asarray(v, dtype=np.complex128) for v in eigenbasis])
    else:
        u = np.array(eigenbasis, dtype=np.complex128)
    n = basis.n
    if u.shape != (n, n):
        raise InputError(f"need {n} eigenvectors of dimension {n}, got array of shape {u.shape}")
    if np.max(np.abs(u.conj().T @ u - np.eye(n))) > tol:
        raise InputError("eigenbasis is not orthonormal")
    verts = np.stack([density_to_bloch(projector(u[:, k]), basis).components for k in range(n)])
    u.setflags(write=False)
    verts.setflags(write=False)
    return MeasurementSimplex(n, u, verts, basis)


def canonical_simplex(basis: GeneratorBasis) -> MeasurementSimplex:
    return simplex_from_basis(np.eye(basis.n), basis)


def project_to_simplex(r, s: MeasurementSimplex):
    """Orthogonal projection onto the simplex's affine hull.

    Returns ``(on_point, lambdas)`` with ``on_point = sum_k lambdas[k] vertex_k``.
    """
    comps = _components(r, s.basis)
    v = s.vertices
    base = v[-1]
    edges = (v[:-1] - base).T  # columns span the hull directions
    coef, *_ = np.linalg.lstsq(edges, comps - base, rcond=None)
    on_point = base + edges @ coef
    # barycentric coordinates: [vertices as columns; ones] lambda = [on_point; 1]
    system = np.vstack([v.T, np.ones(s.n)])
    rhs = np.concatenate([on_point, [1.0]])
    lambdas, _, rank, _ = np.linalg.lstsq(system, rhs, rcond=None)
    if rank < s.n:
        raise NumericalError("degenerate measurement simplex")
    return on_point, lambdas


def born_probabilities(d, s: MeasurementSimplex) -> np.ndarray:
    """``Tr(d P_k) = <v_k| d |v_k>``."""
    d = as_operator(d)
    u = s.eigenbasis
    return np.einsum("ik,ij,jk->k", u.conj(), d, u).real


def collapse(s: MeasurementSimplex, k: int) -> DensityOperator:
    if not (0 <= k < s.n):
        raise InputError(f"outcome index {k} out of range for N={s.n}")
    return DensityOperator(projector(s.eigenbasis[:, k]))


def outcome_probabilities(lambdas) -> np.ndarray:
    """Clamp tiny negatives and renormalise; larger negatives mean an invalid state."""
    lam = np.array(lambdas, dtype=np.float64)
    if np.min(lam) < -CLAMP_TOL:
        raise VerificationError(f"barycentric coordinate {np.min(lam):.3g} is negative; state is not valid")
    lam[lam < 0] = 0.0
    return lam / lam.sum()


def _cdf(probs):
    cdf = np.cumsum(probs)
    cdf[-1] = 1.0
    return cdf


def _chunk_sizes(shots):
    full, rem = divmod(shots, CHUNK_SHOTS)
    return [CHUNK_SHOTS] * full + ([rem] if rem else [])


def _count_chunk(seed_seq, size, cdf):
    u = np.random.Generator(np.random.PCG64(seed_seq)).random(size)
    return kernels.count_outcomes(u, cdf)


def sample_counts(probs, shots: int, seed: int, workers: int = 1) -> np.ndarray:
    """Outcome counts for ``shots`` independent draws.

    Shots are cut into fixed chunks, each with its own child of
    ``SeedSequence(seed)``, so counts do not depend on ``workers``.
    """
    if shots < 1:
        raise InputError("shots must be >= 1")
    if seed < 0:
        raise InputError("seed must be non-negative")
    cdf = _cdf(np.asarray(probs, dtype=np.float64))
    sizes = _chunk_sizes(int(shots))
    children = np.random.SeedSequence(int(seed)).spawn(len(sizes))
    if workers <= 1:
        parts = [_count_chunk(c, n, cdf) for c, n in zip(children, sizes)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda a: _count_chunk(a[0], a[1], cdf), zip(children, sizes)))
    return np.sum(parts, axis=0)


@dataclass(frozen=True, eq=False)
class SampleReport:
    shots: int
    seed: int
    counts: np.ndarray
    frequencies: np.ndarray
    born: np.ndarray
    lambdas: np.ndarray
    algorithm: str = RNG_ALGORITHM

    @property
    def max_deviation(self) -> float:
        return float(np.max(np.abs(self.frequencies - self.born)))

    @property
    def route_gap(self) -> float:
        return float(np.max(np.abs(self.lambdas - self.born)))


def sample_outcomes(r, s: MeasurementSimplex, shots: int, seed: int, workers: int = 1, tol=DEFAULT_TOL) -> SampleReport:
    """Simulate ``shots`` measurements of the state with Bloch vector ``r``."""
    comps = _components(r, s.basis)
    d = bloch_to_density(comps, s.basis)
    try:
        DensityOperator(d, tol)
    except InputError as exc:
        raise InputError(f"Bloch vector is not a valid state: {exc}") from None
    _, lambdas = project_to_simplex(comps, s)
    probs = outcome_probabilities(lambdas)
    counts = sample_counts(probs, shots, seed, workers)
    return SampleReport(int(shots), int(seed), counts, counts / shots, born_probabilities(d, s), lambdas)
