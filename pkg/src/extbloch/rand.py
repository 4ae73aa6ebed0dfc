"""Random test inputs (Haar unitaries, Ginibre densities, entangled specs)."""

from __future__ import annotations

import numpy as np

from .entangle import EntangledSpec


def rng(seed=0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def ginibre(n, m, gen):
    return (gen.standard_normal((n, m)) + 1j * gen.standard_normal((n, m))) / np.sqrt(2.0)


def random_unitary(n, gen) -> np.ndarray:
    q, r = np.linalg.qr(ginibre(n, n, gen))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_pure(n, gen) -> np.ndarray:
    v = ginibre(n, 1, gen)[:, 0]
    return v / np.linalg.norm(v)


def random_density(n, gen, rank=None) -> np.ndarray:
    g = ginibre(n, rank or n, gen)
    d = g @ g.conj().T
    return d / np.trace(d).real


def random_spec(na, nb, gen) -> EntangledSpec:
    ua, ub = random_unitary(na, gen), random_unitary(nb, gen)
    a1 = float(gen.uniform(0.0, 1.0))
    alpha1, alpha2 = gen.uniform(-np.pi, np.pi, size=2)
    return EntangledSpec.from_a1(
        na, nb, a1, float(alpha1), float(alpha2),
        psi_a=ua[:, 0], phi_a=ua[:, 1], psi_b=ub[:, 0], phi_b=ub[:, 1],
    )
