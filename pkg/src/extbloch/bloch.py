"""Density operator <-> generalised Bloch vector.

``D = (1/N)(I + c_N r . L)`` with ``c_N = sqrt(N(N-1)/2)``; inversely
``r_i = e_N Tr(D L_i)`` with ``e_N = N / (2 c_N)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .basis import GeneratorBasis
from .errors import InputError, NumericalError
from .matrix import DEFAULT_TOL, as_operator, is_psd

IMAG_RESIDUE = 1e-10


@dataclass(frozen=True)
class BlochConstants:
    n: int

    @property
    def c(self) -> float:
        return math.sqrt(self.n * (self.n - 1) / 2.0)

    @property
    def e(self) -> float:
        return self.n / (2.0 * self.c)


def c_n(n: int) -> float:
    return BlochConstants(n).c


def e_n(n: int) -> float:
    return BlochConstants(n).e


@dataclass(frozen=True, eq=False)
class BlochVector:
    n: int
    components: np.ndarray
    basis_name: str = ""

    def __post_init__(self):
        r = np.array(self.components, dtype=np.float64)
        if r.shape != (self.n * self.n - 1,):
            raise InputError(f"Bloch vector for N={self.n} needs {self.n * self.n - 1} components, got {r.shape}")
        if not np.all(np.isfinite(r)):
            raise InputError("Bloch vector contains NaN or Inf")
        r.setflags(write=False)
        object.__setattr__(self, "components", r)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.components))

    def __array__(self, dtype=None, copy=None):
        return self.components if dtype is None else self.components.astype(dtype)

    def __len__(self):
        return self.components.shape[0]


def bloch_components(d, generators, n: int) -> np.ndarray:
    """Raw ``e_N Tr(d L_i)`` for a stack of generators; checks the imaginary residue."""
    t = kernels.trace_products(d, generators)
    resid = float(np.max(np.abs(t.imag), initial=0.0)) * e_n(n)
    if resid > IMAG_RESIDUE:
        raise NumericalError(f"Bloch components have imaginary residue {resid:.3g}; is the operator Hermitian?")
    return e_n(n) * t.real


def density_to_bloch(d, basis: GeneratorBasis) -> BlochVector:
    d = as_operator(d)
    if d.shape != (basis.n, basis.n):
        raise InputError(f"operator of shape {d.shape} does not match basis dimension {basis.n}")
    return BlochVector(basis.n, bloch_components(d, basis.generators, basis.n), basis.name)


def _components(r, basis: GeneratorBasis):
    if isinstance(r, BlochVector):
        if r.n != basis.n:
            raise InputError(f"Bloch vector is for N={r.n}, basis has N={basis.n}")
        if r.basis_name and r.basis_name != basis.name:
            raise InputError(f"Bloch vector was computed in basis {r.basis_name!r}, not {basis.name!r}")
        return r.components
    r = np.asarray(r, dtype=np.float64)
    if r.shape != (len(basis),):
        raise InputError(f"expected {len(basis)} components, got shape {r.shape}")
    return r


def bloch_to_density(r, basis: GeneratorBasis) -> np.ndarray:
    """``(1/N)(I + c_N r . L)``; Hermitian with unit trace but not necessarily positive."""
    comps = _components(r, basis)
    n = basis.n
    return (np.eye(n, dtype=np.complex128) + c_n(n) * np.tensordot(comps, basis.generators, axes=1)) / n


def _overlap_inputs(r1, r2):
    if isinstance(r1, BlochVector) and isinstance(r2, BlochVector):
        if r1.n != r2.n:
            raise InputError("Bloch vectors have different dimensions")
        if r1.basis_name and r2.basis_name and r1.basis_name != r2.basis_name:
            raise InputError(f"Bloch vectors use different bases ({r1.basis_name!r} vs {r2.basis_name!r})")
    a, b = np.asarray(r1, dtype=np.float64), np.asarray(r2, dtype=np.float64)
    if a.shape != b.shape:
        raise InputError("Bloch vectors have different lengths")
    return a, b


def state_overlap(r1, r2, n: int) -> float:
    """``Tr(D1 D2) = 1/N + ((N-1)/N) r1 . r2``."""
    a, b = _overlap_inputs(r1, r2)
    if a.shape != (n * n - 1,):
        raise InputError(f"components do not match N={n}")
    return 1.0 / n + (n - 1) / n * float(np.dot(a, b))


def purity(r, n: int) -> float:
    return state_overlap(r, r, n)


def is_valid_bloch(r, basis: GeneratorBasis, tol=DEFAULT_TOL) -> bool:
    comps = _components(r, basis)
    if np.linalg.norm(comps) > 1.0 + tol:
        return False
    return is_psd(bloch_to_density(comps, basis), tol)
