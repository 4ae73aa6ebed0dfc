"""Dense complex matrix primitives.

Composite index convention: the basis of C^nA (x) C^nB is ordered with the A
index major, i.e. ``(i, k) -> i * nB + k``. Every module relies on this.
"""

from __future__ import annotations

import os

import numpy as np

from . import kernels
from .errors import InputError

DEFAULT_TOL = float(os.environ.get("EXTBLOCH_TOL", "1e-9"))


def as_matrix(m, name="matrix"):
    a = np.array(m, dtype=np.complex128)
    if a.ndim != 2:
        raise InputError(f"{name} must be 2-D, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError(f"{name} contains NaN or Inf")
    return a


def as_vector(v, name="vector", tol=DEFAULT_TOL):
    """Validate a unit-norm complex state vector."""
    a = np.array(v, dtype=np.complex128)
    if a.ndim != 1 or a.size == 0:
        raise InputError(f"{name} must be a non-empty 1-D array")
    if not np.all(np.isfinite(a)):
        raise InputError(f"{name} contains NaN or Inf")
    norm = np.linalg.norm(a)
    if abs(norm - 1.0) > tol:
        raise InputError(f"{name} is not normalized (norm {norm:.3g})")
    return a


def dagger(m):
    return np.conj(np.asarray(m)).T


def trace(m):
    return np.trace(np.asarray(m))


def outer(u, v):
    """|u><v|."""
    return np.outer(np.asarray(u, dtype=np.complex128), np.conj(np.asarray(v, dtype=np.complex128)))


def projector(v):
    return outer(v, v)


def kron(a, b):
    return kernels.kron(a, b)


def kron_all(*ms):
    out = np.ones((1, 1), dtype=np.complex128)
    for m in ms:
        out = kernels.kron(out, np.atleast_2d(m))
    return out


def partial_trace(d, na: int, nb: int, side: str = "B"):
    """Trace out subsystem ``side`` ('A' or 'B') of an (na*nb)-square operator."""
    d = as_matrix(d, "operator")
    if d.shape != (na * nb, na * nb):
        raise InputError(f"operator shape {d.shape} does not match {na}x{nb} composite")
    side = side.upper()
    if side not in ("A", "B"):
        raise InputError(f"side must be 'A' or 'B', got {side!r}")
    return kernels.partial_trace(d, na, nb, side == "B")


def is_hermitian(h, tol=DEFAULT_TOL) -> bool:
    h = np.asarray(h)
    return h.ndim == 2 and h.shape[0] == h.shape[1] and bool(np.max(np.abs(h - dagger(h)), initial=0.0) <= tol)


def _require_hermitian(h, tol):
    h = as_matrix(h)
    if not is_hermitian(h, tol):
        raise InputError("matrix is not Hermitian")
    return h


def hermitian_eigensystem(h, tol=DEFAULT_TOL):
    """Eigenvalues (ascending) and orthonormal eigenvectors (as columns)."""
    h = _require_hermitian(h, tol)
    w, v = np.linalg.eigh(0.5 * (h + dagger(h)))
    return w, v


def is_psd(h, tol=DEFAULT_TOL) -> bool:
    w, _ = hermitian_eigensystem(h)
    return bool(w[0] >= -tol)


class DensityOperator:
    """Validated Hermitian, unit-trace, positive semidefinite operator.

    The wrapped array is read-only. Use ``np.asarray(rho)`` or ``rho.matrix``
    to get at it.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix, tol=DEFAULT_TOL):
        m = as_matrix(matrix, "density operator")
        if m.shape[0] != m.shape[1]:
            raise InputError(f"density operator must be square, got {m.shape}")
        if not is_hermitian(m, tol):
            raise InputError("density operator is not Hermitian")
        tr = np.trace(m)
        if abs(tr - 1.0) > tol:
            raise InputError(f"density operator trace is {tr.real:.6g}, expected 1")
        w = np.linalg.eigvalsh(m)
        if w[0] < -tol:
            raise InputError(f"density operator has negative eigenvalue {w[0]:.3g}")
        m.setflags(write=False)
        self.matrix = m

    @classmethod
    def from_vector(cls, v, tol=DEFAULT_TOL):
        return cls(projector(as_vector(v, tol=tol)), tol=tol)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    def __repr__(self):
        return f"DensityOperator(dim={self.dim})"


def as_operator(d):
    """Raw array view of a DensityOperator or array-like."""
    if isinstance(d, DensityOperator):
        return d.matrix
    return as_matrix(d, "operator")
