"""Generator bases of SU(N).

Every basis holds N**2 - 1 Hermitian, traceless matrices normalised so that
``Tr(L_i L_j) = 2 delta_ij``. Flat generator indices are 1-based in labels and
reports (index 0 is reserved for the scaled identity) and 0-based in arrays.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import kernels
from .errors import InputError
from .matrix import DEFAULT_TOL, as_vector


@dataclass(frozen=True)
class GeneratorLabel:
    kind: str  # symmetric | antisymmetric | diagonal | adapted | composite
    index: tuple

    def __str__(self):
        return f"{self.kind}{self.index}"


@dataclass(frozen=True, eq=False)
class GeneratorBasis:
    n: int
    generators: np.ndarray  # shape (n*n - 1, n, n), read-only
    labels: tuple
    name: str = field(default="")

    def __post_init__(self):
        g = np.array(self.generators, dtype=np.complex128)
        if g.shape != (self.n * self.n - 1, self.n, self.n):
            raise InputError(f"expected {self.n * self.n - 1} generators of size {self.n}, got {g.shape}")
        g.setflags(write=False)
        object.__setattr__(self, "generators", g)
        if not self.name:
            digest = hashlib.sha1(g.tobytes()).hexdigest()[:12]
            object.__setattr__(self, "name", f"basis{self.n}-{digest}")

    def __len__(self):
        return self.generators.shape[0]

    def __getitem__(self, k):
        return self.generators[k]

    def gram_deviation(self) -> float:
        """max |Tr(L_i L_j) - 2 delta_ij|."""
        return orthonormality_report(self.generators)["gram"]

    def permuted(self, order, name=None):
        """Same generators in a different flat order (used for negative controls)."""
        order = list(order)
        return GeneratorBasis(
            self.n,
            self.generators[order],
            tuple(self.labels[k] for k in order),
            name or f"{self.name}-perm",
        )


def orthonormality_report(gens) -> dict:
    g = np.asarray(gens)
    m = g.shape[0]
    herm = float(np.max(np.abs(g - np.conj(np.transpose(g, (0, 2, 1))))))
    tr = float(np.max(np.abs(np.trace(g, axis1=1, axis2=2))))
    # Tr(L_i L_j) = sum_ab L_i[a, b] L_j[b, a]
    gram = np.einsum("iab,jba->ij", g, g)
    gram_dev = float(np.max(np.abs(gram - 2.0 * np.eye(m))))
    return {"hermitian": herm, "traceless": tr, "gram": gram_dev}


def _gell_mann_in_frame(frame, first_pair=None):
    """Generalised Gell-Mann matrices written in an orthonormal frame.

    ``frame`` has the frame vectors as columns. With ``first_pair=(p, q)`` the
    symmetric and antisymmetric generators of that plane are moved to the front.
    """
    n = frame.shape[0]
    u = frame
    sym, anti, diag = [], [], []
    for j, k in combinations(range(n), 2):
        ejk = np.outer(u[:, j], np.conj(u[:, k]))
        sym.append(((j + 1, k + 1), ejk + ejk.conj().T))
        anti.append(((j + 1, k + 1), -1j * (ejk - ejk.conj().T)))
    for l in range(1, n):
        coeffs = np.zeros(n)
        coeffs[:l] = 1.0
        coeffs[l] = -l
        coeffs *= np.sqrt(2.0 / (l * (l + 1)))
        diag.append(((l,), (u * coeffs) @ np.conj(u).T))
    items = [("symmetric", i, m) for i, m in sym]
    items += [("antisymmetric", i, m) for i, m in anti]
    items += [("diagonal", i, m) for i, m in diag]
    if first_pair is not None:
        key = (first_pair[0] + 1, first_pair[1] + 1)
        head = [next(x for x in items if x[0] == "symmetric" and x[1] == key),
                next(x for x in items if x[0] == "antisymmetric" and x[1] == key)]
        items = head + [x for x in items if all(x is not h for h in head)]
    return items


def gell_mann_basis(n: int) -> GeneratorBasis:
    """Standard generalised Gell-Mann generators.

    Order: symmetric ``E_jk + E_kj`` for j<k, then antisymmetric
    ``-i(E_jk - E_kj)`` for j<k, then the n-1 diagonal generators. For n=2 this
    is (sigma_x, sigma_y, sigma_z).
    """
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise InputError(f"dimension must be an integer >= 2, got {n!r}")
    n = int(n)
    items = _gell_mann_in_frame(np.eye(n, dtype=np.complex128))
    return GeneratorBasis(
        n,
        np.stack([m for _, _, m in items]),
        tuple(GeneratorLabel(kind, idx) for kind, idx, _ in items),
        name=f"gell-mann({n})",
    )


def complete_frame(vectors, threshold=1e-8):
    """Extend orthonormal columns to a full orthonormal basis.

    Modified Gram-Schmidt over the canonical vectors, skipping candidates whose
    residual norm falls below ``threshold``.
    """
    q = [np.asarray(v, dtype=np.complex128) for v in vectors]
    n = q[0].shape[0]
    for c in range(n):
        if len(q) == n:
            break
        w = np.zeros(n, dtype=np.complex128)
        w[c] = 1.0
        for v in q:
            w = w - np.vdot(v, w) * v
        norm = np.linalg.norm(w)
        if norm < threshold:
            continue
        q.append(w / norm)
    return np.column_stack(q)


def adapted_basis(psi, phi, tol=DEFAULT_TOL) -> GeneratorBasis:
    """Basis whose first two generators are built from an orthonormal pair.

    ``L_1 = |psi><phi| + |phi><psi|`` and ``L_2 = -i(|psi><phi| - |phi><psi|)``.
    The rest is the Gell-Mann construction in a Gram-Schmidt completion of
    (psi, phi); in particular the last diagonal-type generator of a qubit is
    ``|psi><psi| - |phi><phi|``.
    """
    psi = as_vector(psi, "psi", tol)
    phi = as_vector(phi, "phi", tol)
    if psi.shape != phi.shape:
        raise InputError("psi and phi have different dimensions")
    if psi.size < 2:
        raise InputError("adapted basis needs dimension >= 2")
    if abs(np.vdot(psi, phi)) > tol:
        raise InputError(f"psi and phi are not orthogonal (|<psi|phi>| = {abs(np.vdot(psi, phi)):.3g})")
    frame = complete_frame([psi, phi])
    items = _gell_mann_in_frame(frame, first_pair=(0, 1))
    labels = [GeneratorLabel("adapted", (1,)), GeneratorLabel("adapted", (2,))]
    labels += [GeneratorLabel(kind, idx) for kind, idx, _ in items[2:]]
    return GeneratorBasis(psi.size, np.stack([m for _, _, m in items]), tuple(labels))


@dataclass(frozen=True, eq=False)
class CompositeBasis(GeneratorBasis):
    """Tensor determination ``L_(i,j) = (1/sqrt 2) L^A_i (x) L^B_j``.

    ``L^A_0 = sqrt(2/nA) I`` and ``L^B_0 = sqrt(2/nB) I``; the pair (0, 0) is
    excluded. Flat order: A-block (i, 0), then B-block (0, j), then the
    correlation block (i, j) with i, j >= 1 in lexicographic order.
    """

    basis_a: GeneratorBasis = None
    basis_b: GeneratorBasis = None
    pairs: tuple = ()

    @property
    def block_sizes(self):
        ka, kb = len(self.basis_a), len(self.basis_b)
        return ka, kb, ka * kb

    def index_of(self, i: int, j: int) -> int:
        """0-based flat array index of pair (i, j)."""
        ka, kb, _ = self.block_sizes
        if not (0 <= i <= ka and 0 <= j <= kb) or (i, j) == (0, 0):
            raise InputError(f"no composite generator for pair ({i}, {j})")
        if j == 0:
            return i - 1
        if i == 0:
            return ka + j - 1
        return ka + kb + (i - 1) * kb + (j - 1)

    def split(self, r):
        """Split a flat composite vector into (A-block, B-block, correlation block)."""
        ka, kb, _ = self.block_sizes
        r = np.asarray(r)
        return r[:ka], r[ka:ka + kb], r[ka + kb:]


def _pair_order(ka, kb):
    pairs = [(i, 0) for i in range(1, ka + 1)]
    pairs += [(0, j) for j in range(1, kb + 1)]
    pairs += [(i, j) for i in range(1, ka + 1) for j in range(1, kb + 1)]
    return pairs


def composite_basis(basis_a: GeneratorBasis, basis_b: GeneratorBasis) -> CompositeBasis:
    na, nb = basis_a.n, basis_b.n
    ext_a = np.concatenate([np.sqrt(2.0 / na) * np.eye(na)[None], basis_a.generators])
    ext_b = np.concatenate([np.sqrt(2.0 / nb) * np.eye(nb)[None], basis_b.generators])
    pairs = _pair_order(len(basis_a), len(basis_b))
    gens = np.stack([kernels.kron(ext_a[i], ext_b[j]) / np.sqrt(2.0) for i, j in pairs])
    return CompositeBasis(
        na * nb,
        gens,
        tuple(GeneratorLabel("composite", p) for p in pairs),
        name=f"({basis_a.name})x({basis_b.name})",
        basis_a=basis_a,
        basis_b=basis_b,
        pairs=tuple(pairs),
    )
