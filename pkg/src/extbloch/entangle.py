"""Two-term entangled states and their tripartite Bloch decomposition.

The family is ``a1 e^{i alpha1} |psiA>|phiB> + a2 e^{i alpha2} |phiA>|psiB>``
with orthonormal pairs on each side. In the composite basis built from the
two adapted bases the Bloch vector splits into
``dA rA_bar (+) dB rB_bar (+) r_corr`` with ``r_corr = dAB rAB_bar + r_int``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .basis import CompositeBasis, GeneratorBasis, adapted_basis, composite_basis
from .bloch import BlochVector, bloch_components, density_to_bloch, e_n
from .errors import InputError, VerificationError
from .matrix import DEFAULT_TOL, DensityOperator, as_operator, as_vector, kron, outer, partial_trace, projector

EQ8_TOL = 1e-10


def canonical(n: int, k: int) -> np.ndarray:
    v = np.zeros(n, dtype=np.complex128)
    v[k] = 1.0
    return v


@dataclass(frozen=True, eq=False)
class EntangledSpec:
    na: int
    nb: int
    a1: float
    a2: float
    alpha1: float = 0.0
    alpha2: float = 0.0
    psi_a: np.ndarray = None
    phi_a: np.ndarray = None
    psi_b: np.ndarray = None
    phi_b: np.ndarray = None
    tol: float = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        for name in ("na", "nb"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or v < 2:
                raise InputError(f"{name} must be an integer >= 2, got {v!r}")
        for name in ("a1", "a2", "alpha1", "alpha2"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise InputError(f"{name} must be finite")
        if not (0.0 <= self.a1 <= 1.0 and 0.0 <= self.a2 <= 1.0):
            raise InputError(f"amplitudes must lie in [0, 1], got a1={self.a1}, a2={self.a2}")
        if abs(self.a1 ** 2 + self.a2 ** 2 - 1.0) > self.tol:
            raise InputError(f"a1^2 + a2^2 = {self.a1 ** 2 + self.a2 ** 2:.12g}, expected 1")
        defaults = {"psi_a": (self.na, 0), "phi_a": (self.na, 1), "psi_b": (self.nb, 0), "phi_b": (self.nb, 1)}
        for name, (dim, k) in defaults.items():
            v = getattr(self, name)
            v = canonical(dim, k) if v is None else as_vector(v, name, self.tol)
            if v.shape != (dim,):
                raise InputError(f"{name} must have dimension {dim}")
            v.setflags(write=False)
            object.__setattr__(self, name, v)
        if abs(np.vdot(self.psi_a, self.phi_a)) > self.tol:
            raise InputError("psi_a and phi_a are not orthogonal")
        if abs(np.vdot(self.psi_b, self.phi_b)) > self.tol:
            raise InputError("psi_b and phi_b are not orthogonal")

    @classmethod
    def from_a1(cls, na, nb, a1, alpha1=0.0, alpha2=0.0, **vectors):
        """Fill in ``a2 = sqrt(1 - a1^2)``."""
        if not (0.0 <= a1 <= 1.0):
            raise InputError(f"a1 must lie in [0, 1], got {a1}")
        return cls(na, nb, a1, math.sqrt(max(0.0, 1.0 - a1 * a1)), alpha1, alpha2, **vectors)

    @property
    def n(self) -> int:
        return self.na * self.nb

    @property
    def alpha(self) -> float:
        return self.alpha2 - self.alpha1

    @property
    def is_product(self) -> bool:
        return self.a1 * self.a2 == 0.0


@dataclass(frozen=True)
class DecompCoefficients:
    na: int
    nb: int

    @property
    def n(self):
        return self.na * self.nb

    @property
    def d_a(self) -> float:
        return math.sqrt((self.na - 1) / (self.n - 1))

    @property
    def d_b(self) -> float:
        return math.sqrt((self.nb - 1) / (self.n - 1))

    @property
    def d_ab(self) -> float:
        return math.sqrt((self.na - 1) * (self.nb - 1) / (self.n - 1))


def build_state_vector(spec: EntangledSpec) -> np.ndarray:
    t1 = spec.a1 * np.exp(1j * spec.alpha1) * np.kron(spec.psi_a, spec.phi_b)
    t2 = spec.a2 * np.exp(1j * spec.alpha2) * np.kron(spec.phi_a, spec.psi_b)
    return t1 + t2


def _sub_projectors(spec):
    return (projector(spec.psi_a), projector(spec.phi_a), projector(spec.psi_b), projector(spec.phi_b))


def separable_operator(spec: EntangledSpec) -> DensityOperator:
    """``a1^2 D_psiA (x) D_phiB + a2^2 D_phiA (x) D_psiB``, the mixture without interference."""
    pa, fa, pb, fb = _sub_projectors(spec)
    return DensityOperator(spec.a1 ** 2 * kron(pa, fb) + spec.a2 ** 2 * kron(fa, pb))


def interference_operator(spec: EntangledSpec) -> np.ndarray:
    """``a1 a2 e^{-i alpha} |psiA><phiA| (x) |phiB><psiB|`` plus its adjoint."""
    x = spec.a1 * spec.a2 * np.exp(-1j * spec.alpha) * kron(outer(spec.psi_a, spec.phi_a), outer(spec.phi_b, spec.psi_b))
    return x + x.conj().T


def build_density(spec: EntangledSpec) -> DensityOperator:
    """The projector of :func:`build_state_vector`, assembled term by term."""
    return DensityOperator(separable_operator(spec).matrix + interference_operator(spec))


def reduced_states(spec: EntangledSpec):
    """Closed-form sub-entity states ``(D^A, D^B)``."""
    pa, fa, pb, fb = _sub_projectors(spec)
    w1, w2 = spec.a1 ** 2, spec.a2 ** 2
    return DensityOperator(w1 * pa + w2 * fa), DensityOperator(w1 * fb + w2 * pb)


@dataclass(frozen=True, eq=False)
class OperatorBlocks:
    """Raw block split of an arbitrary composite operator in a composite basis."""

    coefficients: DecompCoefficients
    basis: CompositeBasis
    full: np.ndarray
    ra_bar: np.ndarray
    rb_bar: np.ndarray
    r_corr: np.ndarray

    def correlation_residual(self, rab_bar) -> np.ndarray:
        """``r_corr - dAB * rab_bar``; the interference part relative to a product reference."""
        return self.r_corr - self.coefficients.d_ab * np.asarray(rab_bar)


def decompose_operator(d, basis_a: GeneratorBasis, basis_b: GeneratorBasis) -> OperatorBlocks:
    """Split the Bloch vector of ``d`` into A, B and correlation blocks.

    No claim is made about the structure of the correlation block.
    """
    d = as_operator(d)
    comp = composite_basis(basis_a, basis_b)
    coeffs = DecompCoefficients(basis_a.n, basis_b.n)
    full = density_to_bloch(d, comp).components
    a, b, corr = comp.split(full)
    return OperatorBlocks(coeffs, comp, full, a / coeffs.d_a, b / coeffs.d_b, corr)


@dataclass(frozen=True, eq=False)
class TripartiteDecomposition:
    spec: EntangledSpec
    coefficients: DecompCoefficients
    basis: CompositeBasis
    ra: BlochVector
    sa: BlochVector
    rb: BlochVector
    sb: BlochVector
    ra_bar: BlochVector
    rb_bar: BlochVector
    rab_bar: np.ndarray
    r_int: np.ndarray
    r_corr: np.ndarray
    classification: str  # "Product" | "Entangled"

    def assembled(self) -> np.ndarray:
        c = self.coefficients
        return np.concatenate([c.d_a * self.ra_bar.components, c.d_b * self.rb_bar.components, self.r_corr])

    def norm_identity_residual(self) -> float:
        c = self.coefficients
        total = (c.d_a ** 2 * self.ra_bar.norm ** 2 + c.d_b ** 2 * self.rb_bar.norm ** 2
                 + float(np.dot(self.r_corr, self.r_corr)))
        return abs(total - 1.0)

    def correlation_index(self, i: int, j: int) -> int:
        """0-based position of pair (i, j), i, j >= 1, inside the correlation block."""
        kb = len(self.basis.basis_b)
        if i < 1 or j < 1:
            raise InputError("correlation pairs start at (1, 1)")
        return (i - 1) * kb + (j - 1)

    def correlation_pairs(self):
        ka, kb = len(self.basis.basis_a), len(self.basis.basis_b)
        return [(i, j) for i in range(1, ka + 1) for j in range(1, kb + 1)]

    def nonzero(self, block: str, threshold=1e-12):
        """``[((i, j), value), ...]`` for the non-negligible entries of a correlation-sized block."""
        vec = {"r_int": self.r_int, "r_corr": self.r_corr, "rab_bar": self.rab_bar}[block]
        return [(p, float(v)) for p, v in zip(self.correlation_pairs(), vec) if abs(v) > threshold]


def decompose(spec: EntangledSpec, basis_a: GeneratorBasis = None, basis_b: GeneratorBasis = None) -> TripartiteDecomposition:
    """Tripartite decomposition in the adapted bases of the spec's own state pairs.

    ``basis_a``/``basis_b`` override the adapted bases (used by negative controls).
    """
    basis_a = basis_a or adapted_basis(spec.psi_a, spec.phi_a, spec.tol)
    basis_b = basis_b or adapted_basis(spec.psi_b, spec.phi_b, spec.tol)
    comp = composite_basis(basis_a, basis_b)
    coeffs = DecompCoefficients(spec.na, spec.nb)
    pa, fa, pb, fb = _sub_projectors(spec)
    ra, sa = density_to_bloch(pa, basis_a), density_to_bloch(fa, basis_a)
    rb, sb = density_to_bloch(pb, basis_b), density_to_bloch(fb, basis_b)
    w1, w2 = spec.a1 ** 2, spec.a2 ** 2
    ra_bar = BlochVector(spec.na, w1 * ra.components + w2 * sa.components, basis_a.name)
    rb_bar = BlochVector(spec.nb, w1 * sb.components + w2 * rb.components, basis_b.name)
    rab_bar = (w1 * np.outer(ra.components, sb.components) + w2 * np.outer(sa.components, rb.components)).ravel()
    _, _, corr_gens = comp.split(comp.generators)
    r_int = bloch_components(interference_operator(spec), corr_gens, spec.n)
    r_corr = coeffs.d_ab * rab_bar + r_int
    return TripartiteDecomposition(
        spec, coeffs, comp, ra, sa, rb, sb, ra_bar, rb_bar, rab_bar, r_int, r_corr,
        "Product" if spec.is_product else "Entangled",
    )


def interference_deviation(decomp: TripartiteDecomposition, spec: EntangledSpec = None):
    """``(components, worst, stray)`` for the four-component interference formula.

    ``worst`` is the largest gap between the entries at (1,1), (2,2), (1,2),
    (2,1) and ``e_N sqrt(2) a1 a2 (cos a, cos a, -sin a, sin a)``; ``stray`` is
    the largest magnitude among all other ``r_int`` entries.
    """
    spec = spec or decomp.spec
    amp = e_n(spec.n) * math.sqrt(2.0) * spec.a1 * spec.a2
    ca, sa = math.cos(spec.alpha), math.sin(spec.alpha)
    expected = {(1, 1): amp * ca, (2, 2): amp * ca, (1, 2): -amp * sa, (2, 1): amp * sa}
    got = {p: float(decomp.r_int[decomp.correlation_index(*p)]) for p in expected}
    worst = max(abs(got[p] - expected[p]) for p in expected)
    rest = np.delete(decomp.r_int, [decomp.correlation_index(*p) for p in expected])
    stray = float(np.max(np.abs(rest), initial=0.0))
    return got, worst, stray


def interference_components(decomp: TripartiteDecomposition, spec: EntangledSpec = None, tol=EQ8_TOL) -> dict:
    """The four interference components keyed by pair; raises VerificationError
    if they miss the closed form or any other entry is non-negligible."""
    got, worst, stray = interference_deviation(decomp, spec)
    if worst > tol or stray > tol:
        raise VerificationError(
            f"interference components deviate from the closed form (worst {worst:.3g}, stray {stray:.3g})"
        )
    return got


def reduced_state_residual(spec: EntangledSpec) -> float:
    """Max entrywise gap between closed-form reduced states and numerical partial traces."""
    d = build_density(spec).matrix
    da, db = reduced_states(spec)
    ga = np.max(np.abs(partial_trace(d, spec.na, spec.nb, "B") - da.matrix))
    gb = np.max(np.abs(partial_trace(d, spec.na, spec.nb, "A") - db.matrix))
    return float(max(ga, gb))
