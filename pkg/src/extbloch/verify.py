"""Randomised invariant suites behind ``extbloch verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .basis import adapted_basis, composite_basis, gell_mann_basis, orthonormality_report
from .bloch import density_to_bloch, bloch_to_density, state_overlap
from .entangle import build_density, decompose, interference_deviation, reduced_state_residual
from .errors import InputError
from .measure import born_probabilities, project_to_simplex, simplex_from_basis
from .rand import random_density, random_spec, random_unitary, rng

FAULTS = ("none", "basis-order")


@dataclass
class SuiteResult:
    name: str
    worst: float
    threshold: float
    cases: int

    @property
    def passed(self) -> bool:
        return self.worst <= self.threshold

    def as_dict(self):
        return {"suite": self.name, "passed": self.passed, "worst": self.worst,
                "threshold": self.threshold, "cases": self.cases}


def _generators(dims, trials, gen, fault):
    worst, cases = 0.0, 0
    bases = [gell_mann_basis(n) for n in dims]
    for a, b in product(dims, repeat=2):
        if a * b <= 16:
            bases.append(composite_basis(gell_mann_basis(a), gell_mann_basis(b)))
    for b in bases:
        rep = orthonormality_report(b.generators)
        worst = max(worst, *rep.values())
        cases += 1
    return SuiteResult("generators", worst, 1e-12, cases)


def _round_trip(dims, trials, gen, fault):
    worst, cases = 0.0, 0
    for n in dims:
        basis = gell_mann_basis(n)
        for _ in range(trials):
            d = random_density(n, gen)
            back = bloch_to_density(density_to_bloch(d, basis), basis)
            worst = max(worst, float(np.max(np.abs(back - d))))
            cases += 1
    return SuiteResult("round-trip", worst, 1e-12, cases)


def _pairs(dims):
    return [(a, b) for a, b in product(dims, repeat=2) if a * b <= 16]


def _decomposition(dims, trials, gen, fault):
    worst, cases = 0.0, 0
    for na, nb in _pairs(dims):
        for _ in range(trials):
            spec = random_spec(na, nb, gen)
            dec = decompose(spec)
            full = density_to_bloch(build_density(spec), dec.basis).components
            worst = max(worst, float(np.max(np.abs(dec.assembled() - full))), dec.norm_identity_residual())
            cases += 1
    return SuiteResult("decomposition", worst, 1e-10, cases)


def _reduced(dims, trials, gen, fault):
    worst, cases = 0.0, 0
    for na, nb in _pairs(dims):
        for _ in range(trials):
            worst = max(worst, reduced_state_residual(random_spec(na, nb, gen)))
            cases += 1
    return SuiteResult("reduced-states", worst, 1e-12, cases)


def _eq8(dims, trials, gen, fault):
    worst, cases = 0.0, 0
    pairs = _pairs(dims)
    for (na, nb), a1, k in product(pairs, np.arange(1, 10) / 10.0, range(13)):
        alpha = k * math.pi / 6.0
        spec = random_spec(na, nb, gen)
        spec = type(spec).from_a1(na, nb, float(a1), 0.0, alpha, psi_a=spec.psi_a, phi_a=spec.phi_a,
                                  psi_b=spec.psi_b, phi_b=spec.phi_b)
        basis_a = adapted_basis(spec.psi_a, spec.phi_a)
        if fault == "basis-order":
            basis_a = basis_a.permuted([1, 0] + list(range(2, len(basis_a))))
        _, dev, stray = interference_deviation(decompose(spec, basis_a=basis_a))
        worst = max(worst, dev, stray)
        cases += 1
    return SuiteResult("eq8-interference", worst, 1e-10, cases)


def _simplex(dims, trials, gen, fault):
    worst, cases = 0.0, 0
    for n in dims:
        basis = gell_mann_basis(n)
        for _ in range(trials):
            s = simplex_from_basis(random_unitary(n, gen), basis)
            d = random_density(n, gen)
            _, lam = project_to_simplex(density_to_bloch(d, basis), s)
            rep = s.vertex_report()
            worst = max(worst, float(np.max(np.abs(lam - born_probabilities(d, s)))), *rep.values())
            cases += 1
    return SuiteResult("simplex-born", worst, 1e-10, cases)


def _overlap(dims, trials, gen, fault):
    worst, cases = 0.0, 0
    for n in dims:
        basis = gell_mann_basis(n)
        for _ in range(trials):
            d1, d2 = random_density(n, gen), random_density(n, gen)
            r1, r2 = density_to_bloch(d1, basis), density_to_bloch(d2, basis)
            exact = float(np.trace(d1 @ d2).real)
            worst = max(worst, abs(state_overlap(r1, r2, n) - exact))
            cases += 1
    return SuiteResult("overlap", worst, 1e-12, cases)


SUITES = (_generators, _round_trip, _decomposition, _reduced, _eq8, _simplex, _overlap)


def run_suites(dims=(2, 3, 4), trials=20, seed=0, fault="none"):
    if trials < 1:
        raise InputError("trials must be >= 1")
    if not dims or any(n < 2 for n in dims):
        raise InputError("dimensions must all be >= 2")
    if fault not in FAULTS:
        raise InputError(f"unknown fault {fault!r}")
    gen = rng(seed)
    return [suite(tuple(dims), trials, gen, fault) for suite in SUITES]
