import json

import numpy as np
import pytest

from extbloch.basis import gell_mann_basis
from extbloch.bloch import density_to_bloch
from extbloch.errors import InputError
from extbloch.jsonio import (
    SCHEMA, bloch_doc, density_doc, dumps, load_state, spec_doc, vector_doc,
)
from extbloch.rand import random_density, random_pure, random_spec


def roundtrip(doc):
    return load_state(json.loads(dumps(doc)))


def test_float_format_is_exact(gen):
    xs = gen.standard_normal(200).tolist() + [0.1, 1.0, -0.0, 1e-300, 2.0 ** 60]
    back = json.loads(dumps({"x": xs}))["x"]
    assert back == xs
    assert "1.0" in dumps([1.0])


def test_non_finite_rejected():
    with pytest.raises(InputError):
        dumps([float("nan")])


def test_density_roundtrip(gen):
    d = random_density(3, gen)
    kind, rho = roundtrip(density_doc(d))
    assert kind == "density"
    assert np.max(np.abs(rho.matrix - d)) <= 1e-15


def test_vector_and_bloch_roundtrip(gen):
    v = random_pure(4, gen)
    kind, back = roundtrip(vector_doc(v))
    assert kind == "vector" and np.array_equal(back, v)
    r = density_to_bloch(random_density(3, gen), gell_mann_basis(3))
    kind, rb = roundtrip(bloch_doc(r))
    assert kind == "bloch" and np.array_equal(rb.components, r.components)


def test_spec_roundtrip(gen):
    spec = random_spec(2, 3, gen)
    kind, back = roundtrip(spec_doc(spec))
    assert kind == "entangled"
    for name in ("psi_a", "phi_a", "psi_b", "phi_b"):
        assert np.array_equal(getattr(back, name), getattr(spec, name))
    assert (back.a1, back.a2, back.alpha1, back.alpha2) == (spec.a1, spec.a2, spec.alpha1, spec.alpha2)


def test_report_wrapper_is_unwrapped():
    kind, _ = load_state({"command": "convert", "state": density_doc(np.eye(2) / 2)})
    assert kind == "density"


@pytest.mark.parametrize("doc", [
    [],
    {"schema": "other/9", "kind": "density"},
    {"schema": SCHEMA, "kind": "nope"},
    {"schema": SCHEMA, "kind": "density"},
    {"schema": SCHEMA, "kind": "density", "matrix": [[1, 0], [0, 0]]},
    {"schema": SCHEMA, "kind": "entangled", "na": 2, "nb": 2, "a1": 1.4},
    {"schema": SCHEMA, "kind": "vector", "vector": [[1, 0], [1, 0]]},
])
def test_malformed(doc):
    with pytest.raises(InputError):
        load_state(doc)
