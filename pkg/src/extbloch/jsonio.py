"""JSON emission with 17 significant digits and the versioned state-file schema."""

from __future__ import annotations

import json
import math

import numpy as np

from .basis import gell_mann_basis
from .bloch import BlochVector
from .entangle import EntangledSpec
from .errors import InputError
from .matrix import DEFAULT_TOL, DensityOperator, as_vector

SCHEMA = "extbloch.state/1"


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise InputError(f"cannot serialise non-finite number {x!r}")
    s = format(x, ".17g")
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def _emit(obj, indent, level, out):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for n, (k, v) in enumerate(obj.items()):
            out.append(pad + json.dumps(str(k)) + ": ")
            _emit(v, indent, level + 1, out)
            out.append(",\n" if n < len(obj) - 1 else "\n")
        out.append(end + "}")
    elif isinstance(obj, (list, tuple)):
        # numeric leaves stay on one line so matrices remain readable
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            out.append("[" + ", ".join(_scalar(v) for v in obj) + "]")
            return
        out.append("[\n")
        for n, v in enumerate(obj):
            out.append(pad)
            _emit(v, indent, level + 1, out)
            out.append(",\n" if n < len(obj) - 1 else "\n")
        out.append(end + "]")
    elif isinstance(obj, np.ndarray):
        _emit(obj.tolist(), indent, level, out)
    else:
        out.append(_scalar(obj))


def _scalar(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if v is None:
        return "null"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return _fmt_float(float(v))
    if isinstance(v, str):
        return json.dumps(v)
    raise TypeError(f"cannot serialise {type(v).__name__}")


def dumps(obj, indent=2) -> str:
    out = []
    _emit(obj, indent, 0, out)
    return "".join(out) + "\n"


def complex_list(v):
    return [[float(z.real), float(z.imag)] for z in np.asarray(v, dtype=np.complex128).ravel()]


def complex_matrix(m):
    return [complex_list(row) for row in np.asarray(m, dtype=np.complex128)]


def parse_complex_array(data, name):
    try:
        a = np.asarray(data, dtype=np.float64)
    except (TypeError, ValueError):
        raise InputError(f"{name}: complex entries must be [re, im] pairs") from None
    if a.ndim < 1 or a.shape[-1] != 2:
        raise InputError(f"{name}: complex entries must be [re, im] pairs")
    if not np.all(np.isfinite(a)):
        raise InputError(f"{name}: contains non-finite numbers")
    return a[..., 0] + 1j * a[..., 1]


def density_doc(m) -> dict:
    m = np.asarray(m)
    return {"schema": SCHEMA, "kind": "density", "n": int(m.shape[0]), "matrix": complex_matrix(m)}


def vector_doc(v) -> dict:
    v = np.asarray(v)
    return {"schema": SCHEMA, "kind": "vector", "n": int(v.shape[0]), "vector": complex_list(v)}


def bloch_doc(r: BlochVector) -> dict:
    return {"schema": SCHEMA, "kind": "bloch", "n": r.n, "basis": "gell-mann", "components": [float(x) for x in r.components]}


def spec_doc(spec: EntangledSpec) -> dict:
    return {
        "schema": SCHEMA, "kind": "entangled", "na": spec.na, "nb": spec.nb,
        "a1": spec.a1, "a2": spec.a2, "alpha1": spec.alpha1, "alpha2": spec.alpha2,
        "psi_a": complex_list(spec.psi_a), "phi_a": complex_list(spec.phi_a),
        "psi_b": complex_list(spec.psi_b), "phi_b": complex_list(spec.phi_b),
    }


def load_state(doc, tol=DEFAULT_TOL):
    """Parse a state document. Returns ``(kind, obj)``.

    ``obj`` is an EntangledSpec, DensityOperator, unit vector array, or
    BlochVector (Gell-Mann basis). Report documents carrying a top-level
    ``"state"`` entry are unwrapped.
    """
    if not isinstance(doc, dict):
        raise InputError("state file must contain a JSON object")
    if "schema" not in doc and isinstance(doc.get("state"), dict):
        doc = doc["state"]
    if doc.get("schema") != SCHEMA:
        raise InputError(f"unsupported state schema {doc.get('schema')!r}; expected {SCHEMA!r}")
    kind = doc.get("kind")
    try:
        if kind == "density":
            return kind, DensityOperator(parse_complex_array(doc["matrix"], "matrix"), tol)
        if kind == "vector":
            return kind, as_vector(parse_complex_array(doc["vector"], "vector"), tol=tol)
        if kind == "bloch":
            if doc.get("basis", "gell-mann") != "gell-mann":
                raise InputError("only Gell-Mann Bloch vectors can be loaded")
            n = int(doc["n"])
            return kind, BlochVector(n, doc["components"], gell_mann_basis(n).name)
        if kind == "entangled":
            vecs = {k: parse_complex_array(doc[k], k) for k in ("psi_a", "phi_a", "psi_b", "phi_b") if k in doc}
            a1 = float(doc["a1"])
            na, nb = int(doc["na"]), int(doc["nb"])
            alpha1, alpha2 = float(doc.get("alpha1", 0.0)), float(doc.get("alpha2", 0.0))
            if "a2" in doc:
                return kind, EntangledSpec(na, nb, a1, float(doc["a2"]), alpha1, alpha2, tol=tol, **vecs)
            return kind, EntangledSpec.from_a1(na, nb, a1, alpha1, alpha2, **vecs)
    except KeyError as exc:
        raise InputError(f"state document of kind {kind!r} is missing field {exc}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed state document: {exc}") from None
    raise InputError(f"unknown state kind {kind!r}")
