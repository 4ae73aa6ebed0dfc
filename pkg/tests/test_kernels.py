import numpy as np
import pytest

from extbloch import kernels
from extbloch.rand import ginibre, random_density

BACKENDS = kernels.backends()


def kron_oracle(a, b):
    out = np.zeros((a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]), dtype=complex)
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            for k in range(b.shape[0]):
                for l in range(b.shape[1]):
                    out[i * b.shape[0] + k, j * b.shape[1] + l] = a[i, j] * b[k, l]
    return out


def partial_trace_oracle(d, na, nb, side):
    if side == "B":
        return np.array([[sum(d[i * nb + k, j * nb + k] for k in range(nb)) for j in range(na)] for i in range(na)])
    return np.array([[sum(d[k * nb + i, k * nb + j] for k in range(na)) for j in range(nb)] for i in range(nb)])


def test_compiled_backend_built():
    assert "cython" in BACKENDS, "compiled kernels did not build"


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_kron_matches_index_formula(name, gen):
    impl = BACKENDS[name]
    a, b = ginibre(2, 3, gen), ginibre(3, 2, gen)
    assert np.allclose(impl.kron(np.ascontiguousarray(a), np.ascontiguousarray(b)), kron_oracle(a, b), atol=1e-14)


@pytest.mark.parametrize("name", sorted(BACKENDS))
@pytest.mark.parametrize("na,nb", [(2, 2), (2, 3), (3, 2), (3, 4)])
def test_partial_trace_matches_summation(name, na, nb, gen):
    impl = BACKENDS[name]
    d = random_density(na * nb, gen)
    assert np.allclose(impl.partial_trace(d, na, nb, True), partial_trace_oracle(d, na, nb, "B"), atol=1e-14)
    assert np.allclose(impl.partial_trace(d, na, nb, False), partial_trace_oracle(d, na, nb, "A"), atol=1e-14)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_trace_products(name, gen):
    impl = BACKENDS[name]
    d = np.ascontiguousarray(ginibre(4, 4, gen))
    gens = np.ascontiguousarray(np.stack([ginibre(4, 4, gen) for _ in range(5)]))
    expected = [np.trace(d @ g) for g in gens]
    assert np.allclose(impl.trace_products(d, gens), expected, atol=1e-13)


def test_count_outcomes_backends_agree_exactly(gen):
    u = gen.random(200_001)
    cdf = np.cumsum([0.1, 0.0, 0.35, 0.2, 0.35])
    cdf[-1] = 1.0
    results = [impl.count_outcomes(u, cdf) for impl in BACKENDS.values()]
    for r in results:
        assert r.sum() == u.size
        assert r[1] == 0
        np.testing.assert_array_equal(r, results[0])


def test_count_outcomes_boundaries():
    cdf = np.array([0.25, 1.0])
    u = np.array([0.0, 0.2499999, 0.25, 0.9999999])
    for impl in BACKENDS.values():
        np.testing.assert_array_equal(impl.count_outcomes(u, cdf), [2, 2])


def test_pure_fallback_selected_by_env():
    import subprocess
    import sys

    code = "import extbloch; print(extbloch.BACKEND)"
    env = {**__import__("os").environ, "EXTBLOCH_PURE": "1"}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_pure_fallback_suite_passes():
    import os
    import subprocess
    import sys

    env = {**os.environ, "EXTBLOCH_PURE": "1"}
    res = subprocess.run([sys.executable, "-m", "extbloch", "verify", "--dims", "2,3", "--trials", "5"],
                         env=env, capture_output=True, text=True)
    assert res.returncode == 0, res.stdout + res.stderr
