import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from abcover import _pykernels, kernels
from abcover.bgvm import _scan_inputs
from abcover.generators import SplitMix64, random_multigraph

ck = pytest.importorskip("abcover._ckernels")


def random_hermitian(n, seed):
    r = SplitMix64(seed)
    a = np.array([[r.uniform() - 0.5 + 1j * (r.uniform() - 0.5) for _ in range(n)]
                  for _ in range(n)])
    return a + a.conj().T


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")
    if kernels.BACKEND == "cython":
        assert kernels.jacobi_eigvalsh is ck.jacobi_eigvalsh


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 12])
def test_jacobi_against_lapack(n):
    for seed in range(5):
        a = random_hermitian(n, seed * 31 + n)
        ref = np.linalg.eigvalsh(a)
        assert np.allclose(_pykernels.jacobi_eigvalsh(a), ref, atol=1e-11)
        assert np.allclose(ck.jacobi_eigvalsh(a), ref, atol=1e-11)


def test_jacobi_degenerate():
    a = np.zeros((4, 4), dtype=complex)
    assert np.array_equal(ck.jacobi_eigvalsh(a), np.zeros(4))
    assert np.allclose(ck.jacobi_eigvalsh(np.eye(3) * 2), [2, 2, 2])


@given(st.integers(0, 2 ** 40), st.integers(1, 9), st.integers(0, 14))
@settings(max_examples=80, deadline=None)
def test_forest_scan_backends_agree(seed, n, m):
    g = random_multigraph(n, m, seed)
    nbr, mult, loops = _scan_inputs(g)
    for cap in (n, max(1, n // 2)):
        a = sorted(tuple(map(int, t)) for t in ck.forest_scan(n, list(nbr), mult, loops, cap))
        b = sorted(tuple(map(int, t)) for t in _pykernels.forest_scan(n, list(nbr), mult, loops, cap))
        assert a == b
