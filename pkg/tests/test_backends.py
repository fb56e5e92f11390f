import os
import subprocess
import sys

import numpy as np
import pytest

from spectral_turan import _fallback
from spectral_turan.graph import gen_gnp
from conftest import _core

needs_core = pytest.mark.skipif(_core is None, reason="compiled extension not built")


def _sorted_eigh(kernel, a):
    w, v, sweeps, off, converged = kernel.jacobi_eigh(a)
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order], converged


@pytest.mark.parametrize("n", [1, 2, 3, 10, 37, 80])
def test_jacobi_reconstructs(kernel, n):
    a = gen_gnp(n, 0.4, n).adjacency(dtype=np.float64)
    w, v, converged = _sorted_eigh(kernel, a)
    assert converged
    assert np.abs(v @ np.diag(w) @ v.T - a).max() < 1e-10
    assert np.abs(v.T @ v - np.eye(n)).max() < 1e-10
    assert np.allclose(w, np.sort(np.linalg.eigvalsh(a))[::-1], atol=1e-10)


def test_jacobi_dense_symmetric(kernel):
    rng = np.random.default_rng(0)
    m = rng.normal(size=(25, 25))
    a = m + m.T
    w, v, converged = _sorted_eigh(kernel, a)
    assert converged and np.abs(a @ v - v * w).max() < 1e-10


@needs_core
@pytest.mark.parametrize("seed", range(10))
def test_kernels_agree_on_spectrum(seed):
    a = gen_gnp(30, 0.5, seed).adjacency(dtype=np.float64)
    wc, _, _ = _sorted_eigh(_core, a)
    wp, _, _ = _sorted_eigh(_fallback, a)
    assert np.abs(wc - wp).max() < 1e-10


@needs_core
@pytest.mark.parametrize("n", range(1, 8))
def test_regular_codes_agree(n):
    assert np.array_equal(np.asarray(_core.regular_codes(n)), np.asarray(_fallback.regular_codes(n)))


def test_regular_codes_count(kernel):
    # n = 7 allows even degrees only: 1 (d=0) + 465 (d=2) + 465 (d=4, complements) + 1 (d=6)
    assert len(kernel.regular_codes(7)) == 932


@needs_core
@pytest.mark.parametrize("seed", range(20))
def test_clique_agree(seed):
    a = gen_gnp(40, 0.6, seed).adjacency(dtype=bool)
    assert _core.max_clique(a)[0] == _fallback.max_clique(a)[0]


def test_env_forces_fallback():
    env = dict(os.environ, SPECTRAL_TURAN_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from spectral_turan._backend import BACKEND; print(BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.strip() == "python"
