import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_graph
from inftur import _kernels
from inftur import feasibility as fz
from inftur.furedi import build_furedi, strip_loops

py = _kernels.backend_module("python")
try:
    cy = _kernels.backend_module("cython")
except ImportError:
    cy = None

needs_ext = pytest.mark.skipif(cy is None, reason="compiled extension not built")


def test_backend_flag():
    assert _kernels.BACKEND in ("cython", "python")


def test_env_var_forces_python():
    out = subprocess.run([sys.executable, "-c", "from inftur import _kernels; print(_kernels.BACKEND)"],
                         env={**os.environ, "INFTUR_PURE_PYTHON": "1"}, capture_output=True, text=True)
    assert out.stdout.strip() == "python"


@needs_ext
@settings(max_examples=40, deadline=None)
@given(st.integers(2, 40), st.floats(0.05, 0.9), st.integers(0, 2**32 - 1))
def test_codegree_backends_agree(n, dens, seed):
    G = random_graph(np.random.default_rng(seed), n, dens)
    a = py.max_codegree(G.indptr, G.indices, G.n)
    b = cy.max_codegree(G.indptr, G.indices, G.n)
    assert a[0] == b[0]
    assert (py.codegree_block(G.indptr, G.indices, n, 0, n) == cy.codegree_block(G.indptr, G.indices, n, 0, n)).all()


@needs_ext
def test_codegree_backends_agree_on_furedi():
    G = strip_loops(build_furedi(23, 2))
    assert py.max_codegree(G.indptr, G.indices, G.n)[0] == cy.max_codegree(G.indptr, G.indices, G.n)[0] == 2


@needs_ext
@pytest.mark.parametrize("n", [1, 2, 7, 30, 61])
def test_jacobi_backends_agree(n):
    rng = np.random.default_rng(n)
    M = rng.standard_normal((n, n))
    M = M + M.T
    ref = np.linalg.eigvalsh(M)
    for mod in (py, cy):
        d, sweeps, off = mod.jacobi_eigenvalues(M.copy(), 1e-12, 100)
        assert np.sort(d) == pytest.approx(ref, abs=1e-10)
        assert off <= 1e-12 * np.linalg.norm(M) or n == 1


@needs_ext
@settings(max_examples=15, deadline=None)
@given(st.integers(1, 12), st.floats(0.2, 0.6), st.integers(0, 2**32 - 1))
def test_projection_backends_agree(k, c, seed):
    s = fz.build_system(k, 1, c, 0.0)
    arr = s.kernel_arrays()
    x0 = np.random.default_rng(seed).uniform(0, 1, s.n_vars)
    outs = []
    for mod in (py, cy):
        x = x0.copy()
        res = mod.project_run(x, arr["levels"], arr["sizes"], arr["rhs"], arr["cap_ptr"], arr["cap_idx"],
                              arr["cap_w"], s.radius, 1.9, 1e-9, 1e-12, 2000)
        outs.append((res, x))
    (ra, xa), (rb, xb) = outs
    assert ra[0] == rb[0]
    assert xa == pytest.approx(xb, abs=1e-9)
    if ra[0] == 0:
        assert fz.evaluate_violation(s, xa) <= 1e-9
