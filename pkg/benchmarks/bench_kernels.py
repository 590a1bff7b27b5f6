"""Time the compiled and pure-Python kernel backends on the same inputs.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

import numpy as np

from inftur import _kernels
from inftur import feasibility as fz
from inftur.furedi import build_furedi, strip_loops


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    G = strip_loops(build_furedi(53, 1))  # 2808 vertices
    yield "max_codegree H_{53,1}", lambda m: m.max_codegree(G.indptr, G.indices, G.n)

    A = build_furedi(17, 1).to_dense().astype(np.float64)  # 288 x 288
    yield "jacobi H_{17,1}", lambda m: m.jacobi_eigenvalues(A.copy(), 1e-12, 100)

    s = fz.build_system(30, 1, 0.41, 1e-8)
    arr = s.kernel_arrays()
    x0 = np.random.default_rng(0).uniform(0, 1, s.n_vars)

    def project(m):
        m.project_run(x0.copy(), arr["levels"], arr["sizes"], arr["rhs"], arr["cap_ptr"], arr["cap_idx"],
                      arr["cap_w"], s.radius, 1.9, 1e-9, 1e-12, 2000)
    yield "project_run k=30, 2000 sweeps", project


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    py = _kernels.backend_module("python")
    try:
        cy = _kernels.backend_module("cython")
    except ImportError:
        cy = None
    print(f"{'kernel':34s} {'cython [s]':>11s} {'python [s]':>11s} {'speedup':>8s}")
    for name, fn in cases():
        tp = best_of(lambda: fn(py), args.repeat)
        if cy is None:
            print(f"{name:34s} {'n/a':>11s} {tp:11.4f} {'n/a':>8s}")
            continue
        tc = best_of(lambda: fn(cy), args.repeat)
        print(f"{name:34s} {tc:11.4f} {tp:11.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
