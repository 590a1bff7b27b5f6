"""The 2k-inequality system over block densities and a projection-based feasibility solver.

Variables are a_1..a_k (edges inside block i, in units of n^1.5) and b_ij
for i < j (edges between blocks i and j), all non-negative, ordered a's
first then b's lexicographically. Constraints:

    sum_{i<=l} a_i + sum_{i<j<=l} b_ij >= c l^1.5           (l = 1..k)
    sum_{l<i} b_li^2 + 4 a_i^2 + sum_{l>i} b_il^2 <= t + delta   (i = 1..k)

Every constraint set is convex with a cheap exact projection, so feasibility
is decided by relaxed cyclic projections from seeded random starts. A
non-feasible verdict is numerical evidence only; for k = 2 the analytic
test :func:`k2_infeasibility_test` is a proof.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import BracketInvalid, DimensionMismatch, DomainError

FEASIBLE = "Feasible"
INFEASIBLE = "InfeasibleNumeric"
UNDECIDED = "Undecided"

DEFAULT_FEAS_TOL = 1e-9
DEFAULT_RESTARTS = 64
DEFAULT_MAX_SWEEPS = 100_000
DEFAULT_RELAX = 1.9
DEFAULT_CONV_TOL = 1e-12
DEFAULT_SEED = 0


@dataclass(frozen=True)
class InequalitySystem:
    k: int
    t: int
    c: float
    delta: float

    def __post_init__(self):
        if self.k < 1 or self.t < 1 or self.c < 0 or self.delta < 0:
            raise ValueError("need k >= 1, t >= 1, c >= 0, delta >= 0")

    @property
    def n_vars(self) -> int:
        return self.k + self.k * (self.k - 1) // 2

    @property
    def n_constraints(self) -> int:
        return 2 * self.k

    @property
    def radius(self) -> float:
        return self.t + self.delta

    def a(self, i: int) -> int:
        """Index of a_i (1-based i)."""
        if not 1 <= i <= self.k:
            raise IndexError(i)
        return i - 1

    def b(self, i: int, j: int) -> int:
        """Index of b_ij for 1 <= i < j <= k."""
        if not 1 <= i < j <= self.k:
            raise IndexError((i, j))
        i0, j0 = i - 1, j - 1
        return self.k + i0 * (2 * self.k - i0 - 1) // 2 + (j0 - i0 - 1)

    def var_names(self) -> list[str]:
        names = [f"a{i}" for i in range(1, self.k + 1)]
        names += [f"b{i}_{j}" for i in range(1, self.k + 1) for j in range(i + 1, self.k + 1)]
        return names

    def kernel_arrays(self) -> dict:
        """Flat arrays consumed by the projection kernels."""
        k = self.k
        levels = np.empty(self.n_vars, dtype=np.int32)
        levels[:k] = np.arange(k)
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                levels[self.b(i, j)] = j - 1
        ls = np.arange(1, k + 1)
        sizes = (ls + ls * (ls - 1) // 2).astype(np.int64)
        rhs = self.c * ls.astype(np.float64) ** 1.5
        idx, w, ptr = [], [], [0]
        for i in range(1, k + 1):
            row = [self.b(l, i) for l in range(1, i)] + [self.a(i)] + [self.b(i, l) for l in range(i + 1, k + 1)]
            idx += row
            w += [1.0] * (i - 1) + [4.0] + [1.0] * (k - i)
            ptr.append(len(idx))
        return dict(levels=levels, sizes=sizes, rhs=rhs,
                    cap_ptr=np.array(ptr, dtype=np.int64),
                    cap_idx=np.array(idx, dtype=np.int32),
                    cap_w=np.array(w, dtype=np.float64))


def build_system(k: int, t: int, c: float, delta: float) -> InequalitySystem:
    return InequalitySystem(k, t, float(c), float(delta))


def evaluate_violation(sys: InequalitySystem, x) -> float:
    """Largest positive violation over all 2k constraints and the sign constraints."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (sys.n_vars,):
        raise DimensionMismatch(f"expected {sys.n_vars} values, got {x.shape}")
    k = sys.k
    worst = max(0.0, float(-x.min()))
    for l in range(1, k + 1):
        total = sum(x[sys.a(i)] for i in range(1, l + 1))
        total += sum(x[sys.b(i, j)] for j in range(2, l + 1) for i in range(1, j))
        worst = max(worst, sys.c * l ** 1.5 - total)
    for i in range(1, k + 1):
        q = 4 * x[sys.a(i)] ** 2
        q += sum(x[sys.b(l, i)] ** 2 for l in range(1, i))
        q += sum(x[sys.b(i, l)] ** 2 for l in range(i + 1, k + 1))
        worst = max(worst, q - sys.radius)
    return float(worst)


@dataclass
class FeasibilityReport:
    status: str
    k: int
    t: int
    c: float
    delta: float
    feas_tol: float
    max_violation: float
    gap: float | None
    restarts: int
    iterations: int
    seed: int
    point: np.ndarray | None = field(default=None, repr=False)

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE

    def to_record(self) -> dict[str, str]:
        rec = {
            "status": self.status,
            "k": str(self.k),
            "t": str(self.t),
            "c": repr(self.c),
            "delta": repr(self.delta),
            "feas_tol": repr(self.feas_tol),
            "max_violation": f"{self.max_violation:.17g}",
            "gap": "none" if self.gap is None else f"{self.gap:.17g}",
            "restarts": str(self.restarts),
            "iterations": str(self.iterations),
            "seed": str(self.seed),
        }
        if self.point is not None:
            rec["point"] = " ".join(f"{v:.17g}" for v in self.point)
        return rec


@dataclass
class _Run:
    code: int
    sweeps: int
    best: float
    x: np.ndarray


def _run_restart(arrays, radius, x0, relax, feas_tol, conv_tol, max_sweeps) -> _Run:
    x = np.ascontiguousarray(x0, dtype=np.float64)
    code, sweeps, best, _ = _kernels.project_run(
        x, arrays["levels"], arrays["sizes"], arrays["rhs"], arrays["cap_ptr"],
        arrays["cap_idx"], arrays["cap_w"], radius, relax, feas_tol, conv_tol, max_sweeps)
    return _Run(int(code), int(sweeps), float(best), x)


def solve_feasibility(sys: InequalitySystem, feas_tol: float = DEFAULT_FEAS_TOL,
                      restarts: int = DEFAULT_RESTARTS, *, seed: int = DEFAULT_SEED,
                      max_sweeps: int = DEFAULT_MAX_SWEEPS, relax: float = DEFAULT_RELAX,
                      conv_tol: float = DEFAULT_CONV_TOL, workers: int = 1) -> FeasibilityReport:
    """Search for a point with max violation <= ``feas_tol``.

    Restart r starts from a uniform point in [0, sqrt(t + delta)]^d drawn from
    the r-th child of ``SeedSequence(seed)``. The report is Feasible for the
    lowest-index successful restart, InfeasibleNumeric when every restart
    converged (sweep-to-sweep change <= conv_tol) with best violation above
    10 * feas_tol, and Undecided otherwise. Results do not depend on ``workers``.
    """
    if feas_tol <= 0:
        raise ValueError("feas_tol must be positive")
    if not 0 < relax < 2:
        raise ValueError("relax must lie in (0, 2)")
    base = dict(k=sys.k, t=sys.t, c=sys.c, delta=sys.delta, feas_tol=feas_tol, seed=seed)
    origin = np.zeros(sys.n_vars)
    v0 = evaluate_violation(sys, origin)
    if v0 <= feas_tol:
        return FeasibilityReport(FEASIBLE, max_violation=v0, gap=None, restarts=0,
                                 iterations=0, point=origin, **base)
    arrays = sys.kernel_arrays()
    children = np.random.SeedSequence(seed).spawn(restarts)
    hi = math.sqrt(sys.radius)

    def job(r):
        x0 = np.random.default_rng(children[r]).uniform(0.0, hi, sys.n_vars)
        return _run_restart(arrays, sys.radius, x0, relax, feas_tol, conv_tol, max_sweeps)

    runs: list[_Run] = []
    batch = max(1, workers)
    with ThreadPoolExecutor(max_workers=batch) as pool:
        for lo in range(0, restarts, batch):
            runs.extend(pool.map(job, range(lo, min(restarts, lo + batch))))
            if any(r.code == 0 for r in runs):
                break
    for r, run in enumerate(runs):
        if run.code == 0:
            used = runs[:r + 1]
            return FeasibilityReport(FEASIBLE, max_violation=evaluate_violation(sys, run.x), gap=None,
                                     restarts=r + 1, iterations=sum(u.sweeps for u in used),
                                     point=run.x, **base)
    gap = min((run.best for run in runs), default=math.inf)
    converged = all(run.code == 1 for run in runs)
    status = INFEASIBLE if converged and gap > 10 * feas_tol else UNDECIDED
    return FeasibilityReport(status, max_violation=gap, gap=gap, restarts=len(runs),
                             iterations=sum(run.sweeps for run in runs), **base)


def bisect_threshold(k: int, t: int, delta: float, c_lo: float, c_hi: float, tol: float,
                     trace: list | None = None, **solve_kwargs) -> float:
    """Locate the largest feasible c by bisection; each probe is a fresh solve.

    Non-feasible verdicts (including Undecided) move the upper end. Appends
    ``(c, status)`` per probe to ``trace`` when given.
    """
    if tol <= 0 or not c_lo < c_hi:
        raise ValueError("need tol > 0 and c_lo < c_hi")

    def probe(c):
        rep = solve_feasibility(build_system(k, t, c, delta), **solve_kwargs)
        if trace is not None:
            trace.append((c, rep.status))
        return rep.feasible

    if not probe(c_lo):
        raise BracketInvalid(f"c_lo={c_lo} is not feasible")
    if probe(c_hi):
        raise BracketInvalid(f"c_hi={c_hi} is feasible")
    lo, hi = c_lo, c_hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if probe(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def k2_closed_form_max(t: float, delta: float) -> float:
    """max 3x + z subject to 4x^2 + z^2 = t + delta, x, z >= 0, which is 13 sqrt((t+delta)/52)."""
    if t + delta <= 0:
        raise DomainError("t + delta must be positive")
    return 13 * math.sqrt((t + delta) / 52)


def upper_constant(t: float = 1) -> float:
    """(sqrt(13)/14)(sqrt(8) - 1) sqrt(t)."""
    return math.sqrt(13) / 14 * (math.sqrt(8) - 1) * math.sqrt(t)


def k2_infeasibility_test(t: float, delta: float, c: float) -> bool:
    """Sufficient test that the k = 2 system is empty: c (1 + sqrt 8) > 13 sqrt((t+delta)/52).

    Equality up to a relative 1e-12 counts as not infeasible, so c = c_t
    itself is never rejected by rounding.
    """
    return c * (1 + math.sqrt(8)) > k2_closed_form_max(t, delta) * (1 + 1e-12)


def delta_threshold(t: float, eps: float) -> float:
    """52 (sqrt(t/52) + eps (1 + 2^1.5)/26)^2 - t."""
    if eps <= 0:
        raise DomainError("eps must be positive")
    return 52 * (math.sqrt(t / 52) + eps / 26 * (1 + 2 ** 1.5)) ** 2 - t
