"""Crank-Nicolson solver for the 1D Riesz fractional advection-diffusion
equation ``u_t + K u_x = K_alpha d^alpha u / d|x|^alpha + f`` with
homogeneous Dirichlet boundaries.

The implicit matrix is time-independent, so it is LU-factorized once and
the factorization is reused across every time step.  The scheme is
unconditionally stable and second-order accurate in both the time step
and the mesh size.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.linalg import LinAlgError, lu_factor, lu_solve

from .errors import DomainError, SingularMatrixError
from .operators import GridSpec1D, riesz_matrix

__all__ = [
    "AdvectionDiffusionProblem",
    "SolutionGrid",
    "SteppingSystem",
    "assemble_system",
    "step",
    "solve",
    "grid_norm",
]


@dataclass(frozen=True)
class AdvectionDiffusionProblem:
    """Problem data: coefficients, domain, horizon, source, initial data,
    and an optional exact solution for error measurement.

    ``alpha = 2`` is admitted as the classical (integer-order) limit; the
    fractional operator then degenerates to the standard second
    difference.
    """

    alpha: float
    K: float
    K_alpha: float
    domain: tuple[float, float]
    T: float
    source: Callable[[np.ndarray, float], np.ndarray]
    initial: Callable[[np.ndarray], np.ndarray]
    exact: Optional[Callable[[np.ndarray, float], np.ndarray]] = None

    def __post_init__(self) -> None:
        if not 1.0 < self.alpha <= 2.0:
            raise DomainError(f"solver requires alpha in (1, 2], got {self.alpha}")
        if self.K < 0.0:
            raise DomainError(f"advection coefficient K must be >= 0, got {self.K}")
        if self.K_alpha <= 0.0:
            raise DomainError(
                f"diffusion coefficient K_alpha must be > 0, got {self.K_alpha}"
            )
        if self.domain[1] <= self.domain[0]:
            raise DomainError(f"invalid domain {self.domain}")
        if self.T <= 0.0:
            raise DomainError(f"time horizon must be > 0, got {self.T}")


@dataclass(frozen=True)
class SolutionGrid:
    """Solution snapshots on the space-time grid.

    ``snapshots`` has one row per retained time level (all N+1 levels, or
    just the final one), each of length M+1 with zero boundary columns.
    ``times`` gives the time level of each retained row.
    """

    grid: GridSpec1D
    tau: float
    N: int
    times: np.ndarray
    snapshots: np.ndarray

    def final(self) -> np.ndarray:
        return self.snapshots[-1]


@dataclass(frozen=True)
class SteppingSystem:
    """One-time factorization of the implicit Crank-Nicolson system.

    ``lhs = I + (tau/2)(K C - K_alpha R)`` and
    ``B = I - (tau/2)(K C - K_alpha R)``, where C is the central
    difference matrix and R the Riesz operator matrix; lhs + B = 2I.
    """

    lu: tuple
    lhs: np.ndarray
    B: np.ndarray
    grid: GridSpec1D
    tau: float
    problem: AdvectionDiffusionProblem
    x_interior: np.ndarray


def _riesz_entries(alpha: float, grid: GridSpec1D) -> np.ndarray:
    if alpha == 2.0:
        # classical limit: the operator degenerates to the second difference
        m = grid.M - 1
        lap = np.zeros((m, m))
        idx = np.arange(m)
        lap[idx, idx] = -2.0
        lap[idx[:-1], idx[:-1] + 1] = 1.0
        lap[idx[1:], idx[1:] - 1] = 1.0
        return lap / grid.h**2
    return riesz_matrix(alpha, 2, grid).entries


def assemble_system(
    problem: AdvectionDiffusionProblem, M: int, N: int
) -> SteppingSystem:
    """Build and factorize the Crank-Nicolson stepping system."""
    if M < 4:
        raise DomainError(f"solver requires M >= 4, got M={M}")
    if N < 1:
        raise DomainError(f"solver requires N >= 1, got N={N}")
    a, b = problem.domain
    grid = GridSpec1D(a, b, M)
    tau = problem.T / N
    h = grid.h
    m = M - 1

    R = _riesz_entries(problem.alpha, grid)
    C = np.zeros((m, m))
    idx = np.arange(m)
    C[idx[:-1], idx[:-1] + 1] = 1.0 / (2.0 * h)
    C[idx[1:], idx[1:] - 1] = -1.0 / (2.0 * h)

    A = problem.K * C - problem.K_alpha * R
    lhs = np.eye(m) + (tau / 2.0) * A
    B = np.eye(m) - (tau / 2.0) * A
    try:
        lu = lu_factor(lhs)
    except LinAlgError as exc:  # unreachable for valid alpha; internal invariant
        raise SingularMatrixError(f"stepping matrix factorization failed: {exc}")
    x_interior = grid.nodes()[1:M]
    return SteppingSystem(lu, lhs, B, grid, tau, problem, x_interior)


def step(system: SteppingSystem, u_k: np.ndarray, t_k: float) -> np.ndarray:
    """Advance interior values one time level, sampling the source at the
    half level t_k + tau/2."""
    rhs = system.B @ u_k + system.tau * np.asarray(
        system.problem.source(system.x_interior, t_k + system.tau / 2.0), dtype=float
    )
    return lu_solve(system.lu, rhs)


def solve(
    problem: AdvectionDiffusionProblem, M: int, N: int, keep: str = "final"
) -> SolutionGrid:
    """Run N Crank-Nicolson steps from the sampled initial data.

    ``keep="all"`` retains every time level (for error surfaces);
    ``keep="final"`` retains only t = T to bound memory.
    """
    if keep not in ("all", "final"):
        raise DomainError(f"keep must be 'all' or 'final', got {keep!r}")
    system = assemble_system(problem, M, N)
    grid = system.grid
    tau = system.tau
    x = grid.nodes()
    u = np.asarray(problem.initial(x), dtype=float)[1:M]

    rows = []
    if keep == "all":
        full = np.zeros(M + 1)
        full[1:M] = u
        rows.append(full)
    for k in range(N):
        u = step(system, u, k * tau)
        if keep == "all":
            full = np.zeros(M + 1)
            full[1:M] = u
            rows.append(full)
    if keep == "final":
        full = np.zeros(M + 1)
        full[1:M] = u
        times = np.array([N * tau])
        snapshots = full[np.newaxis, :]
    else:
        times = tau * np.arange(N + 1)
        snapshots = np.array(rows)
    return SolutionGrid(grid, tau, N, times, snapshots)


def grid_norm(values: np.ndarray, h: float) -> float:
    """Discrete L2 norm ``sqrt(h sum u_j**2)`` over interior values."""
    values = np.asarray(values, dtype=float)
    return float(np.sqrt(h * np.sum(values * values)))
