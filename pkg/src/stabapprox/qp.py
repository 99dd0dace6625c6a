"""Primal active-set solver for small dense least-squares QPs.

Minimizes ||M x - w||^2 subject to G x >= h.  The Hessian 2 M^T M may be
singular; equality-constrained subproblems are solved as least-squares
problems in the null space of the working set, which keeps every iterate
well defined and certifies global optimality (the problem is convex) via
the KKT residual.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import null_space


@dataclass(frozen=True)
class QPResult:
    x: np.ndarray
    iterations: int
    converged: bool
    kkt_residual: float
    active: tuple[int, ...]


def _independent_rows(rows: np.ndarray, candidates: list[int]) -> list[int]:
    """Greedy subset of candidate row indices with full row rank."""
    chosen: list[int] = []
    for i in candidates:
        trial = rows[chosen + [i]]
        if np.linalg.matrix_rank(trial, tol=1e-12) == len(chosen) + 1:
            chosen.append(i)
    return chosen


def kkt_residual(m, w, gmat, h, x, active: list[int]) -> float:
    grad = 2.0 * m.T @ (m @ x - w)
    if active:
        lam, *_ = np.linalg.lstsq(gmat[active].T, grad, rcond=None)
        stat = float(np.max(np.abs(grad - gmat[active].T @ lam)))
        comp = float(np.max(np.abs(lam * (gmat[active] @ x - h[active])), initial=0.0))
    else:
        stat = float(np.max(np.abs(grad), initial=0.0))
        comp = 0.0
    feas = float(np.max(h - gmat @ x, initial=0.0))
    return max(stat, comp, max(feas, 0.0))


def solve_lsq_qp(m, w, gmat, h, x0, max_iter: int = 400) -> QPResult:
    """Active-set minimization of ||M x - w||^2 over {x : G x >= h}.

    x0 must be feasible.  Blocking constraints always enter the working set
    linearly independent of it (g_i d < 0 while G_W d = 0), so only the
    initial working set needs an explicit independence filter.
    """
    m = np.asarray(m, dtype=float)
    w = np.asarray(w, dtype=float)
    gmat = np.asarray(gmat, dtype=float)
    h = np.asarray(h, dtype=float)
    x = np.array(x0, dtype=float)
    n = x.size

    slack = gmat @ x - h
    if float(slack.min(initial=0.0)) < -1e-9:
        raise ValueError(f"infeasible starting point, worst slack {slack.min():.3e}")
    tight = [i for i in range(len(h)) if slack[i] <= 1e-12]
    work = _independent_rows(gmat, tight)

    for it in range(1, max_iter + 1):
        if work:
            z = null_space(gmat[work], rcond=1e-12)
        else:
            z = np.eye(n)
        if z.shape[1] == 0:
            d = np.zeros(n)
        else:
            y, *_ = np.linalg.lstsq(m @ z, w - m @ x, rcond=None)
            d = z @ y

        if float(np.max(np.abs(d), initial=0.0)) <= 1e-13 * max(1.0, float(np.max(np.abs(x)))):
            grad = 2.0 * m.T @ (m @ x - w)
            if not work:
                return QPResult(x, it, True, kkt_residual(m, w, gmat, h, x, work), ())
            lam, *_ = np.linalg.lstsq(gmat[work].T, grad, rcond=None)
            tol = 1e-11 * max(1.0, float(np.max(np.abs(grad))))
            if float(lam.min()) >= -tol:
                return QPResult(
                    x, it, True, kkt_residual(m, w, gmat, h, x, work), tuple(work)
                )
            work.pop(int(np.argmin(lam)))
            continue

        gd = gmat @ d
        slack = gmat @ x - h
        alpha = 1.0
        blocker = None
        for i in range(len(h)):
            if i in work or gd[i] >= -1e-14:
                continue
            step = max(slack[i], 0.0) / (-gd[i])
            if step < alpha:
                alpha = step
                blocker = i
        x = x + alpha * d
        if blocker is not None and alpha < 1.0:
            work.append(blocker)

    return QPResult(x, max_iter, False, kkt_residual(m, w, gmat, h, x, work), tuple(work))
