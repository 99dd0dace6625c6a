"""Distance and fidelity functionals on one-qubit channels.

Distances are taken between process matrices; fidelities are functionals
of the Kraus operators.  For a Bloch-parametrized input state the fidelity
integrand sum_i |Tr(V^dag K_i rho)|^2 is a convex quadratic form in the
Bloch vector, so the inner minimization behind the worst-case fidelity is
solved exactly (eigendecomposition plus a one-dimensional secular
equation) rather than by sampling.
"""

from __future__ import annotations

import numpy as np

from .channels import ATOL, X, Y, Z, ChiMatrix, KrausChannel

CONSTRAINT_KINDS = ("avg", "worst")

#: Domains for the worst-case input minimization: pure states (the Bloch
#: sphere) or all density matrices (the closed Bloch ball).
WORST_DOMAINS = ("pure", "mixed")


def hs_distance(a: ChiMatrix, b: ChiMatrix) -> float:
    """Normalized Hilbert-Schmidt distance ||a - b||_F^2 / 8.

    Ranges from 0 for identical channels to 1 for orthogonal ones (the
    normalization 1/(2 N^2) with N = 2 for a single qubit).
    """
    d = a.matrix - b.matrix
    return float(np.sum(np.abs(d) ** 2)) / 8.0


def _check_unitary(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    if v.shape != (2, 2):
        raise ValueError(f"reference operator must be 2x2, got {v.shape}")
    if np.max(np.abs(v.conj().T @ v - np.eye(2))) > ATOL:
        raise ValueError("reference operator is not unitary")
    return v


def avg_fidelity(v: np.ndarray, ch: KrausChannel) -> float:
    """Average fidelity (1/4) sum_i |Tr(V^dag K_i)|^2 of a channel against
    a unitary V.  Equals 1 exactly when the channel applies V."""
    v = _check_unitary(v)
    vd = v.conj().T
    total = sum(abs(np.trace(vd @ k)) ** 2 for k in ch.ops)
    return float(min(max(total / 4.0, 0.0), 1.0))


def fidelity_quadratic(
    v: np.ndarray, ch: KrausChannel
) -> tuple[np.ndarray, np.ndarray, float]:
    """Coefficients (H, g, c) of sum_i |Tr(V^dag K_i rho(r))|^2 as the
    quadratic form r.H.r + 2 g.r + c in the Bloch vector r.

    H is real symmetric positive semidefinite and g lies in its range, so
    the form is bounded below and its constrained minima are well posed.
    """
    v = _check_unitary(v)
    vd = v.conj().T
    h = np.zeros((3, 3))
    g = np.zeros(3)
    c = 0.0
    for k in ch.ops:
        vk = vd @ k
        alpha = np.trace(vk) / 2.0
        beta = np.array([np.trace(vk @ s) for s in (X, Y, Z)]) / 2.0
        h += np.real(np.outer(beta, beta.conj()))
        g += np.real(np.conj(alpha) * beta)
        c += abs(alpha) ** 2
    return (h + h.T) / 2.0, g, float(c)


def _sphere_argmin(lam: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Global minimizer of sum lam_j u_j^2 + 2 b.u on the unit sphere.

    lam must be ascending (eigh output).  The minimizer solves
    u = -(lam + mu)^{-1} b with the unique mu >= -lam[0] at which
    ||u|| = 1; when b has no component on the bottom eigenspace the
    solution may need padding inside that eigenspace.
    """
    lam0 = lam[0]
    scale = max(1.0, float(np.max(np.abs(lam))), float(np.linalg.norm(b)))
    bottom = (lam - lam0) <= 1e-13 * scale

    if float(np.max(np.abs(b[bottom]), initial=0.0)) <= 1e-13 * scale:
        u = np.zeros(3)
        rest = ~bottom
        u[rest] = -b[rest] / (lam[rest] - lam0)
        n2 = float(u @ u)
        if n2 <= 1.0:
            u[int(np.argmax(bottom))] = np.sqrt(1.0 - n2)
            return u

    def norm2(mu: float) -> float:
        return float(np.sum((b / (lam + mu)) ** 2))

    bnorm = float(np.linalg.norm(b))
    hi = -lam0 + bnorm  # norm2(hi) <= 1 since ||u|| <= bnorm/(lam0+mu)
    lo = None
    step = bnorm
    for _ in range(200):
        step *= 0.5
        if norm2(-lam0 + step) >= 1.0:
            lo = -lam0 + step
            break
    if lo is None:
        # Numerically indistinguishable from the padded case above.
        u = np.zeros(3)
        rest = ~bottom
        u[rest] = -b[rest] / (lam[rest] - lam0)
        n2 = min(float(u @ u), 1.0)
        u[int(np.argmax(bottom))] = np.sqrt(1.0 - n2)
        return u / float(np.linalg.norm(u))
    for _ in range(120):
        mid = 0.5 * (lo + hi)
        if norm2(mid) >= 1.0:
            lo = mid
        else:
            hi = mid
    u = -b / (lam + 0.5 * (lo + hi))
    return u / float(np.linalg.norm(u))


def _ball_argmin(lam: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Global minimizer of sum lam_j u_j^2 + 2 b.u on the closed unit ball
    for lam >= 0 (up to roundoff)."""
    scale = max(1.0, float(np.max(np.abs(lam))), float(np.linalg.norm(b)))
    pos = lam > 1e-12 * scale
    if float(np.max(np.abs(b[~pos]), initial=0.0)) <= 1e-11 * scale:
        u = np.zeros(3)
        u[pos] = -b[pos] / lam[pos]
        if float(u @ u) <= 1.0:
            return u
    return _sphere_argmin(lam, b)


def min_quadratic_form(
    h: np.ndarray, g: np.ndarray, c: float, *, domain: str = "pure"
) -> tuple[float, np.ndarray]:
    """Minimize r.H.r + 2 g.r + c over Bloch vectors.

    domain="pure" restricts to the unit sphere, domain="mixed" searches the
    closed unit ball.  Returns (minimum value, minimizing Bloch vector).
    """
    if domain not in WORST_DOMAINS:
        raise ValueError(f"domain must be one of {WORST_DOMAINS}, got {domain!r}")
    h = (np.asarray(h, dtype=float) + np.asarray(h, dtype=float).T) / 2.0
    g = np.asarray(g, dtype=float)
    lam, q = np.linalg.eigh(h)
    b = q.T @ g
    u = _sphere_argmin(lam, b) if domain == "pure" else _ball_argmin(lam, b)
    r = q @ u
    value = float(r @ h @ r + 2.0 * (g @ r) + c)
    return value, r


def worst_fidelity_point(
    v: np.ndarray, ch: KrausChannel, *, domain: str = "pure"
) -> tuple[float, np.ndarray]:
    """Worst-case fidelity together with the minimizing input Bloch vector."""
    h, g, c = fidelity_quadratic(v, ch)
    value, r = min_quadratic_form(h, g, c, domain=domain)
    return min(max(value, 0.0), 1.0), r


def worst_fidelity(v: np.ndarray, ch: KrausChannel, *, domain: str = "pure") -> float:
    """Worst-case fidelity: min over inputs of sum_i |Tr(V^dag K_i rho)|^2.

    By default the minimum runs over pure inputs (the Bloch sphere).  The
    integrand is convex in rho and equals avg_fidelity at the maximally
    mixed state, so extending the domain to all density matrices
    (domain="mixed") can only lower the value; both variants are exposed.
    Note that this functional is the state-wise version of the average
    fidelity sum, not the Uhlmann worst-case state fidelity.
    """
    return worst_fidelity_point(v, ch, domain=domain)[0]
