"""Boundary value problem for geodesics: minimize energy + penalty over interior slices.

The boundary curves stay fixed; the unknowns are slices 1..T-1. The solver is
limited-memory BFGS (two-loop recursion) with a strong Wolfe line search
(bracketing plus cubic-interpolation zoom). The initial inverse-Hessian guess is a sparse
Gauss-Newton factorization, refreshed every ``precond_every`` iterations.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .curvegeom import DegenerateEdge, as_polygon
from .gradient import objective_and_gradient
from .metrics import MetricCoefficients
from .precondition import Preconditioner

log = logging.getLogger(__name__)

MAX_HALVINGS = 30


class SizeMismatch(ValueError):
    pass


class LineSearchFailure(RuntimeError):
    pass


@dataclass
class SolverConfig:
    max_iters: int = 2000
    grad_tol: float = 1e-5
    step_tol: float = 1e-10
    step_window: int = 5
    memory: int = 10
    penalty_weight: float = 1.0
    c1: float = 1e-4
    c2: float = 0.9
    signed_curvature: bool = False
    precondition: bool = True
    precond_every: int = 20
    precond_ridge: float = 1e-6

    def __post_init__(self):
        for name in ("grad_tol", "step_tol", "c1", "c2"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not self.c1 < self.c2 < 1:
            raise ValueError("line search needs 0 < c1 < c2 < 1")
        if self.max_iters < 0 or self.memory < 1 or self.step_window < 1:
            raise ValueError("max_iters >= 0, memory >= 1 and step_window >= 1 required")
        if self.precond_every < 1 or not self.precond_ridge > 0:
            raise ValueError("precond_every >= 1 and precond_ridge > 0 required")
        if self.penalty_weight < 0:
            raise ValueError("penalty_weight must be nonnegative")


@dataclass
class TraceRow:
    iter: int
    objective: float
    energy: float
    penalty: float
    grad_norm: float


@dataclass
class SolveReport:
    iterations: int
    objective: float
    energy: float
    penalty: float
    grad_norm: float
    termination: str
    trace: list = field(default_factory=list)
    n_evals: int = 0
    n_rejected: int = 0  # trial steps rejected for degenerate edges

    @property
    def converged(self) -> bool:
        return self.termination in ("gradient", "step")


def initial_path(c0, c1, T: int) -> np.ndarray:
    """Vertexwise linear interpolation; slice ``t`` (1-based) is ``((T-t+1) c0 + (t-1) c1) / T``."""
    c0, c1 = as_polygon(c0), as_polygon(c1)
    if c0.shape != c1.shape:
        raise SizeMismatch(f"endpoint curves have {len(c0)} and {len(c1)} vertices; resample one of them")
    if T < 1:
        raise ValueError("T must be >= 1")
    path = np.empty((T + 1,) + c0.shape)
    for t in range(1, T + 2):
        path[t - 1] = ((T - t + 1) * c0 + (t - 1) * c1) / T
    path[0] = c0
    path[-1] = c1
    return path


@dataclass(frozen=True)
class Alignment:
    curve: np.ndarray
    shift: int
    reversed: bool
    cost: float


def align(c0, c1) -> Alignment:
    """Relabel ``c1`` cyclically (optionally reversed) to best match ``c0`` vertexwise.

    The returned curve is ``np.roll(base, shift)`` with ``base`` either ``c1``
    or ``c1[::-1]``. Ties go to the smaller shift, then to forward orientation.
    """
    c0, c1 = as_polygon(c0), as_polygon(c1)
    if c0.shape != c1.shape:
        raise SizeMismatch(f"endpoint curves have {len(c0)} and {len(c1)} vertices")
    best = None
    for rev in (False, True):
        base = c1[::-1] if rev else c1
        for k in range(len(c0)):
            cand = np.roll(base, k, axis=0)
            cost = float(((c0 - cand) ** 2).sum())
            key = (cost, k, rev)
            if best is None or key < best[0]:
                best = (key, cand)
    (cost, k, rev), cand = best
    return Alignment(curve=cand, shift=k, reversed=rev, cost=cost)


def gradient(path, coeff: MetricCoefficients, penalty_weight: float = 1.0,
             signed_curvature: bool = False) -> np.ndarray:
    """Gradient of the objective with respect to interior vertices, shape (T-1, N, 2)."""
    _, g = objective_and_gradient(path, coeff, penalty_weight, signed_curvature=signed_curvature)
    return g[1:-1]


class _Problem:
    def __init__(self, c0, c1, shape, coeff, config):
        self.c0, self.c1 = c0, c1
        self.shape = shape
        self.coeff = coeff
        self.config = config
        self.n_evals = 0
        self.n_rejected = 0

    def path(self, x):
        return np.concatenate([self.c0[None], x.reshape(self.shape), self.c1[None]])

    def __call__(self, x):
        self.n_evals += 1
        try:
            out, g = objective_and_gradient(self.path(x), self.coeff, self.config.penalty_weight,
                                            signed_curvature=self.config.signed_curvature)
        except DegenerateEdge:
            self.n_rejected += 1
            raise
        return out, g[1:-1].ravel()


def _cubic_min(a, fa, da, b, fb, db):
    """Minimizer of the cubic through two points with slopes, or None."""
    d1 = da + db - 3 * (fa - fb) / (a - b)
    rad = d1 * d1 - da * db
    if rad < 0:
        return None
    d2 = np.sign(b - a) * np.sqrt(rad)
    denom = db - da + 2 * d2
    if denom == 0:
        return None
    return b - (b - a) * (db + d2 - d1) / denom


def line_search(phi, f0, d0, alpha0, c1=1e-4, c2=0.9, max_iter=40):
    """Strong Wolfe line search.

    ``phi(alpha)`` returns ``(f, dphi, payload)`` and may raise ``DegenerateEdge``;
    such trial steps are pulled back halfway toward the last feasible step, at
    most ``MAX_HALVINGS`` times. Returns ``(alpha, f, dphi, payload)``.
    """
    halvings = 0

    def reject():
        nonlocal halvings
        halvings += 1
        if halvings > MAX_HALVINGS:
            raise LineSearchFailure("trial steps kept producing degenerate edges")

    def zoom(lo, hi):
        # lo, hi: (alpha, f, dphi, payload); hi may carry f = inf for infeasible steps
        for _ in range(max_iter):
            a_lo, f_lo, d_lo, _ = lo
            a_hi, f_hi, d_hi, _ = hi
            width = a_hi - a_lo
            trial = None
            if np.isfinite(f_hi):
                trial = _cubic_min(a_lo, f_lo, d_lo, a_hi, f_hi, d_hi)
            lo_b, hi_b = sorted((a_lo + 0.1 * width, a_hi - 0.1 * width))
            if trial is None or not np.isfinite(trial) or not lo_b <= trial <= hi_b:
                trial = a_lo + 0.5 * width
            if abs(width) < 1e-14 * max(1.0, abs(a_lo)):
                break
            try:
                f, d, pl = phi(trial)
            except DegenerateEdge:
                reject()
                hi = (trial, np.inf, np.nan, None)
                continue
            if f > f0 + c1 * trial * d0 or f >= f_lo:
                hi = (trial, f, d, pl)
            else:
                if abs(d) <= -c2 * d0:
                    return trial, f, d, pl
                if d * (a_hi - a_lo) >= 0:
                    hi = lo
                lo = (trial, f, d, pl)
        if lo[0] > 0 and lo[1] < f0:
            # sufficient decrease holds for every accepted lo
            return lo
        raise LineSearchFailure("zoom did not find an acceptable step")

    prev = (0.0, f0, d0, None)
    alpha = alpha0
    for i in range(max_iter):
        try:
            f, d, pl = phi(alpha)
        except DegenerateEdge:
            reject()
            alpha = prev[0] + 0.5 * (alpha - prev[0])
            continue
        cur = (alpha, f, d, pl)
        if f > f0 + c1 * alpha * d0 or (i > 0 and f >= prev[1]):
            return zoom(prev, cur)
        if abs(d) <= -c2 * d0:
            return cur
        if d >= 0:
            return zoom(cur, prev)
        prev = cur
        alpha = 2.0 * alpha
    raise LineSearchFailure("bracketing phase exhausted")


def _two_loop(g, S, Y, precond=None):
    q = g.copy()
    alphas = []
    for s, y in zip(reversed(S), reversed(Y)):
        rho = 1.0 / y.dot(s)
        a = rho * s.dot(q)
        q -= a * y
        alphas.append((rho, a))
    if precond is not None:
        q = precond.solve(q)
        if S:
            q *= S[-1].dot(Y[-1]) / Y[-1].dot(precond.solve(Y[-1]))
    elif S:
        q *= S[-1].dot(Y[-1]) / Y[-1].dot(Y[-1])
    for (s, y), (rho, a) in zip(zip(S, Y), reversed(alphas)):
        b = rho * y.dot(q)
        q += (a - b) * s
    return -q


def solve(c0, c1, T: int, coeff: MetricCoefficients, config: SolverConfig | None = None,
          initial=None):
    """Minimize the path objective with fixed endpoints.

    Returns ``(path, report)``; the path is the best iterate found. ``initial``
    overrides the linear initial path (its endpoints are replaced by ``c0``/``c1``).
    """
    config = SolverConfig() if config is None else config
    path0 = initial_path(c0, c1, T) if initial is None else np.array(initial, dtype=float)
    c0, c1 = path0[0].copy(), path0[-1].copy()
    prob = _Problem(as_polygon(c0), as_polygon(c1), path0[1:-1].shape, coeff, config)
    x = path0[1:-1].ravel().copy()

    out, g = prob(x)
    trace = []

    def record(it, out, g):
        gn = float(np.max(np.abs(g))) if g.size else 0.0
        trace.append(TraceRow(it, out.objective, out.total_energy, out.penalty, gn))
        return gn

    gn = record(0, out, g)
    S, Y = [], []
    precond = None
    precond_age = 0
    termination = "max_iters"
    it = 0
    while True:
        if gn < config.grad_tol * (1.0 + abs(out.objective)):
            termination = "gradient"
            break
        w = config.step_window
        if len(trace) > w:
            f_old = trace[-1 - w].objective
            if f_old - out.objective <= config.step_tol * abs(f_old):
                termination = "step"
                break
        if it >= config.max_iters:
            break

        if config.precondition and (precond is None or precond_age >= config.precond_every):
            precond = Preconditioner(prob.path(x), coeff, config.penalty_weight,
                                     config.precond_ridge, config.signed_curvature)
            precond_age = 0
        precond_age += 1

        d = _two_loop(g, S, Y, precond)
        slope = g.dot(d)
        if not slope < 0:
            S.clear(); Y.clear()
            d = -g if precond is None else -precond.solve(g)
            slope = g.dot(d)
        alpha0 = 1.0 if (S or precond is not None) else min(1.0, 1.0 / np.linalg.norm(g))

        def phi(alpha):
            o, gg = prob(x + alpha * d)
            return o.objective, gg.dot(d), (o, gg)

        try:
            alpha, f_new, _, (out_new, g_new) = line_search(
                phi, out.objective, slope, alpha0, config.c1, config.c2)
        except LineSearchFailure as exc:
            if precond_age > 1:
                log.debug("line search failed (%s); refreshing preconditioner", exc)
                precond_age = config.precond_every
                S.clear(); Y.clear()
                continue
            if S:
                log.debug("line search failed (%s); resetting memory", exc)
                S.clear(); Y.clear()
                continue
            termination = "line_search_failure"
            break

        s = alpha * d
        y = g_new - g
        if s.dot(y) > 1e-12 * np.linalg.norm(s) * np.linalg.norm(y):
            S.append(s); Y.append(y)
            if len(S) > config.memory:
                S.pop(0); Y.pop(0)
        x = x + s
        out, g = out_new, g_new
        it += 1
        gn = record(it, out, g)

    report = SolveReport(iterations=it, objective=out.objective, energy=out.total_energy,
                         penalty=out.penalty, grad_norm=gn, termination=termination,
                         trace=trace, n_evals=prob.n_evals, n_rejected=prob.n_rejected)
    return prob.path(x), report
