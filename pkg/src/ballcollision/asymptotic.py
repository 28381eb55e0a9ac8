"""Asymptotic exponents of ball-collision decoding at half the GV distance.

Exponents are base-q logarithms divided by n.  ``P``, ``Q``, ``L`` are the
relative sizes of ``p_i``, ``q_i`` and ``l_i`` (the same on both sides), ``R``
the rate and ``T`` the relative error weight.  ``x log x`` is taken to be 0
at x = 0, so boundary faces of the feasible region are legal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

GRID_POINTS = 24
REFINE_SEEDS = 8

#: comparison columns (q -> value): q-Stern and q-Stern-MO from Hirose 2016;
#: q-BJMM-MO from Gueye, Klamti and Hirose 2017
STERN = {2: 0.05563, 3: 0.05217, 4: 0.04987, 5: 0.04815, 7: 0.04571, 8: 0.04478, 11: 0.04266}
STERN_MO = {2: 0.05498, 3: 0.05242, 4: 0.05032, 5: 0.04864, 7: 0.04614, 8: 0.04519, 11: 0.04299}
BJMM_MO = {2: 0.04730, 3: 0.04427, 4: 0.04294, 5: 0.03955, 7: 0.03706, 8: 0.03593, 11: 0.03335}
#: published worst-case ball-collision exponents, for comparison
BALL_COLLISION = {2: 0.055573, 3: 0.052145, 4: 0.049846, 5: 0.048140,
                  7: 0.045697, 8: 0.044770, 11: 0.042656}


def _xlogx(x, q):
    x = np.asarray(x, dtype=float)
    safe = np.where(x > 0, x, 1.0)
    return np.where(x > 0, x * np.log(safe) / math.log(q), 0.0)


def log_binom_exponent(alpha, beta, q):
    """Exponent of ``binom(alpha n, beta n)``; defined for 0 <= beta <= alpha."""
    a = np.asarray(alpha, dtype=float)
    b = np.asarray(beta, dtype=float)
    if np.any(b < -1e-12) or np.any(b > a + 1e-12):
        raise ValueError("need 0 <= beta <= alpha")
    b = np.clip(b, 0.0, a)
    out = _xlogx(a, q) - _xlogx(b, q) - _xlogx(a - b, q)
    return float(out) if out.ndim == 0 else out


def feasible(P, Q, L, R, T, tol: float = 1e-12):
    """Membership in the region ``0<=P<=R/2, 0<=Q<=L, 0<=T-2P-2Q<=1-R-2L``."""
    P, Q, L = (np.asarray(v, dtype=float) for v in (P, Q, L))
    rest = T - 2 * P - 2 * Q
    ok = ((P >= -tol) & (P <= R / 2 + tol) & (Q >= -tol) & (Q <= L + tol)
          & (rest >= -tol) & (rest <= 1 - R - 2 * L + tol))
    return bool(ok) if ok.ndim == 0 else ok


def _check(P, Q, L, R, T):
    if not np.all(feasible(P, Q, L, R, T)):
        raise ValueError(f"(P, Q, L) = ({P}, {Q}, {L}) outside the feasible region")


def _pieces(P, Q, L, R, T, q):
    lb = log_binom_exponent
    half = lb(R / 2, P, q)
    ball = lb(L, Q, q)
    rest = lb(1 - R - 2 * L, T - 2 * P - 2 * Q, q)
    return half, ball, rest, lb(1.0, T, q)


def S_exponent(P, Q, L, R, T, q):
    """Exponent of the single-iteration success probability (<= 0)."""
    _check(P, Q, L, R, T)
    half, ball, rest, total = _pieces(P, Q, L, R, T, q)
    return rest + 2 * half + 2 * ball - total


def _C_branches(P, Q, L, R, T, q):
    lq = math.log(q - 1) / math.log(q)
    half, ball, _, _ = _pieces(P, Q, L, R, T, q)
    P, Q, L = (np.asarray(v, dtype=float) for v in (P, Q, L))
    return (lq * P + half,
            lq * (P + Q) + half + ball,
            lq * (2 * P + 2 * Q) - 2 * L + 2 * half + 2 * ball)


def C_exponent(P, Q, L, R, T, q):
    """Exponent of the cost of one iteration: the largest of three list terms."""
    _check(P, Q, L, R, T)
    b1, b2, b3 = _C_branches(P, Q, L, R, T, q)
    out = np.maximum(np.maximum(b1, b2), b3)
    return float(out) if np.ndim(out) == 0 else out


def D_exponent(P, Q, L, R, T, q):
    """Exponent of the overall cost, ``C - S``."""
    return C_exponent(P, Q, L, R, T, q) - S_exponent(P, Q, L, R, T, q)


def _D_unchecked(P, Q, L, R, T, q):
    half, ball, rest, total = _pieces(P, Q, L, R, T, q)
    b1, b2, b3 = _C_branches(P, Q, L, R, T, q)
    return np.maximum(np.maximum(b1, b2), b3) - (rest + 2 * half + 2 * ball - total)


def _xl(x: float) -> float:
    return x * math.log(x) if x > 0 else 0.0


def _D_scalar(P: float, Q: float, L: float, R: float, T: float, q: float) -> float:
    # natural-log version of _D_unchecked for the refinement loop
    def lb(a, b):
        return _xl(a) - _xl(b) - _xl(a - b)

    lq = math.log(q - 1)
    half = lb(R / 2, P)
    ball = lb(L, Q)
    rest = lb(1 - R - 2 * L, T - 2 * P - 2 * Q)
    C = max(lq * P + half, lq * (P + Q) + half + ball,
            lq * (2 * P + 2 * Q) - 2 * L * math.log(q) + 2 * half + 2 * ball)
    S = rest + 2 * half + 2 * ball - lb(1.0, T)
    return (C - S) / math.log(q)


def gv_rate(q: int, D: float) -> float:
    """Rate of a code meeting the GV bound at relative distance D."""
    return float(1 + _xlogx(D, q) + _xlogx(1 - D, q) - D * math.log(q - 1) / math.log(q))


def gv_relative_distance(q: int, R: float, tol: float = 1e-13) -> float:
    """Relative GV distance at rate R, by bisection on (0, (q-1)/q)."""
    if not 0 < R < 1:
        raise ValueError("rate must lie in (0, 1)")
    lo, hi = 0.0, (q - 1) / q
    # gv_rate decreases from 1 to 0 on this interval
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if gv_rate(q, mid) > R:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


@dataclass(frozen=True)
class AsymptoticPoint:
    q: int
    R: float
    T: float
    P: float
    Q: float
    L: float
    S: float
    C: float
    D: float

    @classmethod
    def evaluate(cls, q: int, R: float, T: float, P: float, Q: float, L: float):
        S = S_exponent(P, Q, L, R, T, q)
        C = C_exponent(P, Q, L, R, T, q)
        return cls(q, R, T, P, Q, L, S, C, C - S)


def optimize_F(q: int, R: float, tolerance: float = 1e-9,
               grid_points: int = GRID_POINTS, seeds: int = REFINE_SEEDS) -> AsymptoticPoint:
    """Minimize the overall exponent over (P, Q, L) at T = D_gv / 2.

    A coarse grid over the bounding box of the region is followed by
    Nelder-Mead from the best grid points; infeasible probes evaluate to
    +inf.  The Prange point (0, 0, 0) is always a candidate.
    """
    T = gv_relative_distance(q, R) / 2
    Ps = np.linspace(0.0, min(R / 2, T / 2), grid_points)
    Qs = np.linspace(0.0, T / 2, grid_points)
    Ls = np.linspace(0.0, (1 - R) / 2, grid_points)
    P, Q, L = (a.ravel() for a in np.meshgrid(Ps, Qs, Ls, indexing="ij"))
    ok = feasible(P, Q, L, R, T)
    P, Q, L = P[ok], Q[ok], L[ok]
    vals = _D_unchecked(P, Q, L, R, T, q)
    order = np.lexsort((L, Q, P, vals))

    def f(x):
        P_, Q_, L_ = x
        rest_ = T - 2 * P_ - 2 * Q_
        if not (0 <= P_ <= R / 2 and 0 <= Q_ <= L_ and 0 <= rest_ <= 1 - R - 2 * L_):
            return math.inf
        return _D_scalar(float(x[0]), float(x[1]), float(x[2]), R, T, q)

    best_x = np.zeros(3)
    best = f(best_x)
    for i in order[:seeds]:
        x0 = np.array([P[i], Q[i], L[i]])
        res = minimize(f, x0, method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": tolerance, "maxiter": 4000})
        if res.fun < best:
            best, best_x = float(res.fun), res.x
    return AsymptoticPoint.evaluate(q, R, T, *(float(v) for v in best_x))


def _golden_max(f, a: float, b: float, tol: float) -> tuple[float, float]:
    invphi = (math.sqrt(5) - 1) / 2
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


def worst_case(q: int, tolerance: float = 1e-4, scan: int = 19) -> tuple[float, AsymptoticPoint]:
    """Rate maximizing the optimized exponent, and the optimum there.

    A coarse scan of R over (0, 1) brackets the maximum, then golden-section
    search narrows R to ``tolerance``.
    """
    Rs = np.linspace(0.05, 0.95, scan)
    Fs = [optimize_F(q, float(R)).D for R in Rs]
    i = int(np.argmax(Fs))
    lo = float(Rs[max(i - 1, 0)])
    hi = float(Rs[min(i + 1, len(Rs) - 1)])
    R_w, _ = _golden_max(lambda R: optimize_F(q, R).D, lo, hi, tolerance)
    return R_w, optimize_F(q, R_w)
