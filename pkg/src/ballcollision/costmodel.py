"""Concrete operation counts for ball-collision decoding.

All combinatorial quantities are exact integers or Fractions; floats appear
only when converting to bit operations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache

from .errors import InfeasibleParametersError
from .params import BallCollisionParams

PHASES = ("elimination", "build_S", "build_T", "collision")


def lbar(n: int, t: int, q: int) -> int:
    """Number of nonzero vectors of weight at most t in F_q^n."""
    if not 0 <= t <= n:
        raise ValueError(f"need 0 <= t <= n, got n={n}, t={t}")
    return sum(math.comb(n, i) * (q - 1) ** i for i in range(1, t + 1))


def success_probability(n: int, k: int, t: int, params: BallCollisionParams,
                        q: int | None = None) -> Fraction:
    """Probability that one iteration sees the error in the params' split.

    Independent of q; the argument is accepted for symmetry with the other
    cost functions and ignored.
    """
    p = params.validate(n, k, t)
    num = (math.comb(p.l3(n, k), p.rest(t)) * math.comb(p.k1, p.p1)
           * math.comb(p.k2, p.p2) * math.comb(p.l1, p.q1) * math.comb(p.l2, p.q2))
    return Fraction(num, math.comb(n, t))


def list_sizes(params: BallCollisionParams, q: int) -> tuple[int, int]:
    p = params
    S = math.comb(p.k1, p.p1) * math.comb(p.l1, p.q1) * (q - 1) ** (p.p1 + p.q1)
    T = math.comb(p.k2, p.p2) * math.comb(p.l2, p.q2) * (q - 1) ** (p.p2 + p.q2)
    return S, T


def expected_collisions(params: BallCollisionParams, q: int) -> Fraction:
    S, T = list_sizes(params, q)
    return Fraction(S * T, q ** (params.l1 + params.l2))


def addition_bits(q: int) -> float:
    return math.log2(q)


def multiplication_bits(q: int, clamp: bool = False) -> float:
    """``log2 q * log2 log2 q * log2 log2 log2 q``.

    The formula vanishes at q = 2 and q = 4 and is negative at q = 3; those
    values are floored at 0.  ``clamp`` charges at least one bit operation
    per multiplication instead.
    """
    a = math.log2(q)
    b = math.log2(a)
    value = 0.0 if b <= 0 else max(a * b * math.log2(b), 0.0)
    return max(value, 1.0) if clamp else value


def multiplication_cost_degenerate(q: int) -> bool:
    """True where the multiplication bit-cost formula is not positive."""
    return multiplication_bits(q) <= 0.0


@dataclass
class CostBreakdown:
    """Field operation counts per phase, with success probability.

    For :func:`iteration_cost` the counts are for one iteration; for
    :func:`overall_cost` they are expected totals.
    """

    phases: dict[str, tuple[Fraction, Fraction]]
    success_probability: Fraction
    q: int
    clamp_multiplication: bool = False
    iterations: Fraction = dc_field(default=Fraction(1))

    @property
    def additions(self) -> Fraction:
        return sum((a for a, _ in self.phases.values()), Fraction(0))

    @property
    def multiplications(self) -> Fraction:
        return sum((m for _, m in self.phases.values()), Fraction(0))

    @property
    def bit_ops(self) -> float:
        return (float(self.additions) * addition_bits(self.q)
                + float(self.multiplications)
                * multiplication_bits(self.q, self.clamp_multiplication))

    @property
    def expected_total_bit_ops(self) -> float:
        """Bit operations of the whole expected run."""
        per_iteration = self.bit_ops / float(self.iterations)
        return per_iteration / float(self.success_probability)

    @property
    def multiplication_degenerate(self) -> bool:
        return multiplication_cost_degenerate(self.q)

    def scaled(self, factor: Fraction) -> "CostBreakdown":
        return CostBreakdown({ph: (a * factor, m * factor) for ph, (a, m) in self.phases.items()},
                             self.success_probability, self.q, self.clamp_multiplication,
                             self.iterations * factor)


def build_cost(k_i: int, p_i: int, l_i: int, q_i: int, window: int, q: int,
               with_syndrome: bool) -> tuple[int, int]:
    """(additions, multiplications) charged for building S or T.

    ``with_syndrome`` adds the cost of folding s1 into the first layer (T).
    """
    mults = (q - 1) * window * k_i
    adds = (lbar(k_i, p_i, q) - k_i * (q - 1)) * window
    adds += math.comb(k_i, p_i) * lbar(l_i, q_i, q) * (q - 1) ** p_i
    if with_syndrome:
        adds += (q - 1) * window * k_i
    return adds, mults


def iteration_cost(n: int, k: int, t: int, q: int, params: BallCollisionParams,
                   clamp_multiplication: bool = False) -> CostBreakdown:
    """Term-by-term cost of one iteration."""
    p = params.validate(n, k, t)
    elim = (n - k) * (n + 1) * (n - k - 1)
    window = p.l1 + p.l2
    aS, mS = build_cost(p.k1, p.p1, p.l1, p.q1, window, q, False)
    aT, mT = build_cost(p.k2, p.p2, p.l2, p.q2, window, q, True)
    coll = expected_collisions(p, q) * Fraction(q, q - 1) * (p.rest(t) + 1)
    pp = p.p1 + p.p2
    phases = {
        "elimination": (Fraction(elim), Fraction(elim)),
        "build_S": (Fraction(aS), Fraction(mS)),
        "build_T": (Fraction(aT), Fraction(mT)),
        "collision": (coll * (pp + 1), coll * pp),
    }
    return CostBreakdown(phases, success_probability(n, k, t, p), q, clamp_multiplication)


def overall_cost(n: int, k: int, t: int, q: int, params: BallCollisionParams,
                 clamp_multiplication: bool = False) -> CostBreakdown:
    """Iteration cost times the expected number of iterations."""
    it = iteration_cost(n, k, t, q, params, clamp_multiplication)
    return it.scaled(1 / it.success_probability)


def _candidates(n: int, k: int, t: int, pmax: int, qmax: int, lmax: int):
    k1 = k // 2
    k2 = k - k1
    yield BallCollisionParams.prange(k)
    for p1 in range(pmax + 1):
        for p2 in (p1, p1 + 1):
            for q1 in range(qmax + 1):
                for l1 in range(lmax + 1):
                    for l2 in (l1, l1 + 1):
                        for q2 in (q1, q1 + 1):
                            yield BallCollisionParams(p1, p2, q1, q2, k1, k2, l1, l2)


@lru_cache(maxsize=256)
def optimize_concrete(n: int, k: int, t: int, q: int, budget: int = 20000,
                      max_list_size: int = 1 << 15, clamp_multiplication: bool = False,
                      ) -> tuple[BallCollisionParams, CostBreakdown]:
    """Cheapest feasible parameters by expected bit operations.

    Candidates split the information set in halves and keep the two sides
    within one of each other; the Prange point is always examined first.
    ``budget`` caps the number of feasible candidates evaluated and
    ``max_list_size`` the size of either list.
    """
    pmax = min(4, t, k // 2)
    qmax = min(3, t)
    lmax = min(n - k, 24)
    best = None
    seen = 0
    for cand in _candidates(n, k, t, pmax, qmax, lmax):
        if not cand.is_feasible(n, k, t):
            continue
        if max(list_sizes(cand, q)) > max_list_size:
            continue
        cost = overall_cost(n, k, t, q, cand, clamp_multiplication)
        score = cost.expected_total_bit_ops
        if best is None or score < best[0]:
            best = (score, cand, cost)
        seen += 1
        if seen >= budget:
            break
    if best is None:
        raise InfeasibleParametersError(f"no feasible parameters for n={n}, k={k}, t={t}")
    return best[1], best[2]
