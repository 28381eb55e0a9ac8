"""Ball-collision parameter sets."""

from __future__ import annotations

from dataclasses import astuple, dataclass

from .errors import InfeasibleParametersError


@dataclass(frozen=True)
class BallCollisionParams:
    """Error counts and block sizes for one ball-collision configuration.

    ``p1, p2`` errors are expected in the two halves ``X1, X2`` (sizes
    ``k1, k2``) of the information set, ``q1, q2`` in the redundancy blocks
    ``Y1, Y2`` (sizes ``l1, l2``), and the rest in ``Y3``.
    """

    p1: int = 0
    p2: int = 0
    q1: int = 0
    q2: int = 0
    k1: int = 0
    k2: int = 0
    l1: int = 0
    l2: int = 0

    @classmethod
    def prange(cls, k: int) -> "BallCollisionParams":
        return cls(k1=k // 2, k2=k - k // 2)

    def rest(self, t: int) -> int:
        """Errors left for ``Y3``."""
        return t - self.p1 - self.p2 - self.q1 - self.q2

    def l3(self, n: int, k: int) -> int:
        return n - k - self.l1 - self.l2

    def problems(self, n: int, k: int, t: int) -> list[str]:
        out = []
        if any(v < 0 for v in astuple(self)):
            out.append("all parameters must be nonnegative")
        if self.k1 + self.k2 != k:
            out.append(f"k1 + k2 = {self.k1 + self.k2} != k = {k}")
        if self.p1 > self.k1 or self.p2 > self.k2:
            out.append("need p1 <= k1 and p2 <= k2")
        if self.q1 > self.l1 or self.q2 > self.l2:
            out.append("need q1 <= l1 and q2 <= l2")
        if self.l3(n, k) < 0:
            out.append(f"l1 + l2 = {self.l1 + self.l2} exceeds n - k = {n - k}")
        rest = self.rest(t)
        if rest < 0:
            out.append("p1 + p2 + q1 + q2 exceeds t")
        elif rest > self.l3(n, k):
            out.append(f"t - p1 - p2 - q1 - q2 = {rest} exceeds n - k - l1 - l2")
        return out

    def is_feasible(self, n: int, k: int, t: int) -> bool:
        return not self.problems(n, k, t)

    def validate(self, n: int, k: int, t: int) -> "BallCollisionParams":
        probs = self.problems(n, k, t)
        if probs:
            raise InfeasibleParametersError("; ".join(probs))
        return self
