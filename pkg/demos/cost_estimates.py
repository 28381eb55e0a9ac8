"""Concrete cost of a few parameter choices at one code size."""
from ballcollision import BallCollisionParams
from ballcollision.costmodel import optimize_concrete, overall_cost
import math

n, k, t, q = 200, 100, 12, 4
options = {
    "Prange": BallCollisionParams.prange(k),
    "Stern-like": BallCollisionParams(1, 1, 0, 0, 50, 50, 4, 4),
    "ball": BallCollisionParams(2, 2, 1, 1, 50, 50, 6, 6),
}
best, _ = optimize_concrete(n, k, t, q)
options["optimized"] = best

for name, p in options.items():
    c = overall_cost(n, k, t, q, p)
    print(f"{name:10s} log2(bit ops) = {math.log2(c.expected_total_bit_ops):6.2f}   {p}")
