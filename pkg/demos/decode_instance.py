"""Plant an error, decode it, and look at where the work went."""
import numpy as np

from ballcollision import decode, generate
from ballcollision.costmodel import optimize_concrete, overall_cost

q, n, k, t = 3, 60, 30, 6
inst = generate(q, n, k, t, seed=2024)
params, est = optimize_concrete(n, k, t, q)
print("chosen parameters:", params)
print(f"predicted iterations: {float(1 / est.success_probability):.1f}")

res = decode(inst, params, rng=7)
print("status:", res.status, "after", res.iterations, "iterations")
print("solution verifies:", inst.is_solution(res.e))
print("same as the planted error:", np.array_equal(res.e, inst.planted_e))
for phase, ops in res.op_counters.items():
    print(f"  {phase:12s} adds={ops.additions:<9d} mults={ops.multiplications}")

# the model's per-iteration prediction scaled by the iterations actually run
pred = overall_cost(n, k, t, q, params).scaled(res.iterations * est.success_probability)
print("model, same number of iterations:",
      {ph: round(float(a)) for ph, (a, _) in pred.phases.items()})
