"""Arithmetic in small finite fields.

Elements of F_{p^m} are integers whose base-p digits are polynomial
coefficients, lowest degree first.
"""
from ballcollision.gf import field

F4 = field(4)
print("F_4 modulus (constant term first):", F4.modulus)
print("2 + 3 =", F4.add(2, 3), "  2 * 2 =", F4.mul(2, 2), "  inv(2) =", F4.inv(2))

F9 = field(9)
print("F_9 generator:", F9.generator)
powers = [1]
for _ in range(8):
    powers.append(F9.mul(powers[-1], F9.generator))
print("powers of the generator:", powers)  # cycles back to 1 after 8 steps
