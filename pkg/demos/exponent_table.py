"""Worst-case asymptotic exponents next to the stored comparison values.

Takes a few seconds per field size.
"""
import sys

from ballcollision import asymptotic

qs = [int(x) for x in sys.argv[1:]] or [2, 3, 4]
print(f"{'q':>3} {'R_w':>7} {'F':>9} {'published':>10} {'q-Stern':>8}")
for q in qs:
    R_w, pt = asymptotic.worst_case(q)
    pub = asymptotic.BALL_COLLISION.get(q, float("nan"))
    stern = asymptotic.STERN.get(q, float("nan"))
    print(f"{q:>3} {R_w:7.4f} {pt.D:9.6f} {pub:10.6f} {stern:8.5f}")
    print(f"    argmin P={pt.P:.5f} Q={pt.Q:.5f} L={pt.L:.5f}")
