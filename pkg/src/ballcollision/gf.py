"""Arithmetic in the finite field F_q, q = p^m.

Elements are plain integer codes in ``[0, q)``.  For prime fields the code is
the residue mod p.  For extension fields the code packs the polynomial
coefficients in base p, constant term first, so with modulus ``x^2 + x + 1``
over F_2 the codes ``0, 1, 2, 3`` stand for ``0, 1, x, x + 1``.

Every operation accepts either Python ints or integer numpy arrays and
broadcasts like numpy does.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import CapExceededError

#: largest field order for which log/antilog tables are built
DEFAULT_TABLE_CAP = 1 << 16

#: fixed moduli, coefficients listed constant term first
DEFAULT_MODULI: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),  # x^2 + x + 1
    8: (1, 1, 0, 1),  # x^3 + x + 1
    9: (1, 0, 1),  # x^2 + 1
    16: (1, 1, 0, 0, 1),  # x^4 + x + 1
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``q == p**m`` for prime p, or None."""
    if q < 2:
        return None
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1 or not is_prime(p):
        return None
    return p, m


def _poly_mod(num: list[int], den: Sequence[int], p: int) -> list[int]:
    # den is monic; coefficients constant term first
    num = list(num)
    d = len(den) - 1
    for i in range(len(num) - 1, d - 1, -1):
        c = num[i] % p
        if c:
            for j in range(d + 1):
                num[i - d + j] = (num[i - d + j] - c * den[j]) % p
    return [c % p for c in num[:d]]


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= m/2."""
    m = len(modulus) - 1
    if m < 1 or modulus[-1] % p != 1:
        return False
    if m == 1:
        return True
    for deg in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not any(_poly_mod(list(modulus), (*low, 1), p)):
                return False
    return True


def find_modulus(p: int, m: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree m over F_p in code order."""
    for code in range(p**m):
        low = [(code // p**i) % p for i in range(m)]
        cand = (*low, 1)
        if low[0] and is_irreducible(cand, p):
            return cand
    raise ValueError(f"no irreducible polynomial of degree {m} over F_{p}")


class FieldSpec:
    """The field F_q.  Immutable; build through :func:`field` to share instances."""

    def __init__(self, q: int, modulus: Sequence[int] | None = None,
                 table_cap: int = DEFAULT_TABLE_CAP):
        pm = prime_power(q)
        if pm is None:
            raise ValueError(f"unsupported field order q={q}: not a prime power")
        self.q = q
        self.p, self.m = pm
        if self.m == 1:
            if modulus is not None:
                raise ValueError(f"q={q} is prime; no modulus expected")
            self.modulus: tuple[int, ...] | None = None
            return
        if q > table_cap:
            raise CapExceededError(f"q={q} exceeds the table cap {table_cap}")
        if modulus is None:
            modulus = DEFAULT_MODULI.get(q) or find_modulus(self.p, self.m)
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != self.m + 1:
            raise ValueError(
                f"modulus for q={q} needs {self.m + 1} coefficients, got {len(modulus)}")
        if any(not 0 <= c < self.p for c in modulus):
            raise ValueError("modulus coefficient out of range")
        if not is_irreducible(modulus, self.p):
            raise ValueError(f"modulus {modulus} is not monic irreducible over F_{self.p}")
        self.modulus = modulus
        self._build_tables()

    def _build_tables(self) -> None:
        q, p, m = self.q, self.p, self.m
        self._pow = np.array([p**i for i in range(m)], dtype=np.int64)

        def poly_mul(a: int, b: int) -> int:
            da = [(a // p**i) % p for i in range(m)]
            db = [(b // p**i) % p for i in range(m)]
            prod = [0] * (2 * m - 1)
            for i, x in enumerate(da):
                if x:
                    for j, y in enumerate(db):
                        prod[i + j] += x * y
            red = _poly_mod(prod, self.modulus, p) if len(prod) > m else prod
            red = red + [0] * (m - len(red))
            return sum(c * p**i for i, c in enumerate(red))

        # smallest primitive element by code
        for g in range(2, q):
            exp = [1]
            x = 1
            for _ in range(q - 2):
                x = poly_mul(x, g)
                if x == 1:
                    break
                exp.append(x)
            if len(exp) == q - 1:
                break
        else:
            raise ValueError("no primitive element found")
        self.generator = g
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        self._exp_list = exp + exp
        self._log_list = log
        self._exp = np.array(self._exp_list, dtype=np.int64)
        self._log = np.array(log, dtype=np.int64)

    def __repr__(self) -> str:
        if self.modulus is None:
            return f"FieldSpec(q={self.q})"
        return f"FieldSpec(q={self.q}, modulus={list(self.modulus)})"

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, FieldSpec) and self.q == other.q
                and self.modulus == other.modulus)

    def __hash__(self) -> int:
        return hash((self.q, self.modulus))

    # -- digitwise helpers for odd-characteristic extension fields

    def _digits(self, a):
        return [(a // int(self._pow[i])) % self.p for i in range(self.m)]

    def _undigits(self, ds):
        out = ds[0]
        for i in range(1, self.m):
            out = out + ds[i] * int(self._pow[i])
        return out

    # -- field operations

    def add(self, a, b):
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self._undigits([(x + y) % self.p
                               for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a):
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._undigits([(-x) % self.p for x in self._digits(a)])

    def sub(self, a, b):
        if self.m == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        return self._undigits([(x - y) % self.p
                               for x, y in zip(self._digits(a), self._digits(b))])

    def mul(self, a, b):
        if self.m == 1:
            return (a * b) % self.p
        if isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer)):
            if a == 0 or b == 0:
                return 0
            return self._exp_list[self._log_list[a] + self._log_list[b]]
        a = np.asarray(a)
        b = np.asarray(b)
        prod = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, prod)

    def inv(self, a: int) -> int:
        a = int(a)
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element of F_{self.q}")
        if a == 0:
            raise ZeroDivisionError("no inverse of 0")
        if self.m == 1:
            return pow(a, -1, self.p)
        return self._exp_list[(self.q - 1 - self._log_list[a]) % (self.q - 1)]

    def dot(self, a, b) -> int:
        """Inner product of two equal-length integer sequences."""
        if self.m == 1:
            return int(np.dot(np.asarray(a, dtype=np.int64),
                              np.asarray(b, dtype=np.int64)) % self.p)
        acc = 0
        for x in self.mul(np.asarray(a), np.asarray(b)):
            acc = self.add(acc, int(x))
        return acc

    def nonzero_elements(self) -> list[int]:
        """The q - 1 nonzero codes in ascending order."""
        return list(range(1, self.q))

    def elements(self) -> range:
        return range(self.q)

    def is_element(self, a: int) -> bool:
        return 0 <= a < self.q


@lru_cache(maxsize=None)
def field(q: int, modulus: tuple[int, ...] | None = None) -> FieldSpec:
    """Cached :class:`FieldSpec` constructor."""
    return FieldSpec(q, modulus)


def add(spec: FieldSpec, a, b):
    return spec.add(a, b)


def mul(spec: FieldSpec, a, b):
    return spec.mul(a, b)


def inv(spec: FieldSpec, a: int) -> int:
    return spec.inv(a)


def nonzero_elements(spec: FieldSpec) -> list[int]:
    return spec.nonzero_elements()
