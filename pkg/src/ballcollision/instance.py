"""Syndrome-decoding instances: generation, planted partitions, file format.

The file is a JSON document::

    {"q": 4, "modulus": [1, 1, 1], "n": 8, "k": 4, "t": 2,
     "H": [[...], ...], "s": [...], "e": [...]}

``modulus`` (constant term first) is present exactly when q is a proper
prime power, and ``e`` is optional.  Rows of ``H`` are written one per line
so the output is canonical and diff-friendly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import ParseError
from .gf import FieldSpec, field
from .linalg import as_array, mat_vec, rank, weight


@dataclass(eq=False)
class DecodingInstance:
    spec: FieldSpec
    n: int
    k: int
    t: int
    H: np.ndarray
    s: np.ndarray
    planted_e: np.ndarray | None = None

    @property
    def q(self) -> int:
        return self.spec.q

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DecodingInstance):
            return NotImplemented
        if (self.spec, self.n, self.k, self.t) != (other.spec, other.n, other.k, other.t):
            return False
        if (self.planted_e is None) != (other.planted_e is None):
            return False
        return (np.array_equal(self.H, other.H) and np.array_equal(self.s, other.s)
                and (self.planted_e is None
                     or np.array_equal(self.planted_e, other.planted_e)))

    def check(self) -> None:
        """Raise ValueError if an instance invariant fails."""
        n, k, t = self.n, self.k, self.t
        if not (0 <= k < n and 0 <= t < n):
            raise ValueError(f"need k, t < n (n={n}, k={k}, t={t})")
        if self.H.shape != (n - k, n) or self.s.shape != (n - k,):
            raise ValueError("dimension mismatch")
        if rank(self.spec, self.H) != n - k:
            raise ValueError("H does not have full row rank")
        if self.planted_e is not None:
            if weight(self.planted_e) != t:
                raise ValueError("planted error has the wrong weight")
            if not np.array_equal(mat_vec(self.spec, self.H, self.planted_e), self.s):
                raise ValueError("planted error does not match the syndrome")

    def is_solution(self, e) -> bool:
        e = np.asarray(e, dtype=np.int64)
        return (e.shape == (self.n,) and weight(e) == self.t
                and np.array_equal(mat_vec(self.spec, self.H, e), self.s))


def random_full_rank(spec: FieldSpec, rows: int, cols: int,
                     rng: np.random.Generator) -> np.ndarray:
    while True:
        H = rng.integers(0, spec.q, size=(rows, cols), dtype=np.int64)
        if rank(spec, H) == rows:
            return H


def random_error(spec: FieldSpec, n: int, t: int, rng: np.random.Generator) -> np.ndarray:
    e = np.zeros(n, dtype=np.int64)
    pos = rng.choice(n, size=t, replace=False)
    e[pos] = rng.integers(1, spec.q, size=t)
    return e


def generate(q: int, n: int, k: int, t: int, seed: int | np.random.Generator,
             modulus: Sequence[int] | None = None) -> DecodingInstance:
    """Random full-rank H with a planted weight-t error."""
    if not 0 <= k < n:
        raise ValueError(f"infeasible dimensions: need 0 <= k < n (n={n}, k={k})")
    if not 0 <= t < n:
        raise ValueError(f"infeasible dimensions: need 0 <= t < n (n={n}, t={t})")
    spec = field(q, tuple(modulus) if modulus is not None else None)
    rng = np.random.default_rng(seed)
    H = random_full_rank(spec, n - k, n, rng)
    e = random_error(spec, n, t, rng)
    s = mat_vec(spec, H, e)
    return DecodingInstance(spec, n, k, t, H, s, e)


def plant_partition(inst: DecodingInstance, params, rng: np.random.Generator,
                    attempts: int = 1000) -> list[int]:
    """Column order forcing ``systemize`` onto the planted error's split.

    The returned permutation lists Y1, Y2, Y3 and then X1, X2.  Y-columns are
    resampled until they are linearly independent, so the elimination pivots
    them in this order and the planted error lands with exactly p1, p2, q1,
    q2 and the remainder in X1, X2, Y1, Y2, Y3.
    """
    e = inst.planted_e
    if e is None:
        raise ValueError("instance has no planted error")
    n, k, t = inst.n, inst.k, inst.t
    p = params
    l3 = n - k - p.l1 - p.l2
    rest = t - p.p1 - p.p2 - p.q1 - p.q2
    sizes = [p.l1, p.l2, l3, p.k1, p.k2]
    errs = [p.q1, p.q2, rest, p.p1, p.p2]
    if rest < 0 or sum(errs) != weight(e):
        raise ValueError("planted error weight does not match the split")
    err_pos = np.flatnonzero(e)
    free_pos = np.flatnonzero(e == 0)
    for _ in range(attempts):
        ep = rng.permutation(err_pos).tolist()
        fp = rng.permutation(free_pos).tolist()
        order: list[int] = []
        for size, ne in zip(sizes, errs):
            if ne > size:
                raise ValueError("split does not fit the partition sizes")
            block = ep[:ne] + fp[: size - ne]
            del ep[:ne]
            del fp[: size - ne]
            order.extend(rng.permutation(block).tolist())
        if rank(inst.spec, inst.H[:, order[: n - k]]) == n - k:
            return order
    raise ValueError("could not find an independent redundancy set for the split")


# -- serialization


def _row(values) -> str:
    return "[" + ", ".join(str(int(v)) for v in values) + "]"


def serialize(inst: DecodingInstance) -> str:
    lines = ["{", f'  "q": {inst.q},']
    if inst.spec.modulus is not None:
        lines.append(f'  "modulus": {_row(inst.spec.modulus)},')
    lines += [f'  "n": {inst.n},', f'  "k": {inst.k},', f'  "t": {inst.t},']
    rows = [f"    {_row(r)}" for r in inst.H]
    lines.append('  "H": [')
    lines.append(",\n".join(rows))
    lines.append("  ],")
    tail = f'  "s": {_row(inst.s)}'
    if inst.planted_e is not None:
        lines.append(tail + ",")
        lines.append(f'  "e": {_row(inst.planted_e)}')
    else:
        lines.append(tail)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _int(doc: dict, key: str) -> int:
    if key not in doc:
        raise ParseError(f'missing field "{key}"')
    v = doc[key]
    if type(v) is not int:
        raise ParseError(f'field "{key}" must be an integer')
    return v


def _int_list(v, key: str) -> list:
    if not isinstance(v, list) or any(type(x) is not int for x in v):
        raise ParseError(f'field "{key}" must be an array of integers')
    return v


def parse(text: str) -> DecodingInstance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not a JSON document: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("instance document must be a JSON object")
    q, n, k, t = (_int(doc, key) for key in ("q", "n", "k", "t"))
    if not (0 <= k < n and 0 <= t < n):
        raise ParseError(f"infeasible dimensions n={n}, k={k}, t={t}")
    modulus = doc.get("modulus")
    try:
        if modulus is not None:
            modulus = tuple(_int_list(modulus, "modulus"))
        spec = field(q, modulus)
    except ParseError:
        raise
    except (ValueError, ArithmeticError) as exc:
        raise ParseError(f"unknown field: {exc}") from None
    if spec.m > 1 and modulus is None:
        raise ParseError(f'q={q} is a proper prime power; "modulus" is required')
    for key in ("H", "s"):
        if key not in doc:
            raise ParseError(f'missing field "{key}"')
    H = doc["H"]
    if not isinstance(H, list) or len(H) != n - k:
        raise ParseError(f'"H" must have n-k={n - k} rows')
    for row in H:
        if len(_int_list(row, "H")) != n:
            raise ParseError(f'every row of "H" must have n={n} entries')
    s = _int_list(doc["s"], "s")
    if len(s) != n - k:
        raise ParseError(f'"s" must have n-k={n - k} entries')
    e = doc.get("e")
    if e is not None and len(_int_list(e, "e")) != n:
        raise ParseError(f'"e" must have n={n} entries')
    try:
        Ha = as_array(spec, H, 2)
        sa = as_array(spec, s, 1)
        ea = as_array(spec, e, 1) if e is not None else None
    except ValueError:
        raise ParseError("entry out of range") from None
    return DecodingInstance(spec, n, k, t, Ha, sa, ea)


def save(inst: DecodingInstance, path: str | Path) -> None:
    Path(path).write_text(serialize(inst), encoding="utf-8")


def load(path: str | Path) -> DecodingInstance:
    return parse(Path(path).read_text(encoding="utf-8"))
