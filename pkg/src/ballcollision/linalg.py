"""Dense linear algebra over F_q and the systemization step.

Vectors and matrices are integer numpy arrays holding field codes; the
:class:`~ballcollision.gf.FieldSpec` travels alongside them.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .errors import DegenerateMatrixError
from .gf import FieldSpec


@dataclass
class OpCount:
    """Field additions and multiplications performed."""

    additions: int = 0
    multiplications: int = 0

    def __add__(self, other: "OpCount") -> "OpCount":
        return OpCount(self.additions + other.additions,
                       self.multiplications + other.multiplications)

    def __iadd__(self, other: "OpCount") -> "OpCount":
        self.additions += other.additions
        self.multiplications += other.multiplications
        return self


def as_array(spec: FieldSpec, entries, ndim: int | None = None) -> np.ndarray:
    a = np.asarray(entries, dtype=np.int64)
    if ndim is not None and a.ndim != ndim:
        raise ValueError(f"expected a {ndim}-dimensional array, got shape {a.shape}")
    if a.size and (a.min() < 0 or a.max() >= spec.q):
        raise ValueError(f"entry out of range for q={spec.q}")
    return a


def mat_vec(spec: FieldSpec, M: np.ndarray, v: np.ndarray) -> np.ndarray:
    """M @ v over F_q."""
    M = np.asarray(M, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    if M.ndim != 2 or v.ndim != 1 or M.shape[1] != v.shape[0]:
        raise ValueError(f"dimension mismatch: {M.shape} @ {v.shape}")
    if spec.m == 1:
        return (M @ v) % spec.p
    out = np.zeros(M.shape[0], dtype=np.int64)
    for j in np.flatnonzero(v):
        out = spec.add(out, spec.mul(M[:, j], int(v[j])))
    return out


def weight(v) -> int:
    """Hamming weight."""
    return int(np.count_nonzero(v))


def support(v) -> tuple[int, ...]:
    return tuple(int(i) for i in np.flatnonzero(v))


def rank(spec: FieldSpec, M: np.ndarray) -> int:
    """Rank over F_q by Gaussian elimination on a copy."""
    M = np.array(M, dtype=np.int64)
    rows, cols = M.shape if M.ndim == 2 else (0, 0)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        M[[r, piv]] = M[[piv, r]]
        M[r] = spec.mul(spec.inv(int(M[r, c])), M[r])
        f = M[:, c].copy()
        f[r] = 0
        idx = np.flatnonzero(f)
        if idx.size:
            M[idx] = spec.sub(M[idx], spec.mul(f[idx, None], M[r][None, :]))
        r += 1
    return r


@dataclass
class Systemization:
    """Result of bringing ``(H | s)`` to the form ``[A | 1]`` on the Y-columns.

    ``info_order`` lists the information set in the order its columns appear
    in ``A``; ``X1`` is its first ``k1`` entries.  ``redundancy_order[j]`` is
    the original column carrying the j-th identity column, and the first
    ``l1``, next ``l2`` and remaining entries form ``Y1``, ``Y2``, ``Y3``.
    """

    spec: FieldSpec
    UH: np.ndarray
    Us: np.ndarray
    info_order: tuple[int, ...]
    redundancy_order: tuple[int, ...]
    l1: int
    l2: int
    ops: OpCount = dc_field(default_factory=OpCount)

    @property
    def info_set(self) -> tuple[int, ...]:
        return tuple(sorted(self.info_order))

    @property
    def n(self) -> int:
        return self.UH.shape[1]

    @property
    def k(self) -> int:
        return len(self.info_order)

    @property
    def window(self) -> int:
        return self.l1 + self.l2

    @property
    def A(self) -> np.ndarray:
        return self.UH[:, list(self.info_order)]

    @property
    def A1(self) -> np.ndarray:
        return self.A[: self.window]

    @property
    def A2(self) -> np.ndarray:
        return self.A[self.window:]

    @property
    def s1(self) -> np.ndarray:
        return self.Us[: self.window]

    @property
    def s2(self) -> np.ndarray:
        return self.Us[self.window:]

    @property
    def Y1(self) -> tuple[int, ...]:
        return self.redundancy_order[: self.l1]

    @property
    def Y2(self) -> tuple[int, ...]:
        return self.redundancy_order[self.l1: self.window]

    @property
    def Y3(self) -> tuple[int, ...]:
        return self.redundancy_order[self.window:]

    def check(self) -> None:
        """Raise AssertionError if a structural invariant fails."""
        n, r = self.n, self.UH.shape[0]
        Y = list(self.redundancy_order)
        assert len(Y) == r and len(self.info_order) == n - r
        assert sorted(Y + list(self.info_order)) == list(range(n))
        assert np.array_equal(self.UH[:, Y], np.eye(r, dtype=np.int64))
        assert len(self.s1) == self.window and len(self.s2) == r - self.window


def systemize(spec: FieldSpec, H: np.ndarray, s: np.ndarray,
              rng: np.random.Generator | None, l1: int, l2: int,
              column_order: Sequence[int] | None = None) -> Systemization:
    """Gauss-Jordan elimination on ``(H | s)`` over a random column order.

    Columns are visited in a random order (or ``column_order`` when given);
    a column with no pivot among the remaining rows is moved to the
    information set and the next column is tried.
    """
    H = np.asarray(H, dtype=np.int64)
    r, n = H.shape
    if l1 < 0 or l2 < 0 or l1 + l2 > r:
        raise ValueError(f"window l1+l2={l1 + l2} exceeds n-k={r}")
    M = np.empty((r, n + 1), dtype=np.int64)
    M[:, :n] = H
    M[:, n] = s
    if column_order is None:
        order = rng.permutation(n).tolist()
    else:
        order = [int(c) for c in column_order]
        if sorted(order) != list(range(n)):
            raise ValueError("column_order must be a permutation of range(n)")
    ops = OpCount()
    width = n + 1
    pivots: list[int] = []
    rest: list[int] = []
    for c in order:
        row = len(pivots)
        if row == r:
            rest.append(c)
            continue
        nz = np.flatnonzero(M[row:, c])
        if nz.size == 0:
            rest.append(c)
            continue
        piv = row + int(nz[0])
        if piv != row:
            M[[row, piv]] = M[[piv, row]]
        lead = int(M[row, c])
        if lead != 1:
            M[row] = spec.mul(spec.inv(lead), M[row])
            ops.multiplications += width
        f = M[:, c].copy()
        f[row] = 0
        idx = np.flatnonzero(f)
        if idx.size:
            M[idx] = spec.sub(M[idx], spec.mul(f[idx, None], M[row][None, :]))
            ops.multiplications += idx.size * width
            ops.additions += idx.size * width
        pivots.append(c)
    if len(pivots) < r:
        raise DegenerateMatrixError(
            f"degenerate parity-check matrix: rank {len(pivots)} < {r}")
    return Systemization(spec=spec, UH=M[:, :n], Us=M[:, n].copy(),
                         info_order=tuple(rest), redundancy_order=tuple(pivots),
                         l1=l1, l2=l2, ops=ops)


def elimination_estimate(n: int, k: int) -> int:
    """Operation count ``(n-k)(n+1)(n-k-1)`` charged for one elimination."""
    return (n - k) * (n + 1) * (n - k - 1)
