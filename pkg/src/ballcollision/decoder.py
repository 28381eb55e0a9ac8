"""Ball-collision information-set decoding over F_q.

One iteration systemizes ``(H | s)`` on a random column order, builds the
lists ``S`` and ``T`` of partial syndromes on the ``l1 + l2`` window by
intermediate sums, joins them on equal keys and completes every collision
with an early-abort weight check on the remaining ``l3`` coordinates.

At q = 2 this is exactly the binary ball-collision algorithm; negation is
the identity there and no special case is needed.
"""

from __future__ import annotations

import itertools
import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

import numpy as np

from .errors import CapExceededError
from .gf import FieldSpec
from .instance import DecodingInstance
from .linalg import OpCount, Systemization, mat_vec, rank, systemize, weight
from .params import BallCollisionParams

PHASES = ("elimination", "build_S", "build_T", "collision")

#: default cap on the number of candidates the brute-force oracle may visit
BRUTE_FORCE_CAP = 10**8


def new_counters() -> dict[str, OpCount]:
    return {phase: OpCount() for phase in PHASES}


def merge_counters(into: dict[str, OpCount], other: dict[str, OpCount]) -> None:
    for phase, c in other.items():
        into[phase] += c


# -- enumeration by intermediate sums


@dataclass
class WeightedVectors:
    """All weight-rho vectors on ``kappa`` columns, one row per vector.

    ``origin[i]`` is the row of the base batch the i-th sum was started from,
    ``support``/``values`` give the vector and ``sums`` its partial syndrome.
    """

    origin: np.ndarray
    support: np.ndarray
    values: np.ndarray
    sums: np.ndarray

    def __len__(self) -> int:
        return len(self.origin)


def enumerate_weighted(spec: FieldSpec, columns: np.ndarray, rho: int,
                       base: np.ndarray | None = None, *, negate: bool = False,
                       unit: bool = False, ops: OpCount | None = None) -> WeightedVectors:
    """Partial syndromes ``base + c * columns @ x`` for every weight-rho x.

    ``c`` is -1 when ``negate`` is set.  ``base`` is a ``(B, L)`` batch (or a
    single length-L vector); without it the sums start from zero and the
    first layer costs no additions.  Enumeration proceeds layer by layer:
    the weight-1 layer scales every column by every nonzero scalar, and each
    deeper vector extends a lighter one by a single scaled column with a
    larger index.  With ``unit`` the columns are unit vectors, so scaling is
    free and each extension costs one addition instead of L.
    """
    columns = np.asarray(columns, dtype=np.int64)
    L, kappa = columns.shape
    q = spec.q
    if ops is None:
        ops = OpCount()
    if base is None:
        base_rows = np.zeros((1, L), dtype=np.int64)
        zero_base = True
    else:
        base_rows = np.atleast_2d(np.asarray(base, dtype=np.int64))
        zero_base = False
    B = base_rows.shape[0]
    if rho > kappa or rho < 0:
        raise ValueError(f"weight {rho} impossible on {kappa} positions")
    if rho == 0:
        return WeightedVectors(np.arange(B), np.zeros((B, 0), dtype=np.int64),
                               np.zeros((B, 0), dtype=np.int64), base_rows.copy())
    step = 1 if unit else L
    lam = np.arange(1, q)
    coef = spec.neg(lam) if negate else lam
    # scaled[j, v - 1] = coef(v) * column j
    scaled = spec.mul(coef[None, :, None], columns.T[:, None, :])
    if not unit:
        ops.multiplications += (q - 1) * kappa * L

    # weight-1 layer: for each base row, each column, each scalar
    n1 = kappa * (q - 1)
    origin = np.repeat(np.arange(B), n1)
    idx = np.tile(np.repeat(np.arange(kappa), q - 1), B)
    val = np.tile(np.tile(lam, kappa), B)
    sums = scaled[idx, val - 1]
    if not zero_base:
        sums = spec.add(base_rows[origin], sums)
        ops.additions += B * n1 * step
    support = idx[:, None]
    values = val[:, None]

    for _ in range(rho - 1):
        last = support[:, -1]
        counts = (kappa - 1 - last) * (q - 1)
        total = int(counts.sum())
        parent = np.repeat(np.arange(len(last)), counts)
        starts = np.cumsum(counts) - counts
        g = np.arange(total) - np.repeat(starts, counts)
        new_idx = last[parent] + 1 + g // (q - 1)
        new_val = 1 + g % (q - 1)
        sums = spec.add(sums[parent], scaled[new_idx, new_val - 1])
        ops.additions += total * step
        support = np.concatenate([support[parent], new_idx[:, None]], axis=1)
        values = np.concatenate([values[parent], new_val[:, None]], axis=1)
        origin = origin[parent]
    return WeightedVectors(origin, support, values, sums)


# -- collision lists


def encode_key(vec, q: int) -> bytes:
    """Little-endian base-q packing of a vector into bytes."""
    acc = 0
    for v in reversed([int(x) for x in vec]):
        acc = acc * q + v
    nbytes = max(1, (len(vec) * (q - 1).bit_length() + 7) // 8)
    return acc.to_bytes(nbytes, "little")


def encode_keys(keys: np.ndarray, q: int) -> list[bytes]:
    N, L = keys.shape
    nbytes = max(1, (L * (q - 1).bit_length() + 7) // 8)
    if L == 0:
        return [bytes(nbytes)] * N
    if L * math.log2(q) < 62:
        powers = np.array([q**i for i in range(L)], dtype=np.int64)
        packed = (keys @ powers).tolist()
    else:
        powers = np.array([q**i for i in range(L)], dtype=object)
        packed = keys.astype(object) @ powers
    return [int(v).to_bytes(nbytes, "little") for v in packed]


@dataclass
class CollisionList:
    """The set S or T: keys on the window plus the (x, y) records behind them.

    ``x_pos`` index columns of ``A`` (that is, positions in the information
    order); ``y_pos`` index rows of the ``l1 + l2`` window.
    """

    keys: np.ndarray
    x_pos: np.ndarray
    x_val: np.ndarray
    y_pos: np.ndarray
    y_val: np.ndarray
    ops: OpCount = dc_field(default_factory=OpCount)

    def __len__(self) -> int:
        return len(self.keys)

    def encoded(self, q: int) -> list[bytes]:
        return encode_keys(self.keys, q)

    def table(self, q: int) -> dict[bytes, list[int]]:
        out: dict[bytes, list[int]] = {}
        for i, key in enumerate(self.encoded(q)):
            out.setdefault(key, []).append(i)
        return out


def _build(sysz: Systemization, cols: slice, rho: int, rows: slice, sigma: int,
           base: np.ndarray | None, negate: bool) -> CollisionList:
    spec = sysz.spec
    L = sysz.window
    ops = OpCount()
    xs = enumerate_weighted(spec, sysz.A1[:, cols], rho, base, negate=negate, ops=ops)
    unit_cols = np.eye(L, dtype=np.int64)[:, rows]
    ys = enumerate_weighted(spec, unit_cols, sigma, xs.sums, negate=negate,
                            unit=True, ops=ops)
    o = ys.origin
    return CollisionList(keys=ys.sums,
                         x_pos=xs.support[o] + cols.start,
                         x_val=xs.values[o],
                         y_pos=ys.support + rows.start,
                         y_val=ys.values,
                         ops=ops)


def build_S(sysz: Systemization, params: BallCollisionParams) -> CollisionList:
    """Keys ``A1 x1 + y1`` for weight-p1 x1 on X1 and weight-q1 y1 on Y1."""
    p = params
    return _build(sysz, slice(0, p.k1), p.p1, slice(0, p.l1), p.q1, None, False)


def build_T(sysz: Systemization, params: BallCollisionParams) -> CollisionList:
    """Keys ``s1 - A1 x2 - y2`` for weight-p2 x2 on X2 and weight-q2 y2 on Y2."""
    p = params
    return _build(sysz, slice(p.k1, p.k1 + p.k2), p.p2, slice(p.l1, p.l1 + p.l2),
                  p.q2, sysz.s1, True)


def check_keys(sysz: Systemization, lst: CollisionList, from_T: bool) -> bool:
    """Recompute every key of ``lst`` from its record."""
    spec = sysz.spec
    A1 = sysz.A1
    for i in range(len(lst)):
        x = np.zeros(sysz.k, dtype=np.int64)
        x[lst.x_pos[i]] = lst.x_val[i]
        y = np.zeros(sysz.window, dtype=np.int64)
        y[lst.y_pos[i]] = lst.y_val[i]
        v = spec.add(mat_vec(spec, A1, x), y) if A1.size else y
        if from_T:
            v = spec.sub(sysz.s1, v)
        if not np.array_equal(v, lst.keys[i]):
            return False
    return True


# -- one iteration


@dataclass
class IterationResult:
    e: np.ndarray | None
    ops: dict[str, OpCount]
    collisions: int = 0
    sysz: Systemization | None = None


def _weight_check(spec: FieldSpec, A2: np.ndarray, s2: list[int], pos: np.ndarray,
                  vals: np.ndarray, target: int, ops: OpCount) -> list[int] | None:
    """Coordinates of ``s2 - A2 e1`` with early abort once weight > target."""
    npos = len(pos)
    sub = A2[:, pos] if npos else None
    out = []
    w = 0
    for r in range(len(s2)):
        acc = spec.dot(sub[r], vals) if npos else 0
        v = spec.sub(s2[r], acc)
        ops.multiplications += npos
        ops.additions += npos + 1
        if v:
            w += 1
            if w > target:
                return None
        out.append(int(v))
    return out if w == target else None


def iterate_once(inst: DecodingInstance, params: BallCollisionParams,
                 rng: np.random.Generator | None,
                 column_order: Sequence[int] | None = None,
                 stop: Callable[[], bool] | None = None) -> IterationResult:
    """One full iteration: systemize, build S and T, join, weight-check."""
    spec = inst.spec
    p = params
    ops = new_counters()
    sysz = systemize(spec, inst.H, inst.s, rng, p.l1, p.l2, column_order)
    ops["elimination"] += sysz.ops
    if stop is not None and stop():
        return IterationResult(None, ops, 0, sysz)
    S = build_S(sysz, p)
    ops["build_S"] += S.ops
    T = build_T(sysz, p)
    ops["build_T"] += T.ops
    if stop is not None and stop():
        return IterationResult(None, ops, 0, sysz)

    target = p.rest(inst.t)
    A2 = sysz.A2
    s2 = [int(v) for v in sysz.s2]
    small, big = (S, T) if len(S) <= len(T) else (T, S)
    small_is_S = small is S
    table = small.table(spec.q)
    cops = ops["collision"]
    collisions = 0
    for j, key in enumerate(big.encoded(spec.q)):
        hits = table.get(key)
        if not hits:
            continue
        for i in hits:
            si, ti = (i, j) if small_is_S else (j, i)
            collisions += 1
            pos = np.concatenate([S.x_pos[si], T.x_pos[ti]])
            vals = np.concatenate([S.x_val[si], T.x_val[ti]])
            e3 = _weight_check(spec, A2, s2, pos, vals, target, cops)
            if e3 is None:
                continue
            e = np.zeros(inst.n, dtype=np.int64)
            info = np.array(sysz.info_order, dtype=np.int64)
            red = np.array(sysz.redundancy_order, dtype=np.int64)
            e[info[pos]] = vals
            e[red[S.y_pos[si]]] = S.y_val[si]
            e[red[T.y_pos[ti]]] = T.y_val[ti]
            e[red[sysz.window:]] = e3
            return IterationResult(e, ops, collisions, sysz)
    return IterationResult(None, ops, collisions, sysz)


# -- outer loop


@dataclass
class DecodeResult:
    status: str  # "found" or "exhausted"
    e: np.ndarray | None
    iterations: int
    op_counters: dict[str, OpCount]

    @property
    def found(self) -> bool:
        return self.status == "found"

    def total_ops(self) -> OpCount:
        total = OpCount()
        for c in self.op_counters.values():
            total += c
        return total


def default_max_iterations(inst: DecodingInstance, params: BallCollisionParams) -> int:
    from .costmodel import success_probability

    prob = success_probability(inst.n, inst.k, inst.t, params)
    return math.ceil(50 / prob)


def decode(inst: DecodingInstance, params: BallCollisionParams,
           rng: int | np.random.Generator | None = None,
           max_iterations: int | None = None, threads: int = 1) -> DecodeResult:
    """Retry :func:`iterate_once` on fresh information sets until success.

    ``rng`` is a seed or a generator; each iteration draws its column order
    from it.  With ``threads > 1`` the iterations are shared among workers
    that each own a child stream spawned from it and stop at the first
    success; counters are summed over all workers.
    """
    params.validate(inst.n, inst.k, inst.t)
    if max_iterations is None:
        max_iterations = default_max_iterations(inst, params)
    gen = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    if threads <= 1:
        counters = new_counters()
        for it in range(1, max_iterations + 1):
            res = iterate_once(inst, params, gen)
            merge_counters(counters, res.ops)
            if res.e is not None:
                return DecodeResult("found", res.e, it, counters)
        return DecodeResult("exhausted", None, max_iterations, counters)
    return _decode_parallel(inst, params, gen, max_iterations, threads)


def _decode_parallel(inst, params, gen: np.random.Generator, max_iterations: int,
                     threads: int) -> DecodeResult:
    streams = gen.spawn(threads)
    done = threading.Event()
    lock = threading.Lock()
    state = {"claimed": 0, "e": None}
    counters = new_counters()

    def worker(wrng: np.random.Generator) -> None:
        local = new_counters()
        while not done.is_set():
            with lock:
                if state["claimed"] >= max_iterations:
                    break
                state["claimed"] += 1
            res = iterate_once(inst, params, wrng, stop=done.is_set)
            merge_counters(local, res.ops)
            if res.e is not None:
                with lock:
                    if state["e"] is None:
                        state["e"] = res.e
                done.set()
        with lock:
            merge_counters(counters, local)

    with ThreadPoolExecutor(max_workers=threads) as pool:
        list(pool.map(worker, streams))
    status = "found" if state["e"] is not None else "exhausted"
    return DecodeResult(status, state["e"], state["claimed"], counters)


# -- brute-force oracles


def candidate_count(n: int, t: int, q: int) -> int:
    return sum(math.comb(n, w) * (q - 1) ** w for w in range(t + 1))


def brute_force_decode(inst: DecodingInstance, cap: int = BRUTE_FORCE_CAP) -> set[tuple[int, ...]]:
    """Every e with ``H e = s`` and ``w(e) <= t``, by exhaustive enumeration."""
    spec, n, t = inst.spec, inst.n, inst.t
    total = candidate_count(n, t, spec.q)
    if total > cap:
        raise CapExceededError(f"{total} candidates exceed the oracle cap {cap}")
    out: set[tuple[int, ...]] = set()
    if not np.any(inst.s):
        out.add((0,) * n)
    nz = np.array(spec.nonzero_elements(), dtype=np.int64)
    for w in range(1, t + 1):
        vals = np.array(list(itertools.product(nz, repeat=w)), dtype=np.int64)
        for supp in itertools.combinations(range(n), w):
            cols = inst.H[:, supp]
            syn = np.zeros((len(vals), inst.H.shape[0]), dtype=np.int64)
            for j in range(w):
                syn = spec.add(syn, spec.mul(vals[:, j:j + 1], cols[:, j][None, :]))
            for row in np.flatnonzero(np.all(syn == inst.s, axis=1)):
                e = [0] * n
                for j, c in enumerate(supp):
                    e[c] = int(vals[row, j])
                out.add(tuple(e))
    return out


def split_feasible(inst: DecodingInstance, e, params: BallCollisionParams) -> bool:
    """Whether some reachable partition puts ``e`` into the params' split.

    Any linearly independent set of n - k columns can come out of the
    elimination as the redundancy set, in any order, and the information
    set can be split arbitrarily.  So ``e`` is reachable exactly when such a
    set meets its support in ``t - p1 - p2`` positions.
    """
    e = np.asarray(e)
    n, k = inst.n, inst.k
    if weight(e) != inst.t or not params.is_feasible(n, k, inst.t):
        return False
    supp = np.flatnonzero(e).tolist()
    free = np.flatnonzero(e == 0).tolist()
    in_y = inst.t - params.p1 - params.p2
    if in_y > n - k or n - k - in_y > len(free):
        return False
    for a in itertools.combinations(supp, in_y):
        for b in itertools.combinations(free, n - k - in_y):
            if rank(inst.spec, inst.H[:, list(a + b)]) == n - k:
                return True
    return False
