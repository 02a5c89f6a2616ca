"""Cups, caps, freeness and the four extension tables.

A t-cup w.r.t. f is an increasing index sequence q_1 < ... < q_t with
f(q_1,q_2) <= ... <= f(q_{t-1},q_t); a t-cap has >= throughout.  Ties
extend both kinds.

For index i and t >= 1 the tables hold

    alpha[i][t]  min f(j,i) over (t+1)-cups ending with the pair (j,i)   (+inf if none)
    beta[i][t]   max f(j,i) over (t+1)-caps ending with the pair (j,i)   (-inf if none)
    gamma[i][t]  max f(i,j) over (t+1)-cups starting with the pair (i,j) (-inf if none)
    delta[i][t]  min f(i,j) over (t+1)-caps starting with the pair (i,j) (+inf if none)

Rows and columns are 1-based; index 0 is padding.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import NEG_INF, POS_INF, PairFunction


class Kind(enum.Enum):
    CUP = "cup"
    CAP = "cap"


@dataclass(frozen=True)
class Chain:
    kind: Kind
    indices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.indices)

    def is_valid(self, f: PairFunction) -> bool:
        return is_chain(f, self.kind, self.indices)


def is_chain(f: PairFunction, kind: Kind, indices: Sequence[int]) -> bool:
    if not indices or any(not 1 <= q <= f.m for q in indices):
        return False
    if any(a >= b for a, b in zip(indices, indices[1:])):
        return False
    vals = [f.rows[a][b] for a, b in zip(indices, indices[1:])]
    if kind is Kind.CUP:
        return all(u <= v for u, v in zip(vals, vals[1:]))
    return all(u >= v for u, v in zip(vals, vals[1:]))


def _pair_lengths(f: PairFunction, kind: Kind):
    """best[j][i]: longest chain of the kind ending with the pair (j, i).

    For each middle element j the incoming pairs (h, j) and outgoing pairs
    (j, i) are sorted by value and swept once, so the whole pass is
    O(m^2 log m).  prev[j][i] is the h realising best[j][i] (0 for a bare pair).
    """
    m = f.rows
    n = f.m
    sign = 1 if kind is Kind.CUP else -1
    best = [[0] * (n + 1) for _ in range(n + 1)]
    prev = [[0] * (n + 1) for _ in range(n + 1)]
    for j in range(1, n + 1):
        incoming = sorted((sign * m[h][j], h) for h in range(1, j))
        outgoing = sorted((sign * m[j][i], i) for i in range(j + 1, n + 1))
        ptr = 0
        run_len, run_h = 0, 0
        for key, i in outgoing:
            while ptr < len(incoming) and incoming[ptr][0] <= key:
                h = incoming[ptr][1]
                if best[h][j] > run_len:
                    run_len, run_h = best[h][j], h
                ptr += 1
            if run_len:
                best[j][i] = run_len + 1
                prev[j][i] = run_h
            else:
                best[j][i] = 2
    return best, prev


def extreme_chain(f: PairFunction, kind: Kind) -> tuple[int, Chain]:
    """Length of the longest chain of the given kind, with one witness."""
    if f.m == 1:
        return 1, Chain(kind, (1,))
    best, prev = _pair_lengths(f, kind)
    length, end = max((best[j][i], (j, i)) for j, i in f.pairs())
    j, i = end
    out = [i, j]
    while prev[j][i]:
        j, i = prev[j][i], j
        out.append(j)
    return length, Chain(kind, tuple(reversed(out)))


@dataclass(frozen=True)
class ChainProfile:
    """Per-index longest chain lengths (1 when only the singleton exists)."""

    cup_end: tuple[int, ...]
    cap_end: tuple[int, ...]
    cup_start: tuple[int, ...]
    cap_start: tuple[int, ...]


def _ending_lengths(f: PairFunction, kind: Kind) -> list[int]:
    best, _ = _pair_lengths(f, kind)
    out = [0] + [1] * f.m
    for j, i in f.pairs():
        out[i] = max(out[i], best[j][i])
    return out


def chain_profile(f: PairFunction) -> ChainProfile:
    n = f.m
    rev = f.reversed()
    cup_end = _ending_lengths(f, Kind.CUP)
    cap_end = _ending_lengths(f, Kind.CAP)
    cup_start_r = _ending_lengths(rev, Kind.CUP)
    cap_start_r = _ending_lengths(rev, Kind.CAP)
    return ChainProfile(
        cup_end=tuple(cup_end),
        cap_end=tuple(cap_end),
        cup_start=(0,) + tuple(cup_start_r[n + 1 - i] for i in range(1, n + 1)),
        cap_start=(0,) + tuple(cap_start_r[n + 1 - i] for i in range(1, n + 1)),
    )


@dataclass(frozen=True)
class FreenessReport:
    free: bool
    witness: Optional[Chain] = None


def is_free(f: PairFunction, k: int, l: int) -> FreenessReport:
    """No k-cup and no l-cap.  A non-free report carries a k-cup or l-cap."""
    if k < 2 or l < 2:
        raise ValueError("k and l must be at least 2")
    cup_len, cup = extreme_chain(f, Kind.CUP)
    if cup_len >= k:
        return FreenessReport(False, Chain(Kind.CUP, cup.indices[:k]))
    cap_len, cap = extreme_chain(f, Kind.CAP)
    if cap_len >= l:
        return FreenessReport(False, Chain(Kind.CAP, cap.indices[:l]))
    return FreenessReport(True)


@dataclass(frozen=True)
class CupCapTables:
    k: int
    l: int
    m: int
    alpha: tuple[tuple, ...]
    beta: tuple[tuple, ...]
    gamma: tuple[tuple, ...]
    delta: tuple[tuple, ...]


def _end_table(f: PairFunction, depth: int, kind: Kind) -> list[list]:
    # cups: minimise f(j,i) subject to alpha[j][t-1] <= f(j,i)
    # caps: maximise f(j,i) subject to beta[j][t-1] >= f(j,i)
    rows = f.rows
    n = f.m
    if kind is Kind.CUP:
        none, start = POS_INF, NEG_INF
        better = lambda v, cur: v < cur  # noqa: E731
        extends = lambda prev, v: prev <= v  # noqa: E731
    else:
        none, start = NEG_INF, POS_INF
        better = lambda v, cur: v > cur  # noqa: E731
        extends = lambda prev, v: prev >= v  # noqa: E731
    table = [[none] * (depth + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        table[i][0] = start
    for i in range(2, n + 1):
        row = table[i]
        for j in range(1, i):
            v = rows[j][i]
            tj = table[j]
            for t in range(1, depth + 1):
                if not extends(tj[t - 1], v):
                    # tj is monotone in t, so no larger t can extend either
                    break
                if better(v, row[t]):
                    row[t] = v
    for i in range(1, n + 1):
        table[i][0] = none
    return table


def _flip(table: list[list], n: int) -> tuple[tuple, ...]:
    # entries of the reversed function: index i <-> n+1-i, values negated
    out = [tuple()]
    for i in range(1, n + 1):
        out.append(tuple(-v for v in table[n + 1 - i]))
    return tuple(out)


def tables(f: PairFunction, k: int, l: int) -> CupCapTables:
    """alpha/gamma up to t = k, beta/delta up to t = l.  Entry [i][0] is padding."""
    if k < 1 or l < 1:
        raise ValueError("k and l must be at least 1")
    n = f.m
    alpha = _end_table(f, k, Kind.CUP)
    beta = _end_table(f, l, Kind.CAP)
    rev = f.reversed()
    # a cup starting with (i,j) is a cup of rev ending with (n+1-j, n+1-i)
    # whose last value is -f(i,j), so gamma is the flipped rev-alpha
    gamma = _flip(_end_table(rev, k, Kind.CUP), n)
    delta = _flip(_end_table(rev, l, Kind.CAP), n)
    return CupCapTables(
        k=k,
        l=l,
        m=n,
        alpha=tuple(tuple(r) for r in alpha),
        beta=tuple(tuple(r) for r in beta),
        gamma=gamma,
        delta=delta,
    )
