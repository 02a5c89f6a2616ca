"""Extremal constructions, the largest-convex-subset oracle, and exhaustive search.

Nothing built here is trusted: every construction is re-checked by an
independent verifier before it is returned.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .chains import Kind, _pair_lengths, extreme_chain, is_free
from .core import PairFunction, Point, PointSet, orientation, slope_function
from .errors import SearchSpaceTooLarge, VerificationFailed

MAX_SEARCH_M = 4


@dataclass(frozen=True)
class ConvexSubsetResult:
    size: int
    witness: tuple[int, ...]  # hull order: lower chain left to right, then upper chain back


def in_convex_position(pts: Sequence[Point]) -> bool:
    """True iff every point is a hull vertex (strictly; collinear counts as not)."""
    return len(convex_hull(pts)) == len(pts)


def convex_hull(pts: Sequence[Point]) -> list[Point]:
    """Andrew's monotone chain; drops collinear boundary points."""
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return list(pts)

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and orientation(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


def largest_convex_subset(P: PointSet) -> ConvexSubsetResult:
    """Maximum number of points in convex position, O(m^3 log m).

    With x strictly increasing, a set in convex position splits at its
    leftmost point p and rightmost point r into a cup (lower chain) and a cap
    (upper chain) from p to r, and any such cup and cap give a convex set.
    So the answer is max over p < r of cup(p..r) + cap(p..r) - 2.
    """
    m = P.m
    if m <= 2:
        return ConvexSubsetResult(m, tuple(range(1, m + 1)))
    f = slope_function(P)
    best_size, best_wit = 2, (1, 2)
    for p in range(1, m):
        idx = list(range(p, m + 1))
        sub = f.restrict(idx)
        cup_len, cup_prev = _pair_lengths_from_first(sub, Kind.CUP)
        cap_len, cap_prev = _pair_lengths_from_first(sub, Kind.CAP)
        for r in range(2, len(idx) + 1):
            cu = max(((cup_len[j][r], j) for j in range(1, r)), default=(0, 0))
            ca = max(((cap_len[j][r], j) for j in range(1, r)), default=(0, 0))
            if cu[0] and ca[0] and cu[0] + ca[0] - 2 > best_size:
                best_size = cu[0] + ca[0] - 2
                lower = _walk(cup_prev, cu[1], r)
                upper = _walk(cap_prev, ca[1], r)
                chain = lower + list(reversed(upper[1:-1]))
                best_wit = tuple(idx[c - 1] for c in chain)
    return ConvexSubsetResult(best_size, best_wit)


def _pair_lengths_from_first(f: PairFunction, kind: Kind):
    """Like chains._pair_lengths but only chains whose first element is 1.

    Entries are 0 where no such chain ends with the pair.
    """
    n = f.m
    rows = f.rows
    sign = 1 if kind is Kind.CUP else -1
    best = [[0] * (n + 1) for _ in range(n + 1)]
    prev = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(2, n + 1):
        best[1][i] = 2
    for j in range(2, n + 1):
        incoming = sorted((sign * rows[h][j], h) for h in range(1, j) if best[h][j])
        outgoing = sorted((sign * rows[j][i], i) for i in range(j + 1, n + 1))
        ptr, run_len, run_h = 0, 0, 0
        for key, i in outgoing:
            while ptr < len(incoming) and incoming[ptr][0] <= key:
                h = incoming[ptr][1]
                if best[h][j] > run_len:
                    run_len, run_h = best[h][j], h
                ptr += 1
            if run_len:
                best[j][i] = run_len + 1
                prev[j][i] = run_h
    return best, prev


def _walk(prev, j: int, i: int) -> list[int]:
    out = [i, j]
    while prev[j][i]:
        j, i = prev[j][i], j
        out.append(j)
    return list(reversed(out))


def largest_convex_subset_brute(P: PointSet) -> ConvexSubsetResult:
    """Subset enumeration from the largest size down; for m <= 14."""
    if P.m > 14:
        raise ValueError("brute force limited to m <= 14")
    for size in range(P.m, 0, -1):
        for combo in itertools.combinations(range(1, P.m + 1), size):
            if in_convex_position([P[i] for i in combo]):
                return ConvexSubsetResult(size, combo)
    return ConvexSubsetResult(0, ())


# ---------------------------------------------------------------------------
# constructions


def _normalise(points: Sequence[tuple[Fraction, Fraction]], width: Fraction):
    """Translate the first point to the origin and scale uniformly so the
    x-extent is at most ``width``; slopes are unchanged."""
    x0, y0 = points[0]
    extent = points[-1][0] - x0
    s = width / extent if extent else Fraction(1)
    return [((x - x0) * s, (y - y0) * s) for x, y in points]


def _max_abs_slope(points) -> Fraction:
    return max(
        (abs((b[1] - a[1]) / (b[0] - a[0])) for a, b in itertools.combinations(points, 2)),
        default=Fraction(0),
    )


def _integerise(points) -> PointSet:
    den = math.lcm(*(c.denominator for p in points for c in p))
    return PointSet.build([(x * den, y * den) for x, y in points])


def _free_points(k: int, l: int, memo: dict) -> list[tuple[Fraction, Fraction]]:
    if (k, l) in memo:
        return memo[k, l]
    if k == 0 or l == 0:
        pts = [(Fraction(0), Fraction(0))]
    else:
        left = _normalise(_free_points(k - 1, l, memo), Fraction(1))
        right = _normalise(_free_points(k, l - 1, memo), Fraction(1))
        bound = max(_max_abs_slope(left), _max_abs_slope(right))
        # both blocks fit in [0,1] x [-bound, bound]; shifting the right block
        # by (2, 4*bound+1) puts every cross slope at >= (3*bound+1)/3 > bound
        dx, dy = Fraction(2), 4 * bound + 1
        pts = left + [(x + dx, y + dy) for x, y in right]
    memo[k, l] = pts
    return pts


def free_construction(k: int, l: int) -> PointSet:
    """C(k+l, k) points whose slope function has no (k+2)-cup and no (l+2)-cap."""
    if not (0 <= k <= 6 and 0 <= l <= 6):
        raise ValueError("need 0 <= k, l <= 6")
    P = _integerise(_free_points(k, l, {}))
    if P.m != math.comb(k + l, k):
        raise VerificationFailed(f"expected {math.comb(k + l, k)} points, built {P.m}")
    report = is_free(slope_function(P), k + 2, l + 2)
    if not report.free:
        raise VerificationFailed(f"free_construction({k},{l}) has {report.witness}")
    return P


def es_lower_blocks(n: int) -> list[list[tuple[Fraction, Fraction]]]:
    """Blocks G_i = free_construction(i, n-2-i), shrunk and placed for es_lower.

    Cross-block slopes all exceed within-block slopes, and for blocks
    a < b < c every slope from a to b exceeds every slope from b to c.
    """
    blocks = [
        [(Fraction(p.x), Fraction(p.y)) for p in free_construction(i, n - 2 - i).points]
        for i in range(n - 1)
    ]
    bound = max(_max_abs_slope(b) for b in blocks) + 1
    width = Fraction(1, 16)
    # block i starts at x = i; consecutive centre slopes 4*bound*(n-i) fall
    # by 4*bound per step, and with width 1/16 a point-to-point slope strays
    # from its centre slope by well under 2*bound for n <= 6
    placed = []
    y = Fraction(0)
    for i, block in enumerate(blocks):
        if i:
            y += 4 * bound * (n - i)
        placed.append([(x + i, yy + y) for x, yy in _normalise(block, width)])
    return placed


def es_lower(n: int) -> PointSet:
    """2^(n-2) points with no n in convex position, for 4 <= n <= 6."""
    if not 4 <= n <= 6:
        raise ValueError("need 4 <= n <= 6")
    P = _integerise([p for block in es_lower_blocks(n) for p in block])
    if P.m != 2 ** (n - 2):
        raise VerificationFailed(f"expected {2 ** (n - 2)} points, built {P.m}")
    size = largest_convex_subset(P).size
    if size >= n:
        raise VerificationFailed(f"es_lower({n}) has {size} points in convex position")
    return P


# ---------------------------------------------------------------------------
# exhaustive ES'(k, l)


def _admits_free(m: int, k: int, l: int) -> bool:
    """Does some f on m elements, valued in {1..#pairs}, avoid k-cups and l-caps?"""
    if m == 1:
        return True
    pairs = [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    p = len(pairs)
    for values in itertools.product(range(1, p + 1), repeat=p):
        f = PairFunction.from_mapping(m, dict(zip(pairs, values)))
        if extreme_chain(f, Kind.CUP)[0] < k and extreme_chain(f, Kind.CAP)[0] < l:
            return True
    return False


def exhaustive_es_prime(k: int, l: int) -> int:
    """Largest m admitting a (k,l)-free pair function, by full enumeration.

    Restricting values to {1..p} (p = number of pairs) loses nothing:
    freeness depends only on comparisons, and every weak ordering of p
    values is realised.  m is raised until some size admits no free
    function; that size must have at most ``MAX_SEARCH_M`` elements.
    """
    if k < 2 or l < 2:
        raise ValueError("k and l must be at least 2")
    m = 1
    while True:
        if m + 1 > MAX_SEARCH_M:
            raise SearchSpaceTooLarge(
                f"ES'({k},{l}) needs m >= {m + 1}, beyond the {MAX_SEARCH_M}-element limit"
            )
        if not _admits_free(m + 1, k, l):
            return m
        m += 1
