"""Exact word-class counts behind the 7/8 upper bound.

With k = n-2 and l = n-3 every R-word outside the class delta*gamma is
available, while R-words inside it are injected into the L-class
beta*alpha-alpha.  So after the mate removal a set has at most

    raw = |L(beta*alpha-alpha)| + |R| - |R(delta*gamma)|

points, and raw / C(2n-5, n-2) tends to 1/8 + 1 - 1/4 = 7/8.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .words import Pattern, class_count

DECIMAL_PLACES = 10


@dataclass(frozen=True)
class BoundBreakdown:
    n: int
    lbaa: int
    rtotal: int
    rdg: int
    raw: int
    ratio: Fraction


def breakdown(n: int) -> BoundBreakdown:
    if n < 6:
        raise ValueError("n must be at least 6")
    k, l = n - 2, n - 3
    lbaa = class_count(k, l, Pattern("β", "αα"))
    rtotal = class_count(k, l, Pattern())
    rdg = class_count(k, l, Pattern("δ", "γ"))
    # closed forms of the three residual-multiset counts
    assert lbaa == math.comb(2 * n - 8, n - 4)
    assert rtotal == math.comb(2 * n - 5, n - 2)
    assert rdg == math.comb(2 * n - 7, n - 3)
    raw = lbaa + rtotal - rdg
    return BoundBreakdown(n, lbaa, rtotal, rdg, raw, Fraction(raw, rtotal))


def format_decimal(q: Fraction, places: int = DECIMAL_PLACES) -> str:
    """Fixed-point rendering, rounded half-to-even, computed exactly."""
    scaled = round(q * 10**places)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def ratio_table(n_from: int, n_to: int, step: int = 1) -> list[tuple[int, Fraction, str]]:
    if not 6 <= n_from <= n_to:
        raise ValueError("need 6 <= n_from <= n_to")
    if step < 1:
        raise ValueError("step must be positive")
    out = []
    for n in range(n_from, n_to + 1, step):
        r = breakdown(n).ratio
        out.append((n, r, format_decimal(r)))
    return out


def ratio_table_csv(n_from: int, n_to: int, step: int = 1) -> str:
    lines = ["n,raw,rtotal,ratio_decimal"]
    for n, _, dec in ratio_table(n_from, n_to, step):
        b = breakdown(n)
        lines.append(f"{n},{b.raw},{b.rtotal},{dec}")
    return "\n".join(lines) + "\n"


def assembled_upper(n: int) -> tuple[int, list[str]]:
    """A finite-n bound for ES(n) assembled from the counting argument.

    This closed form is derived here, not quoted: one round of mate removal,
    then m - |Q'| <= raw and |Q'| <= m/(n-2) give m <= raw*(n-2)/(n-3).
    Every set of at least M+1 points (M = floor of that) therefore has a
    convex n-gon or an (n-1)-cap, and the reduction to such sets adds one
    more, so ES(n) <= M + 2.
    """
    if n < 7:
        raise ValueError("n must be at least 7")
    b = breakdown(n)
    bound = Fraction(b.raw * (n - 2), n - 3)
    M = math.floor(bound)
    result = M + 2
    transcript = [
        f"n = {n}; words use k = {n - 2} first letters, l = {n - 3} second letters",
        f"|L(β*αα)| = C({2 * n - 8},{n - 4}) = {b.lbaa}",
        f"|R| = C({2 * n - 5},{n - 2}) = {b.rtotal}",
        f"|R(δ*γ)| = C({2 * n - 7},{n - 3}) = {b.rdg}",
        f"after mate removal: m - |Q'| <= {b.lbaa} + {b.rtotal} - {b.rdg} = {b.raw}",
        f"with |Q'| <= m/{n - 2}: m <= {b.raw}*{n - 2}/{n - 3} = {bound}, so m <= M = {M}",
        f"sets of M+1 = {M + 1} points have a convex {n}-gon or a {n - 1}-cap",
        f"ES({n}) <= M + 2 = {result}  [closed form derived by this tool]",
        f"ratio to C({2 * n - 5},{n - 2}): {format_decimal(Fraction(result, b.rtotal))}",
    ]
    return result, transcript
