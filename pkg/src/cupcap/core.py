"""Exact rationals, planar point sets, pair functions and seeded generation.

All coordinates and pair values are ``fractions.Fraction``.  The only
non-rational values anywhere in the package are the two sentinels
``NEG_INF`` and ``POS_INF`` (float infinities), which compare exactly
against any ``Fraction``.
"""

from __future__ import annotations

import math
import random
import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence, Union

from .errors import (
    Collinear,
    CollinearWarning,
    DuplicateX,
    ExhaustedAttempts,
    MalformedInput,
    ShearFailed,
)

NEG_INF = -math.inf
POS_INF = math.inf

ExtendedValue = Union[Fraction, float]

POINTS_HEADER = "points v1"
PAIRFN_HEADER = "pairfn v1"

# candidate draws per point before random_point_set gives up
RETRY_BUDGET = 1000

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(token: str) -> Fraction:
    if not _RATIONAL_RE.match(token):
        raise MalformedInput(f"bad rational {token!r}")
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise MalformedInput(f"zero denominator in {token!r}") from None


def format_value(v: ExtendedValue) -> str:
    """Render a rational or sentinel as ``-3/4``, ``2``, ``+inf`` or ``-inf``."""
    if v == POS_INF:
        return "+inf"
    if v == NEG_INF:
        return "-inf"
    return str(v)


def orientation(p, q, r) -> int:
    """Sign of the turn p -> q -> r: 1 left, -1 right, 0 collinear."""
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (d > 0) - (d < 0)


class Point(NamedTuple):
    x: Fraction
    y: Fraction


@dataclass(frozen=True)
class PointSet:
    """Points with strictly increasing x.  Index ``i`` (1-based) is ``points[i-1]``."""

    points: tuple[Point, ...]

    @classmethod
    def build(cls, coords: Iterable[Sequence], allow_collinear: bool = False) -> "PointSet":
        pts = tuple(Point(Fraction(x), Fraction(y)) for x, y in coords)
        for a, b in zip(pts, pts[1:]):
            if a.x == b.x:
                raise DuplicateX(f"duplicate x-coordinate {a.x}")
            if a.x > b.x:
                raise MalformedInput(f"x-coordinates not increasing at x={a.x}, {b.x}")
        triple = find_collinear(pts)
        if triple is not None:
            if not allow_collinear:
                raise Collinear(triple)
            warnings.warn(f"collinear triple {triple}", CollinearWarning, stacklevel=2)
        return cls(pts)

    @property
    def m(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i - 1]

    def subset(self, indices: Iterable[int]) -> "PointSet":
        """Points at the given 1-based indices, kept in x order."""
        return PointSet(tuple(self.points[i - 1] for i in sorted(indices)))

    def to_text(self) -> str:
        lines = [POINTS_HEADER]
        lines.extend(f"{p.x} {p.y}" for p in self.points)
        return "\n".join(lines) + "\n"


def find_collinear(pts: Sequence[Point]):
    """Return the first collinear index triple (1-based), or None.

    Relies on pts being sorted by x with distinct x, so every slope is finite.
    """
    for a in range(len(pts)):
        seen = {}
        pa = pts[a]
        for b in range(a + 1, len(pts)):
            pb = pts[b]
            s = (pb.y - pa.y) / (pb.x - pa.x)
            if s in seen:
                return (a + 1, seen[s] + 1, b + 1)
            seen[s] = b
    return None


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def parse_point_set(text: str, allow_collinear: bool = False) -> PointSet:
    lines = _content_lines(text)
    first = next(lines, None)
    if first is None or first[1] != POINTS_HEADER:
        raise MalformedInput(f"expected header {POINTS_HEADER!r}")
    coords = []
    for lineno, line in lines:
        tokens = line.split()
        if len(tokens) != 2:
            raise MalformedInput(f"line {lineno}: expected 2 coordinates, got {len(tokens)}")
        coords.append((parse_rational(tokens[0]), parse_rational(tokens[1])))
    return PointSet.build(coords, allow_collinear=allow_collinear)


def shear(P: PointSet, lam, allow_collinear: bool = False) -> PointSet:
    """Apply (x, y) -> (x + lam*y, y) and re-sort by x.

    The map is affine with positive determinant, so orientation signs, and
    hence convex position, are preserved.
    """
    lam = Fraction(lam)
    pts = sorted((p.x + lam * p.y, p.y) for p in P.points)
    for a, b in zip(pts, pts[1:]):
        if a[0] == b[0]:
            raise ShearFailed(f"duplicate x={a[0]} persists for lambda={lam}")
    return PointSet.build(pts, allow_collinear=allow_collinear)


def draw_point(rng: random.Random, span: int) -> tuple[int, int]:
    """One integer point of [0, span]^2 from ``getrandbits`` by rejection."""
    bits = span.bit_length()

    def coord() -> int:
        while True:
            v = rng.getrandbits(bits)
            if v <= span:
                return v

    x = coord()
    return x, coord()


def general_position_with(accepted: Sequence[tuple[int, int]], cand: tuple[int, int]) -> bool:
    """cand has a fresh x and is not collinear with any two accepted points."""
    x, y = cand
    slopes = set()
    for ax, ay in accepted:
        if ax == x:
            return False
        s = Fraction(y - ay, x - ax)
        if s in slopes:
            return False
        slopes.add(s)
    return True


def random_point_set(seed: int, m: int, span: int) -> PointSet:
    """Deterministic general-position integer points in [0, span]^2.

    The generator is ``random.Random(seed)`` (MT19937), used only through
    ``getrandbits`` so the stream does not depend on the Python version.
    Coordinates are drawn by rejection from ``span.bit_length()`` bits.
    A candidate sharing an x with an accepted point, or collinear with two
    accepted points, is redrawn; after ``RETRY_BUDGET`` consecutive
    rejections ``ExhaustedAttempts`` is raised.
    """
    if m < 1 or span < m:
        raise ValueError("need m >= 1 and span >= m")
    rng = random.Random(seed)
    accepted: list[tuple[int, int]] = []
    for _ in range(m):
        for _attempt in range(RETRY_BUDGET):
            cand = draw_point(rng, span)
            if general_position_with(accepted, cand):
                break
        else:
            raise ExhaustedAttempts(
                f"no valid point after {RETRY_BUDGET} draws (m={m}, span={span})"
            )
        accepted.append(cand)
    accepted.sort()
    return PointSet(tuple(Point(Fraction(x), Fraction(y)) for x, y in accepted))


class PairFunction:
    """A map from index pairs i < j of [m] to rationals.

    ``f(i, j)`` requires ``i < j``.  ``rows[i][j]`` is the raw dense storage
    (1-based, only the upper triangle is meaningful) used by the DP loops.
    """

    __slots__ = ("m", "rows")

    def __init__(self, m: int, rows: list[list]):
        self.m = m
        self.rows = rows

    @classmethod
    def from_mapping(cls, m: int, values: Mapping[tuple[int, int], object]) -> "PairFunction":
        if m < 1:
            raise ValueError("m must be positive")
        rows = [[None] * (m + 1) for _ in range(m + 1)]
        for (i, j), v in values.items():
            if not 1 <= i < j <= m:
                raise ValueError(f"pair ({i},{j}) outside 1 <= i < j <= {m}")
            rows[i][j] = Fraction(v)
        missing = [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1) if rows[i][j] is None]
        if missing:
            raise ValueError(f"missing values for pairs {missing[:5]}")
        return cls(m, rows)

    @classmethod
    def from_function(cls, m: int, fn) -> "PairFunction":
        rows = [[None] * (m + 1) for _ in range(m + 1)]
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                rows[i][j] = Fraction(fn(i, j))
        return cls(m, rows)

    def __call__(self, i: int, j: int) -> Fraction:
        if not 1 <= i < j <= self.m:
            raise IndexError(f"pair ({i},{j}) outside 1 <= i < j <= {self.m}")
        return self.rows[i][j]

    def pairs(self) -> Iterator[tuple[int, int]]:
        for i in range(1, self.m + 1):
            for j in range(i + 1, self.m + 1):
                yield i, j

    def items(self) -> Iterator[tuple[tuple[int, int], Fraction]]:
        for i, j in self.pairs():
            yield (i, j), self.rows[i][j]

    def negated(self) -> "PairFunction":
        """-f: swaps cups and caps."""
        return PairFunction.from_function(self.m, lambda i, j: -self.rows[i][j])

    def reversed(self) -> "PairFunction":
        """(i, j) -> -f(m+1-j, m+1-i).

        Reversing index order turns a cup starting at i into a cup (w.r.t.
        the result) ending at m+1-i; the negation keeps cups as cups.
        """
        m = self.m
        return PairFunction.from_function(m, lambda i, j: -self.rows[m + 1 - j][m + 1 - i])

    def restrict(self, indices: Sequence[int]) -> "PairFunction":
        idx = sorted(indices)
        return PairFunction.from_function(len(idx), lambda a, b: self.rows[idx[a - 1]][idx[b - 1]])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PairFunction)
            and self.m == other.m
            and all(self.rows[i][j] == other.rows[i][j] for i, j in self.pairs())
        )

    def __repr__(self) -> str:
        return f"PairFunction(m={self.m})"

    def to_text(self) -> str:
        lines = [PAIRFN_HEADER, f"m {self.m}"]
        lines.extend(f"{i} {j} {v}" for (i, j), v in self.items())
        return "\n".join(lines) + "\n"


def slope_function(P: PointSet) -> PairFunction:
    pts = P.points
    return PairFunction.from_function(
        P.m, lambda i, j: (pts[j - 1].y - pts[i - 1].y) / (pts[j - 1].x - pts[i - 1].x)
    )


def parse_pair_function(text: str) -> PairFunction:
    lines = _content_lines(text)
    first = next(lines, None)
    if first is None or first[1] != PAIRFN_HEADER:
        raise MalformedInput(f"expected header {PAIRFN_HEADER!r}")
    second = next(lines, None)
    if second is None:
        raise MalformedInput("missing 'm <count>' line")
    tokens = second[1].split()
    if len(tokens) != 2 or tokens[0] != "m" or not tokens[1].isdigit() or int(tokens[1]) < 1:
        raise MalformedInput(f"line {second[0]}: expected 'm <count>'")
    m = int(tokens[1])
    values: dict[tuple[int, int], Fraction] = {}
    for lineno, line in lines:
        tokens = line.split()
        if len(tokens) != 3 or not tokens[0].isdigit() or not tokens[1].isdigit():
            raise MalformedInput(f"line {lineno}: expected 'i j value'")
        i, j = int(tokens[0]), int(tokens[1])
        if not 1 <= i < j <= m:
            raise MalformedInput(f"line {lineno}: pair ({i},{j}) outside 1 <= i < j <= {m}")
        if (i, j) in values:
            raise MalformedInput(f"line {lineno}: pair ({i},{j}) given twice")
        values[i, j] = parse_rational(tokens[2])
    if len(values) != m * (m - 1) // 2:
        raise MalformedInput(f"expected {m * (m - 1) // 2} pairs, got {len(values)}")
    return PairFunction.from_mapping(m, values)
