import random
from fractions import Fraction

import pytest

from cupcap.core import (
    Point,
    PointSet,
    orientation,
    parse_pair_function,
    parse_point_set,
    random_point_set,
    shear,
    slope_function,
)
from cupcap.errors import (
    Collinear,
    CollinearWarning,
    DuplicateX,
    ExhaustedAttempts,
    MalformedInput,
    ShearFailed,
)


def test_parse_point_set_basic():
    P = parse_point_set("points v1\n0 0\n1 2\n2 3")
    assert P.m == 3
    assert P[2] == (1, 2)


def test_parse_rationals_and_comments():
    P = parse_point_set("# leading comment\npoints v1\n# c\n0 0\n1/2 -3/4\n\n2 5\n")
    assert P[2] == (Fraction(1, 2), Fraction(-3, 4))


def test_parse_duplicate_x():
    with pytest.raises(DuplicateX):
        parse_point_set("points v1\n0 0\n0 1")


def test_parse_collinear_reports_triple():
    with pytest.raises(Collinear) as exc:
        parse_point_set("points v1\n0 0\n1 1\n2 2")
    assert exc.value.triple == (1, 2, 3)


def test_allow_collinear_warns():
    with pytest.warns(CollinearWarning):
        P = parse_point_set("points v1\n0 0\n1 1\n2 2", allow_collinear=True)
    assert P.m == 3


@pytest.mark.parametrize(
    "text",
    [
        "",
        "points v2\n0 0",
        "points v1\n0",
        "points v1\n0 0 0",
        "points v1\n0 x",
        "points v1\n0 1.5",
        "points v1\n0 1/0",
        "points v1\n1 0\n0 1",
    ],
)
def test_parse_malformed(text):
    with pytest.raises(MalformedInput):
        parse_point_set(text)


def test_slope_examples():
    f = slope_function(parse_point_set("points v1\n0 0\n1 2\n2 3"))
    assert (f(1, 2), f(2, 3), f(1, 3)) == (2, 1, Fraction(3, 2))

    f = slope_function(PointSet.build([(0, 0), (2, 1)]))
    assert f(1, 2) == Fraction(1, 2)
    assert f(1, 2).denominator == 2

    f = slope_function(PointSet.build([(0, 0), (1, 1), (2, 3), (3, 6)]))
    expected = {(1, 2): 1, (2, 3): 2, (3, 4): 3, (1, 3): Fraction(3, 2), (2, 4): Fraction(5, 2), (1, 4): 2}
    assert dict(f.items()) == expected


def test_pair_function_only_upper_triangle(fig1):
    with pytest.raises(IndexError):
        fig1(2, 1)
    with pytest.raises(IndexError):
        fig1(3, 3)
    assert len(list(fig1.pairs())) == 10


def test_pairfn_roundtrip(fig1):
    assert parse_pair_function(fig1.to_text()) == fig1


@pytest.mark.parametrize(
    "text",
    [
        "pairfn v1\nm 2",
        "pairfn v1\nm 2\n1 2 1\n1 2 3",
        "pairfn v1\nm 2\n2 1 1",
        "pairfn v1\nm 2\n1 3 1",
        "pairfn v1\nn 2\n1 2 1",
        "pairfn v1\nm 2\n1 2 1 4",
    ],
)
def test_pairfn_malformed(text):
    with pytest.raises(MalformedInput):
        parse_pair_function(text)


def test_shear_examples():
    # duplicate x cannot pass validation, so the input is built unchecked
    raw = PointSet((Point(Fraction(0), Fraction(0)), Point(Fraction(0), Fraction(1))))
    assert shear(raw, 1).points == ((0, 0), (1, 1))

    Q = PointSet.build([(0, 0), (1, 2)])
    assert shear(Q, 0) == Q

    three = PointSet(tuple(Point(Fraction(0), Fraction(y)) for y in range(3)))
    with pytest.raises(Collinear):
        shear(three, 1)


def test_shear_failed():
    raw = PointSet((Point(Fraction(0), Fraction(0)), Point(Fraction(1), Fraction(-1))))
    with pytest.raises(ShearFailed):
        shear(raw, 1)


def test_shear_preserves_orientation():
    rng = random.Random(7)
    for seed in range(100):
        P = random_point_set(seed, 6, 200)
        lam = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
        try:
            S = shear(P, lam)
        except (ShearFailed, Collinear):
            continue
        # shear is a bijection on points; match by y and image x
        image = {(p.x + lam * p.y, p.y): p for p in P.points}
        pts = [image[(q.x, q.y)] for q in S.points]
        for a in range(len(pts)):
            for b in range(a + 1, len(pts)):
                for c in range(b + 1, len(pts)):
                    assert orientation(pts[a], pts[b], pts[c]) == orientation(
                        S.points[a], S.points[b], S.points[c]
                    )


def test_random_point_set_single():
    P = random_point_set(1, 1, 10)
    assert P.m == 1


def test_random_point_set_golden(data_dir):
    P = random_point_set(42, 30, 10**6)
    assert P.to_text() == (data_dir / "golden_seed42_m30_span1e6.points").read_text()
    assert random_point_set(42, 30, 10**6) == P


def test_random_point_set_valid():
    for seed in range(20):
        P = random_point_set(seed, 25, 60)
        # rebuilding runs the full validation
        PointSet.build(P.points)
        assert all(0 <= c <= 60 for p in P.points for c in p)


def test_random_point_set_preconditions():
    with pytest.raises(ValueError):
        random_point_set(0, 4, 3)
    with pytest.raises(ValueError):
        random_point_set(0, 0, 3)


def test_random_point_set_exhausted(monkeypatch):
    import cupcap.core

    monkeypatch.setattr(cupcap.core, "RETRY_BUDGET", 1)
    # with one draw per point, some seed must collide on x within a 3-wide span
    with pytest.raises(ExhaustedAttempts):
        for seed in range(50):
            random_point_set(seed, 3, 3)


def test_rational_arithmetic_cross_check():
    rng = random.Random(2024)
    for _ in range(10_000):
        a, c = rng.randint(-10**12, 10**12), rng.randint(-10**12, 10**12)
        b, d = rng.randint(1, 10**12), rng.randint(1, 10**12)
        p, q = Fraction(a, b), Fraction(c, d)
        s = p + q
        assert s.numerator * b * d == (a * d + c * b) * s.denominator
        t = p * q
        assert t.numerator * b * d == a * c * t.denominator
        assert (p < q) == (a * d < c * b)
        assert s.denominator > 0


def test_negated_and_reversed(fig1):
    neg = fig1.negated()
    rev = fig1.reversed()
    for (i, j), v in fig1.items():
        assert neg(i, j) == -v
        assert rev(6 - j, 6 - i) == -v
