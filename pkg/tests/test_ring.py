"""Exact polynomial arithmetic, parsing, and the local-ring helpers."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from blocksplit.ring import (
    GREVLEX,
    LEX,
    NonDivisibleError,
    ParseError,
    Poly,
    RingError,
    SeriesSqrtError,
    TableMismatchError,
    VarTable,
    divide_exact,
    format_poly,
    local_unit_test,
    parse_poly,
    sqrt_exact,
    sqrt_series,
    truncate,
    y_profile,
)

XY = VarTable(("x", "y"))
X12 = VarTable(("x1", "x2"))


def P(text, table=XY):
    return parse_poly(text, table)


def random_poly(rng, table, degree=3, terms=4, allow_zero=True):
    nvars = len(table)
    out = Poly.zero(table)
    for _ in range(rng.randrange(0 if allow_zero else 1, terms + 1)):
        mono = [0] * nvars
        for _ in range(rng.randrange(degree + 1)):
            mono[rng.randrange(nvars)] += 1
        c = rng.randrange(-5, 6)
        out = out + Poly(table, {tuple(mono): Fraction(c)})
    return out


def test_parse_examples():
    assert P("(x2 - x1)*(x2^2 + x2*x1 + x1^2)", X12) == P("x2^3 - x1^3", X12)
    assert P("0").is_zero()
    assert P("3/2*y - x^2*y + x^2*y") == P("3/2*y")


def test_parse_grammar_corners():
    assert P("-x^2") == -P("x") * P("x")
    assert P("2*(x + y)^3") == P("x + y") ** 3 * P("2")
    assert P("1/2 - 1/2").is_zero()
    # ^ binds tighter than unary minus inside a term
    assert P("x - y^2") == P("x") - P("y") * P("y")


def test_parse_errors():
    with pytest.raises(ParseError):
        P("x +")
    with pytest.raises(ParseError):
        P("z + 1")  # undeclared variable
    with pytest.raises(ParseError):
        P("x ^ -2")
    err = None
    try:
        P("x + (y")
    except ParseError as exc:
        err = exc
    assert err is not None and err.position >= 0


def test_vartable_rules():
    with pytest.raises(RingError):
        VarTable(("x", "x"))
    with pytest.raises(RingError):
        VarTable(("2bad",))
    ext = XY.extend(["t"])
    assert ext.names == ("x", "y", "t")
    assert XY.names == ("x", "y")
    assert ext.fresh_name("t") == "t0"


def test_arith_examples():
    assert P("y - x") * P("y + x") == P("y^2 - x^2")
    f = P("3*x*y - 7")
    assert (f + (-f)).is_zero()
    assert P("x2 - x1^2", X12) * P("x2^2 + x2*x1^2 + x1^4", X12) == \
        P("x2^3 - x1^6", X12)


def test_table_mismatch():
    with pytest.raises(TableMismatchError):
        P("x") + P("x1", X12)


def test_ring_axioms_random():
    rng = random.Random(7)
    for _ in range(500):
        f = random_poly(rng, XY)
        g = random_poly(rng, XY)
        h = random_poly(rng, XY)
        assert (f + g) + h == f + (g + h)
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert f + g == g + f
        assert f * g == g * f


def test_divide_exact_examples():
    assert divide_exact(P("y^2 - x^2"), P("y - x")) == P("y + x")
    assert divide_exact(P("x2^3 - x1^3", X12), P("x2 - x1", X12)) == \
        P("x2^2 + x2*x1 + x1^2", X12)
    with pytest.raises(NonDivisibleError):
        divide_exact(P("x"), P("y"))
    with pytest.raises(RingError):
        divide_exact(P("x"), P("0"))


def test_divide_exact_random():
    rng = random.Random(11)
    for _ in range(200):
        f = random_poly(rng, XY)
        g = random_poly(rng, XY, allow_zero=False)
        if g.is_zero():
            continue
        assert divide_exact(f * g, g) == f


def test_local_unit_test():
    assert local_unit_test(P("1 + x"))
    assert not local_unit_test(P("x"))
    assert not local_unit_test(P("0"))


def test_truncate():
    assert truncate(P("1 + x + x^2"), 2) == P("1 + x")
    assert truncate(P("1 + x + x^2"), 0).is_zero()
    # x*y^3 has total degree 4, so it is dropped at bound 4
    assert truncate(P("y^2 + x*y^3"), 4) == P("y^2")


def test_truncate_compatible_with_product():
    rng = random.Random(13)
    for _ in range(100):
        f = random_poly(rng, XY)
        g = random_poly(rng, XY)
        for N in (1, 2, 4):
            assert truncate(f * g, N) == \
                truncate(truncate(f, N) * truncate(g, N), N)


def test_sqrt_exact_examples():
    assert sqrt_exact(P("x^2")) == P("x")
    f = P("x + y + x*y")
    assert sqrt_exact(f * f) == f
    assert sqrt_exact(P("x^2 + y^2")) is None
    # sign normalization: lowest term positive
    g = P("-x - y^2")
    assert sqrt_exact(g * g) == -g


def test_sqrt_exact_random():
    rng = random.Random(17)
    for _ in range(100):
        g = random_poly(rng, XY, degree=2, terms=3)
        root = sqrt_exact(g * g)
        if g.is_zero():
            assert root == g
        else:
            assert root == g or root == -g


def test_sqrt_series_examples():
    s = sqrt_series(P("1 + x"), 4)
    assert s == P("1 + 1/2*x - 1/8*x^2 + 1/16*x^3")
    shifted = sqrt_series(P("x^2*(1 + x)"), 4)
    assert shifted == P("x") * s
    with pytest.raises(SeriesSqrtError):
        sqrt_series(P("x^3"), 4)
    with pytest.raises(SeriesSqrtError):
        sqrt_series(P("x^2 + y^2"), 4)


def test_sqrt_series_congruence_random():
    rng = random.Random(19)
    checked = 0
    for _ in range(60):
        g = random_poly(rng, XY, degree=2, terms=3, allow_zero=False)
        if g.is_zero():
            continue
        sq = g * g
        N = 5
        s = sqrt_series(sq, N)
        assert truncate(s * s - sq, sq.order() + N).is_zero()
        checked += 1
    assert checked > 30


def test_y_profile():
    t = VarTable(("x12", "x21", "y1", "y2"))
    f = parse_poly(
        "y1^2*y2^2 - y1*y2*x12*x21 + x12^2*x21^2", t)
    assert y_profile(f, ["y1", "y2"]) == {(2, 2)}
    assert y_profile(parse_poly("x12*y1", t), ["y1"]) == set()
    assert y_profile(parse_poly("y1 + y2", t), ["y1", "y2"]) == \
        {(1, 0), (0, 1)}


def test_format_round_trip():
    rng = random.Random(23)
    for _ in range(200):
        f = random_poly(rng, XY)
        assert parse_poly(format_poly(f), XY) == f


def test_format_is_canonical():
    f = P("y + x")
    g = P("x + y")
    assert format_poly(f) == format_poly(g)
    assert format_poly(P("0")) == "0"


def test_leading_trailing():
    f = P("x^2 + y^3")
    mono, coeff = f.leading(GREVLEX)
    assert mono == (0, 3) and coeff == 1
    mono, coeff = f.leading(LEX)
    assert mono == (2, 0)
    assert f.order() == 2
    assert f.lowest_form() == P("x^2")
