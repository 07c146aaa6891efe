import itertools
import random

import pytest

from tategb.arith import Context
from tategb.errors import DivisibilityError, SystemFormatError, ZeroSeriesError
from tategb.series import (
    EQ,
    GT,
    LT,
    TateMonomial,
    TateSeries,
    format_series,
    monomial_order_cmp,
    normalize_to_integral,
    parse_series,
    tate_cmp,
    tate_divides,
    tate_lcm,
    tate_mul,
    tate_quotient,
    tate_rank_key,
)

CTX = Context(5, 3, ("x", "y"))


def S(text, ctx=CTX):
    return parse_series(text, ctx)


def test_monomial_order_examples():
    assert monomial_order_cmp("grevlex", (2, 0), (1, 1)) == GT
    assert monomial_order_cmp("lex", (1, 0), (0, 9)) == GT
    assert monomial_order_cmp("grevlex", (1, 2), (1, 2)) == EQ


def test_tate_cmp_examples():
    a = TateMonomial(0, (1, 0))
    b = TateMonomial(1, (3, 0))
    assert tate_cmp("grevlex", a, b) == GT
    assert tate_cmp("grevlex", TateMonomial(1, (2, 0)),
                    TateMonomial(1, (1, 1))) == GT
    assert tate_cmp("grevlex", a, a) == EQ


def test_tate_divides_examples():
    assert tate_divides(TateMonomial(0, (1, 0)), TateMonomial(2, (1, 1)))
    assert not tate_divides(TateMonomial(1, (0, 0)), TateMonomial(0, (5, 5)))
    a = TateMonomial(2, (3, 4))
    assert tate_divides(a, a)


def test_lcm_quotient_examples():
    a = TateMonomial(1, (2, 0))
    b = TateMonomial(0, (1, 1))
    assert tate_lcm(a, b) == TateMonomial(1, (2, 1))
    assert tate_quotient(TateMonomial(1, (2, 1)), b) == TateMonomial(1, (1, 0))
    assert tate_lcm(a, a) == a
    with pytest.raises(DivisibilityError):
        tate_quotient(b, a)


def test_lcm_lattice_laws_bruteforce():
    # all pairs over a small box: a | lcm, b | lcm, and lcm is least
    monos = [TateMonomial(v, (e1, e2))
             for v in range(5) for e1 in range(5) for e2 in range(5)]
    rng = random.Random(9)
    sample = rng.sample(monos, 40)
    for a, b in itertools.product(sample, sample):
        m = tate_lcm(a, b)
        assert tate_divides(a, m) and tate_divides(b, m)
    for a, b in itertools.product(sample[:20], sample[:20]):
        m = tate_lcm(a, b)
        for c in sample:
            if tate_divides(a, c) and tate_divides(b, c):
                assert tate_divides(m, c)


def test_order_totality_and_compatibility():
    rng = random.Random(4)
    for order in ("grevlex", "lex"):
        rank = tate_rank_key(order)
        for _ in range(1000):
            a = TateMonomial(rng.randint(0, 4),
                             tuple(rng.randint(0, 5) for _ in range(3)))
            b = TateMonomial(rng.randint(0, 4),
                             tuple(rng.randint(0, 5) for _ in range(3)))
            t = TateMonomial(rng.randint(0, 3),
                             tuple(rng.randint(0, 3) for _ in range(3)))
            c = tate_cmp(order, a, b)
            assert c in (LT, EQ, GT)
            assert (c == EQ) == (a == b)
            # rank key is monotone
            assert (rank(a) < rank(b)) == (c == LT)
            if c == GT:
                assert tate_cmp(order, tate_mul(t, a), tate_mul(t, b)) == GT


def test_gauss_valuation_examples():
    f = S("25 + 5*x*y + x^2*y")
    assert f.gauss_valuation() == 0
    assert TateSeries.zero(CTX).gauss_valuation() == 3
    g = S("5*x + 25")
    assert g.gauss_valuation() == 1


def test_leading_term_examples():
    f = S("25 + 5*x*y + x^2*y")
    assert f.leading_term().coeff == 1
    assert f.leading_term().mono == (2, 1)
    g = S("5*x^3 + 5*y")
    assert g.leading_term() == (5, (3, 0))
    c = S("7")
    assert c.leading_term() == (7, (0, 0))
    with pytest.raises(ZeroSeriesError):
        TateSeries.zero(CTX).leading_term()


def test_ring_ops_examples():
    ctx2 = Context(5, 2, ("x",))
    f = parse_series("x + 5", ctx2) * parse_series("x - 5", ctx2)
    assert format_series(f) == "x^2"
    g = S("x^2*y + 3*x")
    assert (g + (-g)).is_zero()
    one = TateSeries.constant(CTX, 1)
    assert g * one == g


def test_gauss_valuation_multiplicative_random():
    rng = random.Random(11)
    for p, prec in ((2, 6), (5, 4)):
        ctx = Context(p, prec, ("x", "y"))
        for _ in range(1000):
            f = _random_series(rng, ctx)
            g = _random_series(rng, ctx)
            if f.is_zero() or g.is_zero():
                continue
            expect = min(f.gauss_valuation() + g.gauss_valuation(), prec)
            assert (f * g).gauss_valuation() == expect


def test_lt_multiplicative_below_cap():
    rng = random.Random(12)
    ctx = Context(3, 5, ("x", "y", "z"))
    for _ in range(1000):
        f = _random_series(rng, ctx)
        g = _random_series(rng, ctx)
        if f.is_zero() or g.is_zero():
            continue
        if f.gauss_valuation() + g.gauss_valuation() >= ctx.prec:
            continue
        assert (f * g).leading_monomial() == \
            tate_mul(f.leading_monomial(), g.leading_monomial())


def _random_series(rng, ctx):
    pairs = [(tuple(rng.randint(0, 3) for _ in range(ctx.num_vars)),
              rng.randrange(ctx.modulus))
             for _ in range(rng.randint(0, 5))]
    return TateSeries(ctx, pairs)


def test_normalize_to_integral():
    ctx = Context(5, 5, ("x",))
    f, shift = normalize_to_integral(parse_series("25*x + 125", ctx))
    assert format_series(f) == "x + 5"
    assert shift == 2
    g = parse_series("x + 5", ctx)
    assert normalize_to_integral(g) == (g, 0)
    h, shift = normalize_to_integral(parse_series("625*x", ctx))
    assert format_series(h) == "x" and shift == 4
    with pytest.raises(ZeroSeriesError):
        normalize_to_integral(TateSeries.zero(ctx))


def test_parse_round_trip_random():
    rng = random.Random(13)
    for p, prec, nv in ((2, 7, 2), (5, 3, 3), (11, 4, 1)):
        ctx = Context(p, prec, ("x", "y", "z")[:nv])
        for _ in range(300):
            f = _random_series(rng, ctx)
            assert parse_series(format_series(f), ctx) == f


def test_parse_whitespace_and_signs():
    assert S("  25+5*x*y   + x^2 *y ") == S("25 + 5*x*y + x^2*y")
    assert S("-x + 1") == S("124*x + 1")
    assert S("+x") == S("x")
    assert S("2x") == S("2*x")
    assert S("x*x") == S("x^2")


def test_parse_errors():
    for bad in ("x^-1", "x +", "* x", "3 ** x", "w", "x^y", "", "5 5"):
        with pytest.raises(SystemFormatError):
            S(bad)


def test_parse_error_position():
    with pytest.raises(SystemFormatError) as ei:
        parse_series("x + w^2", CTX, line_no=7)
    assert ei.value.line == 7
    assert ei.value.column == 5
