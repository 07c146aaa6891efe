import random

import pytest

from tategb.arith import (
    Context,
    coeff_add,
    coeff_divide_exact,
    coeff_from_integer,
    coeff_mul,
    coeff_neg,
    coeff_sub,
    coeff_unit_inverse,
    coeff_valuation,
    is_prime,
)
from tategb.errors import (
    ContextError,
    ModulusOverflowError,
    ValuationError,
    ZeroDivisorError,
)


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 57637}
    for n in range(2, 100):
        assert is_prime(n) == all(n % d for d in range(2, n))
    for n in primes:
        assert is_prime(n)
    assert not is_prime(1)
    assert not is_prime(0)
    assert not is_prime(57637 * 57637)


def test_context_validation():
    Context(5, 3, ("x", "y"))
    with pytest.raises(ContextError):
        Context(6, 3, ("x",))
    with pytest.raises(ContextError):
        Context(5, 0, ("x",))
    with pytest.raises(ContextError):
        Context(5, 3, ("x", "x"))
    with pytest.raises(ContextError):
        Context(5, 3, ())
    with pytest.raises(ContextError):
        Context(5, 3, ("x",), order="degrevlex")
    with pytest.raises(ContextError):
        Context(5, 3, ("2x",))


def test_modulus_width_cap():
    # 11**12 fits below 2**62, 57637**12 does not
    Context(11, 12, ("x",))
    with pytest.raises(ModulusOverflowError):
        Context(57637, 12, ("x",))


def test_from_integer():
    ctx = Context(5, 2, ("x",))
    assert coeff_from_integer(26, ctx) == 1
    assert coeff_from_integer(0, ctx) == 0
    assert coeff_valuation(coeff_from_integer(0, ctx), ctx) == 2
    assert coeff_from_integer(-1, ctx) == 24


def test_valuation():
    ctx = Context(5, 3, ("x",))
    assert coeff_valuation(50, ctx) == 2
    assert coeff_valuation(0, ctx) == 3
    assert coeff_valuation(3, ctx) == 0


def test_ring_ops():
    ctx = Context(5, 2, ("x",))
    assert coeff_mul(5, 5, ctx) == 0
    assert coeff_add(24, 1, ctx) == 0
    a = 17
    assert coeff_mul(a, 1, ctx) == a
    assert coeff_sub(a, a, ctx) == 0
    assert coeff_add(a, coeff_neg(a, ctx), ctx) == 0


def _divide_oracle(a, b, ctx):
    # smallest residue q with q*b = a mod p^N and val(q) = val(a) - val(b)
    want = coeff_valuation(a, ctx) - coeff_valuation(b, ctx)
    for q in range(ctx.modulus):
        if q * b % ctx.modulus == a and coeff_valuation(q, ctx) == want:
            return q
    raise AssertionError("no quotient found")


def test_divide_exact_examples():
    ctx = Context(5, 3, ("x",))
    q = coeff_divide_exact(50, 10, ctx)
    assert q * 10 % 125 == 50
    assert coeff_valuation(q, ctx) == 1
    assert q == _divide_oracle(50, 10, ctx)
    c = 37
    assert coeff_divide_exact(c, 1, ctx) == c
    assert coeff_divide_exact(0, 5, ctx) == 0


def test_divide_exact_errors():
    ctx = Context(5, 2, ("x",))
    with pytest.raises(ValuationError):
        coeff_divide_exact(3, 5, ctx)
    with pytest.raises(ZeroDivisorError):
        coeff_divide_exact(5, 0, ctx)
    with pytest.raises(ZeroDivisorError):
        coeff_unit_inverse(5, ctx)


def test_divide_exact_matches_bruteforce():
    rng = random.Random(7)
    ctx = Context(3, 4, ("x",))
    for _ in range(200):
        b = rng.randrange(1, ctx.modulus)
        q0 = rng.randrange(ctx.modulus)
        a = q0 * b % ctx.modulus
        if a == 0:
            assert coeff_divide_exact(a, b, ctx) == 0
            continue
        if coeff_valuation(b, ctx) > coeff_valuation(a, ctx):
            continue
        q = coeff_divide_exact(a, b, ctx)
        assert q == _divide_oracle(a, b, ctx)


def test_ring_axioms_random():
    rng = random.Random(1)
    for p, prec in ((2, 8), (5, 4), (11, 3)):
        ctx = Context(p, prec, ("x",))
        m = ctx.modulus
        for _ in range(1000):
            a, b, c = (rng.randrange(m) for _ in range(3))
            assert coeff_mul(coeff_mul(a, b, ctx), c, ctx) == \
                coeff_mul(a, coeff_mul(b, c, ctx), ctx)
            assert coeff_mul(a, coeff_add(b, c, ctx), ctx) == \
                coeff_add(coeff_mul(a, b, ctx), coeff_mul(a, c, ctx), ctx)
            assert coeff_mul(a, b, ctx) == coeff_mul(b, a, ctx)
            assert coeff_add(a, b, ctx) == coeff_add(b, a, ctx)


def test_valuation_properties_random():
    rng = random.Random(2)
    ctx = Context(5, 5, ("x",))
    N = ctx.prec
    for _ in range(1000):
        a = rng.randrange(ctx.modulus)
        b = rng.randrange(ctx.modulus)
        va, vb = coeff_valuation(a, ctx), coeff_valuation(b, ctx)
        assert coeff_valuation(coeff_mul(a, b, ctx), ctx) == min(va + vb, N)
        assert coeff_valuation(coeff_add(a, b, ctx), ctx) >= min(va, vb)


def test_divide_mul_roundtrip_random():
    rng = random.Random(3)
    ctx = Context(3, 5, ("x",))
    for _ in range(500):
        b = rng.randrange(1, ctx.modulus)
        q = rng.randrange(ctx.modulus)
        a = coeff_mul(q, b, ctx)
        if a == 0 or coeff_valuation(b, ctx) > coeff_valuation(a, ctx):
            continue
        r = coeff_divide_exact(a, b, ctx)
        assert coeff_mul(r, b, ctx) == a
        assert coeff_valuation(r, ctx) == \
            coeff_valuation(a, ctx) - coeff_valuation(b, ctx)
