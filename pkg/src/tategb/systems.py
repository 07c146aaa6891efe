"""Benchmark and test system generators.

The torsion systems follow the uniformization of elliptic curves by
the Tate curve y^2 + xy = x^3 + a4*x + a6, whose coefficients are
explicit q-expansions with coefficient of q^k divisible by p^k.  The
odd-index division polynomial of that curve, evaluated at two
independent q variables, gives a pair of trivariate series whose
common zeros parametrize pairs of curves sharing an l-torsion point.
"""

import random
from dataclasses import dataclass

from .arith import Context, coeff_unit_inverse, is_prime
from .errors import BadPrimeError, ContextError, UnsupportedIndexError
from .series import TateSeries


@dataclass(frozen=True)
class TorsionSystemSpec:
    p: int
    ell: int
    prec: int

    def __post_init__(self):
        if self.p in (2, 3):
            raise BadPrimeError("p must be >= 5 (the q-expansion divides by 12)")
        if not is_prime(self.p):
            raise ContextError(f"p = {self.p} is not prime")
        if self.ell % 2 == 0 or self.ell < 3 or not is_prime(self.ell):
            raise UnsupportedIndexError("ell must be an odd prime >= 3")
        if self.prec < 1:
            raise ContextError("prec must be >= 1")


def tate_curve_coefficients(p, prec):
    """q-expansions of a4 and a6 of the Tate curve, mod p**prec.

    Each geometric factor (pq)^n / (1 - (pq)^n) is expanded as the sum
    of (pq)^(n*m) over m >= 1 and truncated at Gauss valuation >= prec
    (a term in q^k carries p^k, so only k < prec survives).
    """
    if p in (2, 3):
        raise BadPrimeError("p must be >= 5 (the q-expansion divides by 12)")
    ctx = Context(p, prec, ("q",))
    inv12 = coeff_unit_inverse(12 % ctx.modulus, ctx)
    a4 = {}
    a6 = {}
    for n in range(1, prec):
        c4 = 5 * n ** 3
        c6 = (7 * n ** 5 + 5 * n ** 3) * inv12
        k = n
        while k < prec:
            pk = p ** k
            a4[k] = a4.get(k, 0) + c4 * pk
            a6[k] = a6.get(k, 0) + c6 * pk
            k += n
    return (TateSeries(ctx, [((k,), c) for k, c in a4.items()]),
            TateSeries(ctx, [((k,), c) for k, c in a6.items()]))


def _poly_trim(A):
    while A and A[-1].is_zero():
        A.pop()
    return A


def _poly_mul(A, B):
    if not A or not B:
        return []
    ctx = (A[0] if A else B[0]).ctx
    out = [TateSeries.zero(ctx) for _ in range(len(A) + len(B) - 1)]
    for i, a in enumerate(A):
        if a.is_zero():
            continue
        for j, b in enumerate(B):
            if not b.is_zero():
                out[i + j] = out[i + j] + a * b
    return _poly_trim(out)


def _poly_sub(A, B):
    if not A and not B:
        return []
    ctx = (A[0] if A else B[0]).ctx
    n = max(len(A), len(B))
    zero = TateSeries.zero(ctx)
    out = [(A[i] if i < len(A) else zero) - (B[i] if i < len(B) else zero)
           for i in range(n)]
    return _poly_trim(out)


def division_polynomial(ell, a4, a6):
    """Odd-index division polynomial of y^2 + xy = x^3 + a4*x + a6.

    Returned as a list of series coefficients, index = power of x; the
    degree is (ell^2 - 1)/2 and the leading coefficient is ell.  The
    curve has (a1, a2, a3) = (1, 0, 0), hence b2 = 1, b4 = 2*a4,
    b6 = 4*a6, b8 = a6 - a4^2.  Even indices are carried as the odd
    cofactor of psi_2, and psi_2^2 is eliminated through
    psi_2^2 = 4x^3 + b2*x^2 + 2*b4*x + b6.
    """
    if ell < 3 or ell % 2 == 0:
        raise UnsupportedIndexError(f"index must be odd and >= 3, got {ell}")
    ctx = a4.ctx
    one = TateSeries.constant(ctx, 1)

    def const(c):
        return TateSeries.constant(ctx, c)

    b2 = one
    b4 = 2 * a4
    b6 = 4 * a6
    b8 = a6 - a4 * a4
    # F = psi_2^2 as a polynomial in x
    F = [b6, 2 * b4, b2, const(4)]
    F2 = _poly_mul(F, F)
    psi = {
        1: [one],
        3: [b8, 3 * b6, 3 * b4, b2, const(3)],
    }
    psit = {
        0: [],
        2: [one],
        4: [b4 * b8 - b6 * b6, b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4,
            b2, const(2)],
    }

    def pw(A, k):
        out = [one]
        for _ in range(k):
            out = _poly_mul(out, A)
        return out

    def odd(k):
        if k not in psi:
            m = (k - 1) // 2
            if m % 2 == 0:
                psi[k] = _poly_sub(
                    _poly_mul(F2, _poly_mul(even(m + 2), pw(even(m), 3))),
                    _poly_mul(odd(m - 1), pw(odd(m + 1), 3)))
            else:
                psi[k] = _poly_sub(
                    _poly_mul(odd(m + 2), pw(odd(m), 3)),
                    _poly_mul(F2, _poly_mul(even(m - 1), pw(even(m + 1), 3))))
        return psi[k]

    def even(k):
        if k not in psit:
            m = k // 2
            if m % 2 == 0:
                psit[k] = _poly_mul(even(m), _poly_sub(
                    _poly_mul(even(m + 2), pw(odd(m - 1), 2)),
                    _poly_mul(even(m - 2), pw(odd(m + 1), 2))))
            else:
                psit[k] = _poly_mul(odd(m), _poly_sub(
                    _poly_mul(odd(m + 2), pw(even(m - 1), 2)),
                    _poly_mul(odd(m - 2), pw(even(m + 1), 2))))
        return psit[k]

    return odd(ell)


def torsion_system(spec):
    """The two trivariate series Phi_ell(x, q1), Phi_ell(x, q2)."""
    a4, a6 = tate_curve_coefficients(spec.p, spec.prec)
    phi = division_polynomial(spec.ell, a4, a6)
    ctx3 = Context(spec.p, spec.prec, ("x", "q1", "q2"))
    out = []
    for q_index in (1, 2):
        pairs = []
        for i, coeff_series in enumerate(phi):
            for (k,), c, _ in coeff_series.terms:
                mono = [i, 0, 0]
                mono[q_index] = k
                pairs.append((tuple(mono), c))
        out.append(TateSeries(ctx3, pairs))
    return out


def random_system(ctx, seed, n_gens, max_terms, max_deg, max_val):
    """Deterministic pseudo-random generators, each nonzero mod p**N."""
    if max_val >= ctx.prec:
        raise ContextError("max_val must be below the precision cap")
    rng = random.Random(seed)
    p = ctx.p
    n = ctx.num_vars
    out = []
    for _ in range(n_gens):
        while True:
            pairs = []
            for _ in range(rng.randint(1, max_terms)):
                mono = tuple(rng.randint(0, max_deg) for _ in range(n))
                val = rng.randint(0, max_val)
                unit_bound = p ** (ctx.prec - val)
                unit = rng.randrange(1, unit_bound)
                while unit % p == 0:
                    unit = rng.randrange(1, unit_bound)
                pairs.append((mono, p ** val * unit))
            f = TateSeries(ctx, pairs)
            if not f.is_zero():
                out.append(f)
                break
    return out
