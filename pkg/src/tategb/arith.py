"""Coefficient arithmetic in Z_p truncated at precision N.

Coefficients are plain integers: the canonical residue in [0, p**N).
The p-adic valuation is recomputed on demand; the zero residue has
valuation N (the cap stands in for +infinity).  All operations take the
ambient :class:`Context`, which fixes the prime p, the cap N, the
variable names and the monomial order.

The supported modulus width is capped at 2**62 so that residues and
their products fit machine integers in the compiled kernel; contexts
with p**N above the cap are rejected at construction.
"""

from dataclasses import dataclass, field

from .errors import (
    ContextError,
    ModulusOverflowError,
    ValuationError,
    ZeroDivisorError,
)

MAX_MODULUS = 1 << 62

ORDER_CODES = {"grevlex": 0, "lex": 1}

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, exact for all n below 3.3e24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == q:
            return True
        if n % q == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class EngineOptions:
    """Tunable behaviour of the basis engines.

    monic_signatures replaces each seeded signature (v, e) by (0, e),
    which strengthens the divisibility criterion.  It is only sound
    for pi-saturated (rational-ring) semantics, where multipliers may
    be divided by the uniformizer; at a hard precision cap it can
    discard needed J-pairs, so it defaults to off.
    """

    interrupt_on_valuation_rise: bool = False
    monic_signatures: bool = False
    debug_track_syzygies: bool = False
    interreduce: bool = True


@dataclass(frozen=True)
class Context:
    """Global parameters: prime, precision cap, variables, order, options."""

    p: int
    prec: int
    var_names: tuple
    order: str = "grevlex"
    options: EngineOptions = field(default_factory=EngineOptions)

    def __post_init__(self):
        object.__setattr__(self, "var_names", tuple(self.var_names))
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise ContextError(f"p = {self.p} is not prime")
        if not isinstance(self.prec, int) or self.prec < 1:
            raise ContextError(f"precision cap must be >= 1, got {self.prec}")
        if len(self.var_names) < 1:
            raise ContextError("at least one variable is required")
        if len(set(self.var_names)) != len(self.var_names):
            raise ContextError("variable names must be pairwise distinct")
        for name in self.var_names:
            if not name.isidentifier():
                raise ContextError(f"bad variable name: {name!r}")
        if self.order not in ORDER_CODES:
            raise ContextError(f"unknown monomial order: {self.order!r}")
        modulus = self.p ** self.prec
        if modulus > MAX_MODULUS:
            raise ModulusOverflowError(
                f"p**prec = {modulus} exceeds the supported width 2**62"
            )
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "order_code", ORDER_CODES[self.order])

    @property
    def num_vars(self):
        return len(self.var_names)

    def with_options(self, **kwargs):
        """Copy of this context with some engine options replaced."""
        opts = self.options.__dict__ | kwargs
        return Context(self.p, self.prec, self.var_names, self.order,
                       EngineOptions(**opts))

    def same_ring(self, other):
        return (self.p, self.prec, self.var_names, self.order) == \
               (other.p, other.prec, other.var_names, other.order)


def coeff_from_integer(z, ctx):
    """Canonical residue of z modulo p**N."""
    return z % ctx.modulus


def coeff_valuation(c, ctx):
    """Largest v <= N with p**v dividing c; N for the zero residue."""
    if c == 0:
        return ctx.prec
    v = 0
    p = ctx.p
    while c % p == 0:
        c //= p
        v += 1
    return v


def coeff_add(a, b, ctx):
    return (a + b) % ctx.modulus


def coeff_sub(a, b, ctx):
    return (a - b) % ctx.modulus


def coeff_mul(a, b, ctx):
    return a * b % ctx.modulus


def coeff_neg(a, ctx):
    return -a % ctx.modulus


def coeff_divide_exact(a, b, ctx):
    """Quotient q with q*b = a mod p**N and val(q) = val(a) - val(b).

    Requires val(b) <= val(a) and b nonzero mod p**N.  The quotient is
    only determined modulo p**(N - val(b)); we fix the canonical lift
    q = p**(val(a)-val(b)) * u with u the unit part of a/b reduced into
    [0, p**(N - val(a))), which is the smallest valid representative.
    """
    if b == 0:
        raise ZeroDivisorError("division by zero mod p**N")
    vb = coeff_valuation(b, ctx)
    if a == 0:
        return 0
    va = coeff_valuation(a, ctx)
    if vb > va:
        raise ValuationError(f"val(divisor) = {vb} > val(dividend) = {va}")
    p = ctx.p
    ua = a // p ** va
    ub = b // p ** vb
    m = p ** (ctx.prec - va)
    u = ua * pow(ub, -1, m) % m
    return p ** (va - vb) * u


def coeff_unit_inverse(c, ctx):
    """Inverse of a unit residue modulo p**N."""
    if c % ctx.p == 0:
        raise ZeroDivisorError(f"{c} is not a unit mod {ctx.p}**{ctx.prec}")
    return pow(c, -1, ctx.modulus)
