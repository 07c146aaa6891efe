"""Tate monomials, terms and sparse integral Tate series mod p**N.

A monomial is a tuple of exponents.  A Tate monomial is a pair
``(val, mono)`` in N x N^n: a power of the uniformizer p and an
exponent vector.  Tate monomials are ordered valuation-first with the
*reverse* order on the valuation (lower valuation = larger monomial),
ties broken by the classical monomial order (grevlex or lex) fixed in
the Context.

A series is stored as a term list sorted descending under that order,
so the leading term is O(1) and reduction scans are linear.  Stored
coefficients are never divisible by p**N: zero residues are pruned
eagerly, and the zero series has an empty term list.
"""

import re
from typing import NamedTuple

from . import _core
from .errors import DivisibilityError, SystemFormatError, ZeroSeriesError

LT, EQ, GT = -1, 0, 1


class TateMonomial(NamedTuple):
    val: int
    mono: tuple


class TateTerm(NamedTuple):
    coeff: int
    mono: tuple


def monomial_order_cmp(order, a, b):
    """Compare exponent vectors under 'grevlex' or 'lex'; -1, 0 or 1."""
    if a == b:
        return EQ
    if order == "grevlex" or order == 0:
        da, db = sum(a), sum(b)
        if da != db:
            return GT if da > db else LT
        # last differing exponent, smaller wins
        for x, y in zip(reversed(a), reversed(b)):
            if x != y:
                return GT if x < y else LT
        return EQ
    return GT if a > b else LT


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def tate_cmp(order, a, b):
    """Valuation-first comparison of Tate monomials; lower val is larger."""
    if a.val != b.val:
        return GT if a.val < b.val else LT
    return monomial_order_cmp(order, a.mono, b.mono)


def tate_divides(a, b):
    return a.val <= b.val and mono_divides(a.mono, b.mono)


def tate_mul(a, b):
    return TateMonomial(a.val + b.val, mono_mul(a.mono, b.mono))


def tate_lcm(a, b):
    return TateMonomial(max(a.val, b.val),
                        tuple(max(x, y) for x, y in zip(a.mono, b.mono)))


def tate_quotient(a, b):
    """a / b; requires b | a."""
    if not tate_divides(b, a):
        raise DivisibilityError(f"{b} does not divide {a}")
    return TateMonomial(a.val - b.val,
                        tuple(x - y for x, y in zip(a.mono, b.mono)))


def tate_sort_key(order):
    """Key whose ascending sort lists Tate monomials largest-first."""
    if order == "grevlex" or order == 0:
        def key(t):
            return (t.val, -sum(t.mono)) + t.mono[::-1]
    else:
        def key(t):
            return (t.val,) + tuple(-e for e in t.mono)
    return key


def tate_rank_key(order):
    """Monotone key: a < b under the Tate order iff key(a) < key(b)."""
    if order == "grevlex" or order == 0:
        def key(t):
            return (-t.val, sum(t.mono)) + tuple(-e for e in t.mono[::-1])
    else:
        def key(t):
            return (-t.val,) + t.mono
    return key


class TateSeries:
    """Finitely supported element of K°{X}/p**N, term list largest-first."""

    __slots__ = ("ctx", "_terms")

    def __init__(self, ctx, pairs=()):
        self.ctx = ctx
        self._terms = tuple(_core.impl.canonicalize(
            list(pairs), ctx.p, ctx.modulus, ctx.prec, ctx.order_code))

    @classmethod
    def _wrap(cls, ctx, canonical_terms):
        f = cls.__new__(cls)
        f.ctx = ctx
        f._terms = tuple(canonical_terms)
        return f

    @classmethod
    def zero(cls, ctx):
        return cls._wrap(ctx, ())

    @classmethod
    def constant(cls, ctx, c):
        return cls(ctx, [((0,) * ctx.num_vars, c)])

    @classmethod
    def term(cls, ctx, coeff, mono):
        return cls(ctx, [(tuple(mono), coeff)])

    # -- queries ---------------------------------------------------------

    @property
    def terms(self):
        return self._terms

    def is_zero(self):
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, mono):
        mono = tuple(mono)
        for m, c, _ in self._terms:
            if m == mono:
                return c
        return 0

    def gauss_valuation(self):
        """Minimal coefficient valuation; the cap N for the zero series."""
        if not self._terms:
            return self.ctx.prec
        return self._terms[0][2]

    def leading_term(self):
        if not self._terms:
            raise ZeroSeriesError("zero series has no leading term")
        m, c, _ = self._terms[0]
        return TateTerm(c, m)

    def leading_monomial(self):
        if not self._terms:
            raise ZeroSeriesError("zero series has no leading monomial")
        m, _, v = self._terms[0]
        return TateMonomial(v, m)

    # -- arithmetic ------------------------------------------------------

    def _k(self):
        ctx = self.ctx
        return ctx.p, ctx.modulus, ctx.prec, ctx.order_code

    def __add__(self, other):
        return TateSeries._wrap(self.ctx, _core.impl.add(
            self._terms, other._terms, *self._k()))

    def __sub__(self, other):
        return self.axpy(-1, (0,) * self.ctx.num_vars, other)

    def __neg__(self):
        return self.term_mul(-1, (0,) * self.ctx.num_vars)

    def __mul__(self, other):
        if isinstance(other, TateSeries):
            return TateSeries._wrap(self.ctx, _core.impl.mul(
                self._terms, other._terms, *self._k()))
        return self.term_mul(other, (0,) * self.ctx.num_vars)

    __rmul__ = __mul__

    def term_mul(self, coeff, shift):
        """(coeff * X**shift) * self."""
        return TateSeries._wrap(self.ctx, _core.impl.scale(
            self._terms, coeff, tuple(shift), *self._k()))

    def axpy(self, coeff, shift, g):
        """self + (coeff * X**shift) * g."""
        return TateSeries._wrap(self.ctx, _core.impl.axpy(
            self._terms, coeff, tuple(shift), g._terms, *self._k()))

    def map_exponents(self, new_ctx, index_map):
        """Re-embed into new_ctx, sending variable i to index_map[i]."""
        n = new_ctx.num_vars
        pairs = []
        for m, c, _ in self._terms:
            nm = [0] * n
            for i, e in enumerate(m):
                nm[index_map[i]] = e
            pairs.append((tuple(nm), c))
        return TateSeries(new_ctx, pairs)

    # -- comparisons -----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, TateSeries):
            return NotImplemented
        return self.ctx.same_ring(other.ctx) and self._terms == other._terms

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.prec, self._terms))

    def __repr__(self):
        return f"TateSeries({format_series(self)!r})"

    def __str__(self):
        return format_series(self)


def normalize_to_integral(f):
    """Divide f by p**val(f); returns (valuation-0 series, shift).

    The quotient is only determined mod p**(N - shift); we take the
    exact integer quotient of each canonical residue, the canonical
    lift.  Used by the 'rational' ring mode.
    """
    if f.is_zero():
        raise ZeroSeriesError("cannot normalize the zero series")
    v = f.gauss_valuation()
    if v == 0:
        return f, 0
    q = f.ctx.p ** v
    terms = [(m, c // q, w - v) for m, c, w in f.terms]
    return TateSeries._wrap(f.ctx, terms), v


# -- textual form ---------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|([+\-*^]))")


def _tokenize(text, line_no=1):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            col = pos + (len(text[pos:]) - len(stripped)) + 1
            raise SystemFormatError(
                f"unexpected character {stripped[0]!r}", line_no, col)
        col = m.start(m.lastindex) + 1
        kind = ("int", "name", "op")[m.lastindex - 1]
        out.append((kind, m.group(m.lastindex), col))
        pos = m.end()
    return out


def parse_series(text, ctx, line_no=1):
    """Parse `term (+- term)*`; terms are `[coeff][*][var^exp[*...]]`."""
    toks = _tokenize(text, line_no)
    if not toks:
        raise SystemFormatError("empty series", line_no, 1)
    var_index = {name: i for i, name in enumerate(ctx.var_names)}
    pairs = []
    i = 0
    sign = 1
    if toks[0][:2] == ("op", "-"):
        sign = -1
        i = 1
    elif toks[0][:2] == ("op", "+"):
        i = 1
    while True:
        if i >= len(toks):
            raise SystemFormatError("expected a term", line_no,
                                    toks[-1][2] if toks else 1)
        coeff = 1
        have_coeff = False
        mono = [0] * ctx.num_vars
        kind, val, col = toks[i]
        if kind == "int":
            coeff = int(val)
            have_coeff = True
            i += 1
            if i < len(toks) and toks[i][:2] == ("op", "*"):
                i += 1
                if i >= len(toks) or toks[i][0] != "name":
                    where = toks[i][2] if i < len(toks) else col
                    raise SystemFormatError("expected a variable after '*'",
                                            line_no, where)
        have_var = False
        while i < len(toks) and toks[i][0] == "name":
            name = toks[i][1]
            if name not in var_index:
                raise SystemFormatError(f"undeclared variable {name!r}",
                                        line_no, toks[i][2])
            exp = 1
            i += 1
            if i < len(toks) and toks[i][:2] == ("op", "^"):
                i += 1
                if i >= len(toks) or toks[i][0] != "int":
                    where = toks[i][2] if i < len(toks) else toks[i - 1][2]
                    raise SystemFormatError(
                        "exponent must be a nonnegative integer",
                        line_no, where)
                exp = int(toks[i][1])
                i += 1
            mono[var_index[name]] += exp
            have_var = True
            if i < len(toks) and toks[i][:2] == ("op", "*"):
                if i + 1 < len(toks) and toks[i + 1][0] == "name":
                    i += 1
                else:
                    raise SystemFormatError("expected a variable after '*'",
                                            line_no, toks[i][2])
        if not have_coeff and not have_var:
            raise SystemFormatError("expected a term", line_no, toks[i][2])
        pairs.append((tuple(mono), sign * coeff))
        if i >= len(toks):
            break
        kind, val, col = toks[i]
        if kind != "op" or val not in "+-":
            raise SystemFormatError(f"expected '+' or '-', got {val!r}",
                                    line_no, col)
        sign = 1 if val == "+" else -1
        i += 1
    return TateSeries(ctx, pairs)


def _format_mono(mono, var_names):
    parts = []
    for name, e in zip(var_names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_series(f):
    """Canonical text: terms largest-first, residues in [0, p**N)."""
    if f.is_zero():
        return "0"
    parts = []
    for m, c, _ in f.terms:
        mono = _format_mono(m, f.ctx.var_names)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts)
