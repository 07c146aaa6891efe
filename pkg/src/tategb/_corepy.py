"""Pure-Python kernel for sparse Tate-series term lists.

A term list is a list of triples ``(mono, coeff, val)`` where ``mono``
is a tuple of exponents, ``coeff`` an integer in [0, p**N) and ``val``
its p-adic valuation.  Lists are kept sorted descending under the
valuation-first term order (lower valuation first, ties broken by the
monomial order), so the leading term is element 0.

The compiled twin in ``_corecy.pyx`` implements the same five entry
points with identical semantics; ``tategb._core`` picks one at import.
"""

BACKEND = "pure"


def valuation(r, p, cap):
    """p-adic valuation of a residue in [0, p**cap); cap for zero."""
    if r == 0:
        return cap
    v = 0
    while r % p == 0:
        r //= p
        v += 1
    return v


def _sort_key(order):
    if order == 0:  # grevlex
        def key(t):
            m = t[0]
            return (t[2], -sum(m)) + m[::-1]
    else:  # lex
        def key(t):
            return (t[2],) + tuple(-e for e in t[0])
    return key


def _finish(acc, p, pN, cap, order):
    # acc: mono -> coeff (possibly unreduced); drop zeros, attach vals, sort
    out = []
    for m, c in acc.items():
        c %= pN
        if c:
            out.append((m, c, valuation(c, p, cap)))
    out.sort(key=_sort_key(order))
    return out


def canonicalize(pairs, p, pN, cap, order):
    """Canonical term list from raw (mono, coeff) pairs."""
    acc = {}
    for m, c in pairs:
        acc[m] = acc.get(m, 0) + c
    return _finish(acc, p, pN, cap, order)


def add(f, g, p, pN, cap, order):
    """f + g."""
    acc = {m: c for m, c, _ in f}
    for m, c, _ in g:
        acc[m] = acc.get(m, 0) + c
    return _finish(acc, p, pN, cap, order)


def scale(f, c, shift, p, pN, cap, order):
    """(c * X**shift) * f for a coefficient c and exponent shift."""
    c %= pN
    if c == 0:
        return []
    vc = valuation(c, p, cap)
    out = []
    n = len(shift)
    trivial = not any(shift)
    for m, fc, fv in f:
        nc = fc * c % pN
        if nc:
            nm = m if trivial else tuple(m[i] + shift[i] for i in range(n))
            # val is exact below the cap, and both the valuation shift and
            # the monomial shift preserve the term order: no re-sort needed
            out.append((nm, nc, fv + vc))
    return out


def axpy(f, c, shift, g, p, pN, cap, order):
    """f + (c * X**shift) * g, the reduction-step workhorse."""
    c %= pN
    if c == 0:
        return list(f)
    acc = {m: c_ for m, c_, _ in f}
    n = len(shift)
    trivial = not any(shift)
    for m, gc, _ in g:
        nc = gc * c % pN
        if nc:
            nm = m if trivial else tuple(m[i] + shift[i] for i in range(n))
            acc[nm] = acc.get(nm, 0) + nc
    return _finish(acc, p, pN, cap, order)


def mul(f, g, p, pN, cap, order):
    """Full product f * g."""
    if not f or not g:
        return []
    acc = {}
    n = len(f[0][0])
    for fm, fc, _ in f:
        for gm, gc, _ in g:
            nm = tuple(fm[i] + gm[i] for i in range(n))
            acc[nm] = acc.get(nm, 0) + fc * gc
    return _finish(acc, p, pN, cap, order)


class Work:
    """Mutable working series for reduction loops.

    The compiled twin keeps the terms in C arrays across steps; this
    one just owns a list and reuses the flat helpers.  Reducer Works
    are treated as immutable by every consumer.
    """

    __slots__ = ("terms", "p", "pN", "cap", "order")

    def __init__(self, terms, p, pN, cap, order):
        self.terms = list(terms)
        self.p = p
        self.pN = pN
        self.cap = cap
        self.order = order

    def is_zero(self):
        return not self.terms

    def size(self):
        return len(self.terms)

    def gauss_val(self):
        return self.terms[0][2] if self.terms else self.cap

    def lead(self):
        return self.terms[0]

    def term(self, i):
        return self.terms[i]

    def axpy(self, c, shift, other):
        """self += (c * X**shift) * other, in place."""
        self.terms = axpy(self.terms, c, shift, other.terms,
                          self.p, self.pN, self.cap, self.order)

    def export(self):
        return list(self.terms)


def make_work(terms, n, p, pN, cap, order):
    return Work(terms, p, pN, cap, order)
