"""Reduction procedures over integral Tate series mod p**N.

Three flavours live here:

* plain top-reduction and full (tail) reduction, used by the
  Buchberger engine, by inter-reduction and by verification;
* *strong* tail reduction, which additionally clamps each tail
  coefficient into [0, p**v) whenever a basis element whose monomial
  part divides it has a leading coefficient of valuation v.  Strong
  tail reduction makes the reduced minimal basis canonical: two fully
  clamped forms of the same residue class are identical, which is what
  lets the engines be compared byte-for-byte;
* signature-aware regular reduction: only reduction steps whose scaled
  reducer signature stays strictly below the signature of the series
  being reduced are applied (super reductions are refused).

Every loop strictly decreases the leading (or currently processed)
term under the valuation-first order, which is a well-order once
valuations are capped at N, so all reductions terminate.
"""

from typing import NamedTuple, Optional

from .arith import coeff_divide_exact, coeff_unit_inverse
from .series import (
    LT,
    TateMonomial,
    TateSeries,
    tate_cmp,
    tate_divides,
    tate_mul,
    tate_quotient,
    tate_rank_key,
)


class SigPair(NamedTuple):
    """A stored pair (LM(u), v); sig None marks an always-regular reducer
    coming from the previous basis (a pair whose signature is zero)."""

    sig: Optional[TateMonomial]
    v: TateSeries
    u: Optional[TateSeries] = None  # full multiplier, debug mode only


class ReductionOutcome(NamedTuple):
    result: TateSeries
    steps: int
    interrupted: bool
    trace: tuple = ()  # (coeff, shift, reducer_index) per step, if recorded


def _mono_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def top_reduce(f, G, interrupt=False):
    """Cancel the leading term while some g in G divides it.

    Reducers are tried in list order.  With interrupt=True the loop
    stops right after a step that raises the Gauss valuation above the
    input's (the step is committed first).
    """
    ctx = f.ctx
    lms = [g.leading_monomial() for g in G]
    cur = f
    steps = 0
    base_val = f.gauss_valuation()
    while cur:
        lm = cur.leading_monomial()
        hit = None
        for i, glm in enumerate(lms):
            if tate_divides(glm, lm):
                hit = i
                break
        if hit is None:
            break
        g = G[hit]
        q = coeff_divide_exact(cur.leading_term().coeff,
                               g.leading_term().coeff, ctx)
        cur = cur.axpy(-q, _mono_sub(lm.mono, lms[hit].mono), g)
        steps += 1
        if interrupt and cur.gauss_valuation() > base_val:
            return ReductionOutcome(cur, steps, True)
    return ReductionOutcome(cur, steps, False)


def full_reduce(f, G):
    """Reduce until no term of the result is divisible by any LM(g).

    Tail terms are cleared largest-first; each step removes the term
    entirely (the coefficient division is exact) and only introduces
    strictly smaller terms.
    """
    cur = top_reduce(f, G).result
    if not G or cur.is_zero():
        return cur
    ctx = f.ctx
    lms = [g.leading_monomial() for g in G]
    while True:
        pick = None
        for m, c, v in cur.terms:
            tm = TateMonomial(v, m)
            for i, lm in enumerate(lms):
                if tate_divides(lm, tm):
                    pick = (m, c, i)
                    break
            if pick:
                break
        if pick is None:
            return cur
        m, c, i = pick
        q = coeff_divide_exact(c, G[i].leading_term().coeff, ctx)
        cur = cur.axpy(-q, _mono_sub(m, lms[i].mono), G[i])


def tail_reduce_plain(f, G):
    """Classic tail reduction: remove every non-leading term divisible
    (in the Tate sense) by some LM(g), largest first.  Cheaper than the
    strong variant; used for inter-reduction between increments where
    canonical output is not required."""
    ctx = f.ctx
    lms = [g.leading_monomial() for g in G]
    cur = f
    while True:
        pick = None
        for pos, (m, c, v) in enumerate(cur.terms):
            if pos == 0:
                continue
            tm = TateMonomial(v, m)
            for i, lm in enumerate(lms):
                if tate_divides(lm, tm):
                    pick = (m, c, i)
                    break
            if pick:
                break
        if pick is None:
            return cur
        m, c, i = pick
        q = coeff_divide_exact(c, G[i].leading_term().coeff, ctx)
        cur = cur.axpy(-q, _mono_sub(m, lms[i].mono), G[i])


def _strong_leads(G, ctx):
    # per reducer: (p**val(lead), unit inverse of the lead's unit part)
    out = []
    for g in G:
        lm = g.leading_monomial()
        pv = ctx.p ** lm.val
        out.append((lm, pv,
                    coeff_unit_inverse(g.leading_term().coeff // pv, ctx)))
    return out


def tail_reduce_strong(f, G):
    """Clamp every non-leading coefficient of f into canonical range,
    keeping the leading coefficient an exact power of p.

    A tail term c*X^m is reducible by g when mono(LM(g)) divides m and
    c >= p**val(LM(g)); the step replaces c by c mod p**val(LM(g)).
    The reducer with the smallest lead valuation is preferred (ties by
    list order), so one step per position reaches the canonical range.
    f itself may appear among the reducers; only tails are clamped.

    Because reducer tails may sit above their own lead in the monomial
    order (at higher valuation), a clamp can leak back into positions
    already processed, including the leading coefficient.  The outer
    loop rescales the lead and re-clamps; each round the leak moves to
    strictly higher valuation, so at most prec rounds are needed.
    """
    ctx = f.ctx
    leads = _strong_leads(G, ctx)
    cur = f
    pv_lead = ctx.p ** cur.leading_monomial().val
    for _ in range(ctx.prec + 2):
        unit = cur.leading_term().coeff // pv_lead
        if unit != 1:
            cur = cur.term_mul(coeff_unit_inverse(unit, ctx),
                               (0,) * ctx.num_vars)
        while True:
            pick = None
            for pos, (m, c, _) in enumerate(cur.terms):
                if pos == 0:
                    continue  # the leading term is pinned
                best = None
                for i, (lm, pv, _uinv) in enumerate(leads):
                    if c >= pv and all(x <= y for x, y in zip(lm.mono, m)):
                        if best is None or pv < leads[best][1]:
                            best = i
                if best is not None:
                    pick = (m, c, best)
                    break
            if pick is None:
                break
            m, c, i = pick
            lm, pv, uinv = leads[i]
            q = (c - c % pv) // pv * uinv
            cur = cur.axpy(-q, _mono_sub(m, lm.mono), G[i])
        if cur.leading_term().coeff == pv_lead:
            return cur
    raise AssertionError("strong tail reduction did not stabilize")


def regular_reduce(sig, v, G, interrupt=False, record=False):
    """Signature-preserving top-reduction of v against the pairs in G.

    A pair (s_g, g) is an eligible reducer of the current series when
    LM(g) divides its leading monomial and, with t the monomial
    quotient, t*s_g < sig strictly (pairs with sig None are always
    eligible).  Super steps, t*s_g = sig, are never applied.  Among
    eligible reducers the one minimizing t*s_g is chosen (basis
    reducers count as bottom), ties broken by list order.
    """
    ctx = v.ctx
    order = ctx.order
    rank = tate_rank_key(order)
    lms = [pair.v.leading_monomial() for pair in G]
    cur = v
    steps = 0
    base_val = v.gauss_valuation()
    trace = []
    while cur:
        lm = cur.leading_monomial()
        lval, lmono = lm
        best = None  # (rank of t*s_g, or None for basis reducers; index)
        for i, pair in enumerate(G):
            gval, gmono = lms[i]
            if gval > lval:
                continue
            skip = False
            for a, b in zip(gmono, lmono):
                if a > b:
                    skip = True
                    break
            if skip:
                continue
            if pair.sig is None:
                key = None  # bottom: always regular, most preferred
                if best is None:
                    best = (None, i)
                    break  # basis reducers come first in G: minimal key
            else:
                ts = tate_mul(tate_quotient(lm, lms[i]), pair.sig)
                if tate_cmp(order, ts, sig) != LT:
                    continue  # super (or signature-raising): refused
                key = rank(ts)
                if best is None or (best[0] is not None and key < best[0]):
                    best = (key, i)
        if best is None:
            break
        i = best[1]
        g = G[i].v
        q = coeff_divide_exact(cur.leading_term().coeff,
                               g.leading_term().coeff, ctx)
        shift = _mono_sub(lmono, lms[i].mono)
        cur = cur.axpy(-q, shift, g)
        steps += 1
        if record:
            trace.append((q, shift, i))
        if interrupt and cur.gauss_valuation() > base_val:
            return ReductionOutcome(cur, steps, True, tuple(trace))
    return ReductionOutcome(cur, steps, False, tuple(trace))
