"""Groebner-basis engines: Buchberger, PoTe and VaPoTe.

Buchberger is the naive S-series baseline and serves as the oracle.
PoTe is the incremental signature engine: one generator is adjoined per
increment, J-pairs are popped by ascending signature, and the cover
and signature criteria discard pairs whose reduction is predictable.
VaPoTe runs the same inner loop but feeds generators by increasing
valuation and diverts any reduction result whose valuation rose back
into the queue, to be processed as a later generator.

Signatures never survive an increment: the basis produced by one
increment re-enters the next one anonymously, which is also what makes
inter-reduction between increments sound.
"""

import heapq
import time
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .arith import coeff_unit_inverse
from .reduce import (
    SigPair,
    full_reduce,
    regular_reduce,
    tail_reduce_plain,
    tail_reduce_strong,
    top_reduce,
)
from .series import (
    LT,
    TateMonomial,
    TateSeries,
    tate_cmp,
    tate_divides,
    tate_lcm,
    tate_mul,
    tate_quotient,
    tate_rank_key,
)


@dataclass
class EngineStats:
    """Directional counters; the accounting identity
    skipped_cover + skipped_sig + reductions == jpairs_popped holds for
    the signature engines (for Buchberger all pops are reductions)."""

    jpairs_created: int = 0
    jpairs_popped: int = 0
    skipped_cover: int = 0
    skipped_sig: int = 0
    reductions: int = 0
    zero_reductions: int = 0
    interrupted_reductions: int = 0
    wall_time: float = 0.0
    increments: Optional[list] = None

    def as_dict(self):
        return {
            "jpairs_created": self.jpairs_created,
            "jpairs_popped": self.jpairs_popped,
            "skipped_cover": self.skipped_cover,
            "skipped_sig": self.skipped_sig,
            "reductions": self.reductions,
            "zero_reductions": self.zero_reductions,
            "interrupted_reductions": self.interrupted_reductions,
        }


@dataclass
class IncrementRecord:
    """Debug snapshot of one completed increment."""

    f_input: TateSeries
    f_used: Optional[TateSeries]
    prev_basis: tuple
    seeded_sigs: tuple
    pairs: tuple            # final signature pairs (sig, v, u)
    syzygy_sigs: tuple      # signatures added to S during the increment
    syzygies: tuple         # (sig, full u) for true reductions to zero
    final_S: tuple


class JPairEntry(NamedTuple):
    lmv: Optional[TateMonomial]  # leading monomial of the scaled series
    seq: int
    t: TateMonomial
    src: SigPair


def make_jpair(order, p1, p2):
    """J-pair of two pairs, or None when the scaled signatures tie.

    Returns (sig, t, source): the winning side scaled by the monomial
    t = lcm(LM(v1), LM(v2)) / LM(v_winner).  A pair with sig None (a
    previous-basis element) always loses, so the J-pair is the scaled
    other side.
    """
    lm1 = p1.v.leading_monomial()
    lm2 = p2.v.leading_monomial()
    t = tate_lcm(lm1, lm2)
    t1 = tate_quotient(t, lm1)
    t2 = tate_quotient(t, lm2)
    if p1.sig is None and p2.sig is None:
        return None
    if p2.sig is None:
        return tate_mul(t1, p1.sig), t1, p1
    if p1.sig is None:
        return tate_mul(t2, p2.sig), t2, p2
    s1 = tate_mul(t1, p1.sig)
    s2 = tate_mul(t2, p2.sig)
    c = tate_cmp(order, s1, s2)
    if c == 0:
        return None
    if c > 0:
        return s1, t1, p1
    return s2, t2, p2


def scaled_lm(t, v, prec):
    """LM of (p**t.val * X**t.mono) * v, or None if that product is 0."""
    for m, _c, w in v.terms:
        if w + t.val < prec:
            return TateMonomial(w + t.val,
                                tuple(x + y for x, y in zip(m, t.mono)))
    return None


def is_covered(order, sig, vlm, pairs):
    """Cover criterion: some pair divides sig with a strictly smaller
    scaled leading monomial.  vlm None (scaled series vanished mod p**N)
    is below everything, hence never covered."""
    if vlm is None:
        return False
    for pair in pairs:
        if pair.sig is None or not tate_divides(pair.sig, sig):
            continue
        t = tate_quotient(sig, pair.sig)
        if tate_cmp(order, tate_mul(t, pair.v.leading_monomial()), vlm) == LT:
            return True
    return False


def sig_criterion(sig, S):
    return any(tate_divides(s, sig) for s in S)


def colon_signatures(record):
    """Syzygy signatures of one increment (seeded entries excluded)."""
    return list(record.syzygy_sigs)


def _zero_shift(ctx):
    return (0,) * ctx.num_vars


def _unit_sig(ctx):
    return TateMonomial(0, _zero_shift(ctx))


def _lmv_less(order, a, b):
    if a is None:
        return b is not None
    if b is None:
        return False
    return tate_cmp(order, a, b) == LT


class _Increment:
    """One run of the signature inner loop (shared by PoTe and VaPoTe)."""

    def __init__(self, ctx, gbasis, stats, vapote_mode):
        self.ctx = ctx
        self.order = ctx.order
        self.rank = tate_rank_key(ctx.order)
        self.gbasis = gbasis
        self.stats = stats
        self.vapote_mode = vapote_mode
        self.debug = ctx.options.debug_track_syzygies
        self.requeued = []

    def prepare(self, f):
        """Pre-reduce f against the current basis (interreduce option).

        Returns ('run', f'), ('drop', None) when f reduced to zero, or
        ('requeue', f') in VaPoTe mode when the valuation rose.
        """
        ctx = self.ctx
        opts = ctx.options
        if not opts.interreduce or not self.gbasis:
            return "run", f
        if self.vapote_mode:
            out = top_reduce(f, self.gbasis,
                             interrupt=opts.interrupt_on_valuation_rise)
            r = out.result
            if r.is_zero():
                return "drop", None
            if r.gauss_valuation() > f.gauss_valuation():
                return "requeue", r
            return "run", full_reduce(r, self.gbasis)
        r = full_reduce(f, self.gbasis)
        if r.is_zero():
            return "drop", None
        return "run", r

    def run(self, f_input):
        ctx = self.ctx
        opts = ctx.options
        stats = self.stats
        order = self.order
        prec = ctx.prec

        action, f = self.prepare(f_input)
        one = _unit_sig(ctx)
        if action == "requeue":
            self.requeued.append(f)
            return self.gbasis, None
        if action == "drop":
            # f lies in the ideal of the current basis: the unit signature
            # is a syzygy signature of this (degenerate) increment
            record = None
            if self.debug:
                u1 = TateSeries.constant(ctx, 1)
                record = IncrementRecord(
                    f_input, None, tuple(self.gbasis), (), (),
                    (one,), ((one, u1),), (one,))
            return self.gbasis, record

        # initial state: G = basis pairs + (1, f); S = seeded basis LMs
        u_one = TateSeries.constant(ctx, 1) if self.debug else None
        g_all = [SigPair(None, g, None) for g in self.gbasis]
        g_all.append(SigPair(one, f, u_one))
        seeded = []
        for g in self.gbasis:
            s = g.leading_monomial()
            if opts.monic_signatures:
                s = TateMonomial(0, s.mono)
            seeded.append(s)
        S = list(seeded)
        syz_sigs = []
        syzygies = []

        B = {}
        heap = []
        seq = 0
        fval = f.gauss_valuation()

        def push(jp):
            nonlocal seq
            if jp is None:
                return
            sig, t, src = jp
            stats.jpairs_created += 1
            lmv = scaled_lm(t, src.v, prec)
            old = B.get(sig)
            if old is None or _lmv_less(order, lmv, old.lmv):
                B[sig] = JPairEntry(lmv, seq, t, src)
                if old is None:
                    heapq.heappush(heap, (self.rank(sig), sig))
            seq += 1

        newpair = g_all[-1]
        for bp in g_all[:-1]:
            push(make_jpair(order, newpair, bp))

        while B:
            sig = heapq.heappop(heap)[1]
            entry = B.pop(sig, None)
            if entry is None:
                continue  # stale heap entry (deduped away)
            stats.jpairs_popped += 1
            if is_covered(order, sig, entry.lmv, g_all):
                stats.skipped_cover += 1
                continue
            if sig_criterion(sig, S):
                stats.skipped_sig += 1
                continue
            t = entry.t
            c_scale = ctx.p ** t.val if t.val < prec else 0
            v = entry.src.v.term_mul(c_scale, t.mono)
            u = None
            if self.debug:
                u = entry.src.u.term_mul(c_scale, t.mono)
            stats.reductions += 1
            out = regular_reduce(sig, v, g_all,
                                 interrupt=(self.vapote_mode
                                            and opts.interrupt_on_valuation_rise),
                                 record=self.debug)
            v0 = out.result
            if out.interrupted:
                stats.interrupted_reductions += 1
            if self.debug:
                for q, shift, i in out.trace:
                    ui = g_all[i].u
                    if ui is not None:
                        u = u.axpy(-q, shift, ui)
            if v0.is_zero():
                stats.zero_reductions += 1
                S.append(sig)
                syz_sigs.append(sig)
                if self.debug:
                    syzygies.append((sig, u))
                continue
            if self.vapote_mode and v0.gauss_valuation() > fval:
                # valuation rose: the signature becomes a syzygy signature
                # and the series is fed back as a later generator
                S.append(sig)
                syz_sigs.append(sig)
                self.requeued.append(v0)
                continue
            np = SigPair(sig, v0, u)
            for q in g_all:
                push(make_jpair(order, np, q))
            g_all.append(np)

        new_basis = list(self.gbasis) + [p.v for p in g_all if p.sig is not None]
        record = None
        if self.debug:
            record = IncrementRecord(
                f_input, f, tuple(self.gbasis), tuple(seeded),
                tuple(p for p in g_all if p.sig is not None),
                tuple(syz_sigs), tuple(syzygies), tuple(S))
        if opts.interreduce:
            new_basis = minimize_and_reduce(new_basis, strong=False)
        return new_basis, record


def _fresh_stats(ctx):
    stats = EngineStats()
    if ctx.options.debug_track_syzygies:
        stats.increments = []
    return stats


def pote(F, ctx):
    """Incremental signature engine; generators in input order."""
    t0 = time.perf_counter()
    stats = _fresh_stats(ctx)
    gbasis = []
    for f in F:
        if f.is_zero():
            continue
        inc = _Increment(ctx, gbasis, stats, vapote_mode=False)
        gbasis, record = inc.run(f)
        if record is not None and stats.increments is not None:
            stats.increments.append(record)
    stats.wall_time = time.perf_counter() - t0
    return gbasis, stats


def vapote(F, ctx):
    """Valuation-stratified signature engine.

    Generators are popped by increasing Gauss valuation (FIFO among
    equals); any reduction result whose valuation rose above the
    current generator's is pushed back into the queue.
    """
    t0 = time.perf_counter()
    stats = _fresh_stats(ctx)
    gbasis = []
    heap = []
    seq = 0
    for f in F:
        if not f.is_zero():
            heapq.heappush(heap, (f.gauss_valuation(), seq, f))
            seq += 1
    while heap:
        _, _, f = heapq.heappop(heap)
        inc = _Increment(ctx, gbasis, stats, vapote_mode=True)
        gbasis, record = inc.run(f)
        if record is not None and stats.increments is not None:
            stats.increments.append(record)
        for g in inc.requeued:
            heapq.heappush(heap, (g.gauss_valuation(), seq, g))
            seq += 1
    stats.wall_time = time.perf_counter() - t0
    return gbasis, stats


def s_series(f, g):
    """The S-series of f and g: both scaled to the term lcm and subtracted."""
    ctx = f.ctx
    p = ctx.p
    lf = f.leading_monomial()
    lg = g.leading_monomial()
    t = tate_lcm(lf, lg)
    uf = f.leading_term().coeff // p ** lf.val
    ug = g.leading_term().coeff // p ** lg.val
    a = p ** (t.val - lf.val) * ug
    b = p ** (t.val - lg.val) * uf
    sa = tuple(x - y for x, y in zip(t.mono, lf.mono))
    sb = tuple(x - y for x, y in zip(t.mono, lg.mono))
    return f.term_mul(a, sa).axpy(-b, sb, g)


def buchberger(F, ctx):
    """Naive Buchberger baseline: every S-series is formed and reduced."""
    t0 = time.perf_counter()
    stats = _fresh_stats(ctx)
    rank = tate_rank_key(ctx.order)
    G = [f for f in F if not f.is_zero()]
    heap = []

    def push_pairs(j):
        lmj = G[j].leading_monomial()
        for i in range(j):
            t = tate_lcm(G[i].leading_monomial(), lmj)
            heapq.heappush(heap, (rank(t), i, j))
            stats.jpairs_created += 1

    for j in range(len(G)):
        push_pairs(j)
    while heap:
        _, i, j = heapq.heappop(heap)
        stats.jpairs_popped += 1
        stats.reductions += 1
        r = top_reduce(s_series(G[i], G[j]), G).result
        if r.is_zero():
            stats.zero_reductions += 1
        else:
            G.append(r)
            push_pairs(len(G) - 1)
    stats.wall_time = time.perf_counter() - t0
    return G, stats


ENGINES = {"buchberger": buchberger, "pote": pote, "vapote": vapote}


def minimize_and_reduce(basis, strong=True):
    """Reduced minimal basis for the given leading-monomial set.

    Elements whose LM is divisible by another retained element's LM are
    dropped (ties keep the earlier one); survivors are sorted by LM
    descending, their leading coefficients rescaled to an exact power
    of p, and every tail strongly reduced against the whole basis
    (itself included), which clamps each tail coefficient into its
    canonical range and makes the result independent of the engine that
    produced the input basis.

    strong=False replaces the clamping pass by classic tail reduction:
    not canonical, but much cheaper.  The engines use it between
    increments; final output always goes through the strong form.
    """
    nz = [g for g in basis if not g.is_zero()]
    if not nz:
        return []
    ctx = nz[0].ctx
    lms = [g.leading_monomial() for g in nz]
    keep = []
    for i in range(len(nz)):
        dominated = False
        for j in range(len(nz)):
            if i != j and tate_divides(lms[j], lms[i]) \
                    and (lms[j] != lms[i] or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(i)
    rank = tate_rank_key(ctx.order)
    keep.sort(key=lambda i: rank(lms[i]), reverse=True)
    shift = _zero_shift(ctx)
    out = []
    for i in keep:
        g = nz[i]
        unit = g.leading_term().coeff // ctx.p ** lms[i].val
        if unit != 1:
            g = g.term_mul(coeff_unit_inverse(unit, ctx), shift)
        out.append(g)
    reduce_tails = tail_reduce_strong if strong else tail_reduce_plain
    for i in range(len(out)):
        out[i] = reduce_tails(out[i], out)
    return out
