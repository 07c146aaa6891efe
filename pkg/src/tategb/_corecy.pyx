# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for sparse Tate-series term lists.

Same five entry points and semantics as ``_corepy``; coefficients are
machine integers (the Context caps p**N at 2**62) and the merge work
runs on flat C arrays.
"""

from libc.stdlib cimport free, malloc

BACKEND = "compiled"

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"


cdef inline long long _val_ll(long long r, long long p, int cap) nogil:
    cdef int v = 0
    if r == 0:
        return cap
    while r % p == 0:
        r //= p
        v += 1
    return v


def valuation(r, p, cap):
    """p-adic valuation of a residue in [0, p**cap); cap for zero."""
    return int(_val_ll(r, p, cap))


cdef struct TermBuf:
    long long *coeff
    long long *val
    long long *expo   # k rows of n exponents
    long long *deg
    Py_ssize_t k
    int n


cdef int _alloc(TermBuf *buf, Py_ssize_t k, int n) except -1:
    buf.k = k
    buf.n = n
    buf.coeff = <long long *> malloc(k * sizeof(long long) or 1)
    buf.val = <long long *> malloc(k * sizeof(long long) or 1)
    buf.deg = <long long *> malloc(k * sizeof(long long) or 1)
    buf.expo = <long long *> malloc(k * n * sizeof(long long) or 1)
    if not buf.coeff or not buf.val or not buf.expo or not buf.deg:
        _release(buf)
        raise MemoryError()
    return 0


cdef void _release(TermBuf *buf) nogil:
    if buf.coeff:
        free(buf.coeff)
    if buf.val:
        free(buf.val)
    if buf.expo:
        free(buf.expo)
    if buf.deg:
        free(buf.deg)
    buf.coeff = buf.val = buf.expo = buf.deg = NULL


cdef inline int _cmp_mono(TermBuf *buf, Py_ssize_t i, Py_ssize_t j) nogil:
    # plain lexicographic on exponent rows, used only to group duplicates
    cdef int t
    cdef long long a, b
    for t in range(buf.n):
        a = buf.expo[i * buf.n + t]
        b = buf.expo[j * buf.n + t]
        if a != b:
            return -1 if a < b else 1
    return 0


cdef inline int _cmp_term(TermBuf *buf, Py_ssize_t i, Py_ssize_t j,
                          int order) nogil:
    # ascending == descending valuation-first term order
    cdef int t
    cdef long long a, b
    if buf.val[i] != buf.val[j]:
        return -1 if buf.val[i] < buf.val[j] else 1
    if order == 0:  # grevlex
        if buf.deg[i] != buf.deg[j]:
            return -1 if buf.deg[i] > buf.deg[j] else 1
        for t in range(buf.n - 1, -1, -1):
            a = buf.expo[i * buf.n + t]
            b = buf.expo[j * buf.n + t]
            if a != b:
                return -1 if a < b else 1
    else:  # lex
        for t in range(buf.n):
            a = buf.expo[i * buf.n + t]
            b = buf.expo[j * buf.n + t]
            if a != b:
                return -1 if a > b else 1
    return 0


cdef void _msort(TermBuf *buf, Py_ssize_t *idx, Py_ssize_t *tmp,
                 Py_ssize_t lo, Py_ssize_t hi, int order, bint by_mono) nogil:
    cdef Py_ssize_t mid, i, j, k
    cdef int c
    if hi - lo < 2:
        return
    mid = (lo + hi) // 2
    _msort(buf, idx, tmp, lo, mid, order, by_mono)
    _msort(buf, idx, tmp, mid, hi, order, by_mono)
    i = lo
    j = mid
    k = lo
    while i < mid and j < hi:
        if by_mono:
            c = _cmp_mono(buf, idx[i], idx[j])
        else:
            c = _cmp_term(buf, idx[i], idx[j], order)
        if c <= 0:
            tmp[k] = idx[i]
            i += 1
        else:
            tmp[k] = idx[j]
            j += 1
        k += 1
    while i < mid:
        tmp[k] = idx[i]
        i += 1
        k += 1
    while j < hi:
        tmp[k] = idx[j]
        j += 1
        k += 1
    for i in range(lo, hi):
        idx[i] = tmp[i]


cdef list _emit(TermBuf *buf, long long p, long long pN, int cap, int order,
                bint combine):
    """Combine duplicate monomials, drop zeros, sort by term order, build
    the Python term list.  Valuations are (re)computed here."""
    cdef Py_ssize_t k = buf.k
    cdef int n = buf.n
    cdef Py_ssize_t *idx = <Py_ssize_t *> malloc(k * sizeof(Py_ssize_t) or 1)
    cdef Py_ssize_t *tmp = <Py_ssize_t *> malloc(k * sizeof(Py_ssize_t) or 1)
    if not idx or not tmp:
        if idx:
            free(idx)
        if tmp:
            free(tmp)
        raise MemoryError()
    cdef Py_ssize_t i, j, w, src
    cdef long long c
    try:
        for i in range(k):
            idx[i] = i
        if combine and k > 1:
            _msort(buf, idx, tmp, 0, k, order, True)
            # fold runs of equal monomials into the first slot of the run
            w = 0
            i = 0
            while i < k:
                src = idx[i]
                c = buf.coeff[src]
                j = i + 1
                while j < k and _cmp_mono(buf, src, idx[j]) == 0:
                    c = (c + buf.coeff[idx[j]]) % pN
                    j += 1
                buf.coeff[src] = c
                idx[w] = src
                w += 1
                i = j
            k = w
        # drop zero residues, fill valuations and degrees
        w = 0
        for i in range(k):
            src = idx[i]
            if buf.coeff[src] != 0:
                buf.val[src] = _val_ll(buf.coeff[src], p, cap)
                idx[w] = src
                w += 1
        k = w
        if order == 0:
            for i in range(k):
                src = idx[i]
                c = 0
                for j in range(n):
                    c += buf.expo[src * n + j]
                buf.deg[src] = c
        _msort(buf, idx, tmp, 0, k, order, False)
        out = []
        for i in range(k):
            src = idx[i]
            mono = tuple([buf.expo[src * n + j] for j in range(n)])
            out.append((mono, int(buf.coeff[src]), int(buf.val[src])))
        return out
    finally:
        free(idx)
        free(tmp)


cdef int _ingest(TermBuf *buf, list terms, int n, long long pN) except -1:
    # canonical triples in, assumed reduced; vals copied as given
    cdef Py_ssize_t i
    cdef int j
    cdef tuple t, mono
    for i in range(len(terms)):
        t = <tuple> terms[i]
        mono = <tuple> t[0]
        for j in range(n):
            buf.expo[i * n + j] = mono[j]
        buf.coeff[i] = t[1]
        buf.val[i] = t[2]
    return 0


cdef int _n_of(list terms, fallback) except -1:
    if terms:
        return len(<tuple> (<tuple> terms[0])[0])
    return len(fallback) if fallback is not None else 1


def canonicalize(pairs, p, pN, cap, order):
    """Canonical term list from raw (mono, coeff) pairs."""
    cdef list lp = list(pairs)
    cdef Py_ssize_t k = len(lp)
    if k == 0:
        return []
    cdef int n = len(<tuple> (<tuple> lp[0])[0])
    cdef long long pN_ll = pN
    cdef TermBuf buf
    _alloc(&buf, k, n)
    cdef Py_ssize_t i
    cdef int j
    cdef tuple t, mono
    try:
        for i in range(k):
            t = <tuple> lp[i]
            mono = <tuple> t[0]
            for j in range(n):
                buf.expo[i * n + j] = mono[j]
            buf.coeff[i] = t[1] % pN  # object mod: accepts huge/negative ints
        return _emit(&buf, p, pN_ll, cap, order, True)
    finally:
        _release(&buf)


def add(f, g, p, pN, cap, order):
    """f + g."""
    cdef list lf = <list> f if isinstance(f, list) else list(f)
    cdef list lg = <list> g if isinstance(g, list) else list(g)
    cdef Py_ssize_t kf = len(lf), kg = len(lg)
    if kf == 0 and kg == 0:
        return []
    cdef int n = _n_of(lf if kf else lg, None)
    cdef TermBuf buf
    _alloc(&buf, kf + kg, n)
    cdef TermBuf tail
    tail.coeff = buf.coeff + kf
    tail.val = buf.val + kf
    tail.expo = buf.expo + kf * n
    tail.deg = buf.deg + kf
    tail.k = kg
    tail.n = n
    try:
        _ingest(&buf, lf, n, pN)
        _ingest(&tail, lg, n, pN)
        buf.k = kf + kg
        return _emit(&buf, p, pN, cap, order, True)
    finally:
        _release(&buf)


def scale(f, c, shift, p, pN, cap, order):
    """(c * X**shift) * f; order-preserving, no re-sort needed."""
    cdef list lf = <list> f if isinstance(f, list) else list(f)
    c = c % pN
    if c == 0 or not lf:
        return []
    cdef long long cc = c
    cdef long long pN_ll = pN
    cdef long long p_ll = p
    cdef int vc = <int> _val_ll(cc, p_ll, cap)
    cdef tuple sh = tuple(shift)
    cdef int n = len(sh)
    cdef bint trivial = True
    cdef int j
    for j in range(n):
        if sh[j]:
            trivial = False
            break
    cdef list out = []
    cdef tuple t, mono
    cdef long long nc
    cdef Py_ssize_t i
    for i in range(len(lf)):
        t = <tuple> lf[i]
        nc = <long long> ((<u128> (<long long> t[1]) * <u128> cc) % <u128> pN_ll)
        if nc:
            mono = <tuple> t[0]
            if not trivial:
                mono = tuple([mono[j] + sh[j] for j in range(n)])
            out.append((mono, int(nc), int(t[2]) + vc))
    return out


def axpy(f, c, shift, g, p, pN, cap, order):
    """f + (c * X**shift) * g, the reduction-step workhorse."""
    cdef list lf = <list> f if isinstance(f, list) else list(f)
    cdef list lg = <list> g if isinstance(g, list) else list(g)
    c = c % pN
    if c == 0:
        return list(lf)
    cdef long long cc = c
    cdef long long pN_ll = pN
    cdef Py_ssize_t kf = len(lf), kg = len(lg)
    if kf == 0 and kg == 0:
        return []
    cdef tuple sh = tuple(shift)
    cdef int n = len(sh)
    cdef TermBuf buf
    _alloc(&buf, kf + kg, n)
    cdef Py_ssize_t i, w
    cdef int j
    cdef tuple t, mono
    cdef long long nc
    try:
        _ingest(&buf, lf, n, pN)
        w = kf
        for i in range(kg):
            t = <tuple> lg[i]
            nc = <long long> ((<u128> (<long long> t[1]) * <u128> cc)
                              % <u128> pN_ll)
            if nc:
                mono = <tuple> t[0]
                for j in range(n):
                    buf.expo[w * n + j] = mono[j] + sh[j]
                buf.coeff[w] = nc
                w += 1
        buf.k = w
        return _emit(&buf, p, pN_ll, cap, order, True)
    finally:
        _release(&buf)


def mul(f, g, p, pN, cap, order):
    """Full product f * g."""
    cdef list lf = <list> f if isinstance(f, list) else list(f)
    cdef list lg = <list> g if isinstance(g, list) else list(g)
    cdef Py_ssize_t kf = len(lf), kg = len(lg)
    if kf == 0 or kg == 0:
        return []
    cdef int n = len(<tuple> (<tuple> lf[0])[0])
    cdef long long pN_ll = pN
    cdef TermBuf buf
    _alloc(&buf, kf * kg, n)
    cdef TermBuf fb
    _alloc(&fb, kf, n)
    cdef TermBuf gb
    _alloc(&gb, kg, n)
    cdef Py_ssize_t i, j, w
    cdef int t
    cdef long long nc
    try:
        _ingest(&fb, lf, n, pN)
        _ingest(&gb, lg, n, pN)
        w = 0
        for i in range(kf):
            for j in range(kg):
                nc = <long long> ((<u128> fb.coeff[i] * <u128> gb.coeff[j])
                                  % <u128> pN_ll)
                if nc:
                    for t in range(n):
                        buf.expo[w * n + t] = fb.expo[i * n + t] \
                            + gb.expo[j * n + t]
                    buf.coeff[w] = nc
                    w += 1
        buf.k = w
        return _emit(&buf, p, pN_ll, cap, order, True)
    finally:
        _release(&fb)
        _release(&gb)
        _release(&buf)
