# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled twin of ``_core_py``; see that module for the contracts.

Tables arrive as flat Python sequences and are copied into C arrays;
bitsets cross the boundary as Python ints and are unpacked into uint64
words internally.
"""

from libc.stdlib cimport calloc, free, malloc
from libc.string cimport memcpy, memset

BACKEND_NAME = "compiled"


cdef int* _to_ints(object seq, Py_ssize_t expected) except NULL:
    cdef Py_ssize_t n = len(seq)
    if n != expected:
        raise ValueError(f"flat table has length {n}, expected {expected}")
    cdef int* arr = <int*>malloc(n * sizeof(int))
    if arr == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    try:
        for i in range(n):
            arr[i] = seq[i]
    except Exception:
        free(arr)
        raise
    return arr


cdef int _int_to_words(object bits, unsigned long long* words, Py_ssize_t nwords) except -1:
    cdef Py_ssize_t w
    cdef object mask = (1 << 64) - 1
    for w in range(nwords):
        words[w] = <unsigned long long>((bits >> (64 * w)) & mask)
    return 0


cdef object _words_to_int(unsigned long long* words, Py_ssize_t nwords):
    cdef object out = 0
    cdef Py_ssize_t w
    for w in range(nwords - 1, -1, -1):
        out = (out << 64) | words[w]
    return out


cdef inline bint _getbit(unsigned long long* words, int i) noexcept:
    return (words[i >> 6] >> (i & 63)) & 1


cdef inline void _setbit(unsigned long long* words, int i) noexcept:
    words[i >> 6] |= (<unsigned long long>1) << (i & 63)


cdef void _orbit_sum(unsigned long long* sub, int x, int m, int n,
                     const int* add, const int* act, Py_ssize_t nwords,
                     unsigned long long* out, int* elems, int* orbit,
                     unsigned long long* seen) noexcept:
    """out = sub + Rx for a closed sub; elems/orbit/seen are scratch."""
    cdef Py_ssize_t w
    cdef int i, cnt = 0, ocnt = 0, t, s
    for w in range(nwords):
        out[w] = sub[w]
        seen[w] = 0
    for i in range(m):
        if _getbit(sub, i):
            elems[cnt] = i
            cnt += 1
    for i in range(n):
        t = act[i * m + x]
        if not _getbit(seen, t):
            _setbit(seen, t)
            orbit[ocnt] = t
            ocnt += 1
    for i in range(ocnt):
        t = orbit[i]
        for s in range(cnt):
            _setbit(out, add[elems[s] * m + t])


def span_closure(int m, int n, add, act, int zero, gens):
    cdef Py_ssize_t nwords = (m + 63) >> 6
    cdef int* c_add = _to_ints(add, m * m)
    cdef int* c_act = NULL
    cdef unsigned long long* sub = NULL
    cdef unsigned long long* tmp = NULL
    cdef unsigned long long* seen = NULL
    cdef int* elems = NULL
    cdef int* orbit = NULL
    cdef int g
    try:
        c_act = _to_ints(act, n * m)
        sub = <unsigned long long*>calloc(nwords, 8)
        tmp = <unsigned long long*>malloc(nwords * 8)
        seen = <unsigned long long*>malloc(nwords * 8)
        elems = <int*>malloc(m * sizeof(int))
        orbit = <int*>malloc(n * sizeof(int))
        if sub == NULL or tmp == NULL or seen == NULL or elems == NULL or orbit == NULL:
            raise MemoryError()
        _setbit(sub, zero)
        for g in gens:
            if not _getbit(sub, g):
                _orbit_sum(sub, g, m, n, c_add, c_act, nwords, tmp, elems, orbit, seen)
                memcpy(sub, tmp, nwords * 8)
        return _words_to_int(sub, nwords)
    finally:
        free(c_add); free(c_act); free(sub); free(tmp); free(seen)
        free(elems); free(orbit)


def enumerate_submodules(int m, int n, add, act, int zero):
    cdef Py_ssize_t nwords = (m + 63) >> 6
    cdef int* c_add = _to_ints(add, m * m)
    cdef int* c_act = NULL
    cdef unsigned long long* sub = NULL
    cdef unsigned long long* tmp = NULL
    cdef unsigned long long* seen = NULL
    cdef int* elems = NULL
    cdef int* orbit = NULL
    cdef int x
    try:
        c_act = _to_ints(act, n * m)
        sub = <unsigned long long*>calloc(nwords, 8)
        tmp = <unsigned long long*>malloc(nwords * 8)
        seen = <unsigned long long*>malloc(nwords * 8)
        elems = <int*>malloc(m * sizeof(int))
        orbit = <int*>malloc(n * sizeof(int))
        if sub == NULL or tmp == NULL or seen == NULL or elems == NULL or orbit == NULL:
            raise MemoryError()
        _setbit(sub, zero)
        start = _words_to_int(sub, nwords)
        found = {start}
        queue = [start]
        while queue:
            current = queue.pop()
            _int_to_words(current, sub, nwords)
            for x in range(m):
                if _getbit(sub, x):
                    continue
                _orbit_sum(sub, x, m, n, c_add, c_act, nwords, tmp, elems, orbit, seen)
                bigger = _words_to_int(tmp, nwords)
                if bigger not in found:
                    found.add(bigger)
                    queue.append(bigger)
        return sorted(found)
    finally:
        free(c_add); free(c_act); free(sub); free(tmp); free(seen)
        free(elems); free(orbit)


def closure_tables(members):
    cdef Py_ssize_t k = len(members)
    cdef Py_ssize_t nwords = 1
    cdef Py_ssize_t i, j, w, t
    if k == 0:
        raise ValueError("empty family")
    top = members[k - 1]
    nwords = (max(1, int(top).bit_length()) + 63) // 64
    cdef unsigned long long* mats = <unsigned long long*>malloc(k * nwords * 8)
    cdef unsigned long long* acc = <unsigned long long*>malloc(nwords * 8)
    cdef unsigned long long* uni = <unsigned long long*>malloc(nwords * 8)
    if mats == NULL or acc == NULL or uni == NULL:
        free(mats); free(acc); free(uni)
        raise MemoryError()
    meet = [0] * (k * k)
    join = [0] * (k * k)
    cdef bint is_sup
    try:
        index = {}
        for i in range(k):
            _int_to_words(members[i], &mats[i * nwords], nwords)
            index[members[i]] = i
        for i in range(k):
            for j in range(i, k):
                for w in range(nwords):
                    acc[w] = mats[i * nwords + w] & mats[j * nwords + w]
                lo = index.get(_words_to_int(acc, nwords))
                if lo is None:
                    raise ValueError(
                        f"family not closed under intersection: members {i} and {j}")
                meet[i * k + j] = lo
                meet[j * k + i] = lo
                for w in range(nwords):
                    uni[w] = mats[i * nwords + w] | mats[j * nwords + w]
                    acc[w] = <unsigned long long>0xFFFFFFFFFFFFFFFF
                for t in range(k):
                    is_sup = True
                    for w in range(nwords):
                        if mats[t * nwords + w] & uni[w] != uni[w]:
                            is_sup = False
                            break
                    if is_sup:
                        for w in range(nwords):
                            acc[w] &= mats[t * nwords + w]
                hi = index.get(_words_to_int(acc, nwords))
                ok = hi is not None
                if ok:
                    for w in range(nwords):
                        if acc[w] & uni[w] != uni[w]:
                            ok = False
                            break
                if not ok:
                    raise ValueError(
                        f"family has no least upper bound for members {i} and {j}")
                join[i * k + j] = hi
                join[j * k + i] = hi
        return meet, join
    finally:
        free(mats); free(acc); free(uni)


def modularity_witness(int k, meet, join):
    cdef int* c_meet = _to_ints(meet, k * k)
    cdef int* c_join = NULL
    cdef int x, y, z
    try:
        c_join = _to_ints(join, k * k)
        for x in range(k):
            for y in range(k):
                for z in range(k):
                    if c_meet[x * k + z] != x:
                        continue
                    if c_join[x * k + c_meet[y * k + z]] != c_meet[c_join[x * k + y] * k + z]:
                        return (x, y, z)
        return None
    finally:
        free(c_meet); free(c_join)


def assoc_witness(int m, table):
    cdef int* c = _to_ints(table, m * m)
    cdef int i, j, k
    try:
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    if c[c[i * m + j] * m + k] != c[i * m + c[j * m + k]]:
                        return (i, j, k)
        return None
    finally:
        free(c)


def module_axiom_witness(int n, int m, radd, rmul, madd, act, int one):
    cdef int* c_radd = _to_ints(radd, n * n)
    cdef int* c_rmul = NULL
    cdef int* c_madd = NULL
    cdef int* c_act = NULL
    cdef int r, s, x, y
    try:
        c_rmul = _to_ints(rmul, n * n)
        c_madd = _to_ints(madd, m * m)
        c_act = _to_ints(act, n * m)
        for r in range(n):
            for x in range(m):
                for y in range(m):
                    if c_act[r * m + c_madd[x * m + y]] != \
                            c_madd[c_act[r * m + x] * m + c_act[r * m + y]]:
                        return ("act_add", r, x, y)
        for r in range(n):
            for s in range(n):
                for x in range(m):
                    if c_act[c_radd[r * n + s] * m + x] != \
                            c_madd[c_act[r * m + x] * m + c_act[s * m + x]]:
                        return ("add_act", r, s, x)
                    if c_act[c_rmul[r * n + s] * m + x] != \
                            c_act[r * m + c_act[s * m + x]]:
                        return ("mul_act", r, s, x)
        for x in range(m):
            if c_act[one * m + x] != x:
                return ("one_act", x, -1, -1)
        return None
    finally:
        free(c_radd); free(c_rmul); free(c_madd); free(c_act)


cdef struct DeltaTables:
    int* madd
    int* act
    int* a
    int* b
    int* c
    int* d
    int* e
    int* tup


cdef void _free_delta(DeltaTables* dt) noexcept:
    free(dt.madd); free(dt.act); free(dt.a); free(dt.b)
    free(dt.c); free(dt.d); free(dt.e); free(dt.tup)


cdef int _load_delta(DeltaTables* dt, int m, int rows, int u_arity, int z_arity,
                     madd, act, a, b, c, d, e, n_act) except -1:
    dt.madd = _to_ints(madd, m * m)
    dt.act = _to_ints(act, n_act)
    dt.a = _to_ints(a, rows)
    dt.b = _to_ints(b, rows)
    dt.c = _to_ints(c, rows * u_arity)
    dt.d = _to_ints(d, rows * u_arity)
    dt.e = _to_ints(e, rows * z_arity)
    dt.tup = <int*>calloc(max(1, u_arity + z_arity), sizeof(int))
    if dt.tup == NULL:
        raise MemoryError()
    return 0


def delta_cond1_witness(int m, int rows, int u_arity, int z_arity,
                        madd, act, a, b, c, d, e, int zero):
    cdef DeltaTables dt
    cdef int uz = u_arity + z_arity
    cdef int x, j, i, u, val, pos
    memset(&dt, 0, sizeof(DeltaTables))
    try:
        _load_delta(&dt, m, rows, u_arity, z_arity, madd, act, a, b, c, d, e, len(act))
        while True:
            for x in range(m):
                for j in range(rows):
                    val = dt.madd[dt.act[dt.a[j] * m + x] * m + dt.act[dt.b[j] * m + x]]
                    for i in range(u_arity):
                        u = dt.tup[i]
                        val = dt.madd[val * m + dt.act[dt.c[j * u_arity + i] * m + u]]
                        val = dt.madd[val * m + dt.act[dt.d[j * u_arity + i] * m + u]]
                    for i in range(z_arity):
                        val = dt.madd[val * m + dt.act[dt.e[j * z_arity + i] * m
                                                       + dt.tup[u_arity + i]]]
                    if val != zero:
                        return (x,) + tuple(dt.tup[i] for i in range(uz)) + (j,)
            pos = uz - 1
            while pos >= 0 and dt.tup[pos] == m - 1:
                dt.tup[pos] = 0
                pos -= 1
            if pos < 0:
                return None
            dt.tup[pos] += 1
    finally:
        _free_delta(&dt)


def delta_cond2_witness(int m, int rows, int u_arity, int z_arity,
                        madd, act, a, b, c, d, e, int zero):
    cdef DeltaTables dt
    cdef int uz = u_arity + z_arity
    cdef int x, y, j, i, u, val, pos
    cdef bint ok
    cdef int* base = NULL
    memset(&dt, 0, sizeof(DeltaTables))
    try:
        base = <int*>malloc(max(1, rows) * sizeof(int))
        if base == NULL:
            raise MemoryError()
        _load_delta(&dt, m, rows, u_arity, z_arity, madd, act, a, b, c, d, e, len(act))
        while True:
            for j in range(rows):
                val = zero
                for i in range(u_arity):
                    u = dt.tup[i]
                    val = dt.madd[val * m + dt.act[dt.c[j * u_arity + i] * m + u]]
                    val = dt.madd[val * m + dt.act[dt.d[j * u_arity + i] * m + u]]
                for i in range(z_arity):
                    val = dt.madd[val * m + dt.act[dt.e[j * z_arity + i] * m
                                                   + dt.tup[u_arity + i]]]
                base[j] = val
            for x in range(m):
                for y in range(m):
                    if x == y:
                        continue
                    ok = True
                    for j in range(rows):
                        val = dt.madd[dt.madd[dt.act[dt.a[j] * m + x] * m
                                              + dt.act[dt.b[j] * m + y]] * m + base[j]]
                        if val != zero:
                            ok = False
                            break
                    if ok:
                        return (x, y) + tuple(dt.tup[i] for i in range(uz))
            pos = uz - 1
            while pos >= 0 and dt.tup[pos] == m - 1:
                dt.tup[pos] = 0
                pos -= 1
            if pos < 0:
                return None
            dt.tup[pos] += 1
    finally:
        free(base)
        _free_delta(&dt)
