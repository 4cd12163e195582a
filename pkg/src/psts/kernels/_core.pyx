# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled search kernels.

Line-for-line mirror of psts.kernels.pure: the same dancing-links exact
cover, the same hill-climbing move structure, the same edge-coloring
backtracking, and the same splitmix64 generator.  Tie-breaking, iteration
counting and RNG call sequences are kept identical so that a witness found
by either backend is byte-identical to the other's.  Any behavioural
change in pure.py must be mirrored here.
"""

import numpy as np

cimport numpy as cnp

FOUND = 0
EXHAUSTED = 1
BUDGET = 2
ABORTED = 3

MODE_DECIDE = 0
MODE_COUNT = 1
MODE_CHECK_PAIR = 2
MODE_VISIT = 3

BACKEND = "compiled"

ctypedef unsigned long long u64
ctypedef long long i64

cdef u64 _GAMMA = 0x9E3779B97F4A7C15ULL
cdef u64 _MIX1 = 0xBF58476D1CE4E5B9ULL
cdef u64 _MIX2 = 0x94D049BB133111EBULL


cdef inline u64 _mix64(u64 z) nogil:
    z = (z ^ (z >> 30)) * _MIX1
    z = (z ^ (z >> 27)) * _MIX2
    return z ^ (z >> 31)


cdef inline u64 _next_u64(u64 *state) nogil:
    state[0] = state[0] + _GAMMA
    return _mix64(state[0])


cdef inline u64 _randbelow(u64 *state, u64 n) nogil:
    return _next_u64(state) % n


# ---------------------------------------------------------------------------
# Kernel 1: exact cover via dancing links
# ---------------------------------------------------------------------------


def exact_cover_first(int n_cols, rows, i64 budget):
    """See psts.kernels.pure.exact_cover_first."""
    cdef int n_rows = len(rows)
    cdef int root = n_cols
    cdef int size = n_cols + 1 + 3 * n_rows
    cdef cnp.ndarray[cnp.int32_t] La = np.zeros(size, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t] Ra = np.zeros(size, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t] Ua = np.zeros(size, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t] Da = np.zeros(size, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t] Ca = np.zeros(size, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t] RIDa = np.full(size, -1, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t] Sa = np.zeros(max(n_cols, 1), dtype=np.int32)
    cdef int[:] L = La
    cdef int[:] R = Ra
    cdef int[:] U = Ua
    cdef int[:] D = Da
    cdef int[:] C = Ca
    cdef int[:] RID = RIDa
    cdef int[:] S = Sa

    cdef int c, node, first, rid
    for c in range(n_cols + 1):
        L[c] = c - 1 if c > 0 else root
        if c < n_cols:
            R[c] = c + 1
        else:
            R[c] = 0 if n_cols else root
        U[c] = c
        D[c] = c
        C[c] = c
    if n_cols:
        L[0] = root
        R[root] = 0
        L[root] = n_cols - 1

    cdef int nxt = n_cols + 1
    for rid in range(n_rows):
        row = rows[rid]
        first = nxt
        for cc in row:
            c = cc
            node = nxt
            nxt += 1
            C[node] = c
            RID[node] = rid
            U[node] = U[c]
            D[node] = c
            D[U[c]] = node
            U[c] = node
            S[c] += 1
            if node == first:
                L[node] = node
                R[node] = node
            else:
                L[node] = L[first]
                R[node] = first
                R[L[first]] = node
                L[first] = node

    cdef cnp.ndarray[cnp.int32_t] col_stack_a = np.zeros(n_rows + 2, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t] node_stack_a = np.zeros(n_rows + 2, dtype=np.int32)
    cdef int[:] col_stack = col_stack_a
    cdef int[:] node_stack = node_stack_a
    cdef int depth = 0

    cdef i64 nodes = 0
    cdef int status = -1
    cdef int col, j, k, i, jj, best, best_size

    if R[root] == root:
        return FOUND, [], nodes

    # choose()
    best = -1
    best_size = -1
    c = R[root]
    while c != root:
        if best < 0 or S[c] < best_size:
            best = c
            best_size = S[c]
        c = R[c]
    col = best
    # cover(col)
    _cover(col, L, R, U, D, C, S)
    j = D[col]

    while True:
        if j == col:
            _uncover(col, L, R, U, D, C, S)
            if depth == 0:
                status = EXHAUSTED
                break
            depth -= 1
            col = col_stack[depth]
            j = node_stack[depth]
            k = L[j]
            while k != j:
                _uncover(C[k], L, R, U, D, C, S)
                k = L[k]
            j = D[j]
            continue
        nodes += 1
        if nodes > budget:
            _uncover(col, L, R, U, D, C, S)
            while depth > 0:
                depth -= 1
                col = col_stack[depth]
                j = node_stack[depth]
                k = L[j]
                while k != j:
                    _uncover(C[k], L, R, U, D, C, S)
                    k = L[k]
                _uncover(col, L, R, U, D, C, S)
            status = BUDGET
            break
        k = R[j]
        while k != j:
            _cover(C[k], L, R, U, D, C, S)
            k = R[k]
        col_stack[depth] = col
        node_stack[depth] = j
        depth += 1
        if R[root] == root:
            status = FOUND
            break
        best = -1
        best_size = -1
        c = R[root]
        while c != root:
            if best < 0 or S[c] < best_size:
                best = c
                best_size = S[c]
            c = R[c]
        col = best
        _cover(col, L, R, U, D, C, S)
        j = D[col]

    if status == FOUND:
        sol = sorted(RID[node_stack[i]] for i in range(depth))
        return FOUND, sol, nodes
    return status, None, nodes


cdef inline void _cover(int c, int[:] L, int[:] R, int[:] U, int[:] D,
                        int[:] C, int[:] S) nogil:
    cdef int i, j
    R[L[c]] = R[c]
    L[R[c]] = L[c]
    i = D[c]
    while i != c:
        j = R[i]
        while j != i:
            D[U[j]] = D[j]
            U[D[j]] = U[j]
            S[C[j]] -= 1
            j = R[j]
        i = D[i]


cdef inline void _uncover(int c, int[:] L, int[:] R, int[:] U, int[:] D,
                          int[:] C, int[:] S) nogil:
    cdef int i, j
    i = U[c]
    while i != c:
        j = L[i]
        while j != i:
            S[C[j]] += 1
            D[U[j]] = j
            U[D[j]] = j
            j = L[j]
        i = U[i]
    R[L[c]] = c
    L[R[c]] = c


# ---------------------------------------------------------------------------
# Kernel 2: hill climbing for triangle packings
# ---------------------------------------------------------------------------


def hill_climb_full(int n, edges, u64 seed, i64 max_iters):
    """See psts.kernels.pure.hill_climb_full."""
    cdef int m = len(edges)
    cdef cnp.ndarray[cnp.int32_t, ndim=2] eid_a = np.full((n, n), -1, dtype=np.int32)
    cdef int[:, :] eid = eid_a
    cdef cnp.ndarray[cnp.int32_t] eu_a = np.zeros(max(m, 1), dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t] ev_a = np.zeros(max(m, 1), dtype=np.int32)
    cdef int[:] eu = eu_a
    cdef int[:] ev = ev_a
    cdef int idx, a, b
    for idx in range(m):
        a = edges[idx][0]
        b = edges[idx][1]
        eu[idx] = a
        ev[idx] = b
        eid[a, b] = idx
        eid[b, a] = idx

    cdef cnp.ndarray[cnp.int32_t] cov_a = np.full(max(m, 1), -1, dtype=np.int32)
    cdef int[:] cov = cov_a
    cdef int cap = m // 3 + 2
    cdef cnp.ndarray[cnp.int32_t] t0_a = np.zeros(cap, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t] t1_a = np.zeros(cap, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t] t2_a = np.zeros(cap, dtype=np.int32)
    cdef int[:] t0 = t0_a
    cdef int[:] t1 = t1_a
    cdef int[:] t2 = t2_a
    # free-slot stack; pop() yields 0, 1, 2, ... like the pure backend
    cdef cnp.ndarray[cnp.int32_t] free_a = np.zeros(cap, dtype=np.int32)
    cdef int[:] free = free_a
    cdef int free_top = cap
    cdef int s
    for s in range(cap):
        free[s] = cap - 1 - s

    # live structure: live[x] is a swap-removal array of live neighbors
    cdef cnp.ndarray[cnp.int32_t, ndim=2] live_a = np.zeros((n, max(n, 1)), dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t] live_len_a = np.zeros(max(n, 1), dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=2] lpos_a = np.full((n, max(n, 1)), -1, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t] lverts_a = np.zeros(max(n, 1), dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t] vpos_a = np.full(max(n, 1), -1, dtype=np.int32)
    cdef int[:, :] live = live_a
    cdef int[:] live_len = live_len_a
    cdef int[:, :] lpos = lpos_a
    cdef int[:] lverts = lverts_a
    cdef int[:] vpos = vpos_a
    cdef int n_lverts = 0

    cdef int x, y, z, p, q, r, conflict, slot, deg, iy, iz, e_yz
    cdef int i, last, moved, jj

    for idx in range(m):
        a = eu[idx]
        b = ev[idx]
        # live_add(a, b)
        if live_len[a] == 0:
            vpos[a] = n_lverts
            lverts[n_lverts] = a
            n_lverts += 1
        lpos[a, b] = live_len[a]
        live[a, live_len[a]] = b
        live_len[a] += 1
        # live_add(b, a)
        if live_len[b] == 0:
            vpos[b] = n_lverts
            lverts[n_lverts] = b
            n_lverts += 1
        lpos[b, a] = live_len[b]
        live[b, live_len[b]] = a
        live_len[b] += 1

    cdef u64 state = seed
    cdef i64 iters = 0
    cdef int u_, v_, t, w

    while n_lverts > 0:
        if iters >= max_iters:
            return BUDGET, None, iters
        iters += 1
        x = lverts[<int>_randbelow(&state, <u64>n_lverts)]
        deg = live_len[x]
        iy = <int>_randbelow(&state, <u64>deg)
        if deg > 1:
            iz = <int>_randbelow(&state, <u64>(deg - 1))
            if iz >= iy:
                iz += 1
        else:
            iz = iy
        if iy == iz:
            continue
        y = live[x, iy]
        z = live[x, iz]
        e_yz = eid[y, z]
        if e_yz < 0:
            continue
        conflict = cov[e_yz]
        if conflict >= 0:
            p = t0[conflict]
            q = t1[conflict]
            r = t2[conflict]
            # uncover (p,q), (p,r), (q,r)
            for jj in range(3):
                if jj == 0:
                    u_ = p; v_ = q
                elif jj == 1:
                    u_ = p; v_ = r
                else:
                    u_ = q; v_ = r
                cov[eid[u_, v_]] = -1
                # live_add(u_, v_); live_add(v_, u_)
                if live_len[u_] == 0:
                    vpos[u_] = n_lverts
                    lverts[n_lverts] = u_
                    n_lverts += 1
                lpos[u_, v_] = live_len[u_]
                live[u_, live_len[u_]] = v_
                live_len[u_] += 1
                if live_len[v_] == 0:
                    vpos[v_] = n_lverts
                    lverts[n_lverts] = v_
                    n_lverts += 1
                lpos[v_, u_] = live_len[v_]
                live[v_, live_len[v_]] = u_
                live_len[v_] += 1
            free[free_top] = conflict
            free_top += 1
        # sorted (x, y, z) -> (a, b, c2)
        p = x; q = y; r = z
        if p > q: t = p; p = q; q = t
        if q > r: t = q; q = r; r = t
        if p > q: t = p; p = q; q = t
        free_top -= 1
        slot = free[free_top]
        t0[slot] = p
        t1[slot] = q
        t2[slot] = r
        # cover (p,q), (p,r), (q,r)
        for jj in range(3):
            if jj == 0:
                u_ = p; v_ = q
            elif jj == 1:
                u_ = p; v_ = r
            else:
                u_ = q; v_ = r
            cov[eid[u_, v_]] = slot
            # live_remove(u_, v_)
            i = lpos[u_, v_]
            live_len[u_] -= 1
            last = live[u_, live_len[u_]]
            if last != v_:
                live[u_, i] = last
                lpos[u_, last] = i
            lpos[u_, v_] = -1
            if live_len[u_] == 0:
                n_lverts -= 1
                moved = lverts[n_lverts]
                if moved != u_:
                    lverts[vpos[u_]] = moved
                    vpos[moved] = vpos[u_]
                vpos[u_] = -1
            # live_remove(v_, u_)
            i = lpos[v_, u_]
            live_len[v_] -= 1
            last = live[v_, live_len[v_]]
            if last != u_:
                live[v_, i] = last
                lpos[v_, last] = i
            lpos[v_, u_] = -1
            if live_len[v_] == 0:
                n_lverts -= 1
                moved = lverts[n_lverts]
                if moved != v_:
                    lverts[vpos[v_]] = moved
                    vpos[moved] = vpos[v_]
                vpos[v_] = -1

    used = sorted({cov[idx] for idx in range(m) if cov[idx] >= 0})
    triples = sorted((t0[s], t1[s], t2[s]) for s in used)
    return FOUND, triples, iters


# ---------------------------------------------------------------------------
# Kernel 3: backtracking proper edge-coloring search
# ---------------------------------------------------------------------------


def coloring_search(int n, edges, int c, int mode, i64 budget,
                    int d1=-1, int d2=-1, visitor=None):
    """See psts.kernels.pure.coloring_search."""
    cdef int m = len(edges)
    if c < 0:
        raise ValueError("palette size must be >= 0")
    if c > 63:
        raise ValueError("palette size capped at 63")
    cdef cnp.ndarray[cnp.uint64_t] mask_a = np.zeros(max(n, 1), dtype=np.uint64)
    cdef u64[:] mask = mask_a
    cdef cnp.ndarray[cnp.int32_t] col_a = np.full(max(m, 1), -1, dtype=np.int32)
    cdef int[:] col = col_a
    cdef cnp.ndarray[cnp.int32_t] ucnt_a = np.zeros(m + 1, dtype=np.int32)
    cdef int[:] ucnt = ucnt_a
    cdef cnp.ndarray[cnp.int32_t] eu_a = np.zeros(max(m, 1), dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t] ev_a = np.zeros(max(m, 1), dtype=np.int32)
    cdef int[:] eu = eu_a
    cdef int[:] ev = ev_a
    cdef int idx
    for idx in range(m):
        eu[idx] = edges[idx][0]
        ev[idx] = edges[idx][1]

    cdef i64 count = 0
    cdef i64 nodes = 0
    cdef bint pair_ok = True
    payload = None

    if m == 0:
        count = 1
        if mode == MODE_DECIDE:
            return FOUND, count, (), pair_ok, nodes
        if mode == MODE_VISIT and visitor is not None:
            if visitor(()) is False:
                return ABORTED, count, None, pair_ok, nodes
        return EXHAUSTED, count, payload, pair_ok, nodes

    cdef int k = 0
    cdef int u, v, limit, nxt, cand
    cdef u64 used, bit

    while True:
        if k == m:
            count += 1
            if mode == MODE_DECIDE:
                return FOUND, count, tuple(col_a.tolist()), pair_ok, nodes
            if mode == MODE_CHECK_PAIR:
                if mask[d1] != mask[d2]:
                    pair_ok = False
                    payload = tuple(col_a.tolist())
                    return FOUND, count, payload, pair_ok, nodes
            elif mode == MODE_VISIT and visitor is not None:
                if visitor(tuple(col_a.tolist())) is False:
                    return ABORTED, count, None, pair_ok, nodes
            k -= 1
            u = eu[k]
            v = ev[k]
            bit = (<u64>1) << col[k]
            mask[u] ^= bit
            mask[v] ^= bit
            continue
        u = eu[k]
        v = ev[k]
        limit = ucnt[k] if ucnt[k] < c - 1 else c - 1
        used = mask[u] | mask[v]
        nxt = -1
        for cand in range(col[k] + 1, limit + 1):
            if not (used >> cand) & 1:
                nxt = cand
                break
        if nxt < 0:
            col[k] = -1
            k -= 1
            if k < 0:
                return EXHAUSTED, count, payload, pair_ok, nodes
            u = eu[k]
            v = ev[k]
            bit = (<u64>1) << col[k]
            mask[u] ^= bit
            mask[v] ^= bit
            continue
        nodes += 1
        if nodes > budget:
            return BUDGET, count, payload, pair_ok, nodes
        col[k] = nxt
        bit = (<u64>1) << nxt
        mask[u] |= bit
        mask[v] |= bit
        ucnt[k + 1] = ucnt[k] if nxt < ucnt[k] else nxt + 1
        k += 1
