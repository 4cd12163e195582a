"""Pure-Python search kernels.

Three hot loops live here: exact cover (dancing links), randomized hill
climbing for triangle packings, and backtracking edge-coloring search.
The compiled extension ``psts.kernels._core`` implements the same three
kernels with the same data structures, the same tie-breaking, the same
iteration counting and the same random number generator, so results are
bit-identical whichever backend is active.  Any behavioural change here
must be mirrored there.

Conventions shared by both backends:

* exact cover: columns are edge indices; candidate rows arrive sorted;
  column choice is fewest-rows-first with ties broken by smallest column
  index; one budget unit per row trial.
* hill climb: splitmix64 stream; one budget unit per loop pass, whether
  or not the move is accepted.
* coloring search: edges are processed in the given (lexicographic)
  order; color c may be used only if colors 0..c-1 already appear among
  earlier edges; one budget unit per assignment made.

Status codes are small ints shared across backends (see the constants).
"""

from __future__ import annotations

from ..rng import MASK64, SplitMix64

# exact cover / coloring search outcomes
FOUND = 0  # solution found (search stopped there)
EXHAUSTED = 1  # complete search, no solution
BUDGET = 2  # budget ran out, nothing proved
ABORTED = 3  # visitor asked to stop

# coloring search modes
MODE_DECIDE = 0
MODE_COUNT = 1
MODE_CHECK_PAIR = 2
MODE_VISIT = 3

BACKEND = "pure"


# ---------------------------------------------------------------------------
# Kernel 1: exact cover via dancing links
# ---------------------------------------------------------------------------


def exact_cover_first(n_cols: int, rows: list[tuple[int, ...]], budget: int):
    """First exact cover of columns 0..n_cols-1 by the given rows.

    Returns (status, sorted row-index list or None, nodes).  EXHAUSTED is a
    proof that no exact cover exists.  Row trial order is: columns chosen
    fewest-rows-first (ties to the smallest column index), rows within a
    column in input order.
    """
    n_rows = len(rows)
    root = n_cols
    size = n_cols + 1 + 3 * n_rows
    # node arrays; headers are nodes 0..n_cols-1, root is n_cols
    L = [0] * size
    R = [0] * size
    U = [0] * size
    D = [0] * size
    C = [0] * size  # column header of each node
    RID = [-1] * size  # row id of each node
    S = [0] * n_cols  # column sizes

    for c in range(n_cols + 1):
        L[c] = c - 1 if c > 0 else root
        R[c] = c + 1 if c < n_cols else 0 if n_cols else root
        U[c] = c
        D[c] = c
        C[c] = c
    if n_cols:
        L[0] = root
        R[root] = 0
        L[root] = n_cols - 1

    nxt = n_cols + 1
    for rid, row in enumerate(rows):
        first = nxt
        for c in row:
            node = nxt
            nxt += 1
            C[node] = c
            RID[node] = rid
            # insert at the bottom of column c (above the header)
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

    def cover(c: int) -> None:
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

    def uncover(c: int) -> None:
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

    def choose() -> int:
        best = -1
        best_size = -1
        c = R[root]
        while c != root:
            if best < 0 or S[c] < best_size:
                best = c
                best_size = S[c]
            c = R[c]
        return best

    nodes = 0
    stack: list[tuple[int, int]] = []  # (column, node currently tried)

    if R[root] == root:
        return FOUND, [], nodes

    col = choose()
    cover(col)
    j = D[col]
    status = None
    while True:
        if j == col:
            # column exhausted at this depth; backtrack
            uncover(col)
            if not stack:
                status = EXHAUSTED
                break
            col, j = stack.pop()
            k = L[j]
            while k != j:
                uncover(C[k])
                k = L[k]
            j = D[j]
            continue
        nodes += 1
        if nodes > budget:
            # unwind fully before reporting
            uncover(col)
            while stack:
                col, j = stack.pop()
                k = L[j]
                while k != j:
                    uncover(C[k])
                    k = L[k]
                uncover(col)
            status = BUDGET
            break
        k = R[j]
        while k != j:
            cover(C[k])
            k = R[k]
        stack.append((col, j))
        if R[root] == root:
            status = FOUND
            break
        col = choose()
        cover(col)
        j = D[col]

    if status == FOUND:
        sol = sorted(RID[j] for _, j in stack)
        return FOUND, sol, nodes
    return status, None, nodes


# ---------------------------------------------------------------------------
# Kernel 2: hill climbing for triangle packings
# ---------------------------------------------------------------------------


def hill_climb_full(n: int, edges: list[tuple[int, int]], seed: int, max_iters: int):
    """Drive a triangle packing of the host to a full decomposition.

    Host vertices are 0..n-1; ``edges`` are the host edges as ordered pairs.
    One move per iteration: pick a vertex x with uncovered incident edges,
    pick two uncovered edges xy, xz at it; if yz is a host edge, insert
    {x,y,z}, evicting the at-most-one triple that covered yz.  The covered
    count never decreases.  Returns (status, triple list or None, iters).
    """
    m = len(edges)
    eid = [[-1] * n for _ in range(n)]
    for idx, (a, b) in enumerate(edges):
        eid[a][b] = idx
        eid[b][a] = idx

    cov = [-1] * m  # covering triple slot, -1 = uncovered
    cap = m // 3 + 2
    t0 = [0] * cap
    t1 = [0] * cap
    t2 = [0] * cap
    free = list(range(cap - 1, -1, -1))  # pop() yields 0, 1, 2, ...

    # uncovered ("live") incident edges per vertex, with positional index
    live = [[] for _ in range(n)]
    lpos = [[-1] * n for _ in range(n)]  # lpos[x][y] = index of y in live[x]
    lverts: list[int] = []
    vpos = [-1] * n

    def live_add(x: int, y: int) -> None:
        if len(live[x]) == 0:
            vpos[x] = len(lverts)
            lverts.append(x)
        lpos[x][y] = len(live[x])
        live[x].append(y)

    def live_remove(x: int, y: int) -> None:
        i = lpos[x][y]
        last = live[x].pop()
        if last != y:
            live[x][i] = last
            lpos[x][last] = i
        lpos[x][y] = -1
        if len(live[x]) == 0:
            j = vpos[x]
            moved = lverts.pop()
            if moved != x:
                lverts[j] = moved
                vpos[moved] = j
            vpos[x] = -1

    for a, b in edges:
        live_add(a, b)
        live_add(b, a)

    def cover_edge(a: int, b: int, slot: int) -> None:
        cov[eid[a][b]] = slot
        live_remove(a, b)
        live_remove(b, a)

    def uncover_edge(a: int, b: int) -> None:
        cov[eid[a][b]] = -1
        live_add(a, b)
        live_add(b, a)

    rng = SplitMix64(seed & MASK64)

    iters = 0
    while lverts:
        if iters >= max_iters:
            return BUDGET, None, iters
        iters += 1
        x = lverts[rng.randbelow(len(lverts))]
        deg = len(live[x])
        iy = rng.randbelow(deg)
        iz = rng.randbelow(deg - 1) if deg > 1 else iy
        if deg > 1 and iz >= iy:
            iz += 1
        if iy == iz:
            continue
        y = live[x][iy]
        z = live[x][iz]
        if eid[y][z] < 0:
            continue
        conflict = cov[eid[y][z]]
        if conflict >= 0:
            p, q, r = t0[conflict], t1[conflict], t2[conflict]
            uncover_edge(p, q)
            uncover_edge(p, r)
            uncover_edge(q, r)
            free.append(conflict)
        a, b, c = sorted((x, y, z))
        slot = free.pop()
        t0[slot], t1[slot], t2[slot] = a, b, c
        cover_edge(a, b, slot)
        cover_edge(a, c, slot)
        cover_edge(b, c, slot)

    used = sorted({s for s in cov if s >= 0})
    triples = sorted((t0[s], t1[s], t2[s]) for s in used)
    return FOUND, triples, iters


# ---------------------------------------------------------------------------
# Kernel 3: backtracking proper edge-coloring search
# ---------------------------------------------------------------------------


def coloring_search(
    n: int,
    edges: list[tuple[int, int]],
    c: int,
    mode: int,
    budget: int,
    d1: int = -1,
    d2: int = -1,
    visitor=None,
):
    """Backtracking search over proper edge colorings with palette 0..c-1.

    Color symmetry is broken canonically: along the fixed edge order, color
    k is admissible only when colors 0..k-1 already occur earlier, so each
    equivalence class of colorings under palette permutation is visited
    exactly once (by its first-use-ordered representative).

    Modes: MODE_DECIDE stops at the first proper coloring; MODE_COUNT visits
    all of them; MODE_CHECK_PAIR additionally tests at every leaf whether
    vertices d1 and d2 miss the same set of colors and stops early on a
    counterexample; MODE_VISIT calls ``visitor(tuple(colors))`` at each leaf
    and stops if it returns False.

    Returns (status, count, payload, pair_ok, nodes) where payload is the
    found coloring (DECIDE), the first counterexample (CHECK_PAIR, when
    pair_ok is False) or None.
    """
    m = len(edges)
    if c < 0:
        raise ValueError("palette size must be >= 0")
    if c > 63:
        raise ValueError("palette size capped at 63")
    mask = [0] * n
    col = [-1] * m
    ucnt = [0] * (m + 1)
    count = 0
    nodes = 0
    pair_ok = True
    payload = None

    if m == 0:
        count = 1
        if mode == MODE_DECIDE:
            return FOUND, count, (), pair_ok, nodes
        if mode == MODE_VISIT and visitor is not None:
            if visitor(()) is False:
                return ABORTED, count, None, pair_ok, nodes
        if mode == MODE_CHECK_PAIR:
            pair_ok = True
        return EXHAUSTED, count, payload, pair_ok, nodes

    k = 0
    while True:
        if k == m:
            count += 1
            if mode == MODE_DECIDE:
                return FOUND, count, tuple(col), pair_ok, nodes
            if mode == MODE_CHECK_PAIR:
                if mask[d1] != mask[d2]:
                    pair_ok = False
                    payload = tuple(col)
                    return FOUND, count, payload, pair_ok, nodes
            elif mode == MODE_VISIT and visitor is not None:
                if visitor(tuple(col)) is False:
                    return ABORTED, count, None, pair_ok, nodes
            # force backtrack from the leaf
            k -= 1
            u, v = edges[k]
            bit = 1 << col[k]
            mask[u] ^= bit
            mask[v] ^= bit
            continue
        u, v = edges[k]
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
            u, v = edges[k]
            bit = 1 << col[k]
            mask[u] ^= bit
            mask[v] ^= bit
            continue
        nodes += 1
        if nodes > budget:
            return BUDGET, count, payload, pair_ok, nodes
        col[k] = nxt
        bit = 1 << nxt
        mask[u] |= bit
        mask[v] |= bit
        ucnt[k + 1] = ucnt[k] if nxt < ucnt[k] else nxt + 1
        k += 1
