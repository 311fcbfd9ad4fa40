# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled matching kernels; same algorithm and visiting order as ``_pykernels``."""

from libc.stdint cimport uint64_t
from libc.string cimport memset

cdef extern from * nogil:
    int __builtin_ctzll(unsigned long long)
    int __builtin_popcountll(unsigned long long)

cdef enum:
    MAXN = 64


cdef struct Blossom:
    int n
    uint64_t alive
    uint64_t adj[MAXN]
    int match[MAXN]
    int p[MAXN]
    int base[MAXN]
    int queue[MAXN]
    bint used[MAXN]
    bint blossom[MAXN]
    bint seen[MAXN]


cdef inline uint64_t bit(int v) noexcept nogil:
    return (<uint64_t>1) << v


cdef uint64_t _load(Blossom* b, list adj, object alive) except? 0:
    cdef int n = len(adj)
    cdef int v
    if n > MAXN:
        raise ValueError("compiled kernels support at most 64 vertices")
    b.n = n
    b.alive = <uint64_t>alive
    for v in range(n):
        b.adj[v] = (<uint64_t>adj[v]) & b.alive
        b.match[v] = -1
    return 1


cdef void _greedy(Blossom* b) noexcept nogil:
    cdef uint64_t rest = b.alive, m
    cdef int v, u
    while rest:
        v = __builtin_ctzll(rest)
        rest &= rest - 1
        if b.match[v] != -1:
            continue
        m = b.adj[v]
        while m:
            u = __builtin_ctzll(m)
            m &= m - 1
            if b.match[u] == -1:
                b.match[v] = u
                b.match[u] = v
                break


cdef int _lca(Blossom* b, int a, int c) noexcept nogil:
    memset(b.seen, 0, sizeof(b.seen))
    while True:
        a = b.base[a]
        b.seen[a] = True
        if b.match[a] == -1:
            break
        a = b.p[b.match[a]]
    while True:
        c = b.base[c]
        if b.seen[c]:
            return c
        c = b.p[b.match[c]]


cdef void _mark(Blossom* b, int v, int bs, int child) noexcept nogil:
    while b.base[v] != bs:
        b.blossom[b.base[v]] = True
        b.blossom[b.base[b.match[v]]] = True
        b.p[v] = child
        child = b.match[v]
        v = b.p[b.match[v]]


cdef int _find_path(Blossom* b, int root) noexcept nogil:
    cdef int n = b.n, i, v, to, cur, head = 0, tail = 0
    cdef uint64_t m
    for i in range(n):
        b.p[i] = -1
        b.base[i] = i
        b.used[i] = False
    b.used[root] = True
    b.queue[tail] = root
    tail += 1
    while head < tail:
        v = b.queue[head]
        head += 1
        m = b.adj[v]
        while m:
            to = __builtin_ctzll(m)
            m &= m - 1
            if b.base[v] == b.base[to] or b.match[v] == to:
                continue
            if to == root or (b.match[to] != -1 and b.p[b.match[to]] != -1):
                cur = _lca(b, v, to)
                memset(b.blossom, 0, sizeof(b.blossom))
                _mark(b, v, cur, to)
                _mark(b, to, cur, v)
                for i in range(n):
                    if b.blossom[b.base[i]]:
                        b.base[i] = cur
                        if not b.used[i]:
                            b.used[i] = True
                            b.queue[tail] = i
                            tail += 1
            elif b.p[to] == -1:
                b.p[to] = v
                if b.match[to] == -1:
                    return to
                b.used[b.match[to]] = True
                b.queue[tail] = b.match[to]
                tail += 1
    return -1


cdef void _augment(Blossom* b, int v) noexcept nogil:
    cdef int pv, ppv
    while v != -1:
        pv = b.p[v]
        ppv = b.match[pv]
        b.match[v] = pv
        b.match[pv] = v
        v = ppv


cdef bint _run(Blossom* b, bint stop_on_exposed) noexcept nogil:
    cdef uint64_t rest = b.alive
    cdef int v, end
    _greedy(b)
    while rest:
        v = __builtin_ctzll(rest)
        rest &= rest - 1
        if b.match[v] != -1:
            continue
        end = _find_path(b, v)
        if end == -1:
            if stop_on_exposed:
                return False
            continue
        _augment(b, end)
    rest = b.alive
    while rest:
        v = __builtin_ctzll(rest)
        rest &= rest - 1
        if b.match[v] == -1:
            return False
    return True


cdef bint _has_pm(Blossom* b, uint64_t alive) noexcept nogil:
    """Perfect-matching test on ``b.adj`` restricted to ``alive`` (adjacency left intact)."""
    cdef uint64_t saved[MAXN]
    cdef int v
    cdef bint ok
    if __builtin_popcountll(alive) % 2:
        return False
    for v in range(b.n):
        saved[v] = b.adj[v]
        b.adj[v] &= alive
        b.match[v] = -1
    b.alive = alive
    ok = _run(b, True)
    for v in range(b.n):
        b.adj[v] = saved[v]
    return ok


def maximum_matching(list adj, alive):
    cdef Blossom b
    _load(&b, adj, alive)
    _run(&b, False)
    return [b.match[v] for v in range(b.n)]


def has_perfect_matching(list adj, alive):
    cdef Blossom b
    _load(&b, adj, alive)
    if __builtin_popcountll(b.alive) % 2:
        return False
    return bool(_run(&b, True))


def allowed_edges(list adj, alive, list edges):
    cdef Blossom b
    cdef int u, v
    cdef uint64_t live
    _load(&b, adj, (1 << len(adj)) - 1 if len(adj) else 0)
    live = <uint64_t>alive
    out = []
    for u, v in edges:
        if not (live & bit(u)) or not (live & bit(v)):
            out.append(False)
        else:
            out.append(bool(_has_pm(&b, live & ~bit(u) & ~bit(v))))
    return out


def dependence_rows(list adj, list edges):
    cdef Blossom b
    cdef int n = len(adj), i, j, a, c, d, m = len(edges)
    cdef uint64_t full, live, rest
    cdef bint perfect
    cdef int mate[MAXN]
    cdef int index[MAXN][MAXN]
    _load(&b, adj, ((<uint64_t>1) << n) - 1 if n < 64 else ~(<uint64_t>0))
    full = b.alive
    for i in range(m):
        a, c = edges[i]
        index[a][c] = i
    rows = []
    for i in range(m):
        a, c = edges[i]
        live = full & ~bit(a) & ~bit(c)
        for j in range(n):
            b.adj[j] = (<uint64_t>adj[j]) & live
            b.match[j] = -1
        b.alive = live
        perfect = _run(&b, False)
        for j in range(n):
            mate[j] = b.match[j]
            b.adj[j] = (<uint64_t>adj[j]) & full
        if not perfect:
            rows.append([j for j in range(m) if j != i])
            continue
        row = []
        rest = live
        while rest:
            c = __builtin_ctzll(rest)
            rest &= rest - 1
            d = mate[c]
            if d < c:
                continue
            b.adj[c] &= ~bit(d)
            b.adj[d] &= ~bit(c)
            if not _has_pm(&b, live):
                row.append(index[c][d])
            b.adj[c] |= bit(d)
            b.adj[d] |= bit(c)
        rows.append(sorted(row))
    return rows


def disconnecting_triples(list adj, list edges):
    cdef int n = len(adj), m = len(edges), i, j, k, v
    cdef uint64_t a[MAXN]
    cdef uint64_t full, comp, frontier, new
    cdef int eu[2048]
    cdef int ev[2048]
    if n > MAXN:
        raise ValueError("compiled kernels support at most 64 vertices")
    if m > 2048:
        raise ValueError("too many edges")
    full = ((<uint64_t>1) << n) - 1 if n < 64 else ~(<uint64_t>0)
    for v in range(n):
        a[v] = <uint64_t>adj[v]
    for i in range(m):
        e = edges[i]
        eu[i] = e[0]
        ev[i] = e[1]
    out = []
    for i in range(m):
        a[eu[i]] &= ~bit(ev[i]); a[ev[i]] &= ~bit(eu[i])
        for j in range(i + 1, m):
            a[eu[j]] &= ~bit(ev[j]); a[ev[j]] &= ~bit(eu[j])
            for k in range(j + 1, m):
                a[eu[k]] &= ~bit(ev[k]); a[ev[k]] &= ~bit(eu[k])
                comp = 1
                frontier = 1
                while frontier:
                    v = __builtin_ctzll(frontier)
                    frontier &= frontier - 1
                    new = a[v] & ~comp
                    comp |= new
                    frontier |= new
                if comp != full:
                    out.append((i, j, k))
                a[eu[k]] |= bit(ev[k]); a[ev[k]] |= bit(eu[k])
            a[eu[j]] |= bit(ev[j]); a[ev[j]] |= bit(eu[j])
        a[eu[i]] |= bit(ev[i]); a[ev[i]] |= bit(eu[i])
    return out
