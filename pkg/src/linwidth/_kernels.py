"""Hot numeric kernels: full-table f evaluation, axiom scans, subset DP.

Every kernel exists twice: a numba ``@njit`` version and a pure-numpy
fallback.  The active backend is chosen at import time.  Setting the
environment variable ``LINWIDTH_NO_NUMBA`` to a non-empty value (other
than ``0``) forces the numpy path; the numpy path is also used when
numba is not installed.  ``benchmarks/bench_kernels.py`` compares the
two.

All kernels take an ``f`` table: an int64 array of length 2^n whose
entry at index ``mask`` is the connectivity value of that subset.
Tables are only materialised for n <= 20, so masks always fit int64.
"""

import os

import numpy as np

_INF = np.iinfo(np.int64).max

_disable = os.environ.get("LINWIDTH_NO_NUMBA", "")
if _disable and _disable != "0":
    _HAVE_NUMBA = False
else:
    try:
        from numba import njit

        _HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - depends on environment
        _HAVE_NUMBA = False


def backend_name() -> str:
    return "numba" if _HAVE_NUMBA else "numpy"


def popcounts(size: int) -> np.ndarray:
    """Popcount of every mask in [0, size); size must be a power of two."""
    n = size.bit_length() - 1
    a = np.arange(size, dtype=np.int64)
    out = np.zeros(size, dtype=np.int64)
    for i in range(n):
        out += (a >> i) & 1
    return out


# -- f tables from graph backends -------------------------------------------

def _np_edge_boundary_table(inc: np.ndarray, size: int) -> np.ndarray:
    a = np.arange(size, dtype=np.int64)
    out = np.zeros(size, dtype=np.int64)
    for inc_v in inc:
        if inc_v == 0:
            continue
        t = a & inc_v
        out += (t != 0) & (t != inc_v)
    return out


def _np_vertex_cut_table(us: np.ndarray, vs: np.ndarray, ws: np.ndarray,
                         size: int) -> np.ndarray:
    a = np.arange(size, dtype=np.int64)
    out = np.zeros(size, dtype=np.int64)
    for u, v, w in zip(us, vs, ws):
        out += w * (((a >> int(u)) ^ (a >> int(v))) & 1)
    return out


# -- validation scans (first violation only; -1 means clean) ----------------

def _np_symmetry_violation(f: np.ndarray) -> int:
    bad = np.nonzero(f != f[::-1])[0]
    return int(bad[0]) if bad.size else -1


def _np_submodularity_violation(f: np.ndarray):
    size = f.shape[0]
    b = np.arange(size, dtype=np.int64)
    for a in range(size):
        bad = np.nonzero(f[a] + f > f[a & b] + f[a | b])[0]
        if bad.size:
            return a, int(bad[0])
    return -1, -1


def _np_posimodularity_violation(f: np.ndarray):
    size = f.shape[0]
    b = np.arange(size, dtype=np.int64)
    for a in range(size):
        bad = np.nonzero(f[a] + f > f[a & ~b] + f[b & ~a])[0]
        if bad.size:
            return a, int(bad[0])
    return -1, -1


# -- collect-all variants (numpy only; used by the verbose validation path) --

def symmetry_violations_all(f: np.ndarray) -> np.ndarray:
    return np.nonzero(f != f[::-1])[0]


def submodularity_violations_all(f: np.ndarray, cap: int | None = None):
    size = f.shape[0]
    b = np.arange(size, dtype=np.int64)
    pairs = []
    for a in range(size):
        for bb in np.nonzero(f[a] + f > f[a & b] + f[a | b])[0]:
            pairs.append((a, int(bb)))
            if cap is not None and len(pairs) >= cap:
                return pairs
    return pairs


def posimodularity_violations_all(f: np.ndarray, cap: int | None = None):
    size = f.shape[0]
    b = np.arange(size, dtype=np.int64)
    pairs = []
    for a in range(size):
        for bb in np.nonzero(f[a] + f > f[a & ~b] + f[b & ~a])[0]:
            pairs.append((a, int(bb)))
            if cap is not None and len(pairs) >= cap:
                return pairs
    return pairs


# -- subset DP ---------------------------------------------------------------
#
# suffix_dp: h[S] = best achievable maximum over the future proper prefixes
# of an ordering whose current prefix set is S.  h[full] = 0; the full set
# itself never contributes (its f value is not a proper-prefix term).
# The minimum width over all orderings, counting prefix terms only, is h[0].
#
# prefix_dp: g[S] = min over orderings of S of the maximum f value over all
# nonempty prefixes including S itself; g[0] = 0.

def _np_suffix_dp(f: np.ndarray) -> np.ndarray:
    size = f.shape[0]
    n = size.bit_length() - 1
    full = size - 1
    h = np.zeros(size, dtype=np.int64)
    if n == 0:
        return h
    pc = popcounts(size)
    for c in range(n - 1, -1, -1):
        s = np.nonzero(pc == c)[0]
        best = np.full(s.shape, _INF, dtype=np.int64)
        for e in range(n):
            bit = 1 << e
            m = (s & bit) == 0
            t = s[m] | bit
            cand = np.where(t == full, h[t], np.maximum(f[t], h[t]))
            best[m] = np.minimum(best[m], cand)
        h[s] = best
    return h


def _np_prefix_dp(f: np.ndarray) -> np.ndarray:
    size = f.shape[0]
    n = size.bit_length() - 1
    g = np.zeros(size, dtype=np.int64)
    if n == 0:
        return g
    pc = popcounts(size)
    for c in range(1, n + 1):
        s = np.nonzero(pc == c)[0]
        best = np.full(s.shape, _INF, dtype=np.int64)
        for e in range(n):
            bit = 1 << e
            m = (s & bit) != 0
            best[m] = np.minimum(best[m], g[s[m] ^ bit])
        g[s] = np.maximum(f[s], best)
    return g


if _HAVE_NUMBA:

    @njit(cache=True)
    def _nb_edge_boundary_table(inc, size):  # pragma: no cover - jit
        out = np.zeros(size, dtype=np.int64)
        for a in range(size):
            cnt = 0
            for i in range(inc.shape[0]):
                t = inc[i] & a
                if t != 0 and t != inc[i]:
                    cnt += 1
            out[a] = cnt
        return out

    @njit(cache=True)
    def _nb_vertex_cut_table(us, vs, ws, size):  # pragma: no cover - jit
        out = np.zeros(size, dtype=np.int64)
        for a in range(size):
            s = 0
            for i in range(us.shape[0]):
                if ((a >> us[i]) ^ (a >> vs[i])) & 1:
                    s += ws[i]
            out[a] = s
        return out

    @njit(cache=True)
    def _nb_symmetry_violation(f):  # pragma: no cover - jit
        size = f.shape[0]
        full = size - 1
        for a in range(size):
            if f[a] != f[full ^ a]:
                return a
        return -1

    @njit(cache=True)
    def _nb_submodularity_violation(f):  # pragma: no cover - jit
        size = f.shape[0]
        for a in range(size):
            fa = f[a]
            for b in range(size):
                if fa + f[b] < f[a & b] + f[a | b]:
                    return a, b
        return -1, -1

    @njit(cache=True)
    def _nb_posimodularity_violation(f):  # pragma: no cover - jit
        size = f.shape[0]
        for a in range(size):
            fa = f[a]
            for b in range(size):
                if fa + f[b] < f[a & ~b] + f[b & ~a]:
                    return a, b
        return -1, -1

    @njit(cache=True)
    def _nb_suffix_dp(f):  # pragma: no cover - jit
        size = f.shape[0]
        full = size - 1
        n = 0
        while (1 << n) < size:
            n += 1
        h = np.zeros(size, dtype=np.int64)
        for s in range(size - 2, -1, -1):
            best = _INF
            for e in range(n):
                bit = 1 << e
                if s & bit:
                    continue
                t = s | bit
                v = h[t]
                if t != full and f[t] > v:
                    v = f[t]
                if v < best:
                    best = v
            h[s] = best
        return h

    @njit(cache=True)
    def _nb_prefix_dp(f):  # pragma: no cover - jit
        size = f.shape[0]
        n = 0
        while (1 << n) < size:
            n += 1
        g = np.zeros(size, dtype=np.int64)
        for s in range(1, size):
            best = _INF
            for e in range(n):
                bit = 1 << e
                if s & bit:
                    v = g[s ^ bit]
                    if v < best:
                        best = v
            g[s] = best if f[s] < best else f[s]
        return g

    edge_boundary_table = _nb_edge_boundary_table
    vertex_cut_table = _nb_vertex_cut_table
    symmetry_violation = _nb_symmetry_violation
    submodularity_violation = _nb_submodularity_violation
    posimodularity_violation = _nb_posimodularity_violation
    suffix_dp = _nb_suffix_dp
    prefix_dp = _nb_prefix_dp
else:
    edge_boundary_table = _np_edge_boundary_table
    vertex_cut_table = _np_vertex_cut_table
    symmetry_violation = _np_symmetry_violation
    submodularity_violation = _np_submodularity_violation
    posimodularity_violation = _np_posimodularity_violation
    suffix_dp = _np_suffix_dp
    prefix_dp = _np_prefix_dp
