"""Exhaustive search for obstruction structures of a given order.

The membership axioms of every searchable structure quantify over
complement pairs of the k-efficient universe (exactly one side for
tangles, at least one side for single ultrafilters, one or both for the
matroid-like families depending on the M4 mode), so candidates are
enumerated by orienting those pairs in canonical order, with constraint
propagation pruning dead branches:

* tangles: the union axiom reduces to pairwise member conflicts, and the
  exactly-one rule turns every exclusion into a forced inclusion;
* single ultrafilters: the deletion/superset closure of every placed
  member is forced immediately (a closure reaching the empty set kills
  the member outright);
* matroid-like kinds: the empty set and, for prime variants, every
  qualified singleton are pre-placed; downward closure propagates for
  matroids; exchange/accessibility demands prune a branch once all their
  possible witnesses are excluded, and survivors are still re-judged by
  the full checker at the leaves.

Every returned certificate is re-verified through the corresponding
checker before being returned; the result list is sorted canonically
(families compared as sorted tuples of member masks).  An empty result
with no limit cut means no structure of that order exists.
"""

from dataclasses import dataclass

from .bitset import iter_bits, iter_submasks
from .errors import GroundSetMismatch, SizeLimitExceeded
from .structures import (
    check_linear_tangle,
    check_matroid_like,
    check_single_ultrafilter,
)
from .system import ConnectivitySystem, SetFamily

SEARCH_CAP = 10

STRUCTURE_KINDS = (
    "linear-tangle",
    "single-ultrafilter",
    "prime-ultra-matroid",
    "prime-ultra-antimatroid",
    "prime-ultra-greedoid",
)


@dataclass(frozen=True)
class Certificate:
    """A found structure, replayable through its checker."""

    kind: str
    order: int                 # k + 1
    family: SetFamily
    config: dict
    system_name: str


def complement_family(system: ConnectivitySystem, family: SetFamily) -> SetFamily:
    """{X \\ A : A in family}.  An involution; preserves k-efficiency of
    members because f is symmetric."""
    if family.ground.labels != system.ground.labels:
        raise GroundSetMismatch("family and system ground sets differ")
    full = system.ground.full_mask
    return SetFamily.of(system.ground, (full ^ a for a in family))


class _Universe:
    """The k-efficient universe indexed for pair-orientation search."""

    def __init__(self, system: ConnectivitySystem, k: int):
        f = system.table_list()
        self.system = system
        self.k = k
        self.masks = [m for m in range(len(f)) if f[m] <= k]
        self.pos = {m: i for i, m in enumerate(self.masks)}
        full = system.ground.full_mask
        self.partner = [self.pos[full ^ m] for m in self.masks]
        # pairs in canonical order: by the smaller mask of each pair
        self.pairs = [(i, self.partner[i]) for i, m in enumerate(self.masks)
                      if m < self.masks[self.partner[i]]]
        self.all_bits = (1 << len(self.masks)) - 1

    def family(self, in_bits: int) -> SetFamily:
        return SetFamily.of(self.system.ground,
                            (self.masks[i] for i in iter_bits(in_bits)))


def _sorted_certificates(found, kind, order, config, system):
    found.sort(key=lambda fam: fam.members)
    return [Certificate(kind, order, fam, dict(config), system.name)
            for fam in found]


# -- linear tangles ------------------------------------------------------------

def _find_tangles(system, k, l3, limit):
    f = system.table_list()
    if f[0] > k:
        return []
    uni = _Universe(system, k)
    n = system.ground.n
    full = system.ground.full_mask
    if l3 == "guarded":
        qmask = 0
        for e in system.qualified_elements(k):
            qmask |= 1 << e
    else:
        qmask = full

    # L3 conflict between members i and j: the part of X their union
    # misses fits inside one admissible singleton.
    m = len(uni.masks)
    conflicts = [0] * m
    for i in range(m):
        for j in range(i, m):
            u = full & ~(uni.masks[i] | uni.masks[j])
            hit = (u == 0 and qmask != 0) or (
                u.bit_count() == 1 and u & qmask)
            if hit:
                conflicts[i] |= 1 << j
                conflicts[j] |= 1 << i

    def force_in(i, state):
        in_bits, out_bits = state
        stack = [i]
        while stack:
            i = stack.pop()
            bit = 1 << i
            if out_bits & bit:
                return None
            if in_bits & bit:
                continue
            if conflicts[i] & in_bits:
                return None
            in_bits |= bit
            newly = (conflicts[i] | (1 << uni.partner[i])) & ~out_bits
            if newly & in_bits:
                return None
            out_bits |= newly
            for j in iter_bits(newly):
                p = uni.partner[j]
                if not in_bits & (1 << p):
                    stack.append(p)
        return in_bits, out_bits

    state = force_in(uni.pos[0], (0, 0))
    if state is None:
        return []

    found = []

    def descend(pair_idx, state):
        if limit is not None and len(found) >= limit:
            return
        in_bits, out_bits = state
        while pair_idx < len(uni.pairs):
            i, j = uni.pairs[pair_idx]
            if (in_bits | out_bits) & (1 << i):
                pair_idx += 1
                continue
            break
        else:
            found.append(uni.family(in_bits))
            return
        for choice in (i, j):
            nxt = force_in(choice, state)
            if nxt is not None:
                descend(pair_idx + 1, nxt)
            if limit is not None and len(found) >= limit:
                return

    descend(0, state)
    for fam in found:
        rep = check_linear_tangle(system, fam, k, l3=l3, first_only=True)
        if not rep.passed:
            raise RuntimeError("tangle search produced an invalid family")
    return found


# -- single ultrafilters ---------------------------------------------------------

def _closure_reach(uni, qualified):
    """reach[i]: universe bits forced (transitively) by placing member i,
    under the deletion and superset closure rules; includes i."""
    f = uni.system.table_list()
    full = uni.system.ground.full_mask
    k = uni.k
    succ = []
    for m in uni.masks:
        s = 0
        for e in qualified:
            bit = 1 << e
            if m & bit and f[m ^ bit] <= k:
                s |= 1 << uni.pos[m ^ bit]
        rest = full & ~m
        for add in iter_submasks(rest):
            if add and f[m | add] <= k:
                s |= 1 << uni.pos[m | add]
        succ.append(s)
    reach = []
    for i in range(len(uni.masks)):
        seen = 1 << i
        stack = [i]
        while stack:
            j = stack.pop()
            new = succ[j] & ~seen
            seen |= new
            for b in iter_bits(new):
                stack.append(b)
        reach.append(seen)
    return reach


def _find_ultrafilters(system, k, limit):
    uni = _Universe(system, k)
    if not uni.masks:
        # No k-efficient sets at all: the orientation axiom is vacuous and
        # the empty family satisfies everything.
        return [SetFamily.of(system.ground, [])]
    reach = _closure_reach(uni, system.qualified_elements(k))
    empty_bit = 1 << uni.pos[0] if 0 in uni.pos else 0
    invalid = 0
    for i, r in enumerate(reach):
        if r & empty_bit:
            invalid |= 1 << i

    found = []

    def place(members, state):
        in_bits, out_bits = state
        for i in members:
            bit = 1 << i
            if invalid & bit:
                return None
            in_bits |= reach[i]
        if in_bits & (out_bits | invalid):
            return None
        return in_bits, out_bits

    def descend(pair_idx, state):
        if limit is not None and len(found) >= limit:
            return
        if pair_idx == len(uni.pairs):
            found.append(uni.family(state[0]))
            return
        i, j = uni.pairs[pair_idx]
        bi, bj = 1 << i, 1 << j
        in_bits, out_bits = state
        # exact membership of the pair: left only / right only / both
        for add, drop in ((bi, bj), (bj, bi), (bi | bj, 0)):
            if add & out_bits or drop & in_bits:
                continue
            nxt = place(list(iter_bits(add & ~in_bits)),
                        (in_bits, out_bits | drop))
            if nxt is not None:
                descend(pair_idx + 1, nxt)
            if limit is not None and len(found) >= limit:
                return

    descend(0, (0, invalid))
    for fam in found:
        rep = check_single_ultrafilter(system, fam, k, first_only=True)
        if not rep.passed:
            raise RuntimeError("ultrafilter search produced an invalid family")
    return found


# -- matroid-like kinds -----------------------------------------------------------

def _find_matroid_like(system, k, kind, m4, limit):
    f = system.table_list()
    if f[0] > k:
        return []
    uni = _Universe(system, k)
    n = system.ground.n
    qualified = system.qualified_elements(k)
    qmask = 0
    for e in qualified:
        qmask |= 1 << e
    m = len(uni.masks)
    exclusive = m4 == "exclusive"

    if kind == "matroid":
        reach = []
        for mask in uni.masks:
            r = 0
            for s in iter_submasks(mask):
                if f[s] <= k:
                    r |= 1 << uni.pos[s]
            reach.append(r)
    else:
        reach = [1 << i for i in range(m)]

    # A nonempty member with no qualified element can never satisfy the
    # exchange demand against the (always present) empty set.
    invalid = 0
    for i, mask in enumerate(uni.masks):
        if mask and not mask & qmask:
            invalid |= 1 << i
        elif kind == "antimatroid" and mask:
            ok = False
            for e in iter_bits(mask & qmask):
                if f[mask ^ (1 << e)] <= k:
                    ok = True
                    break
            if not ok:
                invalid |= 1 << i

    def witness_m3(a_mask, b_mask):
        w = 0
        for e in iter_bits(b_mask & ~a_mask & qmask):
            t = a_mask | (1 << e)
            if f[t] <= k:
                w |= 1 << uni.pos[t]
        return w

    def witness_am2(a_mask):
        w = 0
        for e in iter_bits(a_mask & qmask):
            d = a_mask ^ (1 << e)
            if f[d] <= k:
                w |= 1 << uni.pos[d]
        return w

    found = []

    def propagate(add_bits, in_bits, out_bits):
        """Force members (and their closures) in; exclusive mode knocks
        partners out, and an excluded member forces its partner in."""
        stack = list(iter_bits(add_bits))
        while stack:
            i = stack.pop()
            bit = 1 << i
            if bit & (out_bits | invalid):
                return None
            if bit & in_bits:
                continue
            grow = reach[i] & ~in_bits
            if grow & (out_bits | invalid):
                return None
            in_bits |= grow
            stack.extend(iter_bits(grow & ~bit))
            if exclusive:
                for j in iter_bits(grow):
                    pbit = 1 << uni.partner[j]
                    if pbit & in_bits:
                        return None
                    out_bits |= pbit
        return in_bits, out_bits

    def update_demands(demands, newly_in, in_bits):
        """Extend the pending exchange/accessibility demands with the pairs
        the new members create; returns None when some demand lost every
        possible witness."""
        out = list(demands)
        sizes = {}
        for i in iter_bits(in_bits):
            sizes[i] = uni.masks[i].bit_count()
        for i in iter_bits(newly_in):
            mi, ci = uni.masks[i], sizes[i]
            if kind == "antimatroid" and mi:
                out.append(witness_am2(mi))
            for j in iter_bits(in_bits):
                if j == i:
                    continue
                mj, cj = uni.masks[j], sizes[j]
                if ci < cj:
                    out.append(witness_m3(mi, mj))
                elif cj < ci:
                    out.append(witness_m3(mj, mi))
        return out

    def live(demands, in_bits, out_bits):
        possible = uni.all_bits & ~(out_bits | invalid)
        keep = []
        for w in demands:
            if w & in_bits:
                continue
            if not w & possible:
                return None
            keep.append(w)
        return keep

    # forced start: empty set plus every qualified singleton (prime)
    start_bits = 1 << uni.pos[0]
    for e in qualified:
        start_bits |= 1 << uni.pos[1 << e]
    state = propagate(start_bits, 0, 0)
    if state is None:
        return []
    demands = update_demands([], state[0], state[0])
    demands = live(demands, state[0], state[1])
    if demands is None:
        return []

    def descend(pair_idx, state, demands):
        if limit is not None and len(found) >= limit:
            return
        in_bits, out_bits = state
        while pair_idx < len(uni.pairs):
            i, j = uni.pairs[pair_idx]
            decided = in_bits | out_bits
            bi, bj = 1 << i, 1 << j
            if exclusive:
                if decided & bi and decided & bj:
                    pair_idx += 1
                    continue
            else:
                if decided & bi and decided & bj:
                    pair_idx += 1
                    continue
            break
        else:
            fam = uni.family(in_bits)
            rep = check_matroid_like(system, fam, k, kind=kind, ultra=True,
                                     prime=True, m4=m4, first_only=True)
            if rep.passed:
                found.append(fam)
            return
        i, j = uni.pairs[pair_idx]
        bi, bj = 1 << i, 1 << j
        if exclusive:
            options = ((bi, bj), (bj, bi))
        else:
            options = ((bi, bj), (bj, bi), (bi | bj, 0))
        for add, drop in options:
            if add & out_bits or drop & in_bits or add & invalid:
                continue
            nxt = propagate(add & ~in_bits, in_bits, out_bits | drop)
            if nxt is None:
                continue
            newly = nxt[0] & ~in_bits
            dm = update_demands(demands, newly, nxt[0])
            dm = live(dm, nxt[0], nxt[1])
            if dm is None:
                continue
            descend(pair_idx + 1, nxt, dm)
            if limit is not None and len(found) >= limit:
                return

    descend(0, state, demands)
    return found


def find_structure(system: ConnectivitySystem, kind: str, order: int,
                   l3: str = "guarded", m4: str = "exclusive",
                   limit: int | None = 1) -> list[Certificate]:
    """All (or the first ``limit``) structures of the given kind and order.

    ``order`` is k+1; the search universe is the k-efficient powerset.
    ``limit=None`` enumerates everything.  An empty result means no such
    structure exists (the search is exhaustive either way).
    """
    if kind not in STRUCTURE_KINDS:
        raise ValueError(f"kind must be one of {STRUCTURE_KINDS}")
    if order < 1:
        raise ValueError("order must be at least 1")
    system.require_validated()
    if system.ground.n > SEARCH_CAP:
        raise SizeLimitExceeded(f"structure search capped at n <= {SEARCH_CAP}")
    k = order - 1
    if kind == "linear-tangle":
        fams = _find_tangles(system, k, l3, limit)
        config = {"l3": l3}
    elif kind == "single-ultrafilter":
        fams = _find_ultrafilters(system, k, limit)
        config = {}
    else:
        mk = {"prime-ultra-matroid": "matroid",
              "prime-ultra-antimatroid": "antimatroid",
              "prime-ultra-greedoid": "greedoid"}[kind]
        fams = _find_matroid_like(system, k, mk, m4, limit)
        config = {"m4": m4}
    return _sorted_certificates(fams, kind, order, config, system)
