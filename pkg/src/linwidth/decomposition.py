"""Linear decompositions: width of an ordering and exact linear-width.

An ordering e_1..e_n of the ground set determines prefix values
w_i = f({e_1..e_i}) for 1 <= i <= n-1.  Two width variants are first
class:

* ``paper``: max of the prefix values and of every singleton value
  f({e_i}); since every element appears once, the singleton part is the
  same for all orderings.
* ``prefix-only``: max of the prefix values alone (0 when n = 1).

The exact minimum over all n! orderings is computed by subset dynamic
programming; ``linear_width_oracle`` is a deliberately independent
brute-force permutation sweep used only to cross-check the DP.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .bitset import iter_bits
from .errors import SizeLimitExceeded
from .system import ConnectivitySystem

WIDTH_CAP = 20
ORACLE_CAP = 8
BRANCHED_CAP = 16

VARIANTS = ("paper", "prefix-only")


@dataclass(frozen=True)
class WidthCertificate:
    """An ordering with its recomputable width evidence.

    ``optimal`` records whether the certificate came out of the exact
    minimiser (certificates from ``width_of_ordering`` describe one
    ordering, not a minimum).
    """

    ordering: tuple[int, ...]
    prefix_values: tuple[int, ...]
    singleton_values: tuple[int, ...]
    width: int
    variant: str
    optimal: bool = False

    def recompute_width(self) -> int:
        vals = list(self.prefix_values)
        if self.variant == "paper":
            vals += list(self.singleton_values)
        return max(vals, default=0)


def _check_variant(variant: str):
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")


def width_of_ordering(system: ConnectivitySystem, ordering,
                      variant: str = "paper") -> WidthCertificate:
    """Width of one ordering.  The ordering must be a permutation of 0..n-1."""
    _check_variant(variant)
    system.require_validated()
    n = system.ground.n
    seq = tuple(int(e) for e in ordering)
    if sorted(seq) != list(range(n)):
        raise ValueError("ordering must be a permutation of the ground indices")
    prefix = []
    m = 0
    for e in seq[:-1]:
        m |= 1 << e
        prefix.append(system.f(m))
    singles = [system.f(1 << e) for e in seq]
    vals = list(prefix) + (singles if variant == "paper" else [])
    return WidthCertificate(seq, tuple(prefix), tuple(singles),
                            max(vals, default=0), variant)


def linear_width(system: ConnectivitySystem,
                 variant: str = "paper") -> WidthCertificate:
    """Exact linear-width with an optimal ordering.

    The DP runs over prefix sets: h[S] is the best achievable maximum over
    the future proper prefixes of an ordering currently at prefix set S,
    so h[0] is the prefix-only linear width; the paper variant folds in
    the (ordering-independent) maximum singleton value.  Ties are broken
    toward the lexicographically least ordering: at each position the
    smallest element that still permits an ordering of optimal width is
    chosen.
    """
    _check_variant(variant)
    system.require_validated()
    n = system.ground.n
    if n > WIDTH_CAP:
        raise SizeLimitExceeded(f"exact linear width capped at n <= {WIDTH_CAP}")
    f = system.table()
    h = _kernels.suffix_dp(f)
    max_single = max(int(f[1 << e]) for e in range(n))
    width = int(h[0])
    if variant == "paper":
        width = max(width, max_single)

    full = (1 << n) - 1
    seq = []
    s = 0
    for _ in range(n):
        for e in range(n):
            bit = 1 << e
            if s & bit:
                continue
            t = s | bit
            v = int(h[t])
            if t != full:
                v = max(v, int(f[t]))
            if v <= width:
                seq.append(e)
                s = t
                break
    cert = width_of_ordering(system, seq, variant)
    assert cert.width == width, "DP and replay disagree"
    return WidthCertificate(cert.ordering, cert.prefix_values,
                            cert.singleton_values, width, variant, optimal=True)


def linear_width_oracle(system: ConnectivitySystem,
                        variant: str = "paper") -> int:
    """Brute force over all n! orderings.  Exists only to cross-check
    :func:`linear_width`; kept free of the DP kernels on purpose."""
    _check_variant(variant)
    system.require_validated()
    n = system.ground.n
    if n > ORACLE_CAP:
        raise SizeLimitExceeded(f"oracle capped at n <= {ORACLE_CAP}")
    tbl = system.table().tolist()
    best = None
    for perm in itertools.permutations(range(n)):
        m = 0
        w = 0
        for e in perm[:-1]:
            m |= 1 << e
            v = tbl[m]
            if v > w:
                w = v
                if best is not None and w >= best:
                    break
        if variant == "paper":
            for e in perm:
                v = tbl[1 << e]
                if v > w:
                    w = v
        if best is None or w < best:
            best = w
    return best


def is_k_linear_branched(system: ConnectivitySystem, a: int, k: int) -> bool:
    """Whether some ordering of the elements of subset ``a`` keeps f of
    every nonempty prefix (the full prefix ``a`` included, all values
    taken in the ambient system) at or below k.  True for the empty set.
    """
    system.require_validated()
    elems = list(iter_bits(a))
    m = len(elems)
    if m > BRANCHED_CAP:
        raise SizeLimitExceeded(f"k-linear-branched capped at |A| <= {BRANCHED_CAP}")
    if m == 0:
        return True
    # Dense re-indexed table over subsets of a, then the prefix-form DP,
    # which includes f of the full prefix.
    size = 1 << m
    vals = np.empty(size, dtype=np.int64)
    for s in range(size):
        mask = 0
        for j in range(m):
            if s >> j & 1:
                mask |= 1 << elems[j]
        vals[s] = system.f(mask)
    g = _kernels.prefix_dp(vals)
    return int(g[size - 1]) <= k
