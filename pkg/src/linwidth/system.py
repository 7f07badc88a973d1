"""Connectivity systems: a finite ground set with a symmetric submodular
natural-valued function on its subsets.

Three backends supply the function f:

* ``table``: an explicit array of 2^n values.
* ``edge-boundary``: the ground set is the edge set of a graph; f(A) counts
  the vertices incident both to an edge in A and to an edge outside A.
* ``vertex-cut``: the ground set is the vertex set of a weighted graph;
  f(A) is the total weight of links with exactly one endpoint in A.

Both graph families are symmetric submodular by construction; tables are
whatever the user wrote and must survive :func:`validate_system`.

Subsets are plain int bitmasks over the ground indices.  :class:`SetFamily`
is the deduplicated, canonically ordered collection of subsets that every
axiom checker judges.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .bitset import iter_bits
from .errors import (
    DuplicateEdgeLabel,
    DuplicateLabel,
    NegativeWeight,
    SizeLimitExceeded,
    SystemNotValidated,
    UnknownLabel,
    UnknownVertex,
)

MAX_GROUND = 64
TABLE_CAP = 20        # largest n for which a dense f table is materialised
VALIDATE_CAP = 12     # largest n for the exhaustive pair validation
ENUMERATE_CAP = 20


@dataclass(frozen=True)
class GroundSet:
    """Ordered, labelled ground set.  Index i <-> labels[i]."""

    labels: tuple[str, ...]

    def __post_init__(self):
        if not 1 <= len(self.labels) <= MAX_GROUND:
            raise ValueError(f"ground set size must be in 1..{MAX_GROUND}")
        seen = set()
        for lbl in self.labels:
            if not lbl or any(c.isspace() for c in lbl) or "," in lbl:
                raise ValueError(f"bad label {lbl!r}: empty, whitespace or comma")
            if lbl in seen:
                raise DuplicateLabel(f"duplicate element label {lbl!r}")
            seen.add(lbl)
        object.__setattr__(self, "_index", {l: i for i, l in enumerate(self.labels)})

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def index_of(self, label: str) -> int:
        if label not in self._index:
            raise UnknownLabel(f"unknown element label {label!r}")
        return self._index[label]

    def mask_of(self, labels) -> int:
        m = 0
        for lbl in labels:
            m |= 1 << self.index_of(lbl)
        return m

    def labels_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in iter_bits(mask))

    def subset_str(self, mask: int) -> str:
        """Canonical text form: labels in ground order, '-' for the empty set."""
        return ",".join(self.labels_of(mask)) or "-"


@dataclass(frozen=True)
class SetFamily:
    """A finite collection of subsets of one ground set.

    Members are deduplicated and stored in canonical ascending mask order.
    """

    ground: GroundSet
    members: tuple[int, ...]

    @classmethod
    def of(cls, ground: GroundSet, masks) -> "SetFamily":
        full = ground.full_mask
        uniq = sorted({int(m) for m in masks})
        if uniq and not 0 <= uniq[0] <= uniq[-1] <= full:
            raise ValueError("family member outside the ground set")
        return cls(ground, tuple(uniq))

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, mask):
        return mask in set(self.members)

    def member_set(self) -> frozenset:
        return frozenset(self.members)

    def subset_strs(self) -> list[str]:
        return [self.ground.subset_str(m) for m in self.members]


@dataclass
class Violation:
    axiom: str
    witness: dict
    note: str = ""


@dataclass
class ValidationReport:
    passed: bool
    violations: list[Violation] = field(default_factory=list)
    method: str = "exhaustive"   # or "by-construction" for big graph systems

    def summary(self) -> str:
        if self.passed:
            return f"passed ({self.method})"
        first = self.violations[0]
        return f"failed: {first.axiom} {first.witness}"


class ConnectivitySystem:
    """A ground set plus one of the three f backends.

    Instances are immutable apart from the ``validated`` flag, which is
    flipped exactly once by :func:`validate_system`; all evaluation methods
    are pure, so a validated system is safe to share across threads.
    """

    def __init__(self, ground: GroundSet, backend: str, name: str = "unnamed", *,
                 table=None, vertex_labels=None, inc_masks=None, links=None):
        self.ground = ground
        self.backend = backend
        self.name = name
        self.validated = False
        self._table_cache = None
        if backend == "table":
            arr = np.asarray(table, dtype=np.int64)
            if arr.shape != (1 << ground.n,):
                raise ValueError("table backend needs exactly 2^n values")
            if (arr < 0).any():
                raise ValueError("f values must be natural numbers")
            self._table_cache = arr
        elif backend == "edge-boundary":
            self.vertex_labels = tuple(vertex_labels)
            self.inc_masks = tuple(inc_masks)
        elif backend == "vertex-cut":
            self.links = tuple(links)   # (u_index, v_index, weight)
        else:
            raise ValueError(f"unknown backend {backend!r}")

    # -- evaluation ----------------------------------------------------------

    def f(self, mask: int) -> int:
        """Value of f on one subset.  Works for any ground size."""
        if not 0 <= mask <= self.ground.full_mask:
            raise ValueError("subset mask outside the ground set")
        if self._table_cache is not None:
            return int(self._table_cache[mask])
        if self.backend == "edge-boundary":
            cnt = 0
            for inc in self.inc_masks:
                t = inc & mask
                if t != 0 and t != inc:
                    cnt += 1
            return cnt
        s = 0
        for u, v, w in self.links:
            if ((mask >> u) ^ (mask >> v)) & 1:
                s += w
        return s

    def table(self) -> np.ndarray:
        """Dense f table over all 2^n subsets (cached).  Needs n <= 20."""
        if self._table_cache is None:
            n = self.ground.n
            if n > TABLE_CAP:
                raise SizeLimitExceeded(
                    f"dense tables capped at n <= {TABLE_CAP}, got {n}")
            size = 1 << n
            if self.backend == "edge-boundary":
                inc = np.asarray(self.inc_masks, dtype=np.int64)
                self._table_cache = _kernels.edge_boundary_table(inc, size)
            else:
                if self.links:
                    us = np.asarray([l[0] for l in self.links], dtype=np.int64)
                    vs = np.asarray([l[1] for l in self.links], dtype=np.int64)
                    ws = np.asarray([l[2] for l in self.links], dtype=np.int64)
                    self._table_cache = _kernels.vertex_cut_table(us, vs, ws, size)
                else:
                    self._table_cache = np.zeros(size, dtype=np.int64)
        return self._table_cache

    def max_f(self) -> int:
        return int(self.table().max())

    def table_list(self) -> list[int]:
        """The dense table as a plain list; cached (hot loops index it)."""
        if not hasattr(self, "_table_list"):
            self._table_list = self.table().tolist()
        return self._table_list

    def require_validated(self):
        if not self.validated:
            raise SystemNotValidated(
                f"system {self.name!r} must pass validate_system first")

    def qualified_elements(self, k: int) -> list[int]:
        """Elements e with f({e}) <= k (cached per k)."""
        cache = self.__dict__.setdefault("_qualified_cache", {})
        if k not in cache:
            cache[k] = [e for e in range(self.ground.n) if self.f(1 << e) <= k]
        return cache[k]

    def assumption_holds(self, k: int) -> bool:
        """Whether f({e}) <= k for every element."""
        return len(self.qualified_elements(k)) == self.ground.n

    def efficient_pairs(self, k: int) -> list[tuple[int, int]]:
        """Unordered complement pairs (a, X\\a) of the k-efficient universe,
        listed with a < X\\a in ascending order of a; cached per k.

        By symmetry f(a) <= k already implies f(X\\a) <= k, and a complement
        pair never degenerates for n >= 1, so the small halves enumerate the
        whole universe.
        """
        cache = self.__dict__.setdefault("_pairs_cache", {})
        if k not in cache:
            f = self.table_list()
            full = self.ground.full_mask
            cache[k] = [(a, full ^ a) for a in range(1 << (self.ground.n - 1))
                        if f[a] <= k]
        return cache[k]


def evaluate_f(system: ConnectivitySystem, mask: int) -> int:
    return system.f(mask)


# -- constructors ------------------------------------------------------------

def system_from_edge_boundary_graph(vertices, edges, name="unnamed"):
    """Edge-boundary system: ground elements are the edge labels.

    ``edges`` is a list of (label, endpoint, endpoint).  A self-loop
    contributes its vertex only when that vertex also touches an edge on
    the other side, which the incidence-mask formula yields directly.
    """
    vlabels = list(vertices)
    if len(set(vlabels)) != len(vlabels):
        raise DuplicateLabel("duplicate vertex label")
    vindex = {v: i for i, v in enumerate(vlabels)}
    elabels = []
    seen = set()
    inc = [0] * len(vlabels)
    for pos, (lbl, u, v) in enumerate(edges):
        if lbl in seen:
            raise DuplicateEdgeLabel(f"duplicate edge label {lbl!r}")
        seen.add(lbl)
        for endpoint in (u, v):
            if endpoint not in vindex:
                raise UnknownVertex(f"edge {lbl!r} uses unknown vertex {endpoint!r}")
        elabels.append(lbl)
        inc[vindex[u]] |= 1 << pos
        inc[vindex[v]] |= 1 << pos
    ground = GroundSet(tuple(elabels))
    return ConnectivitySystem(ground, "edge-boundary", name,
                              vertex_labels=tuple(vlabels), inc_masks=tuple(inc))


def system_from_vertex_cut_graph(vertices, links, name="unnamed"):
    """Vertex-cut system: ground elements are the vertices themselves."""
    vlabels = list(vertices)
    if len(set(vlabels)) != len(vlabels):
        raise DuplicateLabel("duplicate vertex label")
    vindex = {v: i for i, v in enumerate(vlabels)}
    resolved = []
    for u, v, w in links:
        if u not in vindex or v not in vindex:
            raise UnknownVertex(f"link ({u!r},{v!r}) uses an unknown vertex")
        if not isinstance(w, int) or isinstance(w, bool) or w < 0:
            raise NegativeWeight(f"link ({u!r},{v!r}) weight must be a natural number")
        resolved.append((vindex[u], vindex[v], w))
    ground = GroundSet(tuple(vlabels))
    return ConnectivitySystem(ground, "vertex-cut", name, links=tuple(resolved))


def system_from_table(labels, values, name="unnamed"):
    ground = GroundSet(tuple(labels))
    return ConnectivitySystem(ground, "table", name, table=values)


# -- validation --------------------------------------------------------------

def validate_system(system: ConnectivitySystem,
                    collect_all: bool = False) -> ValidationReport:
    """Check symmetry, submodularity, and the two standard consequences
    (f(A) >= f(empty) = f(X); posimodularity f(A)+f(B) >= f(A\\B)+f(B\\A)).

    The exhaustive pair scan runs for n <= 12.  Larger edge-boundary and
    vertex-cut systems are accepted by construction, since both families
    are symmetric submodular for every graph; larger tables are refused.
    The consequence checks cannot fail when the two axioms hold, so a
    consequence-only violation signals an internal fault.
    """
    n = system.ground.n
    if n > VALIDATE_CAP:
        if system.backend == "table":
            raise SizeLimitExceeded(
                f"exhaustive validation capped at n <= {VALIDATE_CAP} for tables")
        system.validated = True
        return ValidationReport(True, [], method="by-construction")

    f = system.table()
    violations: list[Violation] = []

    def sub(mask):
        return system.ground.subset_str(int(mask))

    if collect_all:
        for a in _kernels.symmetry_violations_all(f):
            a = int(a)
            comp = system.ground.full_mask ^ a
            violations.append(Violation(
                "symmetry", {"A": sub(a)},
                f"f(A)={int(f[a])} but f(X\\A)={int(f[comp])}"))
        for a, b in _kernels.submodularity_violations_all(f):
            violations.append(Violation(
                "submodularity", {"A": sub(a), "B": sub(b)},
                f"f(A)+f(B)={int(f[a]) + int(f[b])} < "
                f"f(A&B)+f(A|B)={int(f[a & b]) + int(f[a | b])}"))
    else:
        a = _kernels.symmetry_violation(f)
        if a >= 0:
            comp = system.ground.full_mask ^ a
            violations.append(Violation(
                "symmetry", {"A": sub(a)},
                f"f(A)={int(f[a])} but f(X\\A)={int(f[comp])}"))
        a, b = _kernels.submodularity_violation(f)
        if a >= 0:
            violations.append(Violation(
                "submodularity", {"A": sub(a), "B": sub(b)},
                f"f(A)+f(B)={int(f[a]) + int(f[b])} < "
                f"f(A&B)+f(A|B)={int(f[a & b]) + int(f[a | b])}"))

    if not violations:
        # Consequences of the axioms; failure here means the scans above
        # are broken, not the input.
        if int(f[0]) != int(f[-1]):
            violations.append(Violation(
                "floor-equality", {}, f"f(-)={int(f[0])} != f(X)={int(f[-1])}"))
        low = np.nonzero(f < f[0])[0]
        if low.size:
            a = int(low[0])
            violations.append(Violation(
                "floor", {"A": sub(a)}, f"f(A)={int(f[a])} < f(-)={int(f[0])}"))
        a, b = _kernels.posimodularity_violation(f)
        if a >= 0:
            violations.append(Violation(
                "posimodularity", {"A": sub(a), "B": sub(b)},
                "f(A)+f(B) < f(A\\B)+f(B\\A)"))

    report = ValidationReport(not violations, violations)
    if report.passed:
        system.validated = True
    return report


def enumerate_k_efficient(system: ConnectivitySystem, k: int) -> SetFamily:
    """All subsets A with f(A) <= k, in canonical ascending order.

    The result is closed under complement because f is symmetric.
    """
    system.require_validated()
    if system.ground.n > ENUMERATE_CAP:
        raise SizeLimitExceeded(f"enumeration capped at n <= {ENUMERATE_CAP}")
    f = system.table()
    return SetFamily.of(system.ground, np.nonzero(f <= k)[0])
