"""Axiom checkers for set-family structures on a connectivity system.

Every checker returns a :class:`CheckReport` rather than raising: a fail
verdict carries one violation per broken axiom instance, each with a
witness precise enough to replay that single instance.  ``first_only``
stops at the first violation, which is what exhaustive family sweeps
want.

Families of order k+1 live inside the k-efficient universe: a member A
with f(A) > k is itself reported as a violation (axiom id ``L0`` / ``S0``
/ ``M0`` depending on the structure) instead of crashing, so search and
fuzzing can feed arbitrary families.

Modes resolving ambiguities in the axiom systems:

* orientation axioms FB4 and S4 are read inclusively (at least one of A,
  X\\A); M4 supports both ``exclusive`` (exactly one) and ``inclusive``.
* the tangle union axiom L3 is ``guarded`` (only elements e with
  f({e}) <= k participate) or ``unguarded`` (every element).
* closed-set C3 is ``literal`` (as printed, which is tautological because
  A | B = B whenever A is a subset of B) or ``upward`` (plain k-bounded
  upward closure).
"""

from dataclasses import dataclass, field

from .bitset import iter_bits, iter_strict_supersets, iter_submasks
from .errors import (
    GroundSetMismatch,
    NonEfficientSeed,
    SizeLimitExceeded,
    UnknownElement,
)
from .system import ConnectivitySystem, SetFamily, Violation

BOOLEAN_CAP = 16

L3_MODES = ("guarded", "unguarded")
M4_MODES = ("exclusive", "inclusive")
C3_MODES = ("literal", "upward")

NO_EFFICIENT_EMPTY_SET = "NoEfficientEmptySet"


@dataclass
class CheckReport:
    passed: bool
    violations: list[Violation] = field(default_factory=list)
    assumption_holds: bool | None = None   # f({e}) <= k for every e

    @classmethod
    def from_violations(cls, violations, assumption_holds=None):
        return cls(not violations, list(violations), assumption_holds)


def _require_same_ground(system: ConnectivitySystem, family: SetFamily):
    if family.ground.labels != system.ground.labels:
        raise GroundSetMismatch(
            f"family over {family.ground.labels} does not match system "
            f"over {system.ground.labels}")


def _sub(system, mask):
    return system.ground.subset_str(mask)


def _efficiency_violations(system, family, k, axiom):
    f = system.table_list()
    out = []
    for a in family:
        if f[a] > k:
            out.append(Violation(axiom, {"A": _sub(system, a)},
                                 f"member has f={f[a]} > {k}"))
    return out


def _efficient_pairs(system, k):
    return system.efficient_pairs(k)


# -- boolean filters (no f involved) -----------------------------------------

def check_boolean_family(family: SetFamily, level: str = "filter",
                         nonprincipal: bool = False,
                         first_only: bool = False) -> CheckReport:
    """Filter / ultrafilter axioms on the plain powerset of the carrier.

    FB1 pairwise intersections, FB2 upward closure, FB3 no empty set;
    ``ultrafilter`` adds FB4 (one of A, X\\A per complement pair, read
    inclusively; for an FB1+FB3 family both can never hold at once);
    ``nonprincipal`` adds FB5 (no singleton member).
    """
    if level not in ("filter", "ultrafilter"):
        raise ValueError(f"level must be filter or ultrafilter, got {level!r}")
    ground = family.ground
    if ground.n > BOOLEAN_CAP:
        raise SizeLimitExceeded(f"boolean checks capped at n <= {BOOLEAN_CAP}")
    full = ground.full_mask
    members = family.member_set()
    vio = []

    def sub(m):
        return ground.subset_str(m)

    def done():
        return first_only and vio

    for i, a in enumerate(family.members):
        for b in family.members[i:]:
            if a & b not in members:
                vio.append(Violation("FB1", {"A": sub(a), "B": sub(b)},
                                     "intersection missing"))
                if done():
                    return CheckReport.from_violations(vio)
    for a in family:
        for b in iter_strict_supersets(a, full):
            if b not in members:
                vio.append(Violation("FB2", {"A": sub(a), "B": sub(b)},
                                     "superset missing"))
                if done():
                    return CheckReport.from_violations(vio)
    if 0 in members:
        vio.append(Violation("FB3", {}, "empty set is a member"))
        if done():
            return CheckReport.from_violations(vio)
    if level == "ultrafilter":
        for a in range(1 << (ground.n - 1)):
            comp = full ^ a
            if a not in members and comp not in members:
                vio.append(Violation("FB4", {"A": sub(a), "complement": sub(comp)},
                                     "neither side is a member"))
                if done():
                    return CheckReport.from_violations(vio)
    if nonprincipal:
        for a in family:
            if a.bit_count() == 1:
                vio.append(Violation("FB5", {"A": sub(a)}, "singleton member"))
                if done():
                    return CheckReport.from_violations(vio)
    return CheckReport.from_violations(vio)


# -- linear tangles -----------------------------------------------------------

def check_linear_tangle(system: ConnectivitySystem, family: SetFamily, k: int,
                        l3: str = "guarded",
                        first_only: bool = False) -> CheckReport:
    """Linear tangle of order k+1.

    L1: the empty set is a member (impossible outright when f(empty) > k,
    reported with reason ``NoEfficientEmptySet``).  L2: each complement
    pair of k-efficient sets has exactly one member side.  L3: for members
    A, B (A = B allowed) and element e (guarded mode: only f({e}) <= k),
    A | B | {e} never covers the whole ground set.
    """
    if l3 not in L3_MODES:
        raise ValueError(f"l3 must be one of {L3_MODES}")
    _require_same_ground(system, family)
    system.require_validated()
    assumption = system.assumption_holds(k)
    members = family.member_set()
    full = system.ground.full_mask
    vio = _efficiency_violations(system, family, k, "L0")

    def done():
        return first_only and vio

    if not done():
        if 0 not in members:
            note = "empty set missing"
            if system.table_list()[0] > k:
                note = NO_EFFICIENT_EMPTY_SET
            vio.append(Violation("L1", {}, note))
    if not done():
        for a, comp in _efficient_pairs(system, k):
            ina, inc = a in members, comp in members
            if ina == inc:
                which = "both" if ina else "neither"
                vio.append(Violation(
                    "L2", {"A": _sub(system, a), "complement": _sub(system, comp)},
                    f"{which} of the pair are members"))
                if done():
                    break
    if not done():
        if l3 == "guarded":
            elems = system.qualified_elements(k)
        else:
            elems = list(range(system.ground.n))
        mem = family.members
        stop = False
        for i, a in enumerate(mem):
            for b in mem[i:]:
                ab = a | b
                for e in elems:
                    if ab | (1 << e) == full:
                        vio.append(Violation(
                            "L3", {"A": _sub(system, a), "B": _sub(system, b),
                                   "e": system.ground.labels[e]},
                            "union with the element covers X"))
                        if done():
                            stop = True
                        break
                if stop:
                    break
            if stop:
                break
    return CheckReport.from_violations(vio, assumption)


# -- single filters / ultrafilters -------------------------------------------

def check_single_filter(system: ConnectivitySystem, family: SetFamily, k: int,
                        first_only: bool = False) -> CheckReport:
    """Single filter of order k+1: closed under k-bounded single-element
    deletion (S1) and k-bounded supersets (S2), with no empty member (F3).

    S1 uses A \\ {e}, which equals the printed intersection with the
    complement of {e}.
    """
    _require_same_ground(system, family)
    system.require_validated()
    assumption = system.assumption_holds(k)
    members = family.member_set()
    full = system.ground.full_mask
    vio = _efficiency_violations(system, family, k, "S0")

    def done():
        return first_only and vio

    ftbl = system.table_list()
    qualified = system.qualified_elements(k)
    if not done():
        stop = False
        for a in family:
            for e in qualified:
                bit = 1 << e
                if not a & bit:
                    continue
                d = a ^ bit
                if ftbl[d] <= k and d not in members:
                    vio.append(Violation(
                        "S1", {"A": _sub(system, a), "e": system.ground.labels[e],
                               "deleted": _sub(system, d)},
                        "deletion result missing"))
                    if done():
                        stop = True
                        break
            if stop:
                break
    if not done():
        stop = False
        for a in family:
            for b in iter_strict_supersets(a, full):
                if ftbl[b] <= k and b not in members:
                    vio.append(Violation(
                        "S2", {"A": _sub(system, a), "B": _sub(system, b)},
                        "efficient superset missing"))
                    if done():
                        stop = True
                        break
            if stop:
                break
    if not done():
        if 0 in members:
            vio.append(Violation("F3", {}, "empty set is a member"))
    return CheckReport.from_violations(vio, assumption)


def check_single_ultrafilter(system: ConnectivitySystem, family: SetFamily,
                             k: int, nonprincipal: bool = False,
                             first_only: bool = False) -> CheckReport:
    """Single ultrafilter of order k+1: single filter plus the orientation
    axiom S4 (each k-efficient set or its complement is a member, read
    inclusively).  ``nonprincipal`` adds F5: no k-efficient singleton
    member."""
    base = check_single_filter(system, family, k, first_only=first_only)
    vio = list(base.violations)

    def done():
        return first_only and vio

    members = family.member_set()
    if not done():
        for a, comp in _efficient_pairs(system, k):
            if a not in members and comp not in members:
                vio.append(Violation(
                    "S4", {"A": _sub(system, a), "complement": _sub(system, comp)},
                    "neither side is a member"))
                if done():
                    break
    if nonprincipal and not done():
        for a in family:
            if a.bit_count() == 1 and system.f(a) <= k:
                vio.append(Violation("F5", {"A": _sub(system, a)},
                                     "efficient singleton member"))
                if done():
                    break
    return CheckReport.from_violations(vio, base.assumption_holds)


def single_element_deletion(system: ConnectivitySystem, family: SetFamily,
                            e: int, k: int) -> SetFamily:
    """The family {A \\ {e}} restricted to k-efficient results.

    Empty when f({e}) > k; duplicates collapse.
    """
    _require_same_ground(system, family)
    if not 0 <= e < system.ground.n:
        raise UnknownElement(f"element index {e} out of range")
    bit = 1 << e
    if system.f(bit) > k:
        return SetFamily.of(system.ground, [])
    out = [a & ~bit for a in family if system.f(a & ~bit) <= k]
    return SetFamily.of(system.ground, out)


def single_filter_closure(system: ConnectivitySystem, seeds: SetFamily, k: int,
                          deletion_rule: str = "s1") -> SetFamily | None:
    """Least family containing the seeds and closed under the deletion and
    superset rules.  Returns None when the empty set is generated, since
    no single filter can then contain the seeds.

    ``deletion_rule="s1"`` requires f({e}) <= k of the deleted element;
    ``"sd1"`` drops that guard and deletes whenever the result stays
    k-efficient.  The closure is a least fixed point, so the worklist
    order cannot change the result.
    """
    if deletion_rule not in ("s1", "sd1"):
        raise ValueError("deletion_rule must be 's1' or 'sd1'")
    _require_same_ground(system, seeds)
    ftbl = system.table_list()
    for a in seeds:
        if ftbl[a] > k:
            raise NonEfficientSeed(
                f"seed {_sub(system, a)} has f={ftbl[a]} > {k}")
    full = system.ground.full_mask
    if deletion_rule == "s1":
        elems = system.qualified_elements(k)
    else:
        elems = list(range(system.ground.n))
    have = set(seeds)
    todo = sorted(have)
    while todo:
        a = todo.pop()
        if a == 0:
            return None
        for e in elems:
            bit = 1 << e
            if a & bit:
                d = a ^ bit
                if d not in have and ftbl[d] <= k:
                    have.add(d)
                    todo.append(d)
        for b in iter_strict_supersets(a, full):
            if b not in have and ftbl[b] <= k:
                have.add(b)
                todo.append(b)
    if 0 in have:
        return None
    return SetFamily.of(system.ground, have)


def check_maximal_single_filter(system: ConnectivitySystem, family: SetFamily,
                                k: int, first_only: bool = False) -> CheckReport:
    """Maximal single filter of order k+1: a single filter that no strictly
    larger single filter contains.  Maximality is decided by closure: every
    k-efficient non-member, added as a seed, must force the empty set."""
    base = check_single_filter(system, family, k, first_only=True)
    if not base.passed:
        v = base.violations[0]
        return CheckReport.from_violations(
            [Violation("NotAFilter", v.witness,
                       f"underlying violation: {v.axiom}")],
            base.assumption_holds)
    members = family.member_set()
    f = system.table_list()
    vio = []
    for b in range(system.ground.full_mask + 1):
        if f[b] > k or b in members:
            continue
        closed = single_filter_closure(
            system, SetFamily.of(system.ground, [*family.members, b]), k)
        if closed is not None:
            vio.append(Violation(
                "Maximality", {"B": _sub(system, b)},
                "a strictly larger single filter contains the family"))
            if first_only:
                break
    return CheckReport.from_violations(vio, base.assumption_holds)


# -- matroid-like families -----------------------------------------------------

def check_matroid_like(system: ConnectivitySystem, family: SetFamily, k: int,
                       kind: str = "matroid", ultra: bool = False,
                       prime: bool = False, m4: str = "exclusive",
                       first_only: bool = False) -> CheckReport:
    """Matroid / greedoid / antimatroid of order k+1 on the system.

    All kinds check M0 (members k-efficient), M1 (empty member) and the
    exchange axiom M3 (for members A, B with |A| < |B| some e in B\\A with
    f({e}) <= k and f(A|{e}) <= k has A|{e} a member).  ``matroid`` adds
    M2 (k-bounded downward closure), ``antimatroid`` adds AM2 (k-bounded
    accessibility).  ``ultra`` adds the orientation axiom M4 in the chosen
    mode, ``prime`` adds M5 (every k-efficient singleton is a member).
    """
    if kind not in ("matroid", "greedoid", "antimatroid"):
        raise ValueError(f"kind must be matroid, greedoid or antimatroid")
    if m4 not in M4_MODES:
        raise ValueError(f"m4 must be one of {M4_MODES}")
    _require_same_ground(system, family)
    system.require_validated()
    assumption = system.assumption_holds(k)
    members = family.member_set()
    ftbl = system.table_list()
    vio = _efficiency_violations(system, family, k, "M0")

    def done():
        return first_only and vio

    if not done():
        if 0 not in members:
            note = "empty set missing"
            if ftbl[0] > k:
                note = NO_EFFICIENT_EMPTY_SET
            vio.append(Violation("M1", {}, note))
    if kind == "matroid" and not done():
        stop = False
        for a in family:
            for b in iter_submasks(a):
                if b != a and ftbl[b] <= k and b not in members:
                    vio.append(Violation(
                        "M2", {"A": _sub(system, a), "B": _sub(system, b)},
                        "efficient subset missing"))
                    if done():
                        stop = True
                        break
            if stop:
                break
    if not done():
        stop = False
        for a in family:
            ca = a.bit_count()
            for b in family:
                if ca >= b.bit_count():
                    continue
                ok = False
                for e in iter_bits(b & ~a):
                    bit = 1 << e
                    t = a | bit
                    if ftbl[bit] <= k and ftbl[t] <= k and t in members:
                        ok = True
                        break
                if not ok:
                    vio.append(Violation(
                        "M3", {"A": _sub(system, a), "B": _sub(system, b)},
                        "no admissible exchange element"))
                    if done():
                        stop = True
                        break
            if stop:
                break
    if kind == "antimatroid" and not done():
        for a in family:
            if a == 0:
                continue
            ok = False
            for e in iter_bits(a):
                bit = 1 << e
                d = a ^ bit
                if ftbl[bit] <= k and ftbl[d] <= k and d in members:
                    ok = True
                    break
            if not ok:
                vio.append(Violation("AM2", {"A": _sub(system, a)},
                                     "no admissible removal element"))
                if done():
                    break
    if ultra and not done():
        for a, comp in _efficient_pairs(system, k):
            ina, inc = a in members, comp in members
            bad = (ina == inc) if m4 == "exclusive" else (not ina and not inc)
            if bad:
                which = "both" if ina and inc else "neither"
                vio.append(Violation(
                    "M4", {"A": _sub(system, a), "complement": _sub(system, comp)},
                    f"{which} of the pair are members ({m4})"))
                if done():
                    break
    if prime and not done():
        for e in system.qualified_elements(k):
            if (1 << e) not in members:
                vio.append(Violation(
                    "M5", {"e": system.ground.labels[e]},
                    "efficient singleton missing"))
                if done():
                    break
    return CheckReport.from_violations(vio, assumption)


# -- closed set systems --------------------------------------------------------

def check_closed_set_system(system: ConnectivitySystem, family: SetFamily,
                            k: int, interpretation: str = "literal",
                            first_only: bool = False) -> CheckReport:
    """Closed set system of order k+1.

    C1: no empty member.  C2: k-bounded pairwise intersections stay in the
    family.  C3 in the ``literal`` reading quantifies over A subset of B
    with A | B a member, but then A | B = B already appears among the
    hypotheses, so no instance can fail and the check contributes nothing.
    The ``upward`` reading replaces it with k-bounded upward closure.
    """
    if interpretation not in C3_MODES:
        raise ValueError(f"interpretation must be one of {C3_MODES}")
    _require_same_ground(system, family)
    system.require_validated()
    assumption = system.assumption_holds(k)
    members = family.member_set()
    ftbl = system.table_list()
    full = system.ground.full_mask
    vio = []

    def done():
        return first_only and vio

    if 0 in members:
        vio.append(Violation("C1", {}, "empty set is a member"))
    if not done():
        stop = False
        for i, a in enumerate(family.members):
            for b in family.members[i:]:
                m = a & b
                if ftbl[m] <= k and m not in members:
                    vio.append(Violation(
                        "C2", {"A": _sub(system, a), "B": _sub(system, b)},
                        "efficient intersection missing"))
                    if done():
                        stop = True
                        break
            if stop:
                break
    if interpretation == "upward" and not done():
        stop = False
        for a in family:
            for b in iter_strict_supersets(a, full):
                if ftbl[b] <= k and b not in members:
                    vio.append(Violation(
                        "C3", {"A": _sub(system, a), "B": _sub(system, b)},
                        "efficient superset missing"))
                    if done():
                        stop = True
                        break
            if stop:
                break
    return CheckReport.from_violations(vio, assumption)
