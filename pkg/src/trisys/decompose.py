"""Component ideals, the decomposition report, and minimality decisions.

Each connection class spans a component; in literal mode the components
are pairwise orthogonal ideals whose direct sum is the whole system, and
that is re-verified on every call.  Minimality (the only nonzero ideals
with an inherited basis are the deviation ideal and the whole system) is
decided by the connectivity criterion when the basis passes the
mu-multiplicativity test, and by exhaustive subset enumeration otherwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

from .errors import CapExceeded, ConfinementError, TheoremViolation
from .exactnum import basis_vector, rowspace_from
from .jideal import SplitSystem, is_ideal
from .connect import MarkedIndex, Partition, barred, mu, partition, plain
from .system import Entry, TripleSystem, construct_system

DEFAULT_ORACLE_CAP = 12

VERDICTS = ("minimal", "not_minimal", "criterion_inapplicable")


@dataclass(frozen=True)
class Component:
    """One connection class with its re-indexed subsystem.

    indices maps local basis position p (1-based) to parent index
    indices[p-1], so round-trips between the two index sets are exact.
    """

    indices: tuple[int, ...]
    subsystem: TripleSystem
    iset_part: tuple[int, ...]
    jset_part: tuple[int, ...]


@dataclass(frozen=True)
class DecompositionReport:
    components: tuple[Component, ...]
    orthogonality: tuple[tuple[bool, ...], ...]
    ideal_flags: tuple[bool, ...]
    covers: bool
    mode: str
    confinement_violations: tuple[Entry, ...] = ()

    @property
    def ok(self) -> bool:
        return (
            self.covers
            and all(self.ideal_flags)
            and all(all(row) for row in self.orthogonality)
            and not self.confinement_violations
        )


class MuViolation(NamedTuple):
    """A mu-relation not realized by a product with the source in slot one."""

    t1: int
    pair: tuple[MarkedIndex, MarkedIndex]
    t2: int

    def __str__(self) -> str:
        return f"t1={self.t1} pair=({self.pair[0]},{self.pair[1]}) t2={self.t2}"


@dataclass(frozen=True)
class MinimalityVerdict:
    verdict: str
    mu_multiplicative: bool
    mu_violation: MuViolation | None
    i_connected: bool
    j_connected: bool
    oracle_used: bool
    counterexample_ideal: tuple[int, ...] | None = None


def _split_entries(
    S: SplitSystem, part: Partition
) -> tuple[list[tuple[tuple[int, ...], list[Entry]]], list[Entry]]:
    """Assign each table entry to the class holding all four of its indices."""
    buckets = {cls: [] for cls in part.classes}
    membership = part.class_of
    violations = []
    for i, j, k, c, m in S.sys.entries:
        cls_ids = {membership[i], membership[j], membership[k], membership[m]}
        if len(cls_ids) == 1:
            root = cls_ids.pop()
            cls = next(cl for cl in part.classes if cl[0] == root)
            buckets[cls].append((i, j, k, c, m))
        else:
            violations.append((i, j, k, c, m))
    return [(cls, buckets[cls]) for cls in part.classes], violations


def _build_component(S: SplitSystem, cls: tuple[int, ...], entries: list[Entry]) -> Component:
    local = {parent: pos + 1 for pos, parent in enumerate(cls)}
    local_entries = [(local[i], local[j], local[k], c, local[m]) for i, j, k, c, m in entries]
    labels = {pos + 1: S.sys.labels[parent - 1] for pos, parent in enumerate(cls)}
    sub = construct_system(len(cls), local_entries, labels=labels)
    return Component(
        cls,
        sub,
        tuple(i for i in cls if i in S.in_i),
        tuple(i for i in cls if i in S.in_j),
    )


def components(S: SplitSystem, mode: str = "literal") -> list[Component]:
    """One component per connection class, classes ordered by id.

    An entry whose indices straddle classes cannot be inherited by any
    component; in literal mode that never happens, in restricted mode it
    raises ConfinementError carrying the violating entries and the
    components built from the remaining ones.
    """
    part = partition(S, mode)
    assigned, violations = _split_entries(S, part)
    built = [_build_component(S, cls, entries) for cls, entries in assigned]
    if violations:
        raise ConfinementError(violations, built)
    return built


def check_orthogonal(S: SplitSystem, c1: Component, c2: Component) -> bool:
    """True iff no table entry draws factors from both components."""
    set1, set2 = set(c1.indices), set(c2.indices)
    for i, j, k, _, _ in S.sys.entries:
        factors = {i, j, k}
        if factors & set1 and factors & set2:
            return False
    return True


def check_decomposition(S: SplitSystem, mode: str = "literal") -> DecompositionReport:
    """Components plus the ideal, orthogonality, and coverage verdicts.

    Literal mode must come out all-true; a failure there indicates a bug
    and raises TheoremViolation.  Restricted mode reports whatever holds.
    """
    violations: tuple[Entry, ...] = ()
    try:
        comps = components(S, mode)
    except ConfinementError as err:
        if mode == "literal":
            raise TheoremViolation(f"literal components are not entry-closed: {err}") from err
        comps = list(err.components)
        violations = err.violations
    n = S.sys.dim
    ideal_flags = tuple(
        is_ideal(S.sys, rowspace_from(n, (basis_vector(n, i) for i in comp.indices)))
        for comp in comps
    )
    ortho = tuple(
        tuple(
            True if a == b else check_orthogonal(S, comps[a], comps[b])
            for b in range(len(comps))
        )
        for a in range(len(comps))
    )
    covered = sorted(i for comp in comps for i in comp.indices) == list(range(1, n + 1))
    report = DecompositionReport(tuple(comps), ortho, ideal_flags, covered, mode, violations)
    if mode == "literal" and not report.ok:
        raise TheoremViolation("literal decomposition failed its own guarantees")
    return report


def _realized(S: SplitSystem, t1: int, s1: int, s2: int, t2: int) -> bool:
    """Is v_t2 a nonzero multiple of {v_t1, u_s1, u_s2} up to swapping the pair?"""
    for key in ((t1, s1, s2), (t1, s2, s1)):
        term = S.sys.table.get(key)
        if term is not None and term[1] == t2:
            return True
    return False


def mu_multiplicativity_check(S: SplitSystem) -> tuple[bool, MuViolation | None]:
    """Require every mu-relation over jset pairs to be product-realized.

    For plain pairs (s1, s2) in jset and for barred pairs, each t2 in
    mu(t1, s1, s2) must satisfy v_t2 in F{v_t1, u_s1, u_s2} for one of the
    two pair orders.  Returns the first failing tuple in scan order.
    """
    jset = S.jset
    for t1 in range(1, S.sys.dim + 1):
        for s1, s2 in itertools.product(jset, jset):
            for t2 in sorted(mu(S, t1, plain(s1), plain(s2))):
                if not _realized(S, t1, s1, s2, t2):
                    return False, MuViolation(t1, (plain(s1), plain(s2)), t2)
        for s1, s2 in itertools.product(jset, jset):
            for t2 in sorted(mu(S, t1, barred(s1), barred(s2))):
                if not _realized(S, t1, s1, s2, t2):
                    return False, MuViolation(t1, (barred(s1), barred(s2)), t2)
    return True, None


def enumerate_inherited_ideals(
    S: SplitSystem, cap: int = DEFAULT_ORACLE_CAP
) -> list[tuple[int, ...]]:
    """All index subsets whose basis span is an ideal, the empty set included.

    A span of basis vectors is an ideal exactly when every table entry with
    at least one factor in the subset targets the subset, so each of the
    2^dim candidates costs one table scan.  Sorted by size then
    lexicographically.
    """
    n = S.sys.dim
    if n > cap:
        raise CapExceeded(f"dimension {n} exceeds subset-enumeration cap {cap}")
    entries = S.sys.entries
    out = []
    for size in range(n + 1):
        for subset in itertools.combinations(range(1, n + 1), size):
            inside = set(subset)
            if all(
                m in inside
                for i, j, k, _, m in entries
                if i in inside or j in inside or k in inside
            ):
                out.append(subset)
    return out


def minimality_oracle(S: SplitSystem, cap: int = DEFAULT_ORACLE_CAP) -> bool:
    """Exhaustive minimality: every nonzero inherited ideal spans iset or all."""
    full = tuple(range(1, S.sys.dim + 1))
    for subset in enumerate_inherited_ideals(S, cap):
        if subset and subset != S.iset and subset != full:
            return False
    return True


def _oracle_counterexample(S: SplitSystem, cap: int) -> tuple[int, ...] | None:
    full = tuple(range(1, S.sys.dim + 1))
    for subset in enumerate_inherited_ideals(S, cap):
        if subset and subset != S.iset and subset != full:
            return subset
    return None


def is_minimal(
    S: SplitSystem, mode: str = "literal", oracle_cap: int = DEFAULT_ORACLE_CAP
) -> MinimalityVerdict:
    """Minimality verdict.

    When the basis is mu-multiplicative the verdict follows the
    connectivity criterion (iset within one class and jset within one
    class).  Otherwise the criterion does not apply; up to the oracle cap
    the subset enumeration decides instead, beyond it the verdict is
    criterion_inapplicable.
    """
    part = partition(S, mode)
    i_conn = len({part.class_of[i] for i in S.iset}) <= 1
    j_conn = len({part.class_of[j] for j in S.jset}) <= 1
    mu_ok, violation = mu_multiplicativity_check(S)
    counterexample = None
    if mu_ok:
        verdict = "minimal" if (i_conn and j_conn) else "not_minimal"
        oracle_used = False
        if verdict == "not_minimal" and S.sys.dim <= oracle_cap:
            counterexample = _oracle_counterexample(S, oracle_cap)
    elif S.sys.dim <= oracle_cap:
        counterexample = _oracle_counterexample(S, oracle_cap)
        verdict = "minimal" if counterexample is None else "not_minimal"
        oracle_used = True
    else:
        verdict = "criterion_inapplicable"
        oracle_used = False
    return MinimalityVerdict(
        verdict, mu_ok, violation, i_conn, j_conn, oracle_used, counterexample
    )
