"""Connections in the index set of a split system.

Every index k gets a barred twin k'; the maps a and b read multiplicative
relations off the table (b through the barred symbols, answering "which
factor produces this target"), mu symmetrizes them, and phi extends mu to
index sets.  Chains of phi-steps are connections; the partition groups
indices into connection classes.

Two pair domains are supported.  Literal mode lets step pairs range over
all plain and barred indices, which makes the component decomposition work
by construction.  Restricted mode confines pairs to jset indices and their
bars; it is the domain on which connections are reversible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .errors import InconsistentSplit, InternalError, NotReversible
from .jideal import SplitSystem

PARTITION_MODES = ("literal", "restricted")


class MarkedIndex(NamedTuple):
    index: int
    barred: bool

    def __str__(self) -> str:
        return f"{self.index}'" if self.barred else str(self.index)


def plain(i: int) -> MarkedIndex:
    return MarkedIndex(i, False)


def barred(i: int) -> MarkedIndex:
    return MarkedIndex(i, True)


def bar(m: MarkedIndex) -> MarkedIndex:
    """The bar involution."""
    return MarkedIndex(m.index, not m.barred)


@dataclass(frozen=True)
class ConnectionWitness:
    """An odd-length chain (source, p1, q1, p2, q2, ...) reaching a target.

    Replaying phi along consecutive pairs keeps every stage nonempty and
    puts the target in the final stage.
    """

    elements: tuple[MarkedIndex, ...]
    target: int

    @property
    def source(self) -> int:
        return self.elements[0].index

    @property
    def pairs(self) -> tuple[tuple[MarkedIndex, MarkedIndex], ...]:
        rest = self.elements[1:]
        return tuple((rest[t], rest[t + 1]) for t in range(0, len(rest), 2))

    def __str__(self) -> str:
        chain = ",".join(str(e) for e in self.elements)
        return f"({chain})->{self.target}"


@dataclass(frozen=True)
class Partition:
    """Connection classes, each identified by its minimum member."""

    classes: tuple[tuple[int, ...], ...]
    mode: str

    @cached_property
    def class_of(self) -> dict[int, int]:
        return {i: cls[0] for cls in self.classes for i in cls}


def map_a(S: SplitSystem, k1: int, k2: int, k3: int) -> frozenset[int]:
    """Direct product relation on plain indices.

    Nonzero only when the slots fit the split: an iset index may appear in
    the first slot only, and its product must land back in the iset span.
    A nonzero table entry in any other pattern means the split itself is
    wrong, which is an error rather than a silent empty set.
    """
    in_i = S.in_i
    entry = S.sys.table.get((k1, k2, k3))
    if k2 in in_i or k3 in in_i:
        if entry is not None:
            raise InconsistentSplit(
                f"nonzero product at {(k1, k2, k3)} with an iset index in slot 2 or 3"
            )
        return frozenset()
    if k1 in in_i:
        if entry is None:
            return frozenset()
        _, m = entry
        if m not in in_i:
            raise InconsistentSplit(
                f"product at {(k1, k2, k3)} starts in the ideal but lands outside it"
            )
        return frozenset((m,))
    if entry is None:
        return frozenset()
    return frozenset((entry[1],))


def map_b(S: SplitSystem, k: int, m1: MarkedIndex, m2: MarkedIndex) -> frozenset[int]:
    """Reverse product relation: which indices produce k using the barred pair.

    Nonempty only for barred jset pairs.  For k in iset the candidates are
    the iset first-slot case plus the three jset slot cases; for k in jset
    only the three jset slot cases apply.
    """
    in_j = S.in_j
    if not (m1.barred and m2.barred and m1.index in in_j and m2.index in in_j):
        return frozenset()
    r1, r2 = m1.index, m2.index
    table = S.sys.table
    found = set()
    if k in S.in_i:
        for m in S.iset:
            term = table.get((m, r1, r2))
            if term is not None and term[1] == k:
                found.add(m)
    for s in S.jset:
        for key in ((s, r1, r2), (r1, s, r2), (r1, r2, s)):
            term = table.get(key)
            if term is not None and term[1] == k:
                found.add(s)
                break
    return frozenset(found)


def mu(S: SplitSystem, k: int, m1: MarkedIndex, m2: MarkedIndex) -> frozenset[int]:
    """Symmetrized step relation.

    Plain pairs union map_a over all six argument permutations; barred
    pairs union map_b over both orders; mixed or barred-iset pairs give
    the empty set.
    """
    if not m1.barred and not m2.barred:
        a, b, c = k, m1.index, m2.index
        out: set[int] = set()
        for p, q, r in ((a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)):
            out |= map_a(S, p, q, r)
        return frozenset(out)
    if m1.barred and m2.barred:
        return map_b(S, k, m1, m2) | map_b(S, k, m2, m1)
    return frozenset()


def phi(S: SplitSystem, K, p: MarkedIndex, q: MarkedIndex) -> frozenset[int]:
    """Union of mu over a set of source indices."""
    out: set[int] = set()
    for k in K:
        out |= mu(S, k, p, q)
    return frozenset(out)


def _pair_domain(S: SplitSystem, mode: str) -> list[tuple[MarkedIndex, MarkedIndex]]:
    if mode not in PARTITION_MODES:
        raise ValueError(f"mode must be one of {PARTITION_MODES}, got {mode!r}")
    plain_pool = range(1, S.sys.dim + 1) if mode == "literal" else S.jset
    pairs = [(plain(p), plain(q)) for p in plain_pool for q in plain_pool]
    pairs += [(barred(p), barred(q)) for p in S.jset for q in S.jset]
    return pairs


def reachable(S: SplitSystem, k: int, mode: str = "literal") -> dict[int, ConnectionWitness]:
    """Breadth-first closure of one-step reachability from k, with witnesses.

    The source is always reachable through the trivial witness.  Witness
    choice is deterministic: queue order, pairs in domain order, elements
    of each mu-set sorted.
    """
    pairs = _pair_domain(S, mode)
    found: dict[int, ConnectionWitness] = {
        k: ConnectionWitness((plain(k),), k)
    }
    queue = [k]
    while queue:
        x = queue.pop(0)
        wx = found[x]
        for p, q in pairs:
            for y in sorted(mu(S, x, p, q)):
                if y not in found:
                    found[y] = ConnectionWitness(wx.elements + (p, q), y)
                    queue.append(y)
    return found


def validate_witness(S: SplitSystem, w: ConnectionWitness) -> bool:
    """Replay a witness: every stage nonempty and the target in the last one."""
    if len(w.elements) % 2 == 0 or w.elements[0].barred:
        return False
    if not w.pairs:
        return w.target == w.source
    stage: frozenset[int] = frozenset((w.source,))
    for p, q in w.pairs:
        stage = phi(S, stage, p, q)
        if not stage:
            return False
    return w.target in stage


def reverse_connection(S: SplitSystem, w: ConnectionWitness) -> ConnectionWitness:
    """Witness from target back to source: bar the pair chain and reverse it.

    Requires every pair element in jset or its bar; reversal outside that
    domain is not guaranteed and is refused.
    """
    if not w.pairs:
        return w
    for p, q in w.pairs:
        for e in (p, q):
            if e.index not in S.in_j:
                raise NotReversible(f"pair element {e} lies outside the jset domain")
    rest = [bar(e) for e in w.elements[:0:-1]]
    reversed_w = ConnectionWitness((plain(w.target), *rest), w.source)
    if not validate_witness(S, reversed_w):
        raise InternalError(f"reversed witness {reversed_w} fails to replay")
    return reversed_w


class _UnionFind:
    def __init__(self, items):
        self.parent = {i: i for i in items}

    def find(self, i):
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def classes(self):
        groups: dict[int, list[int]] = {}
        for i in self.parent:
            groups.setdefault(self.find(i), []).append(i)
        return tuple(tuple(sorted(g)) for _, g in sorted(groups.items()))


def _step_closure_classes(S: SplitSystem, mode: str) -> tuple[tuple[int, ...], ...]:
    """Components of the symmetric closure of one-step reachability."""
    n = S.sys.dim
    pairs = _pair_domain(S, mode)
    adjacency: dict[int, set[int]] = {i: set() for i in range(1, n + 1)}
    for x in range(1, n + 1):
        for p, q in pairs:
            for y in mu(S, x, p, q):
                adjacency[x].add(y)
                adjacency[y].add(x)
    seen: set[int] = set()
    classes = []
    for start in range(1, n + 1):
        if start in seen:
            continue
        comp = {start}
        queue = [start]
        while queue:
            x = queue.pop(0)
            for y in adjacency[x]:
                if y not in comp:
                    comp.add(y)
                    queue.append(y)
        seen |= comp
        classes.append(tuple(sorted(comp)))
    return tuple(sorted(classes, key=lambda c: c[0]))


def partition(S: SplitSystem, mode: str = "literal") -> Partition:
    """Connection classes of the index set.

    Literal mode equals the connected components of the hypergraph with one
    hyperedge {i, j, k, target} per table entry; that is computed by
    union-find and cross-checked against the step closure.  Restricted mode
    is the step closure over the confined pair domain.
    """
    closure = _step_closure_classes(S, mode)
    if mode == "restricted":
        return Partition(closure, mode)
    uf = _UnionFind(range(1, S.sys.dim + 1))
    for (i, j, k), (_, m) in S.sys.table.items():
        uf.union(i, j)
        uf.union(i, k)
        uf.union(i, m)
    hyper = uf.classes()
    if hyper != closure:
        raise InternalError(
            f"hyperedge components {hyper} disagree with step closure {closure}"
        )
    return Partition(hyper, mode)
