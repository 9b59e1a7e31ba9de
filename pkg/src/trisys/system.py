"""Triple systems given by sparse structure tables over a multiplicative basis.

A table maps an ordered index triple (i, j, k) to a pair (coeff, target),
meaning {b_i, b_j, b_k} = coeff * b_target; absent keys are zero products.
This module evaluates the trilinear product, verifies the defining
identities of a Leibniz triple system (in the four-identity and the
equivalent two-identity form), and lifts bilinear Leibniz brackets to
triple systems via {x, y, z} = [[x, y], z].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    CapExceeded,
    DimensionError,
    DuplicateEntry,
    NotLeibniz,
    NotMultiplicative,
    ZeroCoefficient,
)
from .exactnum import Rational, Vector, zero_vector

Key = tuple[int, int, int]
Term = tuple[Fraction, int]
Entry = tuple[int, int, int, Fraction, int]
BracketEntry = tuple[int, int, Fraction, int]

DEFAULT_IDENTITY_CAP = 12

FOUR_FAMILY = ("four.1", "four.2", "four.3", "four.4")
TWO_FAMILY = ("two.1", "two.2")


def _normalize_labels(dim: int, labels) -> tuple[str | None, ...]:
    if labels is None:
        return (None,) * dim
    if isinstance(labels, Mapping):
        for k in labels:
            if not 1 <= k <= dim:
                raise IndexError(f"label index {k} out of range 1..{dim}")
        return tuple(labels.get(i) for i in range(1, dim + 1))
    out = tuple(labels)
    if len(out) != dim:
        raise DimensionError(f"expected {dim} labels, got {len(out)}")
    return out


@dataclass(frozen=True)
class TripleSystem:
    """Immutable triple system; build through construct_system."""

    dim: int
    entries: tuple[Entry, ...]
    labels: tuple[str | None, ...]

    @cached_property
    def table(self) -> dict[Key, Term]:
        return {(i, j, k): (c, m) for i, j, k, c, m in self.entries}

    def product(self, i: int, j: int, k: int) -> Term | None:
        """Basis product {b_i, b_j, b_k} as (coeff, target), or None if zero."""
        return self.table.get((i, j, k))


@dataclass(frozen=True)
class BilinearTable:
    """A bilinear bracket [. , .]; entries may sum over several targets."""

    dim: int
    entries: tuple[BracketEntry, ...]
    labels: tuple[str | None, ...]

    @cached_property
    def table(self) -> dict[tuple[int, int], tuple[Term, ...]]:
        out: dict[tuple[int, int], list[Term]] = {}
        for i, j, c, m in self.entries:
            out.setdefault((i, j), []).append((c, m))
        return {k: tuple(v) for k, v in out.items()}


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of an identity check; empty violations means all hold."""

    checked: str
    violations: tuple[tuple[str, tuple[int, ...], Vector], ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def construct_system(dim: int, entries: Iterable[Sequence], labels=None) -> TripleSystem:
    """Validate and build a triple system from (i, j, k, coeff, target) rows."""
    if dim < 1:
        raise ValueError(f"dimension must be at least 1, got {dim}")
    seen: dict[Key, None] = {}
    rows: list[Entry] = []
    for raw in entries:
        i, j, k, coeff, target = raw
        for idx in (i, j, k, target):
            if not 1 <= idx <= dim:
                raise IndexError(f"index {idx} out of range 1..{dim} in entry {tuple(raw)}")
        c = Fraction(coeff)
        if c == 0:
            raise ZeroCoefficient(f"zero coefficient at {(i, j, k)}; omit zero products")
        if (i, j, k) in seen:
            raise DuplicateEntry(f"duplicate table key {(i, j, k)}")
        seen[(i, j, k)] = None
        rows.append((i, j, k, c, target))
    rows.sort(key=lambda e: e[:3])
    return TripleSystem(dim, tuple(rows), _normalize_labels(dim, labels))


def construct_bilinear(dim: int, entries: Iterable[Sequence], labels=None) -> BilinearTable:
    """Validate and build a bilinear bracket from (i, j, coeff, target) rows."""
    if dim < 1:
        raise ValueError(f"dimension must be at least 1, got {dim}")
    seen: set[tuple[int, int, int]] = set()
    rows: list[BracketEntry] = []
    for raw in entries:
        i, j, coeff, target = raw
        for idx in (i, j, target):
            if not 1 <= idx <= dim:
                raise IndexError(f"index {idx} out of range 1..{dim} in entry {tuple(raw)}")
        c = Fraction(coeff)
        if c == 0:
            raise ZeroCoefficient(f"zero coefficient at {(i, j)}; omit zero brackets")
        if (i, j, target) in seen:
            raise DuplicateEntry(f"duplicate bracket term {(i, j)} -> {target}")
        seen.add((i, j, target))
        rows.append((i, j, c, target))
    rows.sort(key=lambda e: (e[0], e[1], e[3]))
    return BilinearTable(dim, tuple(rows), _normalize_labels(dim, labels))


def evaluate_product(T: TripleSystem, x: Vector, y: Vector, z: Vector) -> Vector:
    """Trilinear extension of the table to arbitrary coordinate vectors."""
    for v in (x, y, z):
        if len(v) != T.dim:
            raise DimensionError(f"vector of length {len(v)} in system of dimension {T.dim}")
    acc = [Fraction(0)] * T.dim
    for (i, j, k), (c, m) in T.table.items():
        f = x[i - 1] * y[j - 1] * z[k - 1]
        if f:
            acc[m - 1] += f * c
    return tuple(acc)


# --- identity residuals on basis tuples -----------------------------------
#
# Every identity term is a product nested once, so on basis arguments it is
# at most two table lookups.  Residuals accumulate sparsely as target -> coeff.

Sparse = dict[int, Fraction]


def _acc(acc: Sparse, sign: int, term: Term | None) -> None:
    if term is None:
        return
    c, t = term
    val = acc.get(t, Fraction(0)) + sign * c
    if val:
        acc[t] = val
    else:
        acc.pop(t, None)


def _mid(T: TripleSystem, a: int, inner: Key, f: int) -> Term | None:
    """{a, {inner}, f}"""
    p = T.product(*inner)
    if p is None:
        return None
    c, t = p
    q = T.product(a, t, f)
    return None if q is None else (c * q[0], q[1])


def _lft(T: TripleSystem, inner: Key, d: int, f: int) -> Term | None:
    """{{inner}, d, f}"""
    p = T.product(*inner)
    if p is None:
        return None
    c, t = p
    q = T.product(t, d, f)
    return None if q is None else (c * q[0], q[1])


def _rgt(T: TripleSystem, a: int, b: int, inner: Key) -> Term | None:
    """{a, b, {inner}}"""
    p = T.product(*inner)
    if p is None:
        return None
    c, t = p
    q = T.product(a, b, t)
    return None if q is None else (c * q[0], q[1])


def _residual(T: TripleSystem, ident: str, a: int, b: int, c: int, d: int, f: int) -> Sparse:
    r: Sparse = {}
    if ident == "four.1":
        _acc(r, +1, _mid(T, a, (b, c, d), f))
        _acc(r, +1, _mid(T, a, (c, b, d), f))
    elif ident == "four.2":
        _acc(r, +1, _mid(T, a, (b, c, d), f))
        _acc(r, +1, _mid(T, a, (c, d, b), f))
        _acc(r, +1, _mid(T, a, (d, b, c), f))
    elif ident == "four.3":
        _acc(r, +1, _rgt(T, a, b, (c, d, f)))
        _acc(r, -1, _lft(T, (a, b, c), d, f))
        _acc(r, +1, _lft(T, (a, b, d), c, f))
        _acc(r, -1, _lft(T, (a, b, f), d, c))
        _acc(r, +1, _lft(T, (a, b, f), c, d))
    elif ident == "four.4":
        _acc(r, +1, _lft(T, (c, d, f), b, a))
        _acc(r, -1, _lft(T, (c, d, f), a, b))
        _acc(r, -1, _lft(T, (c, b, a), d, f))
        _acc(r, +1, _lft(T, (c, a, b), d, f))
        _acc(r, -1, _mid(T, c, (a, b, d), f))
        _acc(r, -1, _rgt(T, c, d, (a, b, f)))
    elif ident == "two.1":
        _acc(r, +1, _mid(T, a, (b, c, d), f))
        _acc(r, -1, _lft(T, (a, b, c), d, f))
        _acc(r, +1, _lft(T, (a, c, b), d, f))
        _acc(r, +1, _lft(T, (a, d, b), c, f))
        _acc(r, -1, _lft(T, (a, d, c), b, f))
    elif ident == "two.2":
        _acc(r, +1, _rgt(T, a, b, (c, d, f)))
        _acc(r, -1, _lft(T, (a, b, c), d, f))
        _acc(r, +1, _lft(T, (a, b, d), c, f))
        _acc(r, +1, _lft(T, (a, b, f), c, d))
        _acc(r, -1, _lft(T, (a, b, f), d, c))
    else:
        raise ValueError(f"unknown identity {ident!r}")
    return r


def _sparse_to_vector(dim: int, sparse: Sparse) -> Vector:
    out = [Fraction(0)] * dim
    for t, c in sparse.items():
        out[t - 1] = c
    return tuple(out)


def check_identities(
    T: TripleSystem, family: str = "both", cap: int = DEFAULT_IDENTITY_CAP
) -> IdentityReport:
    """Enumerate all basis 5-tuples and report every violated identity instance.

    Multilinearity makes basis tuples sufficient, which costs dim**5
    evaluations per identity; the cap guards against runaway dimensions.
    """
    if family not in ("four", "two", "both"):
        raise ValueError(f"family must be 'four', 'two', or 'both', got {family!r}")
    if T.dim > cap:
        raise CapExceeded(
            f"dimension {T.dim} exceeds identity-check cap {cap}; raise the cap to force"
        )
    idents: tuple[str, ...] = ()
    if family in ("four", "both"):
        idents += FOUR_FAMILY
    if family in ("two", "both"):
        idents += TWO_FAMILY
    violations = []
    indices = range(1, T.dim + 1)
    for tup in itertools.product(indices, repeat=5):
        for ident in idents:
            sparse = _residual(T, ident, *tup)
            if sparse:
                violations.append((ident, tup, _sparse_to_vector(T.dim, sparse)))
    return IdentityReport(family, tuple(violations))


# --- bilinear brackets and the lift ----------------------------------------


def _bracket_basis(L: BilinearTable, i: int, j: int) -> Sparse:
    out: Sparse = {}
    for c, m in L.table.get((i, j), ()):
        _acc(out, +1, (c, m))
    return out


def _bracket_left(L: BilinearTable, v: Sparse, k: int) -> Sparse:
    """[v, b_k] for a sparse vector v."""
    out: Sparse = {}
    for m, c in v.items():
        for c2, t in L.table.get((m, k), ()):
            _acc(out, +1, (c * c2, t))
    return out


def _bracket_right(L: BilinearTable, i: int, v: Sparse) -> Sparse:
    """[b_i, v] for a sparse vector v."""
    out: Sparse = {}
    for m, c in v.items():
        for c2, t in L.table.get((i, m), ()):
            _acc(out, +1, (c * c2, t))
    return out


def check_leibniz(L: BilinearTable) -> tuple[Key, Vector] | None:
    """First basis triple violating [[x,y],z] = [[x,z],y] + [x,[y,z]], or None.

    Bilinearity of every term makes basis triples sufficient.
    """
    indices = range(1, L.dim + 1)
    for i, j, k in itertools.product(indices, repeat=3):
        res: Sparse = {}
        for m, c in _bracket_left(L, _bracket_basis(L, i, j), k).items():
            _acc(res, +1, (c, m))
        for m, c in _bracket_left(L, _bracket_basis(L, i, k), j).items():
            _acc(res, -1, (c, m))
        for m, c in _bracket_right(L, i, _bracket_basis(L, j, k)).items():
            _acc(res, -1, (c, m))
        if res:
            return (i, j, k), _sparse_to_vector(L.dim, res)
    return None


def lift_from_leibniz(L: BilinearTable) -> TripleSystem:
    """Triple system {x,y,z} = [[x,y],z] of a Leibniz bracket.

    The bracket must pass the Leibniz check and every lifted basis product
    must be a scaled basis vector, otherwise the multiplicative table does
    not exist.
    """
    bad = check_leibniz(L)
    if bad is not None:
        raise NotLeibniz(bad[0])
    entries: list[Entry] = []
    indices = range(1, L.dim + 1)
    for i, j, k in itertools.product(indices, repeat=3):
        w = _bracket_left(L, _bracket_basis(L, i, j), k)
        if not w:
            continue
        if len(w) > 1:
            raise NotMultiplicative((i, j, k), _sparse_to_vector(L.dim, w))
        ((m, c),) = w.items()
        entries.append((i, j, k, c, m))
    return construct_system(L.dim, entries, labels=L.labels)
