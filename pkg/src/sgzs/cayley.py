"""Finite commutative semigroups as validated Cayley tables.

Elements are the dense ids ``0..n-1`` and ``table[i][j]`` is ``i + j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from sgzs.errors import (
    EntryOutOfRange,
    InvalidTable,
    NotAssociative,
    NotCommutative,
)

Table = tuple[tuple[int, ...], ...]


def _validate(table: Table) -> None:
    n = len(table)
    if n == 0:
        raise InvalidTable("a semigroup needs at least one element")
    for i, row in enumerate(table):
        if len(row) != n:
            raise InvalidTable(f"row {i} has {len(row)} entries, expected {n}")
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise EntryOutOfRange(i, j, v)
    for i in range(n):
        for j in range(i + 1, n):
            if table[i][j] != table[j][i]:
                raise NotCommutative(i, j)
    for i in range(n):
        row_i = table[i]
        for j in range(n):
            ij = row_i[j]
            row_j = table[j]
            for k in range(n):
                if table[ij][k] != row_i[row_j[k]]:
                    raise NotAssociative(i, j, k)


@dataclass(frozen=True)
class Semigroup:
    """An immutable commutative semigroup; construction validates the table."""

    table: Table
    name: str = field(default="", compare=False)

    def __post_init__(self):
        table = tuple(tuple(row) for row in self.table)
        object.__setattr__(self, "table", table)
        _validate(table)

    @property
    def n(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    def add(self, a: int, b: int) -> int:
        return self.table[a][b]

    def __len__(self) -> int:
        return len(self.table)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<Semigroup{label} n={self.n} {list(map(list, self.table))}>"


@dataclass(frozen=True)
class IndexPeriod:
    index: int
    period: int


@dataclass(frozen=True)
class SpecialElements:
    identity: Optional[int]
    zero: Optional[int]
    idempotents: frozenset[int]


def build_semigroup(table: Sequence[Sequence[int]], name: str = "") -> Semigroup:
    """Validate ``table`` (range, then symmetry, then associativity) and wrap it."""
    return Semigroup(tuple(tuple(row) for row in table), name=name)


def op_sum(s: Semigroup, a: int, b: int) -> int:
    return s.table[a][b]


def index_and_period(s: Semigroup, a: int) -> IndexPeriod:
    seen = {}
    k, x = 1, a
    while x not in seen:
        seen[x] = k
        k += 1
        x = s.table[x][a]
    r = seen[x]
    return IndexPeriod(index=r, period=k - r)


def multiple(s: Semigroup, a: int, k: int) -> int:
    """Return ``k*a`` for ``k >= 1``; large ``k`` is folded back into the cycle of ``a``."""
    if k < 1:
        raise ValueError("multiples are defined for k >= 1")
    ip = index_and_period(s, a)
    if k > ip.index + ip.period:
        k = ip.index + (k - ip.index) % ip.period
    x = a
    for _ in range(k - 1):
        x = s.table[x][a]
    return x


def exponent(s: Semigroup) -> int:
    return math.lcm(*(index_and_period(s, a).period for a in s.elements))


def special_elements(s: Semigroup) -> SpecialElements:
    n = s.n
    identities = [e for e in range(n) if all(s.table[e][a] == a for a in range(n))]
    zeros = [z for z in range(n) if all(s.table[z][a] == z for a in range(n))]
    # two-sided identities and zeros are unique in any semigroup
    assert len(identities) <= 1 and len(zeros) <= 1
    return SpecialElements(
        identity=identities[0] if identities else None,
        zero=zeros[0] if zeros else None,
        idempotents=frozenset(a for a in range(n) if s.table[a][a] == a),
    )


def adjoin_identity(s: Semigroup) -> Semigroup:
    """Return ``S^0``: ``s`` itself if it is a monoid, else ``s`` plus a new identity ``n``."""
    if special_elements(s).identity is not None:
        return s
    return _with_new_identity(s)


def _with_new_identity(s: Semigroup) -> Semigroup:
    n = s.n
    rows = [list(row) + [i] for i, row in enumerate(s.table)]
    rows.append(list(range(n + 1)))
    return build_semigroup(rows, name=f"{s.name}^0" if s.name else "")


def subsemigroup(s: Semigroup, members) -> tuple[Semigroup, list[int]]:
    """Restrict ``s`` to a closed subset; returns the relabelled semigroup and new->old ids."""
    order = sorted(members)
    new_id = {old: i for i, old in enumerate(order)}
    try:
        rows = [[new_id[s.table[a][b]] for b in order] for a in order]
    except KeyError:
        raise InvalidTable(f"subset {order} is not closed under addition") from None
    return build_semigroup(rows), order


def is_group(s: Semigroup) -> bool:
    e = special_elements(s).identity
    if e is None:
        return False
    return all(e in s.table[a] for a in s.elements)


def cyclic_group(n: int) -> Semigroup:
    return build_semigroup([[(i + j) % n for j in range(n)] for i in range(n)], name=f"C{n}")


def direct_product(s: Semigroup, t: Semigroup) -> Semigroup:
    m = t.n
    pairs = [(a, b) for a in s.elements for b in t.elements]
    rows = [
        [s.table[a][c] * m + t.table[b][d] for (c, d) in pairs]
        for (a, b) in pairs
    ]
    name = f"{s.name}x{t.name}" if s.name and t.name else ""
    return build_semigroup(rows, name=name)


def monogenic(index: int, period: int) -> Semigroup:
    """The monogenic semigroup ``<x>`` with ``index*x = (index+period)*x``; element ``k-1`` is ``k*x``."""
    size = index + period - 1

    def reduce(k):
        return k if k <= size else index + (k - index) % period

    rows = [[reduce(i + j + 2) - 1 for j in range(size)] for i in range(size)]
    return build_semigroup(rows, name=f"M({index},{period})")
