"""Green's preorder, the congruence H, and quotients by partitions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from sgzs.cayley import Semigroup, build_semigroup, exponent
from sgzs.errors import CongruenceViolation


@dataclass(frozen=True)
class Partition:
    class_of: tuple[int, ...]
    classes: tuple[frozenset[int], ...]

    @classmethod
    def from_classes(cls, classes: Iterable[Iterable[int]]) -> "Partition":
        classes = tuple(frozenset(c) for c in classes)
        n = sum(len(c) for c in classes)
        class_of = [-1] * n
        for idx, members in enumerate(classes):
            if not members:
                raise ValueError("empty class")
            for a in members:
                if not 0 <= a < n or class_of[a] != -1:
                    raise ValueError("classes must be disjoint and cover 0..n-1")
                class_of[a] = idx
        return cls(tuple(class_of), classes)

    @classmethod
    def from_key(cls, n: int, key) -> "Partition":
        """Group ``0..n-1`` by ``key``; classes are ordered by their least element."""
        groups: dict = {}
        for a in range(n):
            groups.setdefault(key(a), []).append(a)
        return cls.from_classes(sorted(groups.values(), key=min))

    def __len__(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class QuotientMap:
    target: Semigroup
    projection: tuple[int, ...]


def green_leq(s: Semigroup, a: int, b: int) -> bool:
    """``a <=_H b``: ``a = b + t`` for some ``t`` in ``S^0``."""
    return a == b or a in s.table[b]


def green_strictly_less(s: Semigroup, a: int, b: int) -> bool:
    return green_leq(s, a, b) and not green_leq(s, b, a)


def green_classes(s: Semigroup) -> Partition:
    n = s.n
    below = [frozenset(s.table[b]) | {b} for b in range(n)]

    def key(a):
        # H_a is determined by the set of elements mutually comparable with a
        return frozenset(b for b in range(n) if a in below[b] and b in below[a])

    return Partition.from_key(n, key)


def quotient(s: Semigroup, partition: Partition) -> QuotientMap:
    """Quotient by a congruence given as a partition; target id ``k`` is class ``k``.

    Raises CongruenceViolation if the partition is not compatible with addition.
    """
    cls = partition.class_of
    m = len(partition.classes)
    rows: list[list] = [[None] * m for _ in range(m)]
    for a in s.elements:
        for b in s.elements:
            ca, cb, cab = cls[a], cls[b], cls[s.table[a][b]]
            seen = rows[ca][cb]
            if seen is None:
                rows[ca][cb] = cab
            elif seen != cab:
                raise CongruenceViolation(
                    f"classes {ca} and {cb} add to both {seen} and {cab} (witness {a}+{b})"
                )
    return QuotientMap(build_semigroup(rows), tuple(cls))


def quotient_green(s: Semigroup) -> QuotientMap:
    """``S/H``; classes are ordered by their least element."""
    return quotient(s, green_classes(s))


def is_group_free(s: Semigroup) -> bool:
    return exponent(s) == 1
