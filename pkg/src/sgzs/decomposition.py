"""Ideals, Rees quotients, nil and archimedean structure, elementary splits."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional

from sgzs.cayley import (
    Semigroup,
    index_and_period,
    is_group,
    special_elements,
    subsemigroup,
)
from sgzs.errors import (
    ComponentNotClosed,
    MultipleIdempotents,
    NotAnIdeal,
    NotArchimedean,
    NotIdempotent,
    NotNilsemigroup,
)
from sgzs.green import Partition, QuotientMap, green_classes, green_leq, quotient


@dataclass(frozen=True)
class ElementarySplit:
    group_part: frozenset[int]
    nil_part: frozenset[int]


@dataclass(frozen=True)
class ArchimedeanData:
    idempotent: int
    kernel: frozenset[int]
    nil_quotient: Semigroup
    nilpotency_index_of_quotient: int


@dataclass(frozen=True)
class SemilatticeDecomposition:
    components: Partition
    semilattice: Semigroup


def is_ideal(s: Semigroup, subset) -> bool:
    members = frozenset(subset)
    if not members:
        raise ValueError("ideals are nonempty")
    return all(s.table[a][x] in members for a in members for x in s.elements)


def is_closed(s: Semigroup, subset) -> bool:
    members = frozenset(subset)
    return all(s.table[a][b] in members for a in members for b in members)


def principal_ideal(s: Semigroup, a: int) -> frozenset[int]:
    """``a + S^0``."""
    return frozenset(s.table[a]) | {a}


def minimal_ideal(s: Semigroup) -> frozenset[int]:
    """The kernel: the ideal generated by an element lying below every other in ``<=_H``."""
    bottom = next(
        a for a in s.elements if all(green_leq(s, a, b) for b in s.elements)
    )
    return principal_ideal(s, bottom)


def ideals(s: Semigroup, exhaustive_up_to: int = 3) -> Iterator[frozenset[int]]:
    """All ideals for small orders, otherwise the distinct principal ideals."""
    if s.n <= exhaustive_up_to:
        for size in range(1, s.n + 1):
            for subset in combinations(s.elements, size):
                if is_ideal(s, subset):
                    yield frozenset(subset)
    else:
        seen = set()
        for a in s.elements:
            ideal = principal_ideal(s, a)
            if ideal not in seen:
                seen.add(ideal)
                yield ideal


def rees_quotient(s: Semigroup, ideal) -> QuotientMap:
    """Collapse ``ideal`` to a zero; survivors keep their relative order and the zero is last."""
    ideal = frozenset(ideal)
    if not ideal or not is_ideal(s, ideal):
        raise NotAnIdeal(f"{sorted(ideal)} is not an ideal")
    rest = [a for a in s.elements if a not in ideal]
    classes = [{a} for a in rest] + [ideal]
    return quotient(s, Partition.from_classes(classes))


def nilpotency(s: Semigroup) -> Optional[int]:
    """Nilpotency index ``L(S)``, or None when ``s`` is not a nilsemigroup."""
    zero = special_elements(s).zero
    if zero is None:
        return None
    layer = frozenset(s.elements)
    t = 1
    while len(layer) > 1:
        nxt = frozenset(s.table[a][x] for a in layer for x in s.elements)
        if nxt == layer:
            return None
        layer, t = nxt, t + 1
    return t


def is_nil(s: Semigroup) -> bool:
    return nilpotency(s) is not None


def annihilator(s: Semigroup, a: int) -> frozenset[int]:
    """``inf:a`` over ``N^0 = N + {0}``, where id ``s.n`` stands for the adjoined identity."""
    if nilpotency(s) is None:
        raise NotNilsemigroup("annihilators are taken in a nilsemigroup")
    zero = special_elements(s).zero
    ann = {x for x in s.elements if s.table[x][a] == zero}
    if a == zero:
        ann.add(s.n)
    return frozenset(ann)


def p_classes(s: Semigroup) -> Partition:
    """Classes of the equal-annihilator congruence on a nilsemigroup."""
    if nilpotency(s) is None:
        raise NotNilsemigroup("P-classes are defined on nilsemigroups")
    anns = [annihilator(s, a) for a in s.elements]
    return Partition.from_key(s.n, lambda a: anns[a])


def _multiples(s: Semigroup, a: int) -> set[int]:
    ip = index_and_period(s, a)
    out, x = {a}, a
    for _ in range(ip.index + ip.period):
        x = s.table[x][a]
        out.add(x)
    return out


def _divides_power_matrix(s: Semigroup) -> list[list[bool]]:
    # m[a][b]: some multiple of a lies in b + S
    mult = [_multiples(s, a) for a in s.elements]
    below = [set(s.table[b]) for b in s.elements]
    return [[bool(mult[a] & below[b]) for b in s.elements] for a in s.elements]


def is_archimedean(s: Semigroup) -> bool:
    return all(all(row) for row in _divides_power_matrix(s))


def semilattice_decomposition(s: Semigroup) -> SemilatticeDecomposition:
    m = _divides_power_matrix(s)
    components = Partition.from_key(
        s.n, lambda a: frozenset(b for b in s.elements if m[a][b] and m[b][a])
    )
    for comp in components.classes:
        if not is_closed(s, comp):
            raise ComponentNotClosed(f"component {sorted(comp)} is not a subsemigroup")
    target = quotient(s, components).target
    assert all(target.table[y][y] == y for y in target.elements)
    return SemilatticeDecomposition(components, target)


def archimedean_data(s: Semigroup) -> ArchimedeanData:
    if not is_archimedean(s):
        raise NotArchimedean("semigroup is not archimedean")
    idempotents = special_elements(s).idempotents
    if len(idempotents) != 1:
        raise MultipleIdempotents(f"idempotents {sorted(idempotents)}")
    (e,) = idempotents
    kernel = frozenset(s.table[e])
    h_e = green_classes(s).classes[green_classes(s).class_of[e]]
    assert kernel == h_e, "kernel must equal H_e"
    assert is_group(subsemigroup(s, kernel)[0]), "kernel must be a group"
    nil_quotient = rees_quotient(s, kernel).target
    index = nilpotency(nil_quotient)
    assert index is not None, "S/K must be a nilsemigroup"
    return ArchimedeanData(e, kernel, nil_quotient, index)


def kernel_retraction(s: Semigroup, data: ArchimedeanData, a: int) -> int:
    return s.table[data.idempotent][a]


def elementary_split(s: Semigroup) -> Optional[ElementarySplit]:
    """``S = G u N`` with both parts nonempty, or None."""
    sp = special_elements(s)
    if sp.identity is None or sp.zero is None or sp.identity == sp.zero:
        return None
    h = green_classes(s)
    group_part = h.classes[h.class_of[sp.identity]]
    nil_part = frozenset(s.elements) - group_part
    if not nil_part or sp.zero not in nil_part:
        return None
    if not is_closed(s, group_part) or not is_ideal(s, nil_part):
        return None
    g, g_ids = subsemigroup(s, group_part)
    if not is_group(g) or g_ids[special_elements(g).identity] != sp.identity:
        return None
    nil, nil_ids = subsemigroup(s, nil_part)
    nil_zero = special_elements(nil).zero
    if nilpotency(nil) is None or nil_ids[nil_zero] != sp.zero:
        return None
    return ElementarySplit(group_part, nil_part)


def maximal_subgroup_at(s: Semigroup, e: int) -> Semigroup:
    if s.table[e][e] != e:
        raise NotIdempotent(f"{e} is not idempotent")
    h = green_classes(s)
    g, ids = subsemigroup(s, h.classes[h.class_of[e]])
    assert is_group(g) and ids[special_elements(g).identity] == e
    return g
