import pytest

from conftest import C2, C3, E3, M3, N2, NIL3, SL2, Z1
from sgzs.cayley import cyclic_group, is_group, special_elements, subsemigroup
from sgzs.catalog import generate_commutative, isomorphism
from sgzs.decomposition import (
    annihilator,
    archimedean_data,
    elementary_split,
    ideals,
    is_archimedean,
    is_closed,
    is_ideal,
    kernel_retraction,
    maximal_subgroup_at,
    minimal_ideal,
    nilpotency,
    p_classes,
    rees_quotient,
    semilattice_decomposition,
)
from sgzs.errors import NotAnIdeal, NotArchimedean, NotIdempotent, NotNilsemigroup
from sgzs.green import green_strictly_less
from sgzs.zerosum import davenport

CATALOG = [e.semigroup for n in range(1, 5) for e in generate_commutative(n)]
SMALL = [s for s in CATALOG if s.n <= 3]


def test_is_ideal():
    assert is_ideal(N2, {1})
    assert is_ideal(E3, {2})
    assert not is_ideal(C2, {0})


def test_minimal_ideal():
    assert minimal_ideal(M3) == {1, 2}
    assert minimal_ideal(N2) == {1}
    assert minimal_ideal(C3) == {0, 1, 2}


def test_rees_quotient():
    q = rees_quotient(M3, {1, 2})
    assert q.target == N2
    assert q.projection == (0, 1, 1)
    assert rees_quotient(N2, {1}).target == N2
    q = rees_quotient(E3, {2})
    assert q.target.n == 3 and isomorphism(q.target, E3) is not None
    with pytest.raises(NotAnIdeal):
        rees_quotient(C2, {0})


def test_rees_quotient_zero_is_last():
    for s in SMALL:
        for ideal in ideals(s):
            q = rees_quotient(s, ideal)
            assert q.target.n == s.n - len(ideal) + 1
            assert special_elements(q.target).zero == q.target.n - 1


def test_nilpotency():
    assert nilpotency(N2) == 2
    assert nilpotency(Z1) == 1
    assert nilpotency(C2) is None
    assert nilpotency(SL2) is None
    assert nilpotency(NIL3) == 3


def test_annihilator():
    # id 2 is the adjoined identity of N2^0
    assert annihilator(N2, 0) == {0, 1}
    assert annihilator(N2, 1) == {0, 1, 2}
    assert annihilator(Z1, 0) == {0, 1}
    with pytest.raises(NotNilsemigroup):
        annihilator(C2, 0)


def test_p_classes():
    assert p_classes(N2).classes == (frozenset({0}), frozenset({1}))
    assert p_classes(Z1).classes == (frozenset({0}),)
    assert len(p_classes(NIL3)) == 3
    with pytest.raises(NotNilsemigroup):
        p_classes(SL2)


def test_is_archimedean():
    assert is_archimedean(M3)
    assert not is_archimedean(SL2)
    assert is_archimedean(C2)


def test_semilattice_decomposition_examples():
    d = semilattice_decomposition(SL2)
    assert d.components.classes == (frozenset({0}), frozenset({1}))
    assert d.semilattice == SL2
    assert len(semilattice_decomposition(M3).components) == 1
    d = semilattice_decomposition(E3)
    assert d.components.classes == (frozenset({0, 1}), frozenset({2}))
    assert d.semilattice == SL2


def test_archimedean_data():
    data = archimedean_data(M3)
    assert data.idempotent == 1 and data.kernel == {1, 2}
    assert data.nil_quotient == N2 and data.nilpotency_index_of_quotient == 2
    data = archimedean_data(C3)
    assert data.kernel == {0, 1, 2} and data.nil_quotient == Z1
    assert data.nilpotency_index_of_quotient == 1
    data = archimedean_data(N2)
    assert (data.idempotent, data.kernel, data.nilpotency_index_of_quotient) == (1, {1}, 2)
    with pytest.raises(NotArchimedean):
        archimedean_data(SL2)


def test_kernel_retraction():
    m3 = archimedean_data(M3)
    assert kernel_retraction(M3, m3, 0) == 2
    assert kernel_retraction(M3, m3, 1) == 1
    assert kernel_retraction(N2, archimedean_data(N2), 0) == 1
    for s in CATALOG:
        if is_archimedean(s):
            data = archimedean_data(s)
            for a in s.elements:
                r = kernel_retraction(s, data, a)
                assert r in data.kernel
                assert kernel_retraction(s, data, r) == r


def test_elementary_split():
    split = elementary_split(E3)
    assert split.group_part == {0, 1} and split.nil_part == {2}
    assert elementary_split(N2) is None
    assert elementary_split(C2) is None
    assert elementary_split(Z1) is None
    # trivial group part is allowed
    assert elementary_split(SL2).group_part == {0}


def test_maximal_subgroup_at():
    assert maximal_subgroup_at(M3, 1) == C2
    assert maximal_subgroup_at(SL2, 0) == Z1
    assert maximal_subgroup_at(E3, 0) == C2
    with pytest.raises(NotIdempotent):
        maximal_subgroup_at(M3, 0)


@pytest.mark.parametrize("s", CATALOG, ids=lambda s: str(s.table))
def test_structure_invariants(s):
    n = s.n
    arch = is_archimedean(s)
    kernel = minimal_ideal(s)
    kernel_group = is_group(subsemigroup(s, kernel)[0])
    quotient_nil = nilpotency(rees_quotient(s, kernel).target) is not None
    assert arch == (kernel_group and quotient_nil)

    d = semilattice_decomposition(s)
    for comp in d.components.classes:
        assert is_closed(s, comp)
        assert is_archimedean(subsemigroup(s, comp)[0])
    assert all(d.semilattice.table[y][y] == y for y in d.semilattice.elements)

    if nilpotency(s) is not None:
        zero = special_elements(s).zero
        for a in range(n):
            for b in range(n):
                if s.table[a][b] == a:
                    assert a == zero
                if green_strictly_less(s, a, b):
                    assert annihilator(s, b) < annihilator(s, a)

    split = elementary_split(s)
    if split is not None:
        nil, ids = subsemigroup(s, split.nil_part)
        for cls in p_classes(nil).classes:
            members = {ids[i] for i in cls}
            for g in split.group_part:
                assert {s.table[g][x] for x in members} == members


@pytest.mark.parametrize("s", CATALOG, ids=lambda s: str(s.table))
def test_rees_monotonicity(s):
    for ideal in ideals(s):
        assert davenport(s) >= davenport(rees_quotient(s, ideal).target)


def test_ideal_enumeration_modes():
    assert set(ideals(M3)) == {frozenset({1, 2}), frozenset({0, 1, 2})}
    c4 = cyclic_group(4)
    assert list(ideals(c4)) == [frozenset(range(4))]
