import pytest

from sgzs.cayley import build_semigroup, cyclic_group, direct_product, monogenic

# element names: N2 a=0 inf=1; SL2 e=0 f=1; E3 0_G=0 g=1 inf=2; M3 x=0 2x=1 3x=2
Z1 = build_semigroup([[0]], name="Z1")
C2 = cyclic_group(2)
C3 = cyclic_group(3)
N2 = build_semigroup([[1, 1], [1, 1]], name="N2")
SL2 = build_semigroup([[0, 1], [1, 1]], name="SL2")
E3 = build_semigroup([[0, 1, 2], [1, 0, 2], [2, 2, 2]], name="E3")
M3 = monogenic(2, 2)
NIL3 = monogenic(3, 1)  # {a, 2a, inf} with 3a = inf
C2xC2 = direct_product(C2, C2)

FIXTURES = {"Z1": Z1, "C2": C2, "C3": C3, "N2": N2, "SL2": SL2, "E3": E3, "M3": M3}


@pytest.fixture(params=sorted(FIXTURES), ids=sorted(FIXTURES))
def fixture_semigroup(request):
    return FIXTURES[request.param]
