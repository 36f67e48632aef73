"""Zero-sum invariants and structure of finite commutative semigroups."""

from sgzs.cayley import (
    IndexPeriod,
    Semigroup,
    SpecialElements,
    adjoin_identity,
    build_semigroup,
    exponent,
    index_and_period,
    multiple,
    op_sum,
    special_elements,
)
from sgzs.errors import SemigroupError

__version__ = "0.1.0"

__all__ = [
    "IndexPeriod",
    "Semigroup",
    "SemigroupError",
    "SpecialElements",
    "adjoin_identity",
    "build_semigroup",
    "exponent",
    "index_and_period",
    "multiple",
    "op_sum",
    "special_elements",
    "__version__",
]
