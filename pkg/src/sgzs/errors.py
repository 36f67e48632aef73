"""Exception hierarchy. Every error raised by the library derives from SemigroupError."""


class SemigroupError(ValueError):
    pass


class InvalidTable(SemigroupError):
    """The input table does not describe a commutative semigroup."""


class EntryOutOfRange(InvalidTable):
    def __init__(self, i, j, value=None):
        self.i, self.j, self.value = i, j, value
        super().__init__(f"entry ({i},{j}) = {value!r} is out of range")


class NotCommutative(InvalidTable):
    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"table[{i}][{j}] != table[{j}][{i}]")


class NotAssociative(InvalidTable):
    def __init__(self, i, j, k):
        self.i, self.j, self.k = i, j, k
        super().__init__(f"({i}+{j})+{k} != {i}+({j}+{k})")


class CongruenceViolation(SemigroupError):
    pass


class NotAnIdeal(SemigroupError):
    pass


class NotNilsemigroup(SemigroupError):
    pass


class NotArchimedean(SemigroupError):
    pass


class MultipleIdempotents(SemigroupError):
    pass


class ComponentNotClosed(SemigroupError):
    pass


class NotIdempotent(SemigroupError):
    pass


class NotAMonoid(SemigroupError):
    pass


class EmptyInput(SemigroupError):
    pass


class GapTooLarge(SemigroupError):
    pass


class OrderTooLarge(SemigroupError):
    pass


class CatalogSyntaxError(InvalidTable):
    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")
