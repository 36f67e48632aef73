"""Sequences over a semigroup and the invariants d, D, kappa and E.

A sequence is a multiplicity vector: ``seq[a]`` copies of element ``a``.
Partial sums live in ``S^0``; the empty sum is the identity of ``S`` when it
has one and otherwise a fresh identity (id ``n``) that never equals the sum of
a nonempty sequence. That single convention decides every question about
empty subsequences below.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import Iterator, Optional, Union

from sgzs.cayley import Semigroup, adjoin_identity, exponent, special_elements
from sgzs.errors import EmptyInput, GapTooLarge, NotAMonoid

Sequence = tuple[int, ...]


@dataclass(frozen=True)
class SigmaResult:
    value: Optional[int]
    defined: bool


@dataclass(frozen=True)
class CapExceeded:
    cap: int

    def __str__(self) -> str:
        return f">{self.cap}"


class _Arith:
    """Addition on ``S^0`` plus bitmask helpers over its elements."""

    def __init__(self, s: Semigroup):
        self.n = s.n
        self.table = adjoin_identity(s).table
        ident = special_elements(s).identity
        self.has_identity = ident is not None
        self.empty = ident if self.has_identity else s.n
        size = len(self.table)
        # shift[a][mask] = {x + a : x in mask}
        self.shift = []
        for a in range(s.n):
            col = [1 << self.table[x][a] for x in range(size)]
            row = [0] * (1 << size)
            for mask in range(1, 1 << size):
                low = mask & -mask
                row[mask] = row[mask ^ low] | col[low.bit_length() - 1]
            self.shift.append(row)


@lru_cache(maxsize=256)
def _arith(s: Semigroup) -> _Arith:
    return _Arith(s)


def sequence(n: int, terms=()) -> Sequence:
    """Multiplicity vector of the given terms."""
    counts = [0] * n
    for a in terms:
        counts[a] += 1
    return tuple(counts)


def terms_of(seq: Sequence) -> list[int]:
    return [a for a, m in enumerate(seq) for _ in range(m)]


def multisets(n: int, length: int) -> Iterator[Sequence]:
    """All multiplicity vectors of the given length, in lexicographic term order."""
    for combo in combinations_with_replacement(range(n), length):
        yield sequence(n, combo)


def _check_seq(s: Semigroup, seq) -> Sequence:
    seq = tuple(seq)
    if len(seq) != s.n or any(m < 0 for m in seq):
        raise ValueError(f"not a multiplicity vector over {s.n} elements: {seq}")
    return seq


def sigma(s: Semigroup, seq: Sequence) -> SigmaResult:
    seq = _check_seq(s, seq)
    ar = _arith(s)
    total = ar.empty
    for a, m in enumerate(seq):
        for _ in range(m):
            total = ar.table[total][a]
    if total == s.n:
        return SigmaResult(None, False)
    return SigmaResult(total, True)


def _extend(ar: _Arith, total: int, proper: int, a: int) -> tuple[int, int]:
    # proper sub-sums of T.a: those of T, sigma(T) itself, and (proper of T) + a
    return ar.table[total][a], proper | (1 << total) | ar.shift[a][proper]


def is_reducible(s: Semigroup, seq: Sequence) -> bool:
    seq = _check_seq(s, seq)
    if not any(seq):
        raise EmptyInput("reducibility is defined for nonempty sequences")
    ar = _arith(s)
    total, proper = ar.empty, 0
    for a in terms_of(seq):
        total, proper = _extend(ar, total, proper, a)
    return bool(proper >> total & 1)


@lru_cache(maxsize=256)
def _irreducibles(s: Semigroup) -> tuple[Sequence, ...]:
    ar = _arith(s)
    n = s.n
    found = []
    # irreducibility is inherited by sub-multisets, so extending in
    # non-decreasing id order reaches every irreducible sequence
    stack = [((0,) * n, ar.empty, 0, 0)]
    while stack:
        seq, total, proper, low = stack.pop()
        for a in range(n - 1, low - 1, -1):
            t2, p2 = _extend(ar, total, proper, a)
            if p2 >> t2 & 1:
                continue
            child = seq[:a] + (seq[a] + 1,) + seq[a + 1:]
            found.append(child)
            stack.append((child, t2, p2, a))
    found.sort(key=lambda q: (sum(q), terms_of(q)))
    return tuple(found)


def enumerate_irreducible(s: Semigroup) -> list[Sequence]:
    """Every irreducible sequence, shortest first."""
    return list(_irreducibles(s))


def davenport(s: Semigroup) -> int:
    return 1 + max((sum(q) for q in _irreducibles(s)), default=0)


def _min_equal_sum_subset(s: Semigroup, seq: Sequence) -> int:
    target = sigma(s, seq)
    best = sum(seq)
    for sub in product(*(range(m + 1) for m in seq)):
        size = sum(sub)
        if size < best and sigma(s, sub) == target:
            best = size
    return best


def small_davenport(s: Semigroup) -> int:
    """Small Davenport constant by direct search, independent of the irreducible enumeration.

    For each length L the worst minimal equal-sum subset is found by brute force;
    once it drops below L no irreducible sequence of length >= L exists, so the
    running maximum is final.
    """
    best, length = 0, 1
    while True:
        worst = max(_min_equal_sum_subset(s, t) for t in multisets(s.n, length))
        best = max(best, worst)
        if worst < length:
            return best
        length += 1


def kappa(s: Semigroup) -> int:
    e = exponent(s)
    return -(-s.n // e) * e


def _kept_sums(ar: _Arith, seq: Sequence, max_kept: int) -> list[int]:
    # reach[k]: sums (as a mask over S^0) of sub-multisets with k terms
    reach = [0] * (max_kept + 1)
    reach[0] = 1 << ar.empty
    for a, m in enumerate(seq):
        if not m:
            continue
        shift = ar.shift[a]
        nxt = reach[:]
        for k in range(max_kept + 1):
            mask = reach[k]
            for c in range(1, m + 1):
                if k + c > max_kept or not mask:
                    break
                mask = shift[mask]
                nxt[k + c] |= mask
        reach = nxt
    return reach


def balanced_subsequence_exists(s: Semigroup, seq: Sequence, gap: int) -> bool:
    """Is there ``B | seq`` with ``|seq| - |B| = gap`` and ``sigma(B) = sigma(seq)``?"""
    seq = _check_seq(s, seq)
    length = sum(seq)
    if length == 0:
        raise EmptyInput("sequence is empty")
    if gap < 1:
        raise ValueError("gap must be positive")
    if gap > length:
        raise GapTooLarge(f"gap {gap} exceeds length {length}")
    ar = _arith(s)
    kept = length - gap
    total = sigma(s, seq).value
    return bool(_kept_sums(ar, seq, kept)[kept] >> total & 1)


def _first_unbalanced(s: Semigroup, length: int, gap: int) -> Optional[Sequence]:
    """A length-``length`` sequence with no balanced subsequence, or None if all pass.

    Walks the multisets depth-first by element, sharing the subset-sum table
    between sequences with a common prefix.
    """
    ar = _arith(s)
    n = s.n
    kept = length - gap
    table, shift = ar.table, ar.shift
    counts = [0] * n

    def walk(a, remaining, total, reach):
        if a == n - 1:
            mults = (remaining,)
        else:
            mults = range(remaining, -1, -1)
        for m in mults:
            r, t = reach, total
            if m:
                r = reach[:]
                for k in range(kept + 1):
                    mask = reach[k]
                    for c in range(1, m + 1):
                        if k + c > kept or not mask:
                            break
                        mask = shift[a][mask]
                        r[k + c] |= mask
                for _ in range(m):
                    t = table[t][a]
            counts[a] = m
            if a == n - 1 or remaining - m == 0:
                for b in range(a + 1, n):
                    counts[b] = 0
                if not r[kept] >> t & 1:
                    return tuple(counts)
            else:
                bad = walk(a + 1, remaining - m, t, r)
                if bad is not None:
                    return bad
        return None

    start = [0] * (kept + 1)
    start[0] = 1 << ar.empty
    return walk(0, length, ar.empty, start)


def egz_check_length(s: Semigroup, length: int, gap: Optional[int] = None) -> Optional[Sequence]:
    """Return a counterexample of the given length, or None if every sequence is balanced."""
    gap = kappa(s) if gap is None else gap
    if length < gap:
        return sequence(s.n, [0] * length)
    return _first_unbalanced_cached(s, length, gap)


@lru_cache(maxsize=1024)
def _first_unbalanced_cached(s: Semigroup, length: int, gap: int) -> Optional[Sequence]:
    return _first_unbalanced(s, length, gap)


def egz_constant(
    s: Semigroup, cap: int, start: Optional[int] = None
) -> Union[int, CapExceeded]:
    """Least length ``l`` such that every length-``l`` sequence has a balanced subsequence.

    The search ascends from ``start`` (default: kappa, or D + kappa - 1 for monoids,
    which is a certified lower bound there) and stops at ``cap``.
    """
    k = kappa(s)
    if cap < k:
        raise ValueError(f"cap {cap} is below kappa = {k}")
    if start is None:
        start = k
        if special_elements(s).identity is not None:
            start = max(start, egz_lower_bound_monoid(s))
    start = max(start, k)
    for length in range(start, cap + 1):
        if egz_check_length(s, length, k) is None:
            return length
    return CapExceeded(cap)


def monoid_extremal_sequence(s: Semigroup) -> Sequence:
    """A longest irreducible sequence padded with ``kappa - 1`` copies of the identity."""
    ident = special_elements(s).identity
    if ident is None:
        raise NotAMonoid("the extremal sequence needs an identity element")
    irr = _irreducibles(s)
    longest = davenport(s) - 1
    base = next((q for q in irr if sum(q) == longest), (0,) * s.n)
    padded = list(base)
    padded[ident] += kappa(s) - 1
    return tuple(padded)


def egz_lower_bound_monoid(s: Semigroup) -> int:
    """``D + kappa - 1``, after checking that the extremal sequence of length one less is unbalanced."""
    witness = monoid_extremal_sequence(s)
    k = kappa(s)
    length = sum(witness)
    if length >= k and balanced_subsequence_exists(s, witness, k):
        raise AssertionError(f"extremal sequence {witness} has a balanced subsequence")
    return length + 1
