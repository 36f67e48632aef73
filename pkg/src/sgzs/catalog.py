"""Cayley-table files, canonical forms and exhaustive generation up to isomorphism."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from itertools import permutations
from pathlib import Path
from typing import Iterator, Optional, Union

from sgzs.cayley import Semigroup, build_semigroup, index_and_period
from sgzs.errors import CatalogSyntaxError, OrderTooLarge

MAX_CANONICAL_ORDER = 8
MAX_GENERATION_ORDER = 5


@dataclass(frozen=True)
class CatalogEntry:
    semigroup: Semigroup
    canonical: bytes
    source: Union[str, Path] = "generated"

    @property
    def digest(self) -> str:
        return canonical_digest(self.canonical)


def parse(text: str) -> Semigroup:
    """Read the text format: the order on one line, then one row per line.

    Blank lines and lines starting with '#' are skipped.
    """
    rows: list[list[int]] = []
    n: Optional[int] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values = [int(tok) for tok in line.split()]
        except ValueError:
            raise CatalogSyntaxError(lineno, f"expected integers, got {raw!r}") from None
        if n is None:
            if len(values) != 1 or values[0] < 1:
                raise CatalogSyntaxError(lineno, "first line must hold the positive order n")
            n = values[0]
            continue
        if len(rows) == n:
            raise CatalogSyntaxError(lineno, f"more than {n} rows")
        if len(values) != n:
            raise CatalogSyntaxError(lineno, f"expected {n} entries, got {len(values)}")
        rows.append(values)
    if n is None:
        raise CatalogSyntaxError(1, "missing order line")
    if len(rows) != n:
        raise CatalogSyntaxError(len(text.splitlines()) + 1, f"expected {n} rows, got {len(rows)}")
    return build_semigroup(rows)


def serialize(s: Semigroup) -> str:
    lines = [str(s.n)] + [" ".join(map(str, row)) for row in s.table]
    return "\n".join(lines) + "\n"


def load(path: Union[str, Path]) -> Semigroup:
    return parse(Path(path).read_text(encoding="utf-8"))


def relabel(s: Semigroup, perm) -> Semigroup:
    """Rename element ``i`` to ``perm[i]``."""
    n = s.n
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            rows[perm[i]][perm[j]] = perm[s.table[i][j]]
    return build_semigroup(rows, name=s.name)


def canonical_form(s: Semigroup) -> bytes:
    """Lexicographically least row-major table over all relabellings."""
    n = s.n
    if n > MAX_CANONICAL_ORDER:
        raise OrderTooLarge(f"canonical forms are limited to order {MAX_CANONICAL_ORDER}")
    t = s.table
    best: Optional[list[int]] = None
    cells = [(x, y) for x in range(n) for y in range(n)]
    for q in permutations(range(n)):
        # q[x] is the old element that gets the new label x
        p = [0] * n
        for new, old in enumerate(q):
            p[old] = new
        if best is None:
            best = [p[t[q[x]][q[y]]] for x, y in cells]
            continue
        cand, smaller = [], False
        for idx, (x, y) in enumerate(cells):
            v = p[t[q[x]][q[y]]]
            if not smaller:
                if v > best[idx]:
                    break
                smaller = v < best[idx]
            cand.append(v)
        else:
            if smaller:
                best = cand
    return bytes([n]) + bytes(best)


def canonical_digest(form: bytes) -> str:
    return hashlib.sha256(form).hexdigest()[:16]


def from_canonical(form: bytes) -> Semigroup:
    n = form[0]
    body = list(form[1:])
    return build_semigroup([body[i * n:(i + 1) * n] for i in range(n)])


def _invariants(s: Semigroup) -> list[tuple]:
    n = s.n
    counts = [0] * n
    for row in s.table:
        for v in row:
            counts[v] += 1
    out = []
    for a in range(n):
        ip = index_and_period(s, a)
        out.append((s.table[a][a] == a, ip.index, ip.period, len(set(s.table[a])), counts[a]))
    return out


def isomorphism(s: Semigroup, t: Semigroup) -> Optional[list[int]]:
    """A map ``p`` with ``p[a+b] = p[a]+p[b]`` from ``s`` onto ``t``, or None."""
    if s.n != t.n:
        return None
    n = s.n
    inv_s, inv_t = _invariants(s), _invariants(t)
    if sorted(inv_s) != sorted(inv_t):
        return None
    p = [-1] * n
    used = [False] * n

    def consistent(k):
        for x in range(k + 1):
            for y in range(k + 1):
                v = p[s.table[x][y]]
                if v != -1 and t.table[p[x]][p[y]] != v:
                    return False
        return True

    def extend(k):
        if k == n:
            return all(
                t.table[p[x]][p[y]] == p[s.table[x][y]] for x in range(n) for y in range(n)
            )
        for b in range(n):
            if not used[b] and inv_s[k] == inv_t[b]:
                p[k], used[b] = b, True
                if consistent(k) and extend(k + 1):
                    return True
                p[k], used[b] = -1, False
        return False

    return list(p) if extend(0) else None


def labeled_commutative(n: int) -> Iterator[list[list[int]]]:
    """Every commutative associative table on ``0..n-1`` (labelled, with repetition of isomorphs).

    Fills the diagonal first, then the upper triangle row by row, and rejects a
    partial table as soon as a fully determined triple breaks associativity.
    """
    if n < 1:
        raise ValueError("order must be positive")
    cells = [(i, i) for i in range(n)] + [(i, j) for i in range(n) for j in range(i + 1, n)]
    t = [[-1] * n for _ in range(n)]
    rng = range(n)

    def ok(x, y, z):
        a = t[x][y]
        if a < 0:
            return True
        left = t[a][z]
        if left < 0:
            return True
        b = t[y][z]
        if b < 0:
            return True
        right = t[x][b]
        return right < 0 or left == right

    def consistent(i, j):
        for u, v in ((i, j), (j, i)):
            for w in rng:
                if not (ok(u, v, w) and ok(w, u, v)):
                    return False
            for x in rng:
                for y in rng:
                    if t[x][y] == u and not ok(x, y, v):
                        return False
                    if t[x][y] == v and not ok(u, x, y):
                        return False
        return True

    def fill(k):
        if k == len(cells):
            yield [row[:] for row in t]
            return
        i, j = cells[k]
        for v in rng:
            t[i][j] = t[j][i] = v
            if consistent(i, j):
                yield from fill(k + 1)
        t[i][j] = t[j][i] = -1

    yield from fill(0)


def generate_commutative(n: int) -> Iterator[CatalogEntry]:
    """One entry per isomorphism class of commutative semigroups of order ``n``, sorted by canonical form."""
    if n > MAX_GENERATION_ORDER:
        raise OrderTooLarge(f"generation is limited to order {MAX_GENERATION_ORDER}")
    buckets: dict[tuple, list[Semigroup]] = {}
    for rows in labeled_commutative(n):
        s = build_semigroup(rows)
        key = tuple(sorted(_invariants(s)))
        reps = buckets.setdefault(key, [])
        if not any(isomorphism(s, r) is not None for r in reps):
            reps.append(s)
    entries = []
    for reps in buckets.values():
        for s in reps:
            form = canonical_form(s)
            entries.append(CatalogEntry(from_canonical(form), form))
    entries.sort(key=lambda e: e.canonical)
    yield from entries
