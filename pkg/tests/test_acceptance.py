"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` (or ``python tests/test_acceptance.py``).
"""

import random
import resource
import subprocess
import sys
import time

import pytest

import oracles
from conftest import C2xC2, E3, FIXTURES, M3
from sgzs.catalog import canonical_form, generate_commutative, labeled_commutative, relabel
from sgzs.cayley import cyclic_group, special_elements
from sgzs.decomposition import archimedean_data, elementary_split, is_archimedean
from sgzs.green import green_classes, is_group_free
from sgzs.verify import analyze_semigroup
from sgzs.zerosum import (
    balanced_subsequence_exists,
    davenport,
    egz_check_length,
    egz_constant,
    kappa,
    monoid_extremal_sequence,
    multisets,
    sequence,
    sigma,
    small_davenport,
    terms_of,
)


def catalog(*orders):
    return [e.semigroup for n in orders for e in generate_commutative(n)]


UP_TO_3 = catalog(1, 2, 3)
ORDER_4 = catalog(4)


def egz(s):
    """E(S) ascending from kappa, so no lower-bound shortcut is involved."""
    return egz_constant(s, davenport(s) + kappa(s) + 2, start=kappa(s))


@pytest.fixture
def verdict(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n[acceptance {number:>2}] {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return emit


def test_01_group_oracles(verdict):
    start = time.perf_counter()
    bad = []
    for n in range(2, 7):
        g = cyclic_group(n)
        values = (davenport(g), kappa(g), egz(g))
        if values != (n, n, 2 * n - 1):
            bad.append((n, values))
    d = davenport(C2xC2)
    d_naive = oracles.davenport([list(r) for r in C2xC2.table])
    k, e = kappa(C2xC2), egz(C2xC2)
    if (d, k, e) != (d_naive, 4, d + 3):
        bad.append(("C2xC2", d, d_naive, k, e))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    verdict(1, ok, f"C2..C6 D=n kappa=n E=2n-1; C2xC2 D={d} kappa={k} E={e}; {elapsed:.1f}s < 60s {bad or ''}")


def test_02_davenport_small_large(verdict):
    # there are exactly 58 classes of order 4, so all of them are checked and
    # 100 sampled order-5 classes make up the requested sample size
    start = time.perf_counter()
    order5 = catalog(5)
    sample5 = random.Random(2024).sample(order5, 100)
    checked = UP_TO_3 + ORDER_4 + sample5
    bad = [s.table for s in checked if davenport(s) != small_davenport(s) + 1]
    elapsed = time.perf_counter() - start
    ok = not bad and len(ORDER_4) == 58 and len(sample5) == 100 and elapsed < 300
    verdict(
        2,
        ok,
        f"D = d + 1 on {len(UP_TO_3)} classes of order <= 3, all {len(ORDER_4)} of order 4, "
        f"{len(sample5)} sampled of order 5; {elapsed:.1f}s < 300s",
    )


def test_03_group_free(verdict):
    bad, count = [], 0
    for s in UP_TO_3 + ORDER_4:
        if not is_group_free(s):
            continue
        count += 1
        e = egz(s)
        if not (isinstance(e, int) and e <= davenport(s) + kappa(s) - 1):
            bad.append((s.table, e))
        if len(green_classes(s)) != s.n:
            bad.append((s.table, "H not equality"))
    verdict(3, not bad, f"E <= D + kappa - 1 and H trivial on {count} group-free classes of order <= 4 {bad or ''}")


def test_04_elementary(verdict):
    bad, count, saw_e3 = [], 0, False
    for s in UP_TO_3 + ORDER_4:
        if elementary_split(s) is None:
            continue
        count += 1
        saw_e3 |= canonical_form(s) == canonical_form(E3)
        if egz(s) != davenport(s) + kappa(s) - 1:
            bad.append(s.table)
    ok = not bad and saw_e3
    verdict(4, ok, f"E = D + kappa - 1 on {count} elementary classes of order <= 4 (E3 present: {saw_e3}) {bad or ''}")


def test_05_archimedean(verdict):
    bad, count, refined = [], 0, 0
    for s in UP_TO_3 + [M3]:
        if not is_archimedean(s):
            continue
        count += 1
        d, k, e = davenport(s), kappa(s), egz(s)
        if e > d + k:
            bad.append((s.table, "E > D + kappa"))
        if archimedean_data(s).nilpotency_index_of_quotient <= 3:
            refined += 1
            if e > d + k - 1:
                bad.append((s.table, "E > D + kappa - 1 with L(S/K) <= 3"))
    m3 = (davenport(M3), kappa(M3), egz(M3))
    ok = not bad and m3 == (4, 4, 6)
    verdict(5, ok, f"{count} archimedean classes ({refined} with L(S/K) <= 3); M3 (D, kappa, E) = {m3} {bad or ''}")


STRUCTURAL = ("C-REES", "C-LNIL", "C-ADDNIL", "C-ANN", "C-ACT", "C-PROPC")


def test_06_structural_lemmas(verdict):
    applied = {c: 0 for c in STRUCTURAL}
    failures = []
    for s in UP_TO_3:
        report = analyze_semigroup(s)
        for claim in STRUCTURAL:
            v = report.verdict(claim)
            if v.applicable:
                applied[claim] += 1
                if not v.holds:
                    failures.append((claim, s.table, v.witness))
    ok = not failures and all(applied.values())
    verdict(6, ok, f"zero failures; applications {applied} {failures or ''}")


def test_07_monoid_lower_bound(verdict):
    bad, count = [], 0
    for s in UP_TO_3:
        ident = special_elements(s).identity
        if ident is None:
            continue
        count += 1
        d, k = davenport(s), kappa(s)
        seq = monoid_extremal_sequence(s)
        terms = terms_of(seq)
        if len(terms) != d + k - 2 or terms.count(ident) < k - 1:
            bad.append((s.table, "shape"))
        elif len(terms) >= k and oracles.balanced([list(r) for r in s.table], terms, k):
            bad.append((s.table, "extremal sequence is balanced"))
        if egz_check_length(s, d + k - 2, k) is None:
            bad.append((s.table, "length D + kappa - 2 passes"))
    verdict(7, not bad, f"extremal sequence certifies E >= D + kappa - 1 on {count} monoids {bad or ''}")


def test_08_oracle_equivalence(verdict):
    mismatches, compared = [], 0
    for name, s in FIXTURES.items():
        table = [list(r) for r in s.table]
        for length in range(1, 9):
            for seq in multisets(s.n, length):
                terms = terms_of(seq)
                for gap in range(1, length + 1):
                    compared += 1
                    if balanced_subsequence_exists(s, seq, gap) != oracles.balanced(table, terms, gap):
                        mismatches.append((name, terms, gap))
    rng = random.Random(7)
    shuffles = 0
    for name, s in FIXTURES.items():
        table = [list(r) for r in s.table]
        for _ in range(1000):
            terms = [rng.randrange(s.n) for _ in range(rng.randint(1, 15))]
            rng.shuffle(terms)
            shuffles += 1
            if sigma(s, sequence(s.n, terms)).value != oracles.fold(table, terms):
                mismatches.append((name, terms, "sigma"))
    verdict(8, not mismatches, f"{compared} DP/naive comparisons, {shuffles} shuffles, {len(mismatches)} mismatches")


def test_09_catalog_integrity(verdict):
    order2 = len(list(generate_commutative(2)))
    labelled, brute = oracles.brute_force_classes(3)
    generated = {tuple(e.canonical[1:]) for e in generate_commutative(3)}
    rng = random.Random(11)
    unstable = 0
    for s in UP_TO_3 + ORDER_4:
        form = canonical_form(s)
        for _ in range(100):
            perm = list(range(s.n))
            rng.shuffle(perm)
            unstable += canonical_form(relabel(s, perm)) != form
    ok = order2 == 3 and generated == brute and unstable == 0 and sum(1 for _ in labeled_commutative(3)) == labelled
    verdict(
        9,
        ok,
        f"order 2: {order2} classes; order 3: generator {len(generated)} = brute force {len(brute)}; "
        f"{unstable} unstable canonical forms over 100 relabellings of each order <= 4 class",
    )


def test_10_performance(verdict):
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "sgzs", "verify", "--order", "3", "--jobs", "4"],
        capture_output=True,
        text=True,
    )
    elapsed = time.perf_counter() - start
    peak_mb = resource.getrusage(resource.RUSAGE_CHILDREN).ru_maxrss / 1024
    ok = proc.returncode == 0 and elapsed < 600 and peak_mb < 1024
    verdict(10, ok, f"sgzs verify --order 3: exit {proc.returncode}, {elapsed:.1f}s < 600s, peak {peak_mb:.0f} MB < 1024 MB")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
