"""Per-semigroup invariant reports and the catalog-wide claim checker."""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Union

from sgzs import __version__
from sgzs.cayley import Semigroup, build_semigroup, exponent, is_group, special_elements, subsemigroup
from sgzs.catalog import canonical_digest, canonical_form, generate_commutative, load
from sgzs.decomposition import (
    archimedean_data,
    annihilator,
    elementary_split,
    ideals,
    is_archimedean,
    nilpotency,
    p_classes,
    rees_quotient,
)
from sgzs.errors import SemigroupError
from sgzs.green import green_classes, green_strictly_less, is_group_free, quotient_green
from sgzs.zerosum import (
    CapExceeded,
    balanced_subsequence_exists,
    davenport,
    egz_check_length,
    egz_constant,
    kappa,
    monoid_extremal_sequence,
    small_davenport,
    terms_of,
)

SCHEMA = "sgzs.report/1"

# conjectures may fail without that being a bug; everything else is a theorem
CONJECTURES = frozenset({"C-CONJ4", "C-CONJ5"})
CLAIM_IDS = (
    "C-PROP2",
    "C-CONJ4",
    "C-CONJ5",
    "C-GF",
    "C-NIL",
    "C-ELEM",
    "C-ARCH",
    "C-ARCH3",
    "C-REES",
    "C-LNIL",
    "C-GREEN",
    "C-PROPC",
    "C-ANN",
    "C-ACT",
    "C-ADDNIL",
    "C-MONLB",
)

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_THEOREM = 0, 1, 2, 3


@dataclass
class ClaimVerdict:
    claim_id: str
    applicable: bool
    holds: Optional[bool] = None
    witness: Optional[str] = None

    @property
    def is_conjecture(self) -> bool:
        return self.claim_id in CONJECTURES

    @classmethod
    def skip(cls, claim_id: str) -> "ClaimVerdict":
        return cls(claim_id, False)

    @classmethod
    def result(cls, claim_id: str, holds: bool, witness: Optional[str] = None) -> "ClaimVerdict":
        return cls(claim_id, True, bool(holds), None if holds else (witness or "no witness recorded"))


@dataclass
class InvariantReport:
    order: int
    canonical: str
    table: list[list[int]]
    exp: int
    kappa: int
    small_d: int
    big_d: int
    egz: Union[int, str]
    cap: int
    flags: dict[str, bool]
    nilpotency_index: Optional[int]
    kernel_quotient_nilpotency: Optional[int]
    checks: list[ClaimVerdict] = field(default_factory=list)
    source: str = "generated"

    def verdict(self, claim_id: str) -> ClaimVerdict:
        return next(c for c in self.checks if c.claim_id == claim_id)

    def to_dict(self) -> dict:
        return asdict(self)


def _fmt_seq(seq) -> str:
    return "[" + ",".join(map(str, terms_of(seq))) + "]"


class _Analysis:
    """Everything the claims need, computed once."""

    def __init__(self, s: Semigroup, cap: Optional[int]):
        self.s = s
        sp = special_elements(s)
        self.identity = sp.identity
        self.exp = exponent(s)
        self.kappa = kappa(s)
        self.big_d = davenport(s)
        self.small_d = small_davenport(s)
        self.cap = self.big_d + self.kappa + 2 if cap is None else cap
        if self.cap < self.kappa:
            self.egz = CapExceeded(self.cap)
        else:
            try:
                self.egz = egz_constant(s, self.cap)
            except AssertionError:
                # the monoid lower bound did not certify; C-MONLB reports it
                self.egz = egz_constant(s, self.cap, start=self.kappa)
        self.nil_index = nilpotency(s)
        self.archimedean = is_archimedean(s)
        self.arch = archimedean_data(s) if self.archimedean else None
        self.split = elementary_split(s)
        self.flags = {
            "group_free": is_group_free(s),
            "nil": self.nil_index is not None,
            "archimedean": self.archimedean,
            "elementary": self.split is not None,
            "monoid": self.identity is not None,
            "group": is_group(s),
        }

    def egz_at_most(self, bound: int) -> tuple[bool, Optional[str]]:
        bad = egz_check_length(self.s, bound, self.kappa)
        if bad is None:
            return True, None
        return False, f"length {bound}: {_fmt_seq(bad)} has no balanced subsequence"

    def egz_exactly(self, value: int) -> tuple[bool, Optional[str]]:
        ok, witness = self.egz_at_most(value)
        if not ok:
            return ok, witness
        if value - 1 >= self.kappa and egz_check_length(self.s, value - 1, self.kappa) is None:
            return False, f"every sequence of length {value - 1} already has a balanced subsequence"
        return True, None


def _claim_conj(a: _Analysis, claim_id: str, applicable: bool) -> ClaimVerdict:
    if not applicable:
        return ClaimVerdict.skip(claim_id)
    return ClaimVerdict.result(claim_id, *a.egz_at_most(a.big_d + a.kappa - 1))


def _claim_rees(a: _Analysis) -> ClaimVerdict:
    for ideal in ideals(a.s):
        q = rees_quotient(a.s, ideal).target
        dq = davenport(q)
        if a.big_d < dq:
            return ClaimVerdict.result("C-REES", False, f"ideal {sorted(ideal)}: D(S/I)={dq} > D(S)={a.big_d}")
    return ClaimVerdict.result("C-REES", True)


def _claim_lnil(a: _Analysis) -> ClaimVerdict:
    if a.nil_index is None:
        return ClaimVerdict.skip("C-LNIL")
    L, D = a.nil_index, a.big_d
    return ClaimVerdict.result("C-LNIL", L <= D <= L + 1, f"L={L}, D={D}")


def _claim_green(a: _Analysis) -> ClaimVerdict:
    if not a.flags["group_free"]:
        return ClaimVerdict.skip("C-GREEN")
    big = [sorted(c) for c in green_classes(a.s).classes if len(c) > 1]
    return ClaimVerdict.result("C-GREEN", not big, f"non-trivial H-classes {big}")


def _claim_propc(a: _Analysis) -> ClaimVerdict:
    target = quotient_green(a.s).target
    return ClaimVerdict.result("C-PROPC", is_group_free(target), f"exp(S/H)={exponent(target)}")


def _claim_addnil(a: _Analysis) -> ClaimVerdict:
    if a.nil_index is None:
        return ClaimVerdict.skip("C-ADDNIL")
    zero = special_elements(a.s).zero
    for x in a.s.elements:
        for y in a.s.elements:
            if a.s.table[x][y] == x and x != zero:
                return ClaimVerdict.result("C-ADDNIL", False, f"{x}+{y}={x} but {x} is not the zero")
    return ClaimVerdict.result("C-ADDNIL", True)


def _claim_ann(a: _Analysis) -> ClaimVerdict:
    if a.nil_index is None:
        return ClaimVerdict.skip("C-ANN")
    s = a.s
    for x in s.elements:
        for y in s.elements:
            if green_strictly_less(s, x, y) and not annihilator(s, y) < annihilator(s, x):
                return ClaimVerdict.result("C-ANN", False, f"pair a={x} <_H b={y}")
    return ClaimVerdict.result("C-ANN", True)


def _claim_act(a: _Analysis) -> ClaimVerdict:
    if a.split is None:
        return ClaimVerdict.skip("C-ACT")
    s = a.s
    nil, ids = subsemigroup(s, a.split.nil_part)
    classes = [frozenset(ids[i] for i in c) for c in p_classes(nil).classes]
    for g in sorted(a.split.group_part):
        for cls in classes:
            if frozenset(s.table[g][x] for x in cls) != cls:
                return ClaimVerdict.result("C-ACT", False, f"g={g} does not permute class {sorted(cls)}")
    return ClaimVerdict.result("C-ACT", True)


def _claim_monlb(a: _Analysis) -> ClaimVerdict:
    if a.identity is None:
        return ClaimVerdict.skip("C-MONLB")
    seq = monoid_extremal_sequence(a.s)
    length = sum(seq)
    passes = length >= a.kappa and balanced_subsequence_exists(a.s, seq, a.kappa)
    return ClaimVerdict.result("C-MONLB", not passes, f"{_fmt_seq(seq)} has a balanced subsequence")


def _claims(a: _Analysis) -> list[ClaimVerdict]:
    D, k = a.big_d, a.kappa
    arch3 = a.arch is not None and a.arch.nilpotency_index_of_quotient <= 3
    builders = {
        "C-PROP2": lambda: ClaimVerdict.result("C-PROP2", D == a.small_d + 1, f"D={D}, d={a.small_d}"),
        "C-CONJ4": lambda: _claim_conj(a, "C-CONJ4", True),
        "C-CONJ5": lambda: (
            ClaimVerdict.result("C-CONJ5", *a.egz_exactly(D + k - 1))
            if a.flags["monoid"] else ClaimVerdict.skip("C-CONJ5")
        ),
        "C-GF": lambda: _claim_conj(a, "C-GF", a.flags["group_free"]),
        "C-NIL": lambda: _claim_conj(a, "C-NIL", a.flags["nil"]),
        "C-ELEM": lambda: (
            ClaimVerdict.result("C-ELEM", *a.egz_exactly(D + k - 1))
            if a.split is not None else ClaimVerdict.skip("C-ELEM")
        ),
        "C-ARCH": lambda: (
            ClaimVerdict.result("C-ARCH", *a.egz_at_most(D + k))
            if a.archimedean else ClaimVerdict.skip("C-ARCH")
        ),
        "C-ARCH3": lambda: _claim_conj(a, "C-ARCH3", arch3),
        "C-REES": lambda: _claim_rees(a),
        "C-LNIL": lambda: _claim_lnil(a),
        "C-GREEN": lambda: _claim_green(a),
        "C-PROPC": lambda: _claim_propc(a),
        "C-ANN": lambda: _claim_ann(a),
        "C-ACT": lambda: _claim_act(a),
        "C-ADDNIL": lambda: _claim_addnil(a),
        "C-MONLB": lambda: _claim_monlb(a),
    }
    out = []
    for claim_id in CLAIM_IDS:
        try:
            out.append(builders[claim_id]())
        except (SemigroupError, AssertionError) as exc:
            out.append(ClaimVerdict.result(claim_id, False, f"error: {type(exc).__name__}: {exc}"))
    return out


def analyze_semigroup(s: Semigroup, cap: Optional[int] = None, source: str = "generated") -> InvariantReport:
    a = _Analysis(s, cap)
    egz = a.egz if isinstance(a.egz, int) else str(a.egz)
    return InvariantReport(
        order=s.n,
        canonical=canonical_form(s).hex() if s.n <= 8 else "",
        table=[list(row) for row in s.table],
        exp=a.exp,
        kappa=a.kappa,
        small_d=a.small_d,
        big_d=a.big_d,
        egz=egz,
        cap=a.cap,
        flags=a.flags,
        nilpotency_index=a.nil_index,
        kernel_quotient_nilpotency=a.arch.nilpotency_index_of_quotient if a.arch else None,
        checks=_claims(a),
        source=source,
    )


def analyze(path: Union[str, Path], cap: Optional[int] = None) -> InvariantReport:
    return analyze_semigroup(load(path), cap, source=str(path))


def theorem_failures(report: InvariantReport) -> list[ClaimVerdict]:
    return [c for c in report.checks if c.applicable and c.holds is False and not c.is_conjecture]


def conjecture_failures(report: InvariantReport) -> list[ClaimVerdict]:
    return [c for c in report.checks if c.applicable and c.holds is False and c.is_conjecture]


@dataclass
class VerifyConfig:
    order: Optional[int] = None
    directory: Optional[str] = None
    cap: Optional[int] = None
    jobs: int = 1

    def echo(self) -> dict:
        # the worker count is deliberately left out so reports do not depend on it
        return {"order": self.order, "directory": self.directory, "cap": self.cap}


@dataclass
class RunReport:
    tool_version: str
    config: dict
    entries: list[InvariantReport]
    input_errors: list[dict]
    aggregate: dict
    theorem_failures: list[dict]
    conjecture_counterexamples: list[dict]
    wall_time_s: float
    schema: str = SCHEMA

    @property
    def exit_code(self) -> int:
        if self.theorem_failures:
            return EXIT_THEOREM
        if self.input_errors:
            return EXIT_INVALID
        return EXIT_OK

    def to_dict(self) -> dict:
        return {
            "schema": self.schema,
            "tool_version": self.tool_version,
            "config": self.config,
            "aggregate": self.aggregate,
            "theorem_failures": self.theorem_failures,
            "conjecture_counterexamples": self.conjecture_counterexamples,
            "input_errors": self.input_errors,
            "entries": [e.to_dict() for e in self.entries],
            "wall_time_s": self.wall_time_s,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        flag_names = ["group_free", "nil", "archimedean", "elementary", "monoid", "group"]
        writer.writerow(["canonical", "source", "order", "flags", "exp", "kappa", "d", "D", "E", *CLAIM_IDS])
        for e in self.entries:
            bits = []
            for claim_id in CLAIM_IDS:
                v = e.verdict(claim_id)
                bits.append("" if not v.applicable else ("1" if v.holds else "0"))
            flags = "|".join(f for f in flag_names if e.flags[f])
            writer.writerow([e.canonical, e.source, e.order, flags, e.exp, e.kappa, e.small_d, e.big_d, e.egz, *bits])
        return buf.getvalue()


def _task(args):
    table, cap, source = args
    return analyze_semigroup(build_semigroup(table), cap, source)


def _aggregate(entries: list[InvariantReport]) -> dict:
    agg = {c: {"applicable": 0, "holds": 0, "fails": 0} for c in CLAIM_IDS}
    for e in entries:
        for v in e.checks:
            if v.applicable:
                agg[v.claim_id]["applicable"] += 1
                agg[v.claim_id]["holds" if v.holds else "fails"] += 1
    return agg


def run_verification(config: VerifyConfig) -> RunReport:
    started = time.perf_counter()
    tasks, errors = [], []
    if config.order is not None:
        for entry in generate_commutative(config.order):
            tasks.append((entry.semigroup.table, config.cap, "generated"))
    elif config.directory is not None:
        root = Path(config.directory)
        if not root.is_dir():
            raise NotADirectoryError(f"{root}: not a directory")
        for path in sorted(p for p in root.iterdir() if p.is_file()):
            try:
                s = load(path)
            except SemigroupError as exc:
                errors.append({"source": path.name, "error": f"{type(exc).__name__}: {exc}"})
                continue
            except (OSError, UnicodeDecodeError) as exc:
                errors.append({"source": path.name, "error": f"{type(exc).__name__}: {exc}"})
                continue
            tasks.append((s.table, config.cap, path.name))
    else:
        raise ValueError("configure either an order or a directory")

    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            entries = list(pool.map(_task, tasks))
    else:
        entries = [_task(t) for t in tasks]
    entries.sort(key=lambda e: (e.canonical, e.source))

    theorem, conjecture = [], []
    for e in entries:
        for v in theorem_failures(e):
            theorem.append({"canonical": e.canonical, "source": e.source, "claim": v.claim_id, "witness": v.witness})
        for v in conjecture_failures(e):
            conjecture.append({"canonical": e.canonical, "source": e.source, "claim": v.claim_id, "witness": v.witness})
    return RunReport(
        tool_version=__version__,
        config=config.echo(),
        entries=entries,
        input_errors=errors,
        aggregate=_aggregate(entries),
        theorem_failures=theorem,
        conjecture_counterexamples=conjecture,
        wall_time_s=round(time.perf_counter() - started, 3),
    )


def format_text(report: InvariantReport) -> str:
    lines = [
        f"source     {report.source}",
        f"order      {report.order}",
        f"canonical  {canonical_digest(bytes.fromhex(report.canonical)) if report.canonical else '-'}",
        f"flags      {', '.join(k for k, v in report.flags.items() if v) or '-'}",
        f"exp        {report.exp}",
        f"kappa      {report.kappa}",
        f"d          {report.small_d}",
        f"D          {report.big_d}",
        f"E          {report.egz}   (cap {report.cap})",
    ]
    if report.nilpotency_index is not None:
        lines.append(f"L(S)       {report.nilpotency_index}")
    if report.kernel_quotient_nilpotency is not None:
        lines.append(f"L(S/K)     {report.kernel_quotient_nilpotency}")
    lines.append("claims")
    for v in report.checks:
        if not v.applicable:
            status = "n/a"
        elif v.holds:
            status = "holds"
        else:
            status = "COUNTEREXAMPLE" if v.is_conjecture else "FAILED"
        line = f"  {v.claim_id:<9} {status}"
        if v.witness:
            line += f"  ({v.witness})"
        lines.append(line)
    return "\n".join(lines) + "\n"
