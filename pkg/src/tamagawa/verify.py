"""Mechanical checks of the divisibility statements over finite parameter ranges.

Each scan sweeps one parametrized family, recomputes local data exactly, and
collects the isomorphism classes violating the claimed divisibility.  Known
exception curves are matched by the (c4, c6) of the global minimal model;
labels come from a user-supplied fixture file and are never parsed for
mathematical content.
"""

from __future__ import annotations

import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Optional

from .arith import IncompleteFactorizationError, factor, is_prime, valuation
from .curves import (
    SingularCurveError,
    WeierstrassCurve,
    minimal_model,
    transform_coefficients,
)
from .families import (
    ThreeTorsionNormalForm,
    four_torsion_curve,
    hadano_quotient,
    quotient_split_prime,
    three_torsion_normalize,
    two_six_curve,
    two_torsion_curve,
)
from .reduction import (
    ADDITIVE,
    GOOD,
    NONSPLIT,
    SPLIT,
    KodairaType,
    LocalDatum,
    c_infinity,
    local_data,
    tate,
)
from .torsion import multiply, point_order, torsion_subgroup

_MAZUR_SHAPES = {f"Z/{n}": n for n in (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12)}
_MAZUR_SHAPES.update({f"Z/2xZ/{2 * n}": 4 * n for n in (1, 2, 3, 4)})

DIVISIBLE = "divisible"
SHA_IMPLIED = "ratio-ge-2-implies-9-divides-sha"
EXCEPTION_A = "exception-a"
EXCEPTION_B = "exception-b"
EXCEPTION_A_CANDIDATE = "exception-a-candidate-w3-unknown"
RANK_VIOLATED = "rank-hypothesis-violated"


class FixtureValidationError(ValueError):
    pass


@dataclass(frozen=True)
class FixtureCurve:
    """One exported database curve with its expected data."""

    label: str
    ai: tuple[int, int, int, int, int]
    torsion: Optional[str] = None
    local: Optional[tuple[dict, ...]] = None
    c_inf: Optional[int] = None
    sha: Optional[int] = None
    optimal: Optional[bool] = None
    manin: Optional[int] = None
    analytic_rank: Optional[int] = None
    w3: Optional[int] = None
    lmfdb: Optional[str] = None

    @property
    def curve(self) -> WeierstrassCurve:
        return WeierstrassCurve(*self.ai)


class FixtureTable:
    """Fixture curves keyed by the (c4, c6) of their global minimal model."""

    def __init__(self, records: Iterable[FixtureCurve]):
        self.records = list(records)
        self.by_key: dict[tuple[int, int], FixtureCurve] = {}
        self.by_label: dict[str, FixtureCurve] = {}
        for rec in self.records:
            m, _ = minimal_model(rec.curve)
            self.by_key[(m.c4, m.c6)] = rec
            self.by_label[rec.label] = rec

    def match(self, curve: WeierstrassCurve) -> Optional[FixtureCurve]:
        m, _ = minimal_model(curve)
        return self.by_key.get((m.c4, m.c6))

    def __len__(self) -> int:
        return len(self.records)


def ingest_fixtures(path) -> FixtureTable:
    """Load and validate a fixture JSON file; bad records fail loudly by label."""
    raw = json.loads(Path(path).read_text())
    if not isinstance(raw, list):
        raise FixtureValidationError("fixture file must contain a JSON array")
    records = []
    for entry in raw:
        label = entry.get("label", "<missing label>")

        def bad(msg: str):
            raise FixtureValidationError(f"fixture {label!r}: {msg}")

        ai = entry.get("ai")
        if not (isinstance(ai, list) and len(ai) == 5 and all(isinstance(k, int) for k in ai)):
            bad("'ai' must be a list of 5 integers")
        try:
            WeierstrassCurve(*ai)
        except SingularCurveError:
            bad("coefficients define a singular curve")
        torsion = entry.get("torsion")
        if torsion is not None and torsion not in _MAZUR_SHAPES:
            bad(f"torsion shape {torsion!r} is not a possible rational torsion group")
        local = entry.get("local")
        if local is not None:
            for item in local:
                p = item.get("p")
                if not (isinstance(p, int) and is_prime(p)):
                    bad(f"local entry has non-prime p = {p!r}")
                try:
                    KodairaType(item.get("kodaira", ""))
                except ValueError:
                    bad(f"bad Kodaira symbol {item.get('kodaira')!r}")
                if not (isinstance(item.get("cp"), int) and item["cp"] >= 1):
                    bad("local entry needs a positive integer 'cp'")
                if item.get("class") not in (None, GOOD, SPLIT, NONSPLIT, ADDITIVE):
                    bad(f"bad reduction class {item.get('class')!r}")
            local = tuple(dict(item) for item in local)
        c_inf = entry.get("c_inf")
        if c_inf is not None and c_inf not in (1, 2):
            bad("'c_inf' must be 1 or 2")
        sha = entry.get("sha")
        if sha is not None and (not isinstance(sha, int) or sha < 1):
            bad("'sha' must be a positive integer")
        manin = entry.get("manin")
        if manin is not None and (not isinstance(manin, int) or manin < 1):
            bad("'manin' must be a positive integer")
        w3 = entry.get("w3")
        if w3 not in (None, 1, -1):
            bad("'w3' must be +1 or -1")
        records.append(
            FixtureCurve(
                label=label,
                ai=tuple(ai),
                torsion=torsion,
                local=local,
                c_inf=c_inf,
                sha=sha,
                optimal=entry.get("optimal"),
                manin=manin,
                analytic_rank=entry.get("analytic_rank"),
                w3=w3,
                lmfdb=entry.get("lmfdb"),
            )
        )
    return FixtureTable(records)


@dataclass
class VerdictReport:
    """Per-curve verdict on |torsion| dividing c_inf * c(E), plus classification."""

    minimal_ai: Optional[tuple] = None
    key: Optional[tuple[int, int]] = None
    torsion_shape: Optional[str] = None
    torsion_order: Optional[int] = None
    c_inf: Optional[int] = None
    tamagawa: Optional[int] = None
    tamagawa_factors: Optional[tuple] = None
    divides: Optional[bool] = None
    label: Optional[str] = None
    sha: Optional[int] = None
    optimal: Optional[bool] = None
    manin: Optional[int] = None
    analytic_rank: Optional[int] = None
    classification: Optional[str] = None
    incomplete: bool = False
    params: Optional[dict] = None

    def to_json(self) -> dict:
        out = {
            "minimal_ai": list(self.minimal_ai) if self.minimal_ai else None,
            "c4": self.key[0] if self.key else None,
            "c6": self.key[1] if self.key else None,
            "torsion": self.torsion_shape,
            "torsion_order": self.torsion_order,
            "c_inf": self.c_inf,
            "c": self.tamagawa,
            "c_factors": [list(f) for f in self.tamagawa_factors]
            if self.tamagawa_factors is not None
            else None,
            "divides": self.divides,
            "label": self.label,
            "sha": self.sha,
            "classification": self.classification,
            "incomplete": self.incomplete,
        }
        if self.optimal is not None:
            out["optimal"] = self.optimal
        if self.manin is not None:
            out["manin"] = self.manin
        if self.analytic_rank is not None:
            out["analytic_rank"] = self.analytic_rank
        if self.params is not None:
            out["params"] = self.params
        return out


def three_torsion_form_of(
    curve: WeierstrassCurve, point_xy: tuple[Fraction, Fraction]
) -> ThreeTorsionNormalForm:
    """Normal form of a curve with the given rational point of order 3."""
    x0, y0 = Fraction(point_xy[0]), Fraction(point_xy[1])
    a1, a2, a3, a4, a6 = transform_coefficients(curve.ai(), 1, x0, 0, y0)
    if a6 != 0:
        raise ValueError("point is not on the curve")
    if a3 == 0:
        raise ValueError("point has order 2, not 3")
    s = a4 / a3
    a1, a2, a3, a4, a6 = transform_coefficients((a1, a2, a3, a4, a6), 1, 0, s, 0)
    if a4 != 0 or a6 != 0 or a2 != 0:
        raise ValueError("point does not have order 3")
    return three_torsion_normalize(a1, a3)


def check_divisibility(
    curve: WeierstrassCurve,
    fixtures: Optional[FixtureTable] = None,
    budget: int = 2_000_000,
    params: Optional[dict] = None,
) -> VerdictReport:
    """Exact divisibility verdict for one curve, fixture-matched when possible."""
    report = VerdictReport(params=params)
    try:
        m, _ = minimal_model(curve)
        report.minimal_ai = m.ai()
        report.key = (m.c4, m.c6)
        data = local_data(m, budget=budget)
        report.c_inf = c_infinity(m)
        c = 1
        for d in data:
            c *= d.tamagawa
        report.tamagawa = c
        report.tamagawa_factors = factor(c).factors
        tors = torsion_subgroup(m, budget=budget)
    except IncompleteFactorizationError:
        report.incomplete = True
        return report
    report.torsion_shape = tors.shape
    report.torsion_order = tors.order
    report.divides = (report.c_inf * c) % tors.order == 0
    rec = fixtures.by_key.get(report.key) if fixtures else None
    if rec is not None:
        report.label = rec.label
        report.sha = rec.sha
        report.optimal = rec.optimal
        report.manin = rec.manin
        report.analytic_rank = rec.analytic_rank
    if tors.order % 3 == 0 and m.j not in (0, 1728):
        report.classification = _classify_three_torsion(m, tors, data, rec, budget)
    return report


def classify_three_torsion(
    curve: WeierstrassCurve,
    fixtures: Optional[FixtureTable] = None,
    budget: int = 2_000_000,
) -> VerdictReport:
    """Divisibility verdict and exception-family classification for a 3-torsion curve."""
    report = check_divisibility(curve, fixtures=fixtures, budget=budget)
    if report.incomplete:
        return report
    if report.torsion_order is None or report.torsion_order % 3 != 0:
        raise ValueError("curve has no rational point of order 3")
    m = WeierstrassCurve(*report.minimal_ai)
    if m.j in (0, 1728):
        raise ValueError("classification requires j not in {0, 1728}")
    return report


def _classify_three_torsion(
    m: WeierstrassCurve,
    tors,
    data: list[LocalDatum],
    fixture: Optional[FixtureCurve],
    budget: int,
) -> str:
    c = 1
    for d in data:
        c *= d.tamagawa
    if c % 3 == 0:
        return DIVISIBLE

    # 3 does not divide c(E): the normal form must have b = 1
    gen = next(g for g in tors.generators if point_order(m, g) % 3 == 0)
    p3 = multiply(m, point_order(m, gen) // 3, gen)
    form = three_torsion_form_of(m, (p3.x, p3.y))
    if form.b != 1:
        raise RuntimeError(
            f"b = {form.b} > 1 with 3 not dividing c(E) = {c}: contradicts the "
            "unit-b reduction; arithmetic bug"
        )
    pair = hadano_quotient(form, budget=budget)
    for d in data:
        if d.prime != 3 and d.reduction_class == ADDITIVE:
            raise RuntimeError("unit-b curve additive away from 3; arithmetic bug")
    if pair.ratio_ord3 >= 2:
        return SHA_IMPLIED
    datum3 = next((d for d in data if d.prime == 3), None)
    if datum3 is not None and datum3.kodaira.symbol in ("II", "IV"):
        return EXCEPTION_B
    split_count = sum(1 for d in data if d.reduction_class == SPLIT)
    if datum3 is None or datum3.reduction_class in (GOOD, NONSPLIT):
        w3 = 1
    elif datum3.reduction_class == SPLIT:
        # split multiplicative at 3 with 3-torsion forces 3 | c_3
        raise RuntimeError("split at 3 with 3 not dividing c(E); arithmetic bug")
    else:
        w3 = fixture.w3 if fixture is not None and fixture.w3 is not None else None
    if split_count > 1:
        raise RuntimeError(
            "ratio < 2 with two or more split places; contradicts the ledger rules"
        )
    if w3 == 1:
        return EXCEPTION_A
    if w3 == -1:
        return RANK_VIOLATED
    return EXCEPTION_A_CANDIDATE


@dataclass
class ExceptionClass:
    """One isomorphism class found violating a divisibility statement."""

    key: tuple[int, int]
    minimal_ai: tuple
    witnesses: list = field(default_factory=list)
    label: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "c4": self.key[0],
            "c6": self.key[1],
            "minimal_ai": list(self.minimal_ai),
            "witnesses": self.witnesses,
            "label": self.label,
        }


@dataclass
class ScanReport:
    """Outcome of one scan: per-curve reports plus deduped exception classes."""

    name: str
    reports: list[VerdictReport] = field(default_factory=list)
    exceptions: dict[tuple[int, int], ExceptionClass] = field(default_factory=dict)
    mismatches: list[dict] = field(default_factory=list)

    def record_exception(self, curve: WeierstrassCurve, witness, fixtures):
        m, _ = minimal_model(curve)
        key = (m.c4, m.c6)
        cls = self.exceptions.get(key)
        if cls is None:
            rec = fixtures.by_key.get(key) if fixtures else None
            cls = ExceptionClass(key, m.ai(), [], rec.label if rec else None)
            self.exceptions[key] = cls
        cls.witnesses.append(witness)

    def summary(self) -> dict:
        return {
            "scan": self.name,
            "curves": len(self.reports),
            "exception_classes": sorted(
                (cls.to_json() for cls in self.exceptions.values()),
                key=lambda c: (c["c4"], c["c6"]),
            ),
            "mismatches": self.mismatches,
        }


def scan_four_torsion(
    pairs: Iterable[tuple[int, int]],
    fixtures: Optional[FixtureTable] = None,
    budget: int = 2_000_000,
    jobs: int = 1,
) -> ScanReport:
    """Check 4 | c(E) * c_inf(E) over the order-4 family at the given (s, t)."""
    report = ScanReport("four-torsion")
    valid = [
        (s, t)
        for s, t in pairs
        if s > 0 and math.gcd(s, t) == 1 and t != 0 and 16 * s + t != 0
    ]
    results = _parallel_map(_four_torsion_one, [(s, t, budget) for s, t in valid], jobs)
    for (s, t), (key, minimal_ai, c, cinf) in zip(valid, results):
        r = VerdictReport(params={"s": s, "t": t})
        r.minimal_ai, r.key = minimal_ai, key
        r.c_inf, r.tamagawa = cinf, c
        r.divides = (c * cinf) % 4 == 0
        rec = fixtures.by_key.get(key) if fixtures else None
        if rec:
            r.label = rec.label
        report.reports.append(r)
        if not r.divides:
            report.record_exception(WeierstrassCurve(*minimal_ai), {"s": s, "t": t}, fixtures)
    return report


def _four_torsion_one(args):
    s, t, budget = args
    curve = four_torsion_curve(s, t)
    m, _ = minimal_model(curve)
    data = local_data(m, budget=budget)
    c = math.prod(d.tamagawa for d in data)
    return (m.c4, m.c6), m.ai(), c, c_infinity(m)


def scan_two_six(
    bound: int,
    fixtures: Optional[FixtureTable] = None,
    budget: int = 2_000_000,
    jobs: int = 1,
) -> ScanReport:
    """Check 12 | c(E) for every nonsingular t = a/b with |a|, b <= bound."""
    report = ScanReport("two-six")
    params = []
    for b in range(1, bound + 1):
        for a in range(-bound, bound + 1):
            if math.gcd(a, b) != 1:
                continue
            if a == 0 or a == b or a == -b or 3 * a == b or 3 * a == -b:
                continue
            params.append(Fraction(a, b))
    results = _parallel_map(_two_six_one, [(t, budget) for t in params], jobs)
    for t, (key, minimal_ai, c, cinf) in zip(params, results):
        r = VerdictReport(params={"t": str(t)})
        r.key, r.minimal_ai, r.tamagawa, r.c_inf = key, minimal_ai, c, cinf
        r.divides = c % 12 == 0
        rec = fixtures.by_key.get(key) if fixtures else None
        if rec:
            r.label = rec.label
        report.reports.append(r)
        if not r.divides:
            report.record_exception(WeierstrassCurve(*minimal_ai), {"t": str(t)}, fixtures)
    return report


def _two_six_one(args):
    t, budget = args
    curve = two_six_curve(t)
    m, _ = minimal_model(curve)
    data = local_data(m, budget=budget)
    c = math.prod(d.tamagawa for d in data)
    return (m.c4, m.c6), m.ai(), c, c_infinity(m)


def scan_two_torsion(
    fixtures: Optional[FixtureTable] = None,
    budget: int = 2_000_000,
    random_samples: int = 200,
    seed: int = 20260809,
) -> ScanReport:
    """Enumerate the bounded semi-stable 2-torsion region; 2 | c(E) c_inf expected.

    The finite region is b in {1,2,4,8,16}, a odd (or (0,1)) with a^2 < 4b.
    Curves with a prime of additive reduction fall outside the statement's
    semi-stability hypothesis and are reported but never counted as
    exceptions.  A seeded sample of coprime pairs with a^2 - 4b > 0
    double-checks c_inf = 2 on the positive-discriminant side.
    """
    report = ScanReport("two-torsion")
    for b in (1, 2, 4, 8, 16):
        for a in (0, 1, -1, 3, -3, 5, -5, 7, -7):
            if a * a - 4 * b >= 0 or math.gcd(a, b) != 1:
                continue
            curve = two_torsion_curve(a, b)
            data = local_data(curve, budget=budget)
            c = math.prod(d.tamagawa for d in data)
            cinf = c_infinity(curve)
            r = VerdictReport(params={"a": a, "b": b})
            m, _ = minimal_model(curve)
            r.minimal_ai, r.key = m.ai(), (m.c4, m.c6)
            r.c_inf, r.tamagawa = cinf, c
            r.divides = (c * cinf) % 2 == 0
            semistable = all(d.reduction_class != ADDITIVE for d in data)
            if not semistable:
                r.params["semistable"] = False
            rec = fixtures.by_key.get(r.key) if fixtures else None
            if rec:
                r.label = rec.label
            report.reports.append(r)
            if semistable and not r.divides:
                report.record_exception(curve, {"a": a, "b": b}, fixtures)
    rng = random.Random(seed)
    checked = 0
    while checked < random_samples:
        a = rng.randint(-60, 60)
        b = rng.randint(-60, 60)
        if b == 0 or math.gcd(a, b) != 1 or a * a - 4 * b <= 0:
            continue
        curve = two_torsion_curve(a, b)
        if c_infinity(curve) != 2:
            report.mismatches.append({"a": a, "b": b, "error": "c_inf != 2 with positive disc"})
        checked += 1
    return report


def scan_three_torsion_nonunits(
    a_bound: int = 40,
    b_bound: int = 40,
    budget: int = 2_000_000,
) -> ScanReport:
    """For every normalized (a, b) with b > 1: 3 | c(E). Violations mean bugs."""
    report = ScanReport("three-torsion-nonunit-b")
    for a, b in _normalized_three_torsion_range(a_bound, b_bound):
        if b == 1:
            continue
        curve = ThreeTorsionNormalForm(a, b).curve
        data = local_data(curve, budget=budget)
        c = math.prod(d.tamagawa for d in data)
        r = VerdictReport(params={"a": a, "b": b})
        r.tamagawa = c
        r.divides = c % 3 == 0
        report.reports.append(r)
        if not r.divides:
            report.mismatches.append({"a": a, "b": b, "c": c, "error": "3 does not divide c"})
    return report


def _normalized_three_torsion_range(a_bound: int, b_bound: int):
    for a in range(-a_bound, a_bound + 1):
        for b in range(1, b_bound + 1):
            if a**3 == 27 * b:
                continue
            try:
                ThreeTorsionNormalForm(a, b)
            except (ValueError, SingularCurveError):
                continue
            yield a, b


def reduction_table_cross_check(
    a_bound: int = 40,
    b_bound: int = 40,
    budget: int = 2_000_000,
    jobs: int = 1,
) -> ScanReport:
    """Compare Tate output against the three-torsion reduction-type table.

    For each normalized (a, b) and each bad prime, the expected row follows
    from (ord_p a, ord_p b, ord_p D); the v(D) = 3 row at p = 3 admits both
    II and III and either is accepted.
    """
    report = ScanReport("reduction-table")
    items = [(a, b, budget) for a, b in _normalized_three_torsion_range(a_bound, b_bound)]
    all_mismatches = _parallel_map(_cross_check_one, items, jobs)
    for (a, b, _), mism in zip(items, all_mismatches):
        report.reports.append(VerdictReport(params={"a": a, "b": b}))
        report.mismatches.extend(mism)
    return report


def _cross_check_one(args):
    a, b, budget = args
    curve = ThreeTorsionNormalForm(a, b).curve
    D = a**3 - 27 * b
    mismatches = []
    disc = curve.disc
    for p in factor(disc, budget=budget).primes():
        datum = tate(curve, p)
        expected = _expected_row(a, b, D, p)
        if expected is None:
            continue
        kind, symbol, cp, cls = expected
        ok = True
        if symbol is not None:
            if isinstance(symbol, tuple):
                ok = ok and datum.kodaira.symbol in symbol
            else:
                ok = ok and datum.kodaira.symbol == symbol
        if cp is not None:
            ok = ok and datum.tamagawa == cp
        if cls is not None:
            ok = ok and datum.reduction_class == cls
        if not ok:
            mismatches.append(
                {
                    "a": a,
                    "b": b,
                    "p": p,
                    "expected": {"row": kind, "kodaira": symbol, "cp": cp, "class": cls},
                    "got": datum.to_json(),
                }
            )
    return mismatches


def _expected_row(a: int, b: int, D: int, p: int):
    """(row name, symbol(s), cp or None, class or None) for the table, or None."""
    va = valuation(a, p) if a != 0 else math.inf
    vb = valuation(b, p)
    if 3 * va <= vb:
        if 3 * va < vb:
            n = 3 * vb
            return ("split-I3vb", f"I{3 * vb}", 3 * vb, SPLIT)
        vD = valuation(D, p)
        if vD > 0:
            return ("I-vD", f"I{vD}", None, None)
        return ("good", "I0", 1, GOOD)
    if vb == 0:
        if p != 3:
            return ("good", "I0", 1, GOOD)
        vD = valuation(D, 3)
        if vD == 3:
            return ("three-ambiguous", ("II", "III"), None, ADDITIVE)
        if vD == 4:
            return ("three-II", "II", None, ADDITIVE)
        if vD == 5:
            return ("three-IV", "IV", None, ADDITIVE)
        return ("three-Istar", f"I{vD - 6}*", None, ADDITIVE)
    if vb == 1:
        return ("IV", "IV", 3, ADDITIVE)
    if vb == 2:
        return ("IVstar", "IV*", 3, ADDITIVE)
    return None


def scan_dual_curves(
    a_values: Iterable[int],
    budget: int = 2_000_000,
) -> ScanReport:
    """Quotient identities, split-prime claim, and ledger rules over a range of a."""
    report = ScanReport("three-torsion-dual")
    for a in a_values:
        if a == 3:
            continue
        form = ThreeTorsionNormalForm(a, 1)
        pair = hadano_quotient(form, budget=budget)
        r = VerdictReport(params={"a": a})
        report.reports.append(r)
        # identity checks beyond the constructor's own: recompute from invariants
        if pair.quotient.disc != (a**3 - 27) ** 3 or pair.quotient.c4 != a * (a**3 + 216):
            report.mismatches.append({"a": a, "error": "quotient invariant identity failed"})
        q = quotient_split_prime(pair)
        if a in (0, 3, -3, -6):
            if q is not None:
                report.mismatches.append({"a": a, "error": f"expected no split prime, got {q}"})
        else:
            if q is None:
                report.mismatches.append({"a": a, "error": "expected a split prime, got none"})
            else:
                if tate(pair.quotient, q).reduction_class != SPLIT:
                    report.mismatches.append(
                        {"a": a, "p": q, "error": "quotient not split multiplicative"}
                    )
                if tate(form.curve, q).reduction_class != SPLIT:
                    report.mismatches.append(
                        {"a": a, "p": q, "error": "source not split multiplicative"}
                    )
        for p, e in pair.ledger:
            if p == 3:
                continue
            cls = tate(form.curve, p).reduction_class
            if cls not in (SPLIT, NONSPLIT):
                report.mismatches.append(
                    {"a": a, "p": p, "error": f"unexpected class {cls} away from 3"}
                )
            elif e != (1 if cls == SPLIT else 0):
                report.mismatches.append(
                    {"a": a, "p": p, "error": f"ledger entry {e} for class {cls}"}
                )
    return report


def _parallel_map(fn: Callable, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) < 4:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


# --- presets -----------------------------------------------------------------

# minimal-model (c4, c6) of the known exception curves; filled from the family
# scans themselves and pinned here so preset verdicts need no fixture file
KEY_15A7 = (3841, -238049)
KEY_15A8 = (1, -161)
KEY_17A4 = (33, -81)
KEY_21A4 = (-47, 71)
KEY_24A4 = (-32, -224)
KEY_39A4 = (-23, 235)
KEY_55A4 = (-39, -189)

FOUR_TORSION_EXCEPTIONS = frozenset({KEY_15A7, KEY_15A8, KEY_17A4, KEY_21A4, KEY_24A4})
TWO_TORSION_EXCEPTIONS = frozenset({KEY_15A8, KEY_39A4, KEY_55A4})
NEGATIVE_T_EXPECTED = frozenset({KEY_15A8, KEY_21A4, KEY_24A4})


@dataclass(frozen=True)
class Preset:
    name: str
    run: Callable
    validate: Callable[[ScanReport], bool]
    description: str


def _random_four_torsion_pairs(count: int = 1000, limit: int = 200, seed: int = 20260809):
    rng = random.Random(seed)
    pairs = []
    while len(pairs) < count:
        s = rng.randint(1, limit)
        t = rng.randint(-limit, limit)
        if t == 0 or 16 * s + t == 0 or math.gcd(s, t) != 1:
            continue
        pairs.append((s, t))
    return pairs


def _presets() -> dict[str, Preset]:
    def negative_t(fixtures, budget, jobs, bound):
        return scan_four_torsion(((1, t) for t in range(-15, 0)), fixtures, budget)

    def random_region(fixtures, budget, jobs, bound):
        return scan_four_torsion(_random_four_torsion_pairs(), fixtures, budget, jobs)

    def two_six(fixtures, budget, jobs, bound):
        return scan_two_six(bound or 30, fixtures, budget, jobs)

    def two_tors(fixtures, budget, jobs, bound):
        return scan_two_torsion(fixtures, budget)

    def nonunit(fixtures, budget, jobs, bound):
        return scan_three_torsion_nonunits(bound or 40, bound or 40, budget)

    def table(fixtures, budget, jobs, bound):
        return reduction_table_cross_check(bound or 40, bound or 40, budget, jobs)

    def dual(fixtures, budget, jobs, bound):
        n = bound or 100
        return scan_dual_curves(range(-n, n + 1), budget)

    return {
        "prop2.1-negative-t": Preset(
            "prop2.1-negative-t",
            negative_t,
            lambda rep: set(rep.exceptions) == set(NEGATIVE_T_EXPECTED),
            "order-4 family at s=1, t in {-15..-1}",
        ),
        "prop2.1-random": Preset(
            "prop2.1-random",
            random_region,
            lambda rep: set(rep.exceptions) <= set(FOUR_TORSION_EXCEPTIONS),
            "order-4 family on 1000 seeded coprime (s,t), |s|,|t| <= 200",
        ),
        "prop2.2": Preset(
            "prop2.2",
            two_six,
            lambda rep: not rep.exceptions,
            "Z/2xZ/6 family, all t = a/b up to the bound",
        ),
        "prop2.4": Preset(
            "prop2.4",
            two_tors,
            lambda rep: set(rep.exceptions) == set(TWO_TORSION_EXCEPTIONS)
            and not rep.mismatches,
            "semi-stable 2-torsion enumeration region",
        ),
        "three-torsion-nonunit-b": Preset(
            "three-torsion-nonunit-b",
            nonunit,
            lambda rep: not rep.mismatches,
            "3 | c(E) whenever the normalized cubic has b > 1",
        ),
        "kozuma-table": Preset(
            "kozuma-table",
            table,
            lambda rep: not rep.mismatches,
            "Tate output versus the three-torsion reduction-type table",
        ),
        "dual-ledger": Preset(
            "dual-ledger",
            dual,
            lambda rep: not rep.mismatches,
            "quotient identities, split primes, and the Tamagawa-ratio ledger",
        ),
    }


PRESETS = _presets()
