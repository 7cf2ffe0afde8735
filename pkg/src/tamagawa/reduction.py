"""Tate's algorithm and local data at every place.

The algorithm is implemented in full at all primes, including 2 and 3:
the torsion families hit I_n*, IV and IV* exactly where valuation
shortcuts misclassify.  Each step works on exact integers; the model is
locally minimized by the built-in restart when step 11 detects p^12 | disc
with all coefficient valuations high enough.

Split versus nonsplit multiplicative reduction is decided by whether the
tangent-cone quadratic T^2 + a1*T - a2 of the model translated to its
singular point has a root in F_p (for odd p via the quadratic residue
test on its discriminant, for p = 2 by exhaustive root search).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .arith import Factorization, factor, is_prime
from .curves import WeierstrassCurve, minimal_model

GOOD = "good"
SPLIT = "split"
NONSPLIT = "nonsplit"
ADDITIVE = "additive"

_KODAIRA_RE = re.compile(r"^(I(\d+)\*?|II\*?|III\*?|IV\*?)$")


class UnsupportedDomainError(ValueError):
    """A quantity was requested outside the range where it is defined here."""


class AlgorithmError(RuntimeError):
    """Internal consistency violation; indicates an arithmetic bug."""


@dataclass(frozen=True)
class KodairaType:
    """Kodaira symbol: I0, In (n>=1), II, III, IV, In* (n>=0), IV*, III*, II*."""

    symbol: str

    def __post_init__(self):
        m = _KODAIRA_RE.match(self.symbol)
        if not m:
            raise ValueError(f"bad Kodaira symbol {self.symbol!r}")

    @staticmethod
    def multiplicative(n: int) -> "KodairaType":
        if n < 0:
            raise ValueError("In needs n >= 0")
        return KodairaType(f"I{n}")

    @staticmethod
    def star(n: int) -> "KodairaType":
        if n < 0:
            raise ValueError("In* needs n >= 0")
        return KodairaType(f"I{n}*")

    @property
    def n(self) -> Optional[int]:
        m = re.match(r"^I(\d+)(\*?)$", self.symbol)
        return int(m.group(1)) if m else None

    @property
    def is_good(self) -> bool:
        return self.symbol == "I0"

    @property
    def is_In(self) -> bool:
        return bool(re.match(r"^I[1-9]\d*$", self.symbol))

    @property
    def is_In_star(self) -> bool:
        return bool(re.match(r"^I\d+\*$", self.symbol))

    @property
    def components(self) -> int:
        """Irreducible components of the special fiber, counted without multiplicity."""
        if self.is_good:
            return 1
        if self.is_In:
            return self.n
        if self.is_In_star:
            return self.n + 5
        return {"II": 1, "III": 2, "IV": 3, "IV*": 7, "III*": 8, "II*": 9}[self.symbol]

    def __str__(self) -> str:
        return self.symbol


@dataclass(frozen=True)
class LocalDatum:
    """Reduction data of a curve at one prime, computed on the local minimal model."""

    prime: int
    kodaira: KodairaType
    tamagawa: int
    reduction_class: str
    v_delta_min: int

    def to_json(self) -> dict:
        return {
            "p": str(self.prime),
            "kodaira": self.kodaira.symbol,
            "cp": self.tamagawa,
            "class": self.reduction_class,
            "vdelta": self.v_delta_min,
        }


@dataclass(frozen=True)
class RootNumberDatum:
    place: Union[int, str]  # prime or "infinity"
    value: Union[int, str]  # +1, -1, or "unsupported"


def _inv(a: int, p: int) -> int:
    return pow(a, -1, p)


def _translate(ai, r: int, t: int):
    """x -> x + r, y -> y + t on integer coefficients (u = 1, s = 0)."""
    a1, a2, a3, a4, a6 = ai
    return (
        a1,
        a2 + 3 * r,
        a3 + r * a1 + 2 * t,
        a4 + 2 * r * a2 - t * a1 + 3 * r * r,
        a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1,
    )


def _shear(ai, s: int, t: int):
    """y -> y + s x + t on integer coefficients (u = 1, r = 0)."""
    a1, a2, a3, a4, a6 = ai
    return (
        a1 + 2 * s,
        a2 - s * a1 - s * s,
        a3 + 2 * t,
        a4 - s * a3 - t * a1 - 2 * s * t,
        a6 - t * a3 - t * t,
    )


def _b_invariants(ai):
    a1, a2, a3, a4, a6 = ai
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return b2, b4, b6, b8


def _disc(ai) -> int:
    b2, b4, b6, b8 = _b_invariants(ai)
    return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def _vp(n: int, p: int) -> int:
    if n == 0:
        return 10**9  # effectively infinite within a single Tate run
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _quad_has_root(A: int, B: int, C: int, p: int) -> bool:
    """Does A T^2 + B T + C (A != 0 mod p) have a root in F_p? Assumes separable."""
    if p == 2:
        return C % 2 == 0 or (A + B + C) % 2 == 0
    d = (B * B - 4 * A * C) % p
    if d == 0:
        raise AlgorithmError("separable quadratic has zero discriminant")
    return pow(d, (p - 1) // 2, p) == 1


def _quad_separable(A: int, B: int, C: int, p: int) -> bool:
    if p == 2:
        return B % 2 == 1
    return (B * B - 4 * A * C) % p != 0


def _quad_double_root(A: int, B: int, C: int, p: int) -> int:
    """The double root mod p of an inseparable quadratic (A invertible)."""
    if p == 2:
        # B even: A T^2 + C = 0, and squaring is the identity on F_2
        return (C * A) % 2
    return (-B * _inv(2 * A, p)) % p


def _poly_strip(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_rem(f: list[int], g: list[int], p: int) -> list[int]:
    """f mod g over F_p; g must be nonzero. Coefficients low to high."""
    f = _poly_strip([c % p for c in f])
    inv_lead = _inv(g[-1], p)
    while len(f) >= len(g):
        coef = f[-1] * inv_lead % p
        shift = len(f) - len(g)
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - coef * gi) % p
        _poly_strip(f)
    return f


def _poly_gcd_degree(f: list[int], g: list[int], p: int) -> int:
    f = _poly_strip([c % p for c in f])
    g = _poly_strip([c % p for c in g])
    while g:
        f, g = g, _poly_rem(f, g, p)
    return len(f) - 1


def _cubic_rational_root_count(b: int, c: int, d: int, p: int) -> int:
    """Number of F_p-roots of the separable cubic T^3 + b T^2 + c T + d."""
    if p < 100:
        return sum(1 for t in range(p) if (((t + b) * t + c) * t + d) % p == 0)
    # deg gcd(T^p - T, P) counts distinct rational roots; T^p computed by
    # square-and-multiply in F_p[T]/(P)
    b, c, d = b % p, c % p, d % p

    def mulmod(f: list[int], g: list[int]) -> list[int]:
        prod = [0] * 5
        for i, fi in enumerate(f):
            if fi:
                for j, gj in enumerate(g):
                    prod[i + j] = (prod[i + j] + fi * gj) % p
        for deg in (4, 3):
            lead = prod[deg]
            if lead:
                prod[deg] = 0
                prod[deg - 1] = (prod[deg - 1] - lead * b) % p
                prod[deg - 2] = (prod[deg - 2] - lead * c) % p
                prod[deg - 3] = (prod[deg - 3] - lead * d) % p
        return prod[:3]

    result = [1, 0, 0]
    base = [0, 1, 0]
    e = p
    while e:
        if e & 1:
            result = mulmod(result, base)
        base = mulmod(base, base)
        e >>= 1
    frobenius_minus_t = [result[0], (result[1] - 1) % p, result[2]]
    cubic = [d, c, b, 1]
    return max(_poly_gcd_degree(cubic, frobenius_minus_t, p), 0)


def _singular_point_mod_p(ai, p: int, c4: int, c6: int) -> tuple[int, int]:
    """(r, t) mod p with the reduced curve singular at (r, t)."""
    a1, a2, a3, a4, a6 = ai
    b2, b4, b6, _ = _b_invariants(ai)
    if p == 2:
        if b2 % 2:
            r = a3 % 2
            t = (r + a4) % 2
        else:
            r = a4 % 2
            t = (r * (1 + a2 + a4) + a6) % 2
    elif p == 3:
        if b2 % 3:
            r = (-b2 * b4) % 3
        else:
            r = (-b6) % 3
        t = (a1 * r + a3) % 3
    else:
        if c4 % p:
            r = (-(c6 + b2 * c4) * _inv(12 * c4 % p, p)) % p
        else:
            r = (-b2 * _inv(12, p)) % p
        t = (-(a1 * r + a3) * _inv(2, p)) % p
    return r, t


def tate(curve: WeierstrassCurve, p: int) -> LocalDatum:
    """Kodaira type, Tamagawa number and reduction class of curve at p.

    Total: the model is minimized at p internally, so any integral model of
    the curve gives the same answer.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    ai = curve.ai()
    while True:
        b2, b4, b6, b8 = _b_invariants(ai)
        delta = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        n = _vp(delta, p)
        if n == 0:
            return LocalDatum(p, KodairaType("I0"), 1, GOOD, 0)
        c4 = b2 * b2 - 24 * b4
        c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6

        r, t = _singular_point_mod_p(ai, p, c4, c6)
        ai = _translate(ai, r, t)
        a1, a2, a3, a4, a6 = ai
        if a3 % p or a4 % p or a6 % p:
            raise AlgorithmError(f"singular point translation failed at p={p}")

        if c4 % p:
            # multiplicative: tangent quadratic T^2 + a1 T - a2
            split = _quad_has_root(1, a1 % p, (-a2) % p, p)
            cp = n if split else (2 if n % 2 == 0 else 1)
            return LocalDatum(
                p, KodairaType.multiplicative(n), cp, SPLIT if split else NONSPLIT, n
            )

        # additive from here on
        if _vp(a6, p) < 2:
            return LocalDatum(p, KodairaType("II"), 1, ADDITIVE, n)
        _, _, _, b8t = _b_invariants(ai)
        if _vp(b8t, p) < 3:
            return LocalDatum(p, KodairaType("III"), 2, ADDITIVE, n)
        b6t = a3 * a3 + 4 * a6
        if _vp(b6t, p) < 3:
            cp = 3 if _quad_has_root(1, (a3 // p) % p, (-(a6 // p**2)) % p, p) else 1
            return LocalDatum(p, KodairaType("IV"), cp, ADDITIVE, n)

        # normalize: p | a1, a2; p^2 | a3, a4; p^3 | a6
        if p == 2:
            s = a2 % 2
            t6 = 2 * ((a6 // 4) % 2)
        else:
            s = (-a1 * _inv(2, p)) % p
            t6 = (-a3 * _inv(2, p * p)) % (p * p)
        ai = _shear(ai, s, t6)
        a1, a2, a3, a4, a6 = ai
        if a1 % p or a2 % p or a3 % p**2 or a4 % p**2 or a6 % p**3:
            raise AlgorithmError(f"step-6 normalization failed at p={p}")

        # cubic P(T) = T^3 + b T^2 + c T + d over F_p
        b, c, d = (a2 // p) % p, (a4 // p**2) % p, (a6 // p**3) % p
        w = (27 * d * d - b * b * c * c + 4 * b**3 * d - 18 * b * c * d + 4 * c**3) % p
        x = (3 * c - b * b) % p

        if w:
            # distinct roots: I0*
            cp = 1 + _cubic_rational_root_count(b, c, d, p)
            return LocalDatum(p, KodairaType.star(0), cp, ADDITIVE, n)

        if x:
            # double root: In* for some n >= 1
            if p == 2:
                t0 = d if b % 2 else c
            elif p == 3:
                t0 = (b * c) % 3
            else:
                t0 = ((b * c - 9 * d) * _inv(2 * x, p)) % p
            ai = _translate(ai, p * t0, 0)
            a1, a2, a3, a4, a6 = ai
            if _vp(a2, p) != 1 or _vp(a3, p) < 2 or _vp(a4, p) < 3 or _vp(a6, p) < 4:
                raise AlgorithmError(f"double-root translation failed at p={p}")
            m = 1
            mxe = 2
            mye = 2
            while True:
                if m > n:
                    raise AlgorithmError(f"In* loop exceeded v(delta) at p={p}")
                if m % 2 == 1:
                    B = a3 // p**mye
                    C = a6 // p ** (mxe + mye)
                    if _quad_separable(1, B % p, (-C) % p, p):
                        cp = 4 if _quad_has_root(1, B % p, (-C) % p, p) else 2
                        return LocalDatum(p, KodairaType.star(m), cp, ADDITIVE, n)
                    y0 = _quad_double_root(1, B % p, (-C) % p, p)
                    ai = _translate(ai, 0, p**mye * y0)
                    a1, a2, a3, a4, a6 = ai
                    mye += 1
                else:
                    A = a2 // p
                    B = a4 // p ** (mxe + 1)
                    C = a6 // p ** (mxe + mye)
                    if _quad_separable(A % p, B % p, C % p, p):
                        cp = 4 if _quad_has_root(A % p, B % p, C % p, p) else 2
                        return LocalDatum(p, KodairaType.star(m), cp, ADDITIVE, n)
                    x0 = _quad_double_root(A % p, B % p, C % p, p)
                    ai = _translate(ai, p**mxe * x0, 0)
                    a1, a2, a3, a4, a6 = ai
                    mxe += 1
                m += 1

        # triple root
        if p == 2:
            t0 = b % 2
        elif p == 3:
            t0 = (-d) % 3
        else:
            t0 = (-b * _inv(3, p)) % p
        ai = _translate(ai, p * t0, 0)
        a1, a2, a3, a4, a6 = ai
        if _vp(a2, p) < 2 or _vp(a4, p) < 3 or _vp(a6, p) < 4:
            raise AlgorithmError(f"triple-root translation failed at p={p}")

        B = a3 // p**2
        C = a6 // p**4
        if _quad_separable(1, B % p, (-C) % p, p):
            cp = 3 if _quad_has_root(1, B % p, (-C) % p, p) else 1
            return LocalDatum(p, KodairaType("IV*"), cp, ADDITIVE, n)
        y0 = _quad_double_root(1, B % p, (-C) % p, p)
        ai = _translate(ai, 0, p * p * y0)
        a1, a2, a3, a4, a6 = ai

        if _vp(a4, p) < 4:
            return LocalDatum(p, KodairaType("III*"), 2, ADDITIVE, n)
        if _vp(a6, p) < 6:
            return LocalDatum(p, KodairaType("II*"), 1, ADDITIVE, n)

        # model was not minimal at p: shrink and start over
        if a1 % p or a2 % p**2 or a3 % p**3 or a4 % p**4 or a6 % p**6:
            raise AlgorithmError(f"non-minimal rescale failed at p={p}")
        ai = (a1 // p, a2 // p**2, a3 // p**3, a4 // p**4, a6 // p**6)


def c_infinity(curve: WeierstrassCurve) -> int:
    """Number of connected components of the real locus: 2 iff disc > 0."""
    return 2 if curve.disc > 0 else 1


def bad_primes(curve: WeierstrassCurve, budget: int = 2_000_000) -> list[int]:
    """Primes of bad reduction: primes dividing the minimal discriminant."""
    m, _ = minimal_model(curve)
    return list(factor(m.disc, budget=budget).primes())


def local_data(
    curve: WeierstrassCurve,
    primes: Optional[Iterable[int]] = None,
    budget: int = 2_000_000,
) -> list[LocalDatum]:
    """LocalDatum at the given primes, or at every bad prime when omitted."""
    ps = sorted(set(primes)) if primes is not None else bad_primes(curve, budget)
    return [tate(curve, p) for p in ps]


def global_tamagawa(curve: WeierstrassCurve, budget: int = 2_000_000) -> Factorization:
    """c(E) = prod of c_p over bad primes, returned in factored form."""
    c = 1
    for datum in local_data(curve, budget=budget):
        c *= datum.tamagawa
    return factor(c)


def conductor_exponent(datum: LocalDatum) -> int:
    """f_p from the type and minimal-discriminant valuation (Ogg's formula)."""
    if datum.kodaira.is_good:
        return 0
    return datum.v_delta_min + 1 - datum.kodaira.components


def conductor(curve: WeierstrassCurve, budget: int = 2_000_000) -> int:
    n = 1
    for datum in local_data(curve, budget=budget):
        n *= datum.prime ** conductor_exponent(datum)
    return n


def local_root_number(curve: WeierstrassCurve, place) -> RootNumberDatum:
    """Local root number at a finite prime or at "infinity".

    Additive places return the value "unsupported": the tables for additive
    reduction are out of scope, but every other place still reports.
    """
    if place in ("infinity", "inf", "oo"):
        return RootNumberDatum("infinity", -1)
    p = int(place)
    if curve.j == 0 or curve.j == 1728:
        raise UnsupportedDomainError("root numbers here require j not in {0, 1728}")
    datum = tate(curve, p)
    if datum.reduction_class in (GOOD, NONSPLIT):
        return RootNumberDatum(p, 1)
    if datum.reduction_class == SPLIT:
        return RootNumberDatum(p, -1)
    return RootNumberDatum(p, "unsupported")


def global_root_number_semistable(curve: WeierstrassCurve, budget: int = 2_000_000) -> int:
    """Product of local root numbers; defined here only for semi-stable curves."""
    if curve.j == 0 or curve.j == 1728:
        raise UnsupportedDomainError("root numbers here require j not in {0, 1728}")
    w = -1  # the infinite place
    for datum in local_data(curve, budget=budget):
        if datum.reduction_class == ADDITIVE:
            raise UnsupportedDomainError(
                f"curve has additive reduction at {datum.prime}; global root "
                "number is only computed for semi-stable curves"
            )
        if datum.reduction_class == SPLIT:
            w = -w
    return w
