"""Rational torsion subgroups with certified structure.

The order is bounded by reduction modulo good primes, candidate points come
from Lutz-Nagell on the scaled short model Y^2 = X^3 - 27c4 X - 54c6 (where
every rational torsion point is integral and Y = 0 or Y^2 | 6^12 disc), and
every claimed generator order is certified by explicit group-law arithmetic.
No floating point: integer cube roots are found by exact bracketed search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .arith import factor
from .curves import WeierstrassCurve, minimal_model

_MAZUR_CYCLIC = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12}
_MAZUR_PRODUCT = {4: 1, 8: 2, 12: 3, 16: 4}  # order -> N for Z/2 x Z/2N


@dataclass(frozen=True)
class Point:
    """Affine rational point or the point at infinity."""

    x: Optional[Fraction] = None
    y: Optional[Fraction] = None
    infinity: bool = False

    def __post_init__(self):
        if self.infinity:
            if self.x is not None or self.y is not None:
                raise ValueError("the point at infinity has no coordinates")
        else:
            object.__setattr__(self, "x", Fraction(self.x))
            object.__setattr__(self, "y", Fraction(self.y))

    @staticmethod
    def at_infinity() -> "Point":
        return Point(infinity=True)

    def __str__(self) -> str:
        return "O" if self.infinity else f"({self.x}, {self.y})"


@dataclass(frozen=True)
class TorsionStructure:
    """One of the fifteen possible group shapes, with certified generators."""

    shape: str  # "Z/N" or "Z/2xZ/2N"
    order: int
    generators: tuple[Point, ...]
    points: frozenset[Point]

    def to_json(self) -> dict:
        return {
            "shape": self.shape,
            "order": self.order,
            "generators": [[str(g.x), str(g.y)] for g in self.generators],
        }


def on_curve(curve: WeierstrassCurve, point: Point) -> bool:
    if point.infinity:
        return True
    x, y = point.x, point.y
    return (
        y * y + curve.a1 * x * y + curve.a3 * y
        == x**3 + curve.a2 * x * x + curve.a4 * x + curve.a6
    )


def _require_on_curve(curve: WeierstrassCurve, point: Point):
    if not on_curve(curve, point):
        raise ValueError(f"point {point} is not on {curve}")


def negate(curve: WeierstrassCurve, point: Point) -> Point:
    if point.infinity:
        return point
    return Point(point.x, -point.y - curve.a1 * point.x - curve.a3)


def group_law_add(curve: WeierstrassCurve, p1: Point, p2: Point) -> Point:
    """Chord-tangent sum with exact rational coordinates."""
    _require_on_curve(curve, p1)
    _require_on_curve(curve, p2)
    if p1.infinity:
        return p2
    if p2.infinity:
        return p1
    a1, a2, a3, a4, a6 = (Fraction(a) for a in curve.ai())
    x1, y1, x2, y2 = p1.x, p1.y, p2.x, p2.y
    if x1 == x2:
        if y2 == -y1 - a1 * x1 - a3:
            return Point.at_infinity()
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
        nu = (-(x1**3) + a4 * x1 + 2 * a6 - a3 * y1) / (2 * y1 + a1 * x1 + a3)
    else:
        lam = (y2 - y1) / (x2 - x1)
        nu = (y1 * x2 - y2 * x1) / (x2 - x1)
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return Point(x3, y3)


def multiply(curve: WeierstrassCurve, n: int, point: Point) -> Point:
    if n < 0:
        return multiply(curve, -n, negate(curve, point))
    result = Point.at_infinity()
    addend = point
    while n:
        if n & 1:
            result = group_law_add(curve, result, addend)
        addend = group_law_add(curve, addend, addend)
        n >>= 1
    return result


def point_order(curve: WeierstrassCurve, point: Point) -> Union[int, float]:
    """Exact order (at most 12 over Q) or math.inf for non-torsion points."""
    _require_on_curve(curve, point)
    if point.infinity:
        return 1
    current = point
    for k in range(1, 13):
        # current == k * point at this check
        if current.infinity:
            return k
        current = group_law_add(curve, current, point)
    return math.inf


def _count_points_mod_p(curve: WeierstrassCurve, p: int) -> int:
    """#E(F_p) for p > 3 by a quadratic character sum on 4x^3+b2x^2+2b4x+b6."""
    b2, b4, b6 = curve.b2 % p, curve.b4 % p, curve.b6 % p
    total = p + 1
    for x in range(p):
        g = (((4 * x + b2) * x + 2 * b4) * x + b6) % p
        if g:
            total += 1 if pow(g, (p - 1) // 2, p) == 1 else -1
    return total


def _torsion_bound(curve: WeierstrassCurve) -> int:
    """gcd of #E(F_p) over good primes > 3; a multiple of the torsion order."""
    disc = curve.disc
    bound = 0
    used = 0
    p = 5
    while used < 2 or (bound > 16 and used < 6):
        while disc % p == 0 or not _is_small_prime(p):
            p += 2
        bound = math.gcd(bound, _count_points_mod_p(curve, p))
        used += 1
        p += 2
    return bound


def _is_small_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    i = 17
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _integer_cube_root_floor(n: int) -> int:
    if n < 0:
        return -_integer_cube_root_ceil(-n)
    r = round(n ** (1 / 3)) if n < 2**40 else 1 << ((n.bit_length() + 2) // 3)
    while r**3 > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


def _integer_cube_root_ceil(n: int) -> int:
    r = _integer_cube_root_floor(n)
    return r if r**3 == n else r + 1


def _depressed_cubic_integer_roots(P: int, Q: int) -> list[int]:
    """All integer roots of f(X) = X^3 + P X + Q, by exact monotone search.

    The integer sequence f(n) is nondecreasing except where the difference
    d(n) = f(n+1) - f(n) = 3n^2 + 3n + 1 + P is negative, which happens on a
    single integer interval; splitting there gives monotone segments that a
    plain bisection handles exactly.  No floating point.
    """

    def f(x: int) -> int:
        return x**3 + P * x + Q

    def d(n: int) -> int:
        return 3 * n * n + 3 * n + 1 + P

    bound = 2 + max(abs(P), abs(Q))
    segments: list[tuple[int, int, bool]] = []
    disc = -12 * P - 3
    if P >= 0 or disc <= 0:
        segments.append((-bound, bound, True))
    else:
        sq = math.isqrt(disc)
        k = (-3 - sq) // 6
        while d(k) < 0:
            k -= 1
        window = (-3 + sq) // 6 + 3
        while d(k) >= 0 and k <= window:
            k += 1
        if d(k) >= 0:
            segments.append((-bound, bound, True))
        else:
            nlo = k
            k = (-3 + sq) // 6 + 1
            while d(k) < 0:
                k += 1
            while d(k) >= 0 and k >= nlo:
                k -= 1
            nhi = k
            segments.append((-bound, nlo, True))
            segments.append((nlo, nhi + 1, False))
            segments.append((nhi + 1, bound, True))

    roots: set[int] = set()

    def note(x: int):
        if f(x) == 0:
            roots.add(x)
            step = 1
            while f(x + step) == 0:
                roots.add(x + step)
                step += 1
            step = -1
            while f(x + step) == 0:
                roots.add(x + step)
                step -= 1

    for lo, hi, inc in segments:
        lo, hi = max(lo, -bound), min(hi, bound)
        if lo > hi:
            continue
        note(lo)
        note(hi)
        flo, fhi = f(lo), f(hi)
        small, large = (flo, fhi) if inc else (fhi, flo)
        if small > 0 or large < 0:
            continue
        a, b = lo, hi
        while b - a > 1:
            mid = (a + b) // 2
            v = f(mid)
            if v == 0:
                note(mid)
                break
            if (v < 0) == inc:
                a = mid
            else:
                b = mid
    return sorted(roots)


def _square_divisors(f) -> list[int]:
    """All y > 0 with y^2 dividing the factored integer."""
    ys = [1]
    for p, e in f.factors:
        ys = [y * p**k for y in ys for k in range(e // 2 + 1)]
    return ys


def _torsion_points(curve: WeierstrassCurve, budget: int) -> frozenset[Point]:
    """All rational torsion points of a minimal model."""
    bound = _torsion_bound(curve)
    points = {Point.at_infinity()}
    if bound == 1:
        return frozenset(points)
    c4, c6, b2 = curve.c4, curve.c6, curve.b2
    a1, a3 = curve.a1, curve.a3
    scaled_disc = factor(6**12) * factor(curve.disc, budget=budget)
    y_candidates = {0}
    for yy in _square_divisors(scaled_disc):
        y_candidates.add(yy)
        y_candidates.add(-yy)
    for Y in y_candidates:
        for X in _depressed_cubic_integer_roots(-27 * c4, -54 * c6 - Y * Y):
            x = Fraction(X - 3 * b2, 36)
            y = (Fraction(Y, 108) - a1 * x - a3) / 2
            pt = Point(x, y)
            if not on_curve(curve, pt):
                continue
            if multiply(curve, bound, pt).infinity:
                points.add(pt)
    return frozenset(points)


def torsion_subgroup(curve: WeierstrassCurve, budget: int = 2_000_000) -> TorsionStructure:
    """Certified torsion structure with generators on the given model."""
    m, tr = minimal_model(curve)
    pts_min = _torsion_points(m, budget)
    order = len(pts_min)
    two_torsion = sum(
        1 for q in pts_min if not q.infinity and point_order(m, q) == 2
    )
    if two_torsion == 3 and order in _MAZUR_PRODUCT:
        n2 = _MAZUR_PRODUCT[order]
        shape = f"Z/2xZ/{2 * n2}"
        max_order = 2 * n2
    elif two_torsion in (0, 1) and order in _MAZUR_CYCLIC:
        shape = f"Z/{order}"
        max_order = order
    else:
        raise RuntimeError(
            f"torsion order {order} with {two_torsion} involutions is outside "
            "the possible rational group shapes; arithmetic bug"
        )

    # deterministic generator choice: scan points in coordinate order
    ordered = sorted(
        (q for q in pts_min if not q.infinity), key=lambda q: (q.x, q.y)
    )
    generators_min: list[Point] = []
    if order > 1:
        g1 = next(q for q in ordered if point_order(m, q) == max_order)
        generators_min.append(g1)
        if two_torsion == 3:
            half = multiply(m, max_order // 2, g1)
            g2 = next(
                q for q in ordered if point_order(m, q) == 2 and q != half
            )
            generators_min.append(g2)

    # carry points back to the model that was asked about
    def back(q: Point) -> Point:
        if q.infinity:
            return q
        x, y = tr.unmap_point(q.x, q.y)
        return Point(x, y)

    generators = tuple(back(g) for g in generators_min)
    points = frozenset(back(q) for q in pts_min)
    for g, gm in zip(generators, generators_min):
        _require_on_curve(curve, g)
        if point_order(curve, g) != point_order(m, gm):
            raise RuntimeError("generator order changed under coordinate transport")
    return TorsionStructure(shape, order, generators, points)
