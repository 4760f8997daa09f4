# ---------------------------------------------------------------------------------------------
#  Copyright (c) Microsoft Corporation. All rights reserved.
#  Licensed under the MIT License. See LICENSE in the project root for license information.
# --------------------------------------------------------------------------------------------

"""Exact lattice arithmetic and planar predicates for uniform grids."""

import cmath
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar, Dict, List, Optional, Sequence, Tuple, Type, TypeVar, Union

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]
P = TypeVar("P", bound="RingPoint")

# Constants
TWELFTH_ROOT_ORDER = 12
EIGHTH_ROOT_ORDER = 8


def _sign(value: Rational) -> int:
    return (value > 0) - (value < 0)


class Surd:
    """Exact real number r + s*sqrt(k) with rational r and s."""

    __slots__ = ("r", "s", "k")

    def __init__(self, r: Rational = 0, s: Rational = 0, k: int = 3):
        self.r = r
        self.s = s
        self.k = k

    def _coerce(self, other: Union["Surd", int, Fraction]) -> "Surd":
        if isinstance(other, Surd):
            if other.k != self.k and other.s != 0 and self.s != 0:
                raise ValueError(f"Cannot mix sqrt({self.k}) and sqrt({other.k})")
            return other
        return Surd(other, 0, self.k)

    def __add__(self, other: Union["Surd", int, Fraction]) -> "Surd":
        o = self._coerce(other)
        return Surd(self.r + o.r, self.s + o.s, self.k if self.s else o.k)

    __radd__ = __add__

    def __sub__(self, other: Union["Surd", int, Fraction]) -> "Surd":
        o = self._coerce(other)
        return Surd(self.r - o.r, self.s - o.s, self.k if self.s else o.k)

    def __rsub__(self, other: Union[int, Fraction]) -> "Surd":
        return Surd(other - self.r, -self.s, self.k)

    def __neg__(self) -> "Surd":
        return Surd(-self.r, -self.s, self.k)

    def __mul__(self, other: Union["Surd", int, Fraction]) -> "Surd":
        o = self._coerce(other)
        k = self.k if self.s else o.k
        return Surd(self.r * o.r + k * self.s * o.s, self.r * o.s + self.s * o.r, k)

    __rmul__ = __mul__

    def sign(self) -> int:
        """Exact sign: -1, 0 or 1."""
        r_sign = _sign(self.r)
        s_sign = _sign(self.s)
        if s_sign == 0:
            return r_sign
        if r_sign in (0, s_sign):
            return s_sign
        diff = self.r * self.r - self.k * self.s * self.s
        if diff == 0:
            return 0
        return r_sign if diff > 0 else s_sign

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (Surd, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        return self.r == o.r and self.s == o.s

    def __hash__(self) -> int:
        return hash((self.r, self.s))

    def __lt__(self, other: Union["Surd", int, Fraction]) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: Union["Surd", int, Fraction]) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: Union["Surd", int, Fraction]) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: Union["Surd", int, Fraction]) -> bool:
        return (self - other).sign() >= 0

    def __float__(self) -> float:
        return float(self.r) + float(self.s) * math.sqrt(self.k)

    def __repr__(self) -> str:
        if self.s == 0:
            return f"Surd({self.r})"
        return f"Surd({self.r} + {self.s}*sqrt({self.k}))"


@dataclass(frozen=True, order=True)
class RingPoint:
    """
    Element a + b*z + c*z^2 + d*z^3 of a cyclotomic integer ring.

    Subclasses fix the root of unity z. Ordering is lexicographic on (a, b, c, d).
    """

    a: int = 0
    b: int = 0
    c: int = 0
    d: int = 0

    ORDER: ClassVar[int] = 0
    RADICAND: ClassVar[int] = 0
    SQRT: ClassVar[Tuple[int, int, int, int]] = (0, 0, 0, 0)

    @classmethod
    def zero(cls: Type[P]) -> P:
        return cls(0, 0, 0, 0)

    @classmethod
    def one(cls: Type[P]) -> P:
        return cls(1, 0, 0, 0)

    @classmethod
    def unit(cls: Type[P], k: int) -> P:
        """Return the k-th power of the ring's root of unity."""
        return _unit_table(cls)[k % cls.ORDER]  # type: ignore[return-value]

    @property
    def coefficients(self) -> Tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __add__(self: P, other: P) -> P:
        return type(self)(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self: P, other: P) -> P:
        return type(self)(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self: P) -> P:
        return type(self)(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self: P, other: Union[P, int]) -> P:
        if isinstance(other, int):
            return type(self)(self.a * other, self.b * other, self.c * other, self.d * other)
        x = self.coefficients
        y = other.coefficients
        product = [0] * 7
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    product[i + j] += xi * yj
        return type(self)(*self._reduce(product))

    __rmul__ = __mul__

    @staticmethod
    def _reduce(product: List[int]) -> Tuple[int, int, int, int]:
        raise NotImplementedError

    def rotate(self: P, steps: int) -> P:
        """Rotate about the origin by steps multiples of the ring's unit angle."""
        steps %= self.ORDER
        if steps == 0:
            return self
        return self * self.unit(steps)

    def conj(self: P) -> P:
        """Complex conjugate, the reflection (x, y) -> (x, -y)."""
        raise NotImplementedError

    def mirror_y(self: P) -> P:
        """Reflection (x, y) -> (-x, y)."""
        return -self.conj()

    def norm(self) -> Surd:
        """Exact squared modulus."""
        raise NotImplementedError

    def coords2(self) -> Tuple[Surd, Surd]:
        """Exact doubled Cartesian coordinates (2x, 2y)."""
        raise NotImplementedError

    def to_complex(self) -> complex:
        roots = _float_roots(type(self))
        return self.a * roots[0] + self.b * roots[1] + self.c * roots[2] + self.d * roots[3]

    def divide(self: P, other: P) -> Optional[P]:
        """Exact quotient self / other in the ring, or None when it is not a ring element."""
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by the zero lattice point")
        numerator = self * other.conj()
        sqrt_elem = type(self)(*self.SQRT)
        numerator = numerator * int(n.r) - numerator * sqrt_elem * int(n.s)
        denominator = int(n.r * n.r - self.RADICAND * n.s * n.s)
        coefficients = numerator.coefficients
        if any(value % denominator for value in coefficients):
            return None
        return type(self)(*(value // denominator for value in coefficients))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.a}, {self.b}, {self.c}, {self.d})"


class ExactPoint(RingPoint):
    """Point of Z[zeta], zeta = exp(i*pi/6); reduction uses zeta^4 = zeta^2 - 1."""

    ORDER = TWELFTH_ROOT_ORDER
    RADICAND = 3
    SQRT = (0, 2, 0, -1)

    @staticmethod
    def _reduce(product: List[int]) -> Tuple[int, int, int, int]:
        p0, p1, p2, p3, p4, p5, p6 = product
        p0 -= p6
        p3 += p5
        p1 -= p5
        p2 += p4
        p0 -= p4
        return (p0, p1, p2, p3)

    def rotate(self, steps: int) -> "ExactPoint":
        steps %= TWELFTH_ROOT_ORDER
        a, b, c, d = self.a, self.b, self.c, self.d
        for _ in range(steps):
            a, b, c, d = -d, a, b + d, c
        return ExactPoint(a, b, c, d)

    def conj(self) -> "ExactPoint":
        return ExactPoint(self.a + self.c, self.b, -self.c, -self.b - self.d)

    def norm(self) -> Surd:
        a, b, c, d = self.a, self.b, self.c, self.d
        return Surd(a * a + b * b + c * c + d * d + a * c + b * d, a * b + b * c + c * d, 3)

    def coords2(self) -> Tuple[Surd, Surd]:
        return (Surd(2 * self.a + self.c, self.b, 3), Surd(self.b + 2 * self.d, self.c, 3))


class OctagonalPoint(RingPoint):
    """Point of Z[eta], eta = exp(i*pi/4); used by the (4.8.8) grid only."""

    ORDER = EIGHTH_ROOT_ORDER
    RADICAND = 2
    SQRT = (0, 1, 0, -1)

    @staticmethod
    def _reduce(product: List[int]) -> Tuple[int, int, int, int]:
        p0, p1, p2, p3, p4, p5, p6 = product
        return (p0 - p4, p1 - p5, p2 - p6, p3)

    def rotate(self, steps: int) -> "OctagonalPoint":
        steps %= EIGHTH_ROOT_ORDER
        a, b, c, d = self.a, self.b, self.c, self.d
        for _ in range(steps):
            a, b, c, d = -d, a, b, c
        return OctagonalPoint(a, b, c, d)

    def conj(self) -> "OctagonalPoint":
        return OctagonalPoint(self.a, -self.d, -self.c, -self.b)

    def norm(self) -> Surd:
        a, b, c, d = self.a, self.b, self.c, self.d
        return Surd(a * a + b * b + c * c + d * d, a * b - a * d + b * c + c * d, 2)

    def coords2(self) -> Tuple[Surd, Surd]:
        return (Surd(2 * self.a, self.b - self.d, 2), Surd(2 * self.c, self.b + self.d, 2))


_UNIT_CACHE: Dict[type, Tuple[RingPoint, ...]] = {}
_FLOAT_CACHE: Dict[type, Tuple[complex, ...]] = {}


def _unit_table(cls: Type[RingPoint]) -> Tuple[RingPoint, ...]:
    table = _UNIT_CACHE.get(cls)
    if table is None:
        units = [cls(1, 0, 0, 0)]
        for _ in range(cls.ORDER - 1):
            units.append(units[-1].rotate(1))
        table = tuple(units)
        _UNIT_CACHE[cls] = table
    return table


def _float_roots(cls: Type[RingPoint]) -> Tuple[complex, ...]:
    roots = _FLOAT_CACHE.get(cls)
    if roots is None:
        roots = tuple(cmath.exp(2j * math.pi * k / cls.ORDER) for k in range(4))
        _FLOAT_CACHE[cls] = roots
    return roots


def rotate(p: P, steps: int) -> P:
    """Exact rotation of p by steps unit angles about the origin."""
    return p.rotate(steps)


def mirror_y(p: P) -> P:
    """Exact image of p under (x, y) -> (-x, y)."""
    return p.mirror_y()


def mirror_direction(k: int, order: int = TWELFTH_ROOT_ORDER) -> int:
    """Direction index of the mirror_y image of the unit step k."""
    return (order // 2 - k) % order


def sq_dist(p: RingPoint, q: RingPoint) -> Surd:
    """Exact squared distance |p - q|^2."""
    return (p - q).norm()


@dataclass(frozen=True, order=True)
class DirectedEdge:
    """Unit edge leaving origin along direction."""

    origin: RingPoint
    direction: int

    @property
    def end(self) -> RingPoint:
        return self.origin + self.origin.unit(self.direction)

    def undirected(self) -> Tuple[RingPoint, RingPoint]:
        end = self.end
        return (self.origin, end) if self.origin <= end else (end, self.origin)


def undirected(p: RingPoint, q: RingPoint) -> Tuple[RingPoint, RingPoint]:
    """Canonical undirected form of the segment pq."""
    return (p, q) if p <= q else (q, p)


def winding_number(loop: Sequence[RingPoint], query: RingPoint, scale: int = 1) -> int:
    """
    Winding number of a closed polyline around query / scale.

    The ray is cast in +x direction at a height raised by an infinitesimal, so path vertices at
    the query height count as lying below it.

    Args:
        loop: Closed vertex sequence (first equals last)
        query: Query point multiplied by scale
        scale: Positive integer scale of the query point

    Returns:
        int: The winding number
    """
    coords = [tuple(value * scale for value in vertex.coords2()) for vertex in loop]
    return _winding_from_coords(coords, query.coords2())


def _winding_from_coords(coords: Sequence[Tuple[Surd, Surd]], q: Tuple[Surd, Surd]) -> int:
    xq, yq = q
    winding = 0
    for (x1, y1), (x2, y2) in zip(coords, coords[1:]):
        below1 = (y1 - yq).sign() <= 0
        below2 = (y2 - yq).sign() <= 0
        if below1 == below2:
            continue
        cross = ((x2 - x1) * (yq - y1) - (xq - x1) * (y2 - y1)).sign()
        if below1 and cross > 0:
            winding += 1
        elif not below1 and cross < 0:
            winding -= 1
    return winding


def winding_interior(loop: Sequence[RingPoint], centers: Sequence[RingPoint], scale: int = 1) -> List[bool]:
    """Return for each scaled face center whether the closed loop winds around it."""
    if loop and loop[0] != loop[-1]:
        raise ValueError("winding_interior needs a closed loop")
    coords = [tuple(value * scale for value in vertex.coords2()) for vertex in loop]
    return [_winding_from_coords(coords, center.coords2()) != 0 for center in centers]


def chords_noncrossing(passes: Sequence[Tuple[Optional[int], Optional[int]]]) -> bool:
    """
    Check that the passes through one vertex form a non-crossing chord diagram.

    Each pass is an (in_ray, out_ray) pair of direction indices; a None end marks a path endpoint,
    whose single ray never crosses anything.
    """
    chords = []
    for first, second in passes:
        if first is None or second is None:
            continue
        chords.append((first, second) if first < second else (second, first))
    for i, (a, b) in enumerate(chords):
        for c, d in chords[i + 1 :]:
            if (a < c < b) != (a < d < b):
                return False
    return True
