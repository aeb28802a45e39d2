"""Exact lattice arithmetic in the plane.

Scalars are ``fractions.Fraction``; nothing in here ever touches a float.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import DegenerateBasisError, EqualPointsError

Rational = Fraction


def rational(value) -> Fraction:
    """Coerce int, Fraction or a "p/q" string to a Fraction.

    Floats are refused on purpose: a float has already lost the exact value.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            n = int(num)
            d = int(den) if sep else 1
        except ValueError:
            raise ValueError(f"malformed rational literal {value!r}") from None
        if d == 0:
            raise ValueError(f"zero denominator in {value!r}")
        return Fraction(n, d)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, order=True)
class LatticeVector:
    a: int
    b: int

    def __post_init__(self):
        if not (isinstance(self.a, int) and isinstance(self.b, int)):
            raise TypeError("lattice vector entries must be integers")

    def is_primitive(self) -> bool:
        return (self.a, self.b) != (0, 0) and gcd(self.a, self.b) == 1

    def __neg__(self):
        return LatticeVector(-self.a, -self.b)

    def __add__(self, other):
        return LatticeVector(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return LatticeVector(self.a - other.a, self.b - other.b)

    def __iter__(self):
        yield self.a
        yield self.b

    def __repr__(self):
        return f"LatticeVector({self.a}, {self.b})"


@dataclass(frozen=True, order=True)
class RatPoint2:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", rational(self.x))
        object.__setattr__(self, "y", rational(self.y))

    def __add__(self, other):
        return RatPoint2(self.x + other_x(other), self.y + other_y(other))

    def __sub__(self, other):
        return RatPoint2(self.x - other.x, self.y - other.y)

    def translate(self, v, t=1):
        """Return self + t*v for a lattice vector or point v."""
        t = rational(t)
        return RatPoint2(self.x + t * other_x(v), self.y + t * other_y(v))

    def __iter__(self):
        yield self.x
        yield self.y

    def __repr__(self):
        return f"RatPoint2({format_rational(self.x)}, {format_rational(self.y)})"


def other_x(v):
    return v.a if isinstance(v, LatticeVector) else v.x


def other_y(v):
    return v.b if isinstance(v, LatticeVector) else v.y


def point(x, y) -> RatPoint2:
    return RatPoint2(rational(x), rational(y))


def primitive_direction(p: RatPoint2, q: RatPoint2) -> LatticeVector:
    """Primitive integer vector pointing from p to q."""
    if p == q:
        raise EqualPointsError(f"no direction between equal points {p!r}")
    dx, dy = q.x - p.x, q.y - p.y
    scale = lcm(dx.denominator, dy.denominator)
    a, b = int(dx * scale), int(dy * scale)
    g = gcd(a, b)
    return LatticeVector(a // g, b // g)


def lattice_length(p: RatPoint2, q: RatPoint2) -> Fraction:
    """The rational l with q - p = l * primitive_direction(p, q)."""
    u = primitive_direction(p, q)
    if u.a != 0:
        return (q.x - p.x) / u.a
    return (q.y - p.y) / u.b


def det2(v, w):
    return other_x(v) * other_y(w) - other_y(v) * other_x(w)


def pairing(xi: LatticeVector, v):
    return xi.a * other_x(v) + xi.b * other_y(v)


def shear(m: int, v):
    """Apply T^m, (x, y) -> (x, m x + y)."""
    if isinstance(v, LatticeVector):
        return LatticeVector(v.a, m * v.a + v.b)
    return RatPoint2(v.x, m * v.x + v.y)


def cut_shear(j, mirror: bool, invert: bool, p: RatPoint2) -> RatPoint2:
    """Piecewise shear fixing the vertical line x = j.

    mirror=False acts on x >= j by (x, y + x - j); mirror=True acts on x <= j
    by (x, y + j - x).  invert selects the inverse map.
    """
    j = rational(j)
    if mirror:
        if p.x > j:
            return p
        shift = j - p.x
    else:
        if p.x < j:
            return p
        shift = p.x - j
    if invert:
        shift = -shift
    return RatPoint2(p.x, p.y + shift)


def simplex_coordinates(x: RatPoint2, u1, u2, q: RatPoint2):
    """Solve q = x + t1 u1 + t2 u2 exactly, returning (t1, t2)."""
    d = det2(u1, u2)
    if d == 0:
        raise DegenerateBasisError(f"directions {u1!r} and {u2!r} are parallel")
    r = q - x
    t1 = Fraction(det2(r, u2)) / d
    t2 = Fraction(det2(u1, r)) / d
    return t1, t2


def chop_region_contains(x: RatPoint2, u1, u2, lam, q: RatPoint2, closed=False) -> bool:
    """Membership of q in the open simplex {x + t1 u1 + t2 u2 : t1, t2 > 0, t1 + t2 < lam}.

    closed=True tests the closed simplex instead, which is what the chop
    preconditions need.
    """
    lam = rational(lam)
    t1, t2 = simplex_coordinates(x, u1, u2, q)
    if closed:
        return t1 >= 0 and t2 >= 0 and t1 + t2 <= lam
    return t1 > 0 and t2 > 0 and t1 + t2 < lam
