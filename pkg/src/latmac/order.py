"""Arithmetic in the monogenic order Z[xi] = Z[X]/(chi) and its fraction field.

Elements live on the power basis 1, xi, ..., xi^(n-1).  OrderElement carries
integer coordinates, FieldElement rational ones; both reduce products through
the same precomputed table of xi-power coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import ReduciblePolynomial
from .exactla import (
    MonicIntPoly, companion, det_bareiss, discriminant, is_irreducible,
)


class Order:
    """The ring Z[xi] for xi a root of a monic irreducible polynomial."""

    __slots__ = ("chi", "n", "companion", "disc", "_xi_powers")

    def __init__(self, chi: MonicIntPoly, *, check=True, degree_cap=None):
        if check:
            kwargs = {} if degree_cap is None else {"degree_cap": degree_cap}
            if not is_irreducible(chi, **kwargs):
                raise ReduciblePolynomial(f"{chi} is reducible over Z")
        self.chi = chi
        self.n = chi.degree
        self.companion = companion(chi)
        self.disc = discriminant(chi)
        # coordinates of xi^k for k = 0 .. 2n-2, low-degree-first
        n = self.n
        low = list(reversed(chi.coeffs))  # c0, ..., c_{n-1}, 1
        powers = [[1 if i == k else 0 for i in range(n)] for k in range(n)]
        for _ in range(n - 1):
            prev = powers[-1]
            shifted = [0] + prev[:-1]
            head = prev[-1]
            if head:
                shifted = [s - head * low[i] for i, s in enumerate(shifted)]
            powers.append(shifted)
        self._xi_powers = tuple(tuple(row) for row in powers)

    def __eq__(self, other):
        return isinstance(other, Order) and self.chi == other.chi

    def __hash__(self):
        return hash(self.chi)

    def __repr__(self):
        return f"Order({self.chi})"

    def reduce_product(self, a, b):
        """Coordinates of the product of two coordinate vectors mod chi."""
        n = self.n
        conv = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        out = [0] * n
        for k, c in enumerate(conv):
            if c:
                pk = self._xi_powers[k]
                for i in range(n):
                    if pk[i]:
                        out[i] += c * pk[i]
        return out

    def xi_times(self, coords):
        """Coordinates of xi * element."""
        n = self.n
        head = coords[-1]
        out = [0] + list(coords[:-1])
        if head:
            pk = self._xi_powers[n]
            out = [o + head * p for o, p in zip(out, pk)]
        return out

    def zero(self) -> "OrderElement":
        return OrderElement(self, (0,) * self.n)

    def one(self) -> "OrderElement":
        return OrderElement(self, (1,) + (0,) * (self.n - 1))

    def xi(self) -> "OrderElement":
        return OrderElement(self, tuple(1 if i == 1 else 0 for i in range(self.n)))

    def element(self, coords) -> "OrderElement":
        return OrderElement(self, tuple(int(c) for c in coords))

    def field_element(self, coords) -> "FieldElement":
        return FieldElement(self, tuple(Fraction(c) for c in coords))


@dataclass(frozen=True)
class OrderElement:
    """Element of Z[xi] with integer power-basis coordinates."""

    order: Order
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.order.n:
            raise ValueError("coordinate length mismatch")

    def __add__(self, other):
        return OrderElement(self.order, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return OrderElement(self.order, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return OrderElement(self.order, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, int):
            return OrderElement(self.order, tuple(a * other for a in self.coords))
        if self.order is not other.order and self.order != other.order:
            raise ValueError("elements of different orders")
        return OrderElement(self.order, tuple(self.order.reduce_product(self.coords, other.coords)))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def to_field(self) -> "FieldElement":
        return FieldElement(self.order, tuple(Fraction(c) for c in self.coords))

    def norm(self):
        return self.to_field().norm()

    def __repr__(self):
        return f"OrderElement{self.coords}"


@dataclass(frozen=True)
class FieldElement:
    """Element of K = Q[X]/(chi) with rational power-basis coordinates."""

    order: Order
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.order.n:
            raise ValueError("coordinate length mismatch")
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def __add__(self, other):
        return FieldElement(self.order, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return FieldElement(self.order, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return FieldElement(self.order, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.order, tuple(a * other for a in self.coords))
        return FieldElement(self.order, tuple(self.order.reduce_product(self.coords, other.coords)))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def mul_matrix_rows(self):
        """Rows k = coordinates of self * xi^k; x -> x . rows is mult by self."""
        rows = []
        cur = list(self.coords)
        for _ in range(self.order.n):
            rows.append(tuple(cur))
            cur = self.order.xi_times(cur)
        return tuple(rows)

    def norm(self) -> Fraction:
        """Determinant of multiplication by self on the power basis."""
        rows = self.mul_matrix_rows()
        den = lcm(*(c.denominator for r in rows for c in r))
        int_rows = [[int(c * den) for c in r] for r in rows]
        return Fraction(det_bareiss(int_rows), den ** self.order.n)

    def trace(self) -> Fraction:
        rows = self.mul_matrix_rows()
        return sum(rows[i][i] for i in range(self.order.n))

    def inverse(self) -> "FieldElement":
        """Multiplicative inverse by extended Euclid against chi over Q."""
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        # run xgcd on (lift of self, chi); degrees low-first here
        n = self.order.n
        chi_low = [Fraction(c) for c in reversed(self.order.chi.coeffs)]
        a = list(self.coords)

        def deg(p):
            d = len(p) - 1
            while d >= 0 and p[d] == 0:
                d -= 1
            return d

        def times(p, q):
            out = [Fraction(0)] * (len(p) + len(q) - 1)
            for i, x in enumerate(p):
                if x:
                    for j, y in enumerate(q):
                        out[i + j] += x * y
            return out

        r0, r1 = chi_low, a + [Fraction(0)]
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while deg(r1) > 0:
            d0, d1 = deg(r0), deg(r1)
            quot = [Fraction(0)] * (d0 - d1 + 1)
            rem = list(r0)
            for k in range(d0 - d1, -1, -1):
                c = rem[d1 + k] / r1[d1]
                quot[k] = c
                if c:
                    for i in range(d1 + 1):
                        rem[i + k] -= c * r1[i]
            r0, r1 = r1, rem
            qs = times(quot, s1)
            news = [Fraction(0)] * max(len(s0), len(qs))
            for i, x in enumerate(s0):
                news[i] += x
            for i, x in enumerate(qs):
                news[i] -= x
            s0, s1 = s1, news
        if deg(r1) != 0:
            raise ZeroDivisionError("element shares a factor with chi")
        c = r1[deg(r1)]
        inv = [x / c for x in s1[:n]] + [Fraction(0)] * max(0, n - len(s1))
        return FieldElement(self.order, tuple(inv[:n]))

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return self * other.inverse()

    def denominator(self) -> int:
        return lcm(*(c.denominator for c in self.coords))

    def integral_parts(self):
        """(d, OrderElement w) with self = w / d and d minimal positive."""
        d = self.denominator()
        w = OrderElement(self.order, tuple(int(c * d) for c in self.coords))
        return d, w

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def __repr__(self):
        return f"FieldElement{tuple(str(c) for c in self.coords)}"


def field_gcd_content(elements) -> int:
    """gcd of all integer coordinates across OrderElements (0 if all zero)."""
    g = 0
    for e in elements:
        for c in e.coords:
            g = gcd(g, c)
    return g
