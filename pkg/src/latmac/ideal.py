"""Fractional ideals of Z[xi] as xi-stable lattices, equivalence, and the
ideal class monoid.

An ideal is (1/den) * L for a full-rank sublattice L of Z^n in power-basis
coordinates, stored in row HNF with den minimal.  Two ideals are equivalent
when one is a K*-multiple of the other.

For quadratic orders the equivalence decision is exact in both signatures:

* real (disc > 0): the basis ratio theta = w2/w1 is a quadratic irrational;
  its continued fraction expansion under a fixed real embedding is eventually
  periodic, and two lattices are K*-homothetic exactly when their expansions
  share the periodic cycle (Serret).  Tracking the partial quotients also
  yields the scaling witness.
* imaginary (disc < 0): the norm form is positive definite, so all candidate
  witnesses of the required norm in the colon lattice can be enumerated.

Degree >= 3 falls back to a bounded witness search with a three-valued
verdict; Unknown is a value, not an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, isqrt, lcm

from .errors import BudgetExceeded, ZeroIdeal
from .exactla import HNFBasis, IntMatrix, adjugate, hnf
from .order import FieldElement, Order

EQUIVALENT = "equivalent"
INEQUIVALENT = "inequivalent"
UNKNOWN = "unknown"

_CF_STEP_CAP = 20000


@dataclass(frozen=True)
class SearchBudget:
    """Caps for the degree >= 3 witness search and CF safety limits."""

    coeff_bound: int = 4
    max_candidates: int = 500000
    max_steps: int = _CF_STEP_CAP


DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True)
class EquivalenceResult:
    status: str
    witness: FieldElement | None = None

    @property
    def is_equivalent(self) -> bool:
        return self.status == EQUIVALENT


@dataclass(frozen=True)
class FracIdeal:
    """Fractional ideal (1/den) * L with L in row HNF and den minimal."""

    order: Order
    den: int
    lattice: HNFBasis

    def __post_init__(self):
        if self.den < 1:
            raise ValueError("denominator must be positive")
        rows = self.lattice.rows
        g = 0
        for r in rows:
            for x in r:
                g = gcd(g, x)
        if gcd(self.den, g) != 1:
            raise ValueError("denominator not minimal against lattice content")
        o = self.order
        for r in rows:
            if not self.lattice.contains(o.xi_times(r)):
                raise ValueError("lattice is not xi-stable")

    @property
    def n(self) -> int:
        return self.order.n

    def norm(self) -> Fraction:
        return Fraction(self.lattice.determinant(), self.den ** self.n)

    def is_integral(self) -> bool:
        return self.den == 1

    def basis_elements(self):
        """Lattice rows as FieldElements, including the 1/den factor."""
        d = Fraction(1, self.den)
        return [FieldElement(self.order, tuple(Fraction(x) * d for x in r))
                for r in self.lattice.rows]

    def contains(self, x: FieldElement) -> bool:
        scaled = [c * self.den for c in x.coords]
        if any(c.denominator != 1 for c in scaled):
            return False
        return self.lattice.contains([int(c) for c in scaled])

    def scale(self, z: FieldElement) -> "FracIdeal":
        """The ideal z * self for nonzero z."""
        if z.is_zero():
            raise ZeroIdeal("scaling by zero")
        o = self.order
        rows = [o.reduce_product(z.coords, r) for r in self.lattice.rows]
        den = lcm(*(c.denominator for r in rows for c in r)) * self.den
        scale = den // self.den
        int_rows = [[int(c * scale) for c in r] for r in rows]
        return make_ideal(o, int_rows, den)

    def __repr__(self):
        return f"FracIdeal(den={self.den}, rows={self.lattice.rows})"


def make_ideal(order: Order, rows, den: int = 1) -> FracIdeal:
    """HNF-reduce generators and normalize the denominator."""
    basis = hnf(rows)
    g = 0
    for r in basis.rows:
        for x in r:
            g = gcd(g, x)
    g = gcd(g, den)
    if g > 1:
        basis = HNFBasis(tuple(tuple(x // g for x in r) for r in basis.rows))
        den //= g
    return FracIdeal(order, den, basis)


def unit_ideal(order: Order) -> FracIdeal:
    return FracIdeal(order, 1, HNFBasis(IntMatrix.identity(order.n).rows))


def ideal_from_generators(gens) -> FracIdeal:
    """Smallest fractional ideal containing the given field elements."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ZeroIdeal("all generators are zero")
    o = gens[0].order
    n = o.n
    rows = []
    for g in gens:
        cur = list(g.coords)
        for _ in range(n):
            rows.append(tuple(cur))
            cur = o.xi_times(cur)
    den = lcm(*(c.denominator for r in rows for c in r))
    int_rows = [[int(c * den) for c in r] for r in rows]
    return make_ideal(o, int_rows, den)


def principal_ideal(x: FieldElement) -> FracIdeal:
    return ideal_from_generators([x])


def mul_ideals(a: FracIdeal, b: FracIdeal) -> FracIdeal:
    """Product ideal, generated by pairwise products of basis elements."""
    if a.order != b.order:
        raise ValueError("ideals of different orders")
    o = a.order
    rows = []
    for r in a.lattice.rows:
        for s in b.lattice.rows:
            rows.append(o.reduce_product(r, s))
    return make_ideal(o, rows, a.den * b.den)


def ideal_norm(a: FracIdeal) -> Fraction:
    return a.norm()


def colon(a: FracIdeal, b: FracIdeal) -> FracIdeal:
    """The lattice {z in K : z*b subset of a}, by the dual-lattice method.

    Each membership condition z*beta_j in a is an integrality condition on
    the coordinates of z; the solution set is Q times the dual of the column
    span of the stacked condition matrices.
    """
    if a.order != b.order:
        raise ValueError("ideals of different orders")
    o = a.order
    n = o.n
    amat = IntMatrix(a.lattice.rows)
    adj_a = adjugate(amat)
    det_a = a.lattice.determinant()
    q = det_a * b.den
    cols = []
    for beta in b.lattice.rows:
        rmat = FieldElement(o, tuple(Fraction(x) for x in beta)).mul_matrix_rows()
        r_int = IntMatrix(tuple(tuple(int(c) for c in row) for row in rmat))
        g = r_int * adj_a
        scaled = tuple(tuple(a.den * x for x in row) for row in g.rows)
        for col in zip(*scaled):
            cols.append(col)
    h = hnf(cols)
    det_h = h.determinant()
    dual_rows = tuple(zip(*adjugate(IntMatrix(h.rows)).rows))
    rows = [tuple(q * x for x in r) for r in dual_rows]
    return make_ideal(o, rows, det_h)


def multiplicator_ring(a: FracIdeal) -> FracIdeal:
    """colon(a, a): the largest order for which a is a module."""
    return colon(a, a)


def is_invertible(a: FracIdeal) -> bool:
    """True iff a * (1 : a) is the unit ideal."""
    one = unit_ideal(a.order)
    return mul_ideals(a, colon(one, a)) == one


# ---------------------------------------------------------------------------
# Equivalence: real quadratic continued-fraction cycle
# ---------------------------------------------------------------------------

def _floor_embedding(order: Order, p: Fraction, q: Fraction) -> int:
    """Exact floor of p + q*xi under the embedding xi -> (-b + sqrt(D))/2."""
    b = order.chi.coeffs[1]
    d = order.disc
    x = p - Fraction(q * b, 2)
    y = Fraction(q, 2)
    c = lcm(x.denominator, y.denominator)
    big_a = int(x * c)
    big_b = int(y * c)
    if big_b == 0:
        return big_a // c
    s = isqrt(big_b * big_b * d)
    if big_b > 0:
        return (big_a + s) // c
    return (big_a - s - 1) // c


def _cf_cycle(a: FracIdeal, budget: SearchBudget):
    """Continued-fraction data for the basis ratio of a real quadratic ideal.

    Returns (cycle_states, state_to_scale, anchor) where anchor * (Z + Z*theta)
    equals a whenever theta is the state's value and scale is the accumulated
    product of partial remainders at that state.
    """
    o = a.order
    r0, r1 = a.lattice.rows
    w1 = FieldElement(o, (Fraction(r0[0], a.den), Fraction(r0[1], a.den)))
    theta = FieldElement(o, (Fraction(r1[0]), Fraction(r1[1]))) / \
        FieldElement(o, (Fraction(r0[0]), Fraction(r0[1])))
    if theta.coords[1] == 0:
        raise RuntimeError("basis ratio unexpectedly rational")
    scale = FieldElement(o, (Fraction(1), Fraction(0)))
    seen = {}
    trail = []
    for step in range(budget.max_steps):
        state = (theta.coords[0], theta.coords[1])
        if state in seen:
            start = seen[state]
            cycle = {s: sc for s, sc in trail[start:]}
            return frozenset(cycle), cycle, w1
        seen[state] = step
        trail.append((state, scale))
        q = _floor_embedding(o, theta.coords[0], theta.coords[1])
        delta = FieldElement(o, (theta.coords[0] - q, theta.coords[1]))
        scale = scale * delta
        theta = delta.inverse()
    raise BudgetExceeded("continued fraction failed to cycle within budget")


def cycle_key(a: FracIdeal, budget: SearchBudget = DEFAULT_BUDGET) -> frozenset:
    """Class invariant for real quadratic ideals: the CF cycle state set."""
    states, _, _ = _cf_cycle(a, budget)
    return states


def _equivalent_real_quadratic(a, b, budget):
    states_a, cycle_a, anchor_a = _cf_cycle(a, budget)
    o = a.order
    r0, r1 = b.lattice.rows
    anchor_b = FieldElement(o, (Fraction(r0[0], b.den), Fraction(r0[1], b.den)))
    theta = FieldElement(o, (Fraction(r1[0]), Fraction(r1[1]))) / \
        FieldElement(o, (Fraction(r0[0]), Fraction(r0[1])))
    scale = FieldElement(o, (Fraction(1), Fraction(0)))
    seen = set()
    for _ in range(budget.max_steps):
        state = (theta.coords[0], theta.coords[1])
        if state in states_a:
            z = (anchor_b * scale) / (anchor_a * cycle_a[state])
            assert a.scale(z) == b
            return EquivalenceResult(EQUIVALENT, z)
        if state in seen:
            return EquivalenceResult(INEQUIVALENT)
        seen.add(state)
        q = _floor_embedding(o, theta.coords[0], theta.coords[1])
        delta = FieldElement(o, (theta.coords[0] - q, theta.coords[1]))
        scale = scale * delta
        theta = delta.inverse()
    raise BudgetExceeded("continued fraction failed to cycle within budget")


# ---------------------------------------------------------------------------
# Equivalence: imaginary quadratic definite enumeration
# ---------------------------------------------------------------------------

def _equivalent_imaginary_quadratic(a, b):
    """Enumerate all z in (b : a) with N(z) = N(b)/N(a); none means inequivalent."""
    o = a.order
    c = colon(b, a)
    t = b.norm() / a.norm()
    g1, g2 = c.basis_elements()
    q11 = g1.norm()
    q22 = g2.norm()
    q12 = (g1 + g2).norm() - q11 - q22
    den = lcm(q11.denominator, q12.denominator, q22.denominator, t.denominator)
    aa, bb, cc, tt = (int(q11 * den), int(q12 * den), int(q22 * den), int(t * den))
    disc = bb * bb - 4 * aa * cc
    assert disc < 0 and aa > 0
    ymax = isqrt(4 * aa * tt // (-disc))
    for y in range(-ymax, ymax + 1):
        dx = disc * y * y + 4 * aa * tt
        if dx < 0:
            continue
        s = isqrt(dx)
        if s * s != dx:
            continue
        for sign in ((s,) if s == 0 else (s, -s)):
            num = -bb * y + sign
            if num % (2 * aa):
                continue
            x = num // (2 * aa)
            if x == 0 and y == 0:
                continue
            z = g1 * x + g2 * y
            if a.scale(z) == b:
                return EquivalenceResult(EQUIVALENT, z)
    return EquivalenceResult(INEQUIVALENT)


# ---------------------------------------------------------------------------
# Equivalence: bounded search for degree >= 3
# ---------------------------------------------------------------------------

def _equivalent_bounded_search(a, b, budget):
    if multiplicator_ring(a) != multiplicator_ring(b):
        return EquivalenceResult(INEQUIVALENT)
    o = a.order
    n = o.n
    c = colon(b, a)
    t = b.norm() / a.norm()
    rows = c.lattice.rows
    cb = budget.coeff_bound
    combos = sorted(product(range(-cb, cb + 1), repeat=n),
                    key=lambda v: (max(abs(x) for x in v), v))
    tried = 0
    for combo in combos:
        if not any(combo):
            continue
        first = next(x for x in combo if x)
        if first < 0:
            continue  # -z works iff z does
        tried += 1
        if tried > budget.max_candidates:
            break
        w = [0] * n
        for coef, row in zip(combo, rows):
            if coef:
                for i in range(n):
                    w[i] += coef * row[i]
        z = FieldElement(o, tuple(Fraction(x, c.den) for x in w))
        if abs(z.norm()) != t:
            continue
        if a.scale(z) == b:
            return EquivalenceResult(EQUIVALENT, z)
    return EquivalenceResult(UNKNOWN)


def is_equivalent(a: FracIdeal, b: FracIdeal,
                  budget: SearchBudget = DEFAULT_BUDGET) -> EquivalenceResult:
    """Decide whether z*a = b for some nonzero z in K.

    Exact (never Unknown) for n <= 2; three-valued for higher degree.
    The witness of every Equivalent verdict is verified exactly.
    """
    if a.order != b.order:
        raise ValueError("ideals of different orders")
    o = a.order
    if a == b:
        return EquivalenceResult(EQUIVALENT, o.one().to_field())
    if o.n == 1:
        z = FieldElement(o, (Fraction(b.lattice.rows[0][0] * a.den,
                                      a.lattice.rows[0][0] * b.den),))
        assert a.scale(z) == b
        return EquivalenceResult(EQUIVALENT, z)
    if o.n == 2:
        if o.disc > 0:
            return _equivalent_real_quadratic(a, b, budget)
        return _equivalent_imaginary_quadratic(a, b)
    return _equivalent_bounded_search(a, b, budget)


# ---------------------------------------------------------------------------
# Class monoid enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdealClass:
    """Equivalence class, named by its minimal-norm integral representative."""

    canonical: FracIdeal
    invertible: bool

    def __post_init__(self):
        if not self.canonical.is_integral():
            raise ValueError("canonical representative must be integral")


@dataclass(frozen=True)
class ClassMonoid:
    order: Order
    classes: tuple[IdealClass, ...]
    picard_size: int
    bound_used: int
    unknown_pairs: int = 0

    @property
    def size(self) -> int:
        return len(self.classes)


def _divisor_chains(m, k):
    """All k-tuples of positive integers with product m."""
    if k == 1:
        yield (m,)
        return
    for d in range(1, m + 1):
        if m % d == 0:
            for rest in _divisor_chains(m // d, k - 1):
                yield (d,) + rest


def stable_sublattices(order: Order, max_index: int, max_count: int = 500000):
    """All xi-stable sublattices of Z[xi] with index <= max_index, as ideals.

    HNF enumeration: diagonal divisor chains times reduced off-diagonal
    entries, filtered by stability of each basis row.
    """
    n = order.n
    found = []
    count = 0
    for m in range(1, max_index + 1):
        for diag in _divisor_chains(m, n):
            offdiag_ranges = []
            for i in range(n):
                for j in range(i + 1, n):
                    offdiag_ranges.append(range(diag[j]))
            for offs in product(*offdiag_ranges):
                count += 1
                if count > max_count:
                    raise BudgetExceeded(
                        f"more than {max_count} candidate lattices")
                rows = [[0] * n for _ in range(n)]
                k = 0
                for i in range(n):
                    rows[i][i] = diag[i]
                    for j in range(i + 1, n):
                        rows[i][j] = offs[k]
                        k += 1
                basis = HNFBasis(tuple(tuple(r) for r in rows))
                if all(basis.contains(order.xi_times(r)) for r in basis.rows):
                    found.append(FracIdeal(order, 1, basis))
    return found


def default_bound(order: Order) -> int:
    """Minkowski-style enumeration bound ceil(sqrt(|disc|))."""
    d = abs(order.disc)
    s = isqrt(d)
    return s if s * s == d else s + 1


def class_monoid(order: Order, bound_override: int | None = None,
                 budget: SearchBudget = DEFAULT_BUDGET,
                 max_count: int = 500000) -> ClassMonoid:
    """Enumerate the ideal class monoid from integral ideals of bounded index.

    The default bound is ceil(sqrt(|disc|)); results should be validated by
    re-running at a doubled bound and against the matrix oracle.
    """
    bound = bound_override if bound_override is not None else default_bound(order)
    ideals = stable_sublattices(order, bound, max_count)
    ideals.sort(key=lambda a: (a.lattice.determinant(), a.lattice.rows))
    buckets: list[list[FracIdeal]] = []
    unknown_pairs = 0
    if order.n == 2 and order.disc > 0:
        keyed: dict[frozenset, list[FracIdeal]] = {}
        for a in ideals:
            keyed.setdefault(cycle_key(a, budget), []).append(a)
        buckets = [keyed[k] for k in sorted(
            keyed, key=lambda k: (keyed[k][0].lattice.determinant(),
                                  keyed[k][0].lattice.rows))]
    else:
        reps: list[FracIdeal] = []
        for a in ideals:
            placed = False
            for i, r in enumerate(reps):
                verdict = is_equivalent(a, r, budget)
                if verdict.status == EQUIVALENT:
                    buckets[i].append(a)
                    placed = True
                    break
                if verdict.status == UNKNOWN:
                    unknown_pairs += 1
            if not placed:
                reps.append(a)
                buckets.append([a])
    classes = []
    for members in buckets:
        canonical = min(members,
                        key=lambda a: (a.lattice.determinant(), a.lattice.rows))
        classes.append(IdealClass(canonical, is_invertible(canonical)))
    classes.sort(key=lambda c: (c.canonical.lattice.determinant(),
                                c.canonical.lattice.rows))
    picard = sum(1 for c in classes if c.invertible)
    return ClassMonoid(order, tuple(classes), picard, bound, unknown_pairs)
