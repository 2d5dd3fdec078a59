"""Exact integer and rational linear algebra plus integer polynomial arithmetic.

Everything here is arbitrary precision: Python ints for integer work,
fractions.Fraction for rational elimination.  The lattice normal form used
throughout the package is row-style Hermite normal form: upper triangular,
positive pivots, entries above a pivot reduced modulo it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import DegreeCapExceeded, RankDeficient

DEGREE_CAP = 6


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonicIntPoly:
    """Monic integer polynomial, coefficients highest degree first."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) < 2:
            raise ValueError("degree must be at least 1")
        if self.coeffs[0] != 1:
            raise ValueError("leading coefficient must be 1")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def derivative(self) -> tuple[int, ...]:
        n = self.degree
        return tuple((n - i) * c for i, c in enumerate(self.coeffs[:-1]))

    def __str__(self):
        parts = []
        n = self.degree
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = n - i
            if e == 0:
                term = str(abs(c))
            else:
                xe = "X" if e == 1 else f"X^{e}"
                term = xe if abs(c) == 1 else f"{abs(c)}{xe}"
            parts.append(("- " if c < 0 else "+ ") + term)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def poly_from_string(text: str) -> MonicIntPoly:
    """Parse comma-separated coefficients, highest degree first."""
    return MonicIntPoly(tuple(int(t.strip()) for t in text.split(",")))


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod_monic(num, den):
    """Divide by a monic polynomial; coefficients highest degree first."""
    num = list(num)
    dn = len(den) - 1
    quot = []
    while len(num) - 1 >= dn:
        lead = num[0]
        quot.append(lead)
        if lead:
            for i in range(1, len(den)):
                num[i] -= lead * den[i]
        num.pop(0)
    return quot, num


def poly_gcd_rational(a, b):
    """Monic gcd over Q of two integer polynomial coefficient sequences."""
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    while any(b):
        while b and b[0] == 0:
            b.pop(0)
        if not b:
            break
        lead = b[0]
        bm = [c / lead for c in b]
        _, r = _poly_divmod_monic(a, bm)
        a, b = bm, r
    while a and a[0] == 0:
        a.pop(0)
    if not a:
        return []
    return [c / a[0] for c in a]


# ---------------------------------------------------------------------------
# Integer matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntMatrix:
    """Square matrix of arbitrary-precision integers."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        n = self.n
        ot = tuple(zip(*other.rows))
        return IntMatrix(tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
            for row in self.rows))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(tuple(tuple(a + b for a, b in zip(r, s))
                               for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(tuple(tuple(a - b for a, b in zip(r, s))
                               for r, s in zip(self.rows, other.rows)))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    def mul_vec(self, v):
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.rows)


def det_bareiss(rows) -> int:
    """Fraction-free Bareiss determinant of a square integer matrix."""
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_cofactor(rows) -> int:
    """Cofactor-expansion determinant, used as an independent cross-check."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    first = rows[0]
    rest = rows[1:]
    for j, c in enumerate(first):
        if c == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in [list(x) for x in rest]]
        total += (-1) ** j * c * det_cofactor(minor)
    return total


def det(a: IntMatrix) -> int:
    return det_bareiss(a.rows)


def rank(a: IntMatrix) -> int:
    """Exact rank over Q by fraction elimination."""
    m = [[Fraction(x) for x in row] for row in a.rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == nrows:
            break
    return r


def kernel_rational(a: IntMatrix):
    """Basis of the right kernel of a over Q, as tuples of Fractions."""
    n = a.n
    m = [[Fraction(x) for x in row] for row in a.rows]
    pivots = {}
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, n) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(n):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots[col] = r
        r += 1
    basis = []
    free = [c for c in range(n) if c not in pivots]
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for col, prow in pivots.items():
            vec[col] = -m[prow][fc]
        basis.append(tuple(vec))
    return basis


def adjugate(a: IntMatrix) -> IntMatrix:
    """Adjugate matrix: adj(a) * a = det(a) * I, computed by cofactors."""
    n = a.n
    rows = [list(r) for r in a.rows]
    if n == 1:
        return IntMatrix(((1,),))
    cof = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(rows) if k != i]
            cof[i][j] = (-1) ** (i + j) * det_bareiss(minor)
    return IntMatrix(tuple(zip(*cof)))


def charpoly(m: IntMatrix) -> MonicIntPoly:
    """Characteristic polynomial det(XI - M) by the Faddeev-LeVerrier scheme.

    All intermediate divisions are exact over Z.
    """
    n = m.n
    coeffs = [1]
    work = IntMatrix.identity(n)
    for k in range(1, n + 1):
        work = m * work
        tr = sum(work.rows[i][i] for i in range(n))
        assert tr % k == 0
        c = -tr // k
        coeffs.append(c)
        if k < n:
            work = work + IntMatrix(tuple(
                tuple(c if i == j else 0 for j in range(n)) for i in range(n)))
    return MonicIntPoly(tuple(coeffs))


def companion(p: MonicIntPoly) -> IntMatrix:
    """Matrix C with C * (1, t, ..., t^(n-1))^T = t * (1, t, ..., t^(n-1))^T."""
    n = p.degree
    low_first = list(reversed(p.coeffs))  # c0, c1, ..., c_{n-1}, 1
    rows = []
    for i in range(n - 1):
        rows.append(tuple(1 if j == i + 1 else 0 for j in range(n)))
    rows.append(tuple(-low_first[j] for j in range(n)))
    return IntMatrix(tuple(rows))


def sylvester_resultant(p, q) -> int:
    """Resultant of two integer coefficient sequences (highest degree first)."""
    dp = len(p) - 1
    dq = len(q) - 1
    size = dp + dq
    rows = []
    for i in range(dq):
        rows.append([0] * i + list(p) + [0] * (dq - 1 - i))
    for i in range(dp):
        rows.append([0] * i + list(q) + [0] * (dp - 1 - i))
    assert all(len(r) == size for r in rows)
    return det_bareiss(rows)


def discriminant(p: MonicIntPoly) -> int:
    """Integer discriminant, (-1)^(n(n-1)/2) * res(p, p')."""
    n = p.degree
    if n == 1:
        return 1
    res = sylvester_resultant(p.coeffs, p.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res


def _norm2_ceil(coeffs) -> int:
    return math.isqrt(sum(c * c for c in coeffs)) + 1


def _divisors_signed(m: int, cap: int):
    out = []
    for d in range(1, min(abs(m), cap) + 1):
        if m % d == 0:
            out.append(d)
            out.append(-d)
    return out


def is_irreducible(p: MonicIntPoly, degree_cap: int = DEGREE_CAP) -> bool:
    """Decide irreducibility over Z by bounded exhaustive factor search.

    Candidate monic factors of degree d have coefficients bounded by the
    Landau-Mignotte bound 2^d * ||p||_2; constant terms must divide p(0) and
    candidate values at 1 and -1 must divide p(1) and p(-1).
    """
    n = p.degree
    if n > degree_cap:
        raise DegreeCapExceeded(f"degree {n} above cap {degree_cap}")
    if n == 1:
        return True
    p0 = p(0)
    if p0 == 0:
        return False
    p1 = p(1)
    pm1 = p(-1)
    if p1 == 0 or pm1 == 0:
        return False
    norm2 = _norm2_ceil(p.coeffs)
    for d in range(1, n // 2 + 1):
        bound = (1 << d) * norm2
        consts = _divisors_signed(p0, bound)
        if d == 1:
            for c in consts:
                if p(-c) == 0:
                    return False
            continue
        mid_range = range(-bound, bound + 1)
        for const in consts:
            for mid in product(mid_range, repeat=d - 1):
                g = (1,) + mid + (const,)
                g1 = sum(g)
                if g1 == 0 or p1 % g1 != 0:
                    continue
                gm1 = sum(c if (d - i) % 2 == 0 else -c for i, c in enumerate(g))
                if gm1 == 0 or pm1 % gm1 != 0:
                    continue
                _, rem = _poly_divmod_monic(p.coeffs, g)
                if not any(rem):
                    return False
    return True


# ---------------------------------------------------------------------------
# Hermite and Smith normal forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HNFBasis:
    """Row Hermite normal form basis of a full-rank sublattice of Z^n."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        for i, r in enumerate(rows):
            if len(r) != n:
                raise ValueError("HNF basis must be square")
            if r[i] <= 0:
                raise ValueError("HNF pivots must be positive")
            if any(r[j] != 0 for j in range(i)):
                raise ValueError("HNF basis must be upper triangular")
        for j in range(n):
            for i in range(j):
                if not 0 <= rows[i][j] < rows[j][j]:
                    raise ValueError("entries above a pivot must be reduced")

    @property
    def n(self) -> int:
        return len(self.rows)

    def determinant(self) -> int:
        out = 1
        for i in range(self.n):
            out *= self.rows[i][i]
        return out

    def contains(self, vec) -> bool:
        """Membership by triangular solve. Exact."""
        v = list(vec)
        for i in range(self.n):
            if v[i] % self.rows[i][i] != 0:
                return False
            q = v[i] // self.rows[i][i]
            if q:
                for j in range(i, self.n):
                    v[j] -= q * self.rows[i][j]
        return not any(v)

    def coordinates(self, vec):
        """Integer coordinates of vec in this basis, or None."""
        v = list(vec)
        coords = []
        for i in range(self.n):
            if v[i] % self.rows[i][i] != 0:
                return None
            q = v[i] // self.rows[i][i]
            coords.append(q)
            if q:
                for j in range(i, self.n):
                    v[j] -= q * self.rows[i][j]
        return tuple(coords) if not any(v) else None


def _echelon_insert(basis, vec):
    """Insert vec into an echelon list of rows, returning nothing.

    basis maps pivot column -> row; rows are not yet sign- or
    above-pivot-normalized.
    """
    v = list(vec)
    n = len(v)
    j = 0
    while j < n:
        if v[j] == 0:
            j += 1
            continue
        if j not in basis:
            basis[j] = v
            return
        row = basis[j]
        a, b = row[j], v[j]
        if b % a == 0:
            q = b // a
            for k in range(j, n):
                v[k] -= q * row[k]
        else:
            g, x, y = xgcd(a, b)
            ag, bg = a // g, b // g
            for k in range(j, n):
                rk, vk = row[k], v[k]
                row[k] = x * rk + y * vk
                v[k] = ag * vk - bg * rk
        # v[j] is now 0; continue with the next column
        j += 1


def hnf(rows) -> HNFBasis:
    """Row HNF basis of the lattice spanned by the given integer vectors.

    Raises RankDeficient when the span has rank below the ambient dimension.
    """
    rows = [list(r) for r in rows]
    if not rows:
        raise RankDeficient("no generators")
    n = len(rows[0])
    basis = {}
    for r in rows:
        if len(r) != n:
            raise ValueError("generators must share a common length")
        _echelon_insert(basis, r)
    if len(basis) != n:
        raise RankDeficient(f"rank {len(basis)} < {n}")
    out = [basis[j] for j in range(n)]
    for i in range(n):
        if out[i][i] < 0:
            out[i] = [-x for x in out[i]]
    for j in range(n):
        for i in range(j):
            q = out[i][j] // out[j][j]
            if q:
                for k in range(j, n):
                    out[i][k] -= q * out[j][k]
    return HNFBasis(tuple(tuple(r) for r in out))


@dataclass(frozen=True)
class SNFResult:
    """Diagonal d_1 | d_2 | ... | d_n with unimodular U, V, U*A*V = diag."""

    diagonal: tuple[int, ...]
    u: IntMatrix
    v: IntMatrix


def snf(a: IntMatrix) -> SNFResult:
    """Smith normal form with transformation matrices."""
    n = a.n
    s = [list(r) for r in a.rows]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_combine(i1, i2, col):
        # zero s[i2][col] against pivot s[i1][col]
        aa, bb = s[i1][col], s[i2][col]
        if bb == 0:
            return
        if aa != 0 and bb % aa == 0:
            q = bb // aa
            for k in range(n):
                s[i2][k] -= q * s[i1][k]
                u[i2][k] -= q * u[i1][k]
            return
        g, x, y = xgcd(aa, bb)
        ag, bg = aa // g, bb // g
        for k in range(n):
            s1, s2 = s[i1][k], s[i2][k]
            s[i1][k] = x * s1 + y * s2
            s[i2][k] = ag * s2 - bg * s1
            u1, u2 = u[i1][k], u[i2][k]
            u[i1][k] = x * u1 + y * u2
            u[i2][k] = ag * u2 - bg * u1

    def col_combine(j1, j2, row):
        aa, bb = s[row][j1], s[row][j2]
        if bb == 0:
            return
        if aa != 0 and bb % aa == 0:
            q = bb // aa
            for k in range(n):
                s[k][j2] -= q * s[k][j1]
                v[k][j2] -= q * v[k][j1]
            return
        g, x, y = xgcd(aa, bb)
        ag, bg = aa // g, bb // g
        for k in range(n):
            s1, s2 = s[k][j1], s[k][j2]
            s[k][j1] = x * s1 + y * s2
            s[k][j2] = ag * s2 - bg * s1
            v1, v2 = v[k][j1], v[k][j2]
            v[k][j1] = x * v1 + y * v2
            v[k][j2] = ag * v2 - bg * v1

    for t in range(n):
        # locate a nonzero pivot in the trailing block
        piv = None
        best = None
        for i in range(t, n):
            for j in range(t, n):
                if s[i][j] and (best is None or abs(s[i][j]) < best):
                    best = abs(s[i][j])
                    piv = (i, j)
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            s[t], s[pi] = s[pi], s[t]
            u[t], u[pi] = u[pi], u[t]
        if pj != t:
            for k in range(n):
                s[k][t], s[k][pj] = s[k][pj], s[k][t]
                v[k][t], v[k][pj] = v[k][pj], v[k][t]
        while True:
            for i in range(t + 1, n):
                row_combine(t, i, t)
            if all(s[t][j] == 0 for j in range(t + 1, n)):
                break
            for j in range(t + 1, n):
                col_combine(t, j, t)
            if all(s[i][t] == 0 for i in range(t + 1, n)):
                break
        # enforce divisibility of the remaining block by the pivot
        while True:
            bad = None
            for i in range(t + 1, n):
                for j in range(t + 1, n):
                    if s[i][j] % s[t][t] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            for k in range(n):
                s[t][k] += s[bad][k]
                u[t][k] += u[bad][k]
            while True:
                for i in range(t + 1, n):
                    row_combine(t, i, t)
                if all(s[t][j] == 0 for j in range(t + 1, n)):
                    break
                for j in range(t + 1, n):
                    col_combine(t, j, t)
                if all(s[i][t] == 0 for i in range(t + 1, n)):
                    break
        if s[t][t] < 0:
            for k in range(n):
                s[t][k] = -s[t][k]
                u[t][k] = -u[t][k]
    diag = tuple(s[i][i] for i in range(n))
    return SNFResult(diag, IntMatrix(tuple(tuple(r) for r in u)),
                     IntMatrix(tuple(tuple(r) for r in v)))
