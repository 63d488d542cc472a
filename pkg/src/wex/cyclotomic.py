"""Exact arithmetic in cyclotomic fields Q(zeta_m).

A value is stored in the power basis {1, z, ..., z^(phi(m)-1)} of Q(zeta_m),
reduced modulo the m-th cyclotomic polynomial, as a tuple of integers over
one shared positive denominator with gcd 1.  That reduced form is unique,
so at a fixed conductor structural equality is field equality.  Across
conductors, == embeds both sides into the lcm field and hashing uses the
minimal-conductor form, keeping hash consistent with ==.

The literal grammar shared by all file formats is implemented here:
    expr := term (('+'|'-') term)*
    term := rat | rat '*' 'z^' int | 'z^' int | 'z'
    rat  := int | int '/' int
with z denoting zeta_m for the document's declared conductor m and
whitespace insignificant.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import NotAMultiple, NotCoprime, ParseError

__all__ = [
    "Cyclotomic",
    "root_of_unity",
    "parse_cyclotomic",
    "format_cyclotomic",
    "totient",
    "cyclotomic_polynomial",
]


# ---------------------------------------------------------------------------
# small number theory (kept local: the CLI must start fast)

def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=None)
def _prime_divisors(n: int) -> tuple[int, ...]:
    return tuple(sorted(_factorize(n)))


def totient(m: int) -> int:
    phi = m
    for p in _prime_divisors(m):
        phi = phi // p * (p - 1)
    return phi


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in _factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def _mobius(n: int) -> int:
    f = _factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


# polynomials as low-to-high integer coefficient tuples

def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_divexact(a, b):
    """Exact division of integer polynomials (remainder must vanish)."""
    a = list(a)
    db, lead = len(b) - 1, b[-1]
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c == 0:
            continue
        assert c % lead == 0
        qi = c // lead
        q[i - db] = qi
        for j, bj in enumerate(b):
            a[i - db + j] -= qi * bj
    assert all(c == 0 for c in a)
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Monic integer coefficients of Phi_m, via the Mobius product
    Phi_m(x) = prod_{d | m} (x^(m/d) - 1)^mu(d)."""
    num = [1]
    den = [1]
    for d in _divisors(m):
        mu = _mobius(d)
        if mu == 0:
            continue
        f = [0] * (m // d + 1)
        f[0] = -1
        f[-1] = 1
        if mu == 1:
            num = _poly_mul(num, f)
        else:
            den = _poly_mul(den, f)
    return tuple(_poly_divexact(num, den))


class _Conductor:
    """Per-conductor reduction tables, built once."""

    __slots__ = ("m", "phi", "poly", "red_rows", "pow_rows")

    def __init__(self, m: int):
        self.m = m
        poly = cyclotomic_polynomial(m)
        phi = len(poly) - 1
        self.phi = phi
        self.poly = poly
        # red_rows[k - phi] = x^k mod Phi_m for k in [phi, 2*phi - 2]
        base = tuple(-c for c in poly[:phi])
        rows = [base]
        for _ in range(phi - 2):
            rows.append(self._shift(rows[-1], base, phi))
        self.red_rows = tuple(rows)
        # pow_rows[j] = z^j in the basis, 0 <= j < m
        pows = []
        for j in range(min(m, phi)):
            row = [0] * phi
            row[j] = 1
            pows.append(tuple(row))
        for j in range(phi, m):
            pows.append(self._shift(pows[-1], base, phi))
        self.pow_rows = tuple(pows)

    @staticmethod
    def _shift(row, base, phi):
        top = row[phi - 1]
        out = [0] + list(row[:-1])
        if top:
            for t in range(phi):
                if base[t]:
                    out[t] += top * base[t]
        return tuple(out)


@lru_cache(maxsize=None)
def _conductor(m: int) -> _Conductor:
    if m < 1:
        raise ValueError(f"conductor must be positive, got {m}")
    return _Conductor(m)


def _reduce_product(m: int, acc: list[int]) -> list[int]:
    """Reduce a raw convolution (length <= 2*phi-1) modulo Phi_m."""
    data = _conductor(m)
    phi = data.phi
    out = list(acc[:phi]) + [0] * (phi - len(acc[:phi]))
    rows = data.red_rows
    for k in range(phi, len(acc)):
        c = acc[k]
        if c:
            row = rows[k - phi]
            for t in range(phi):
                if row[t]:
                    out[t] += c * row[t]
    return out


# ---------------------------------------------------------------------------
# values

class Cyclotomic:
    __slots__ = ("m", "num", "den", "_min")

    m: int
    num: tuple[int, ...]
    den: int

    def __repr__(self):
        return f"Cyclotomic({self.m}, {format_cyclotomic(self)!r})"

    def __str__(self):
        return format_cyclotomic(self)

    # -- constructors

    @staticmethod
    def from_rational(q, m: int = 1) -> "Cyclotomic":
        q = Fraction(q)
        phi = _conductor(m).phi
        nums = [0] * phi
        nums[0] = q.numerator
        return _mk(m, nums, q.denominator)

    @staticmethod
    def zero(m: int = 1) -> "Cyclotomic":
        return _mk(m, [0] * _conductor(m).phi, 1)

    @staticmethod
    def one(m: int = 1) -> "Cyclotomic":
        return Cyclotomic.from_rational(1, m)

    # -- queries

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def is_integer(self) -> bool:
        return self.is_rational() and self.den == 1

    def as_integer(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not a rational integer")
        return self.num[0]

    def multiplicative_order(self, cap: int = 10_000) -> int:
        """Order as a root of unity; raises if not one."""
        x = self
        for k in range(1, cap + 1):
            if x == 1:
                return k
            x = x * self
        raise ValueError(f"{self} is not a root of unity of order <= {cap}")

    # -- canonical minimal-conductor form (hash support)

    def minimal(self) -> tuple[int, tuple[int, ...], int]:
        """(conductor, coefficients, denominator) at the smallest conductor
        that represents this value."""
        got = self._min
        if got is None:
            got = _minimal_form(self.m, self.num, self.den)
            self._min = got
        return got

    def reduced(self) -> "Cyclotomic":
        """The same value at its minimal conductor."""
        m, num, den = self.minimal()
        if m == self.m:
            return self
        return _mk_raw(m, num, den)

    def sort_key(self):
        return self.minimal()

    def __hash__(self):
        return hash(self.minimal())

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            if self.m == other.m:
                return self.num == other.num and self.den == other.den
            mm = _lcm(self.m, other.m)
            return (self._lift_nums(mm) == other._lift_nums(mm)
                    and self.den == other.den)
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.as_fraction() == other
        return NotImplemented

    def __bool__(self):
        return not self.is_zero()

    # -- conductor moves

    def _lift_nums(self, m2: int) -> tuple[int, ...]:
        if m2 == self.m:
            return self.num
        t = m2 // self.m
        pows = _conductor(m2).pow_rows
        phi2 = _conductor(m2).phi
        out = [0] * phi2
        for j, c in enumerate(self.num):
            if c:
                row = pows[(j * t) % m2]
                for i in range(phi2):
                    if row[i]:
                        out[i] += c * row[i]
        return tuple(out)

    def embed(self, m2: int) -> "Cyclotomic":
        """The same field element expressed at conductor m2 (m | m2)."""
        if m2 % self.m != 0:
            raise NotAMultiple(f"conductor {self.m} does not divide {m2}")
        if m2 == self.m:
            return self
        return _mk(m2, list(self._lift_nums(m2)), self.den)

    def galois(self, k: int) -> "Cyclotomic":
        """The field automorphism zeta_m -> zeta_m^k, gcd(k, m) = 1."""
        m = self.m
        k %= m
        if gcd(k, m) != 1:
            raise NotCoprime(f"gcd({k}, {m}) != 1")
        if k == 1 or self.is_rational():
            return self
        pows = _conductor(m).pow_rows
        phi = _conductor(m).phi
        out = [0] * phi
        for j, c in enumerate(self.num):
            if c:
                row = pows[(j * k) % m]
                for i in range(phi):
                    if row[i]:
                        out[i] += c * row[i]
        return _mk(m, out, self.den)

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1)

    # -- arithmetic

    def _align(self, other):
        if not isinstance(other, Cyclotomic):
            if isinstance(other, (int, Fraction)):
                other = Cyclotomic.from_rational(other, 1)
            else:
                return None, None
        if self.m == other.m:
            return self, other
        mm = _lcm(self.m, other.m)
        return self.embed(mm), other.embed(mm)

    def __add__(self, other):
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        if b.is_zero():
            return a
        if a.is_zero():
            return b
        da, db = a.den, b.den
        g = gcd(da, db)
        fa, fb = db // g, da // g
        nums = [x * fa + y * fb for x, y in zip(a.num, b.num)]
        return _mk(a.m, nums, da * fa)

    __radd__ = __add__

    def __neg__(self):
        v = _mk_raw(self.m, tuple(-c for c in self.num), self.den)
        return v

    def __sub__(self, other):
        a, b = self._align(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 1:
                return self
            return _mk(self.m, [c * other for c in self.num], self.den)
        if isinstance(other, Fraction):
            return _mk(self.m, [c * other.numerator for c in self.num],
                       self.den * other.denominator)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if other.is_rational():
            if self.m >= other.m:
                return _mk(self.m, [c * other.num[0] for c in self.num],
                           self.den * other.den)
        if self.is_rational():
            return _mk(other.m, [c * self.num[0] for c in other.num],
                       other.den * self.den)
        a, b = self._align(other)
        if a.is_zero() or b.is_zero():
            return Cyclotomic.zero(a.m)
        acc = [0] * (2 * len(a.num) - 1)
        for i, ai in enumerate(a.num):
            if ai:
                for j, bj in enumerate(b.num):
                    if bj:
                        acc[i + j] += ai * bj
        return _mk(a.m, _reduce_product(a.m, acc), a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("division by zero cyclotomic value")
        if self.is_rational():
            return Cyclotomic.from_rational(1 / self.as_fraction(), self.m)
        # extended Euclid against Phi_m over Q; Phi_m is irreducible, so the
        # gcd with any nonzero residue of smaller degree is a constant
        m = self.m
        f = [Fraction(c) for c in cyclotomic_polynomial(m)]
        a = [Fraction(c, self.den) for c in self.num]
        while a and a[-1] == 0:
            a.pop()
        u = _ext_gcd_invert(a, f)
        phi = _conductor(m).phi
        nums = [Fraction(0)] * phi
        for i, c in enumerate(u[:phi]):
            nums[i] = c
        den = 1
        for c in nums:
            den = den * c.denominator // gcd(den, c.denominator)
        return _mk(m, [int(c * den) for c in nums], den)

    def __truediv__(self, other):
        if isinstance(other, int):
            return _mk(self.m, list(self.num), self.den * other)
        if isinstance(other, Fraction):
            return self * Fraction(other.denominator, other.numerator)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero cyclotomic value")
        if other.is_rational():
            q = other.as_fraction()
            return _mk(self.m, [c * q.denominator for c in self.num],
                       self.den * q.numerator)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclotomic.one(self.m)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _mk(m: int, nums: list[int], den: int) -> Cyclotomic:
    if den < 0:
        den = -den
        nums = [-c for c in nums]
    g = den
    for c in nums:
        if c:
            g = gcd(g, c)
            if g == 1:
                break
    if g > 1:
        den //= g
        nums = [c // g for c in nums]
    if not any(nums):
        den = 1
    return _mk_raw(m, tuple(nums), den)


def _mk_raw(m, num_tuple, den) -> Cyclotomic:
    v = object.__new__(Cyclotomic)
    v.m = m
    v.num = num_tuple
    v.den = den
    v._min = None
    return v


def _ext_gcd_invert(a, f):
    """u with u*a = 1 mod f, for monic irreducible f and 0 < deg a < deg f.
    Coefficients are Fractions, low-to-high."""

    def degree(p):
        return len(p) - 1

    def trim(p):
        while len(p) > 1 and p[-1] == 0:
            p.pop()
        return p

    def polydiv(p, q):
        p = list(p)
        dq, lead = degree(q), q[-1]
        quo = [Fraction(0)] * max(1, len(p) - dq)
        while degree(trim(p)) >= dq and any(p):
            shift = degree(p) - dq
            c = p[-1] / lead
            quo[shift] = c
            for j, qj in enumerate(q):
                p[shift + j] -= c * qj
            trim(p)
        return quo, p

    def polymul(p, q):
        out = [Fraction(0)] * (len(p) + len(q) - 1)
        for i, pi in enumerate(p):
            if pi:
                for j, qj in enumerate(q):
                    if qj:
                        out[i + j] += pi * qj
        return trim(out)

    def polysub(p, q):
        out = [Fraction(0)] * max(len(p), len(q))
        for i, c in enumerate(p):
            out[i] += c
        for i, c in enumerate(q):
            out[i] -= c
        return trim(out)

    r0, r1 = list(f), list(a)
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while degree(trim(r1)) > 0 or (len(r1) == 1 and r1[0] != 0):
        if degree(r1) == 0:
            break
        q, r = polydiv(r0, r1)
        r0, r1 = r1, trim(r)
        s0, s1 = s1, polysub(s0, polymul(q, s1))
    # r1 is the (nonzero constant) gcd; scale its Bezout coefficient
    c = r1[0]
    assert c != 0
    return [x / c for x in s1]


# ---------------------------------------------------------------------------
# minimal-conductor reduction

@lru_cache(maxsize=None)
def _subfield_solver(m: int, c: int):
    """Pivot data for rewriting a conductor-m value at conductor c | m.
    Returns (pivot_rows, inverse_matrix, embed_columns)."""
    phi_m = _conductor(m).phi
    phi_c = _conductor(c).phi
    t = m // c
    pows = _conductor(m).pow_rows
    # E[r][i]: coefficient r of the embedding of basis vector zeta_c^i
    cols = [pows[(i * t) % m] for i in range(phi_c)]
    # find phi_c independent rows by fraction-free elimination
    work = [[Fraction(cols[i][r]) for i in range(phi_c)] for r in range(phi_m)]
    pivots: list[int] = []
    taken: list[list[Fraction]] = []
    for r in range(phi_m):
        row = list(work[r])
        for s, piv in enumerate(taken):
            fac = row[_first_nonzero(piv)]
            if fac:
                row = [x - fac * y for x, y in zip(row, piv)]
        nz = _first_nonzero(row)
        if nz is None:
            continue
        row = [x / row[nz] for x in row]
        taken.append(row)
        pivots.append(r)
        if len(pivots) == phi_c:
            break
    sub = [[Fraction(cols[i][r]) for i in range(phi_c)] for r in pivots]
    inv = _invert_fraction_matrix(sub)
    return tuple(pivots), inv, cols


def _first_nonzero(row):
    for i, x in enumerate(row):
        if x:
            return i
    return None


def _invert_fraction_matrix(rows):
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)]
           for i, r in enumerate(rows)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        d = aug[col][col]
        aug[col] = [x / d for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                fac = aug[r][col]
                aug[r] = [x - fac * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(r[n:]) for r in aug)


def _try_subfield(m, c, num):
    """Coefficients of the value at conductor c, or None if not in Q(zeta_c)."""
    pivots, inv, cols = _subfield_solver(m, c)
    phi_c = len(pivots)
    w = [sum(inv[i][j] * num[pivots[j]] for j in range(phi_c))
         for i in range(phi_c)]
    # verify E @ w == num with cleared denominators
    d = 1
    for x in w:
        d = d * x.denominator // gcd(d, x.denominator)
    wi = [int(x * d) for x in w]
    phi_m = len(num)
    for r in range(phi_m):
        if sum(cols[i][r] * wi[i] for i in range(phi_c)) != num[r] * d:
            return None
    return wi, d


def _minimal_form(m, num, den):
    if not any(num[1:]):
        return (1, (num[0],), den)
    while True:
        primes = _prime_divisors(m)
        if len(primes) == 1 and m == primes[0]:
            return (m, num, den)
        moved = False
        for p in primes:
            c = m // p
            if c == 1:
                continue
            got = _try_subfield(m, c, num)
            if got is not None:
                wi, d = got
                v = _mk(c, wi, den * d)
                m, num, den = v.m, v.num, v.den
                if not any(num[1:]):
                    return (1, (num[0],), den)
                moved = True
                break
        if not moved:
            return (m, num, den)


# ---------------------------------------------------------------------------
# roots of unity and literals

def root_of_unity(m: int, j: int) -> Cyclotomic:
    """zeta_m^(j mod m) in reduced form at conductor m."""
    data = _conductor(m)
    return _mk(m, list(data.pow_rows[j % m]), 1)


_INT_RE = re.compile(r"[+-]?\d+")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect_int(self) -> int:
        self.skip_ws()
        mt = _INT_RE.match(self.text, self.pos)
        if not mt:
            raise ParseError("expected integer", self.pos)
        self.pos = mt.end()
        return int(mt.group())


def parse_cyclotomic(text: str, m: int) -> Cyclotomic:
    """Parse a cyclotomic literal at conductor m."""
    sc = _Scanner(text)
    coeffs: dict[int, Fraction] = {}
    first = True
    while True:
        sc.skip_ws()
        if sc.pos >= len(sc.text):
            if first:
                raise ParseError("empty literal", 0)
            break
        sign = 1
        if sc.take("+"):
            pass
        elif sc.take("-"):
            sign = -1
        elif not first:
            raise ParseError("expected '+' or '-'", sc.pos)
        coeff, power = _parse_term(sc, m)
        coeffs[power] = coeffs.get(power, Fraction(0)) + sign * coeff
        first = False
    return _from_coeff_map(coeffs, m)


def _parse_term(sc: _Scanner, m: int) -> tuple[Fraction, int]:
    if sc.peek() == "z":
        sc.take("z")
        power = sc.expect_int() if sc.take("^") else 1
        return Fraction(1), power % m
    numer = sc.expect_int()
    denom = 1
    if sc.take("/"):
        at = sc.pos
        denom = sc.expect_int()
        if denom == 0:
            raise ParseError("zero denominator", at)
    coeff = Fraction(numer, denom)
    if sc.take("*"):
        if not sc.take("z"):
            raise ParseError("expected 'z' after '*'", sc.pos)
        power = sc.expect_int() if sc.take("^") else 1
        return coeff, power % m
    return coeff, 0


def _from_coeff_map(coeffs: dict[int, Fraction], m: int) -> Cyclotomic:
    data = _conductor(m)
    den = 1
    for q in coeffs.values():
        den = den * q.denominator // gcd(den, q.denominator)
    nums = [0] * data.phi
    for power, q in coeffs.items():
        c = int(q * den)
        if c:
            row = data.pow_rows[power]
            for i in range(data.phi):
                if row[i]:
                    nums[i] += c * row[i]
    return _mk(m, nums, den)


def format_cyclotomic(v: Cyclotomic) -> str:
    """Canonical literal: basis terms in ascending power, no whitespace."""
    parts: list[str] = []
    den = v.den
    for j, c in enumerate(v.num):
        if c == 0:
            continue
        q = Fraction(c, den)
        if not parts:
            parts.append(_term_str(q, j, leading=True))
        else:
            op = "+" if q > 0 else "-"
            parts.append(op + _term_str(abs(q), j, leading=False))
    if not parts:
        return "0"
    return "".join(parts)


def _term_str(q: Fraction, power: int, leading: bool) -> str:
    if power == 0:
        return str(q)
    z = "z" if power == 1 else f"z^{power}"
    if q == 1:
        return z
    if leading and q < 0:
        # the grammar has no unary minus on a bare z-term
        return f"{q}*{z}"
    return f"{q}*{z}"
