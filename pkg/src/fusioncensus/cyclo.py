"""Exact arithmetic in cyclotomic fields.

A :class:`Cyclo` is stored at its minimal conductor ``n`` as an integer
combination of ``E(n)^k`` over a Zumbroich-style basis of ``Q(E(n))``,
divided by a single positive denominator.  Because the basis is fixed per
conductor, two values are equal exactly when their stored forms are equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

import mpmath

__all__ = [
    "Cyclo",
    "ComplexInterval",
    "ParseError",
    "from_root",
    "add",
    "mul",
    "inv",
    "conj",
    "to_complex",
    "parse_cyclo",
    "format_cyclo",
    "format_numeric",
    "is_real",
    "is_positive_real",
]

Number = Union[int, Fraction, "Cyclo"]


@lru_cache(maxsize=None)
def _factorize(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@dataclass(frozen=True)
class _PrimeData:
    p: int
    e: int
    step: int  # n // p; adding it to an exponent multiplies by E(p)
    bad: tuple[bool, ...]  # bad[k]: E(n)^k is eliminated for this prime


@dataclass(frozen=True)
class _Field:
    n: int
    primes: tuple[_PrimeData, ...]
    basis: tuple[int, ...]


@lru_cache(maxsize=None)
def _field(n: int) -> _Field:
    primes = []
    for p, e in _factorize(n):
        pe = p**e
        m = n // pe
        u = pow(m, -1, pe) if pe > 1 else 0
        top = pe // p
        # p-part of k in the CRT splitting k = m * k_p + ...; its leading
        # base-p digit decides membership
        bad = []
        for k in range(n):
            digit = ((k * u) % pe) // top
            bad.append(digit == 1 if p == 2 else digit == 0)
        primes.append(_PrimeData(p, e, n // p, tuple(bad)))
    basis = tuple(k for k in range(n) if not any(pd.bad[k] for pd in primes))
    return _Field(n, tuple(primes), basis)


def _reduce(n: int, coeffs: dict[int, int]) -> dict[int, int]:
    """Rewrite ``sum c_k E(n)^k`` over the basis of ``Q(E(n))`` (in place)."""
    fld = _field(n)
    for pd in fld.primes:
        bad = pd.bad
        todo = [k for k, c in coeffs.items() if c and bad[k]]
        if not todo:
            continue
        for k in todo:
            c = coeffs.pop(k)
            if not c:
                continue
            if pd.p == 2:
                k2 = (k + pd.step) % n
                coeffs[k2] = coeffs.get(k2, 0) - c
            else:
                for j in range(1, pd.p):
                    kj = (k + j * pd.step) % n
                    coeffs[kj] = coeffs.get(kj, 0) - c
    return {k: c for k, c in coeffs.items() if c}


def _minimize(n: int, coeffs: dict[int, int]) -> tuple[int, dict[int, int]]:
    """Descend to the smallest conductor containing the value."""
    if not coeffs:
        return 1, {}
    changed = True
    while changed and n > 1:
        changed = False
        for p, e in _factorize(n):
            if e >= 2 or p == 2:
                if all(k % p == 0 for k in coeffs):
                    n //= p
                    coeffs = _reduce(n, {k // p: c for k, c in coeffs.items()})
                    changed = True
                    break
                continue
            m = n // p
            groups: dict[int, list[int]] = {}
            for k in coeffs:
                groups.setdefault(k % m, []).append(k)
            if any(len(ks) != p - 1 for ks in groups.values()):
                continue
            new: dict[int, int] = {}
            ok = True
            for key, ks in groups.items():
                c = coeffs[ks[0]]
                if any(coeffs[k] != c for k in ks):
                    ok = False
                    break
                # the eliminated member of the coset is the one divisible by p
                k0 = next(key + j * m for j in range(p) if (key + j * m) % p == 0)
                new[(k0 // p) % m] = -c
            if ok:
                n, coeffs = m, _reduce(m, new)
                changed = True
                break
    return n, coeffs


class Cyclo:
    """An exact element of a cyclotomic field.

    Supports ``+ - * / **``, equality and hashing, and mixes freely with
    ``int`` and ``Fraction``.
    """

    __slots__ = ("_n", "_den", "_terms", "_hash")

    def __init__(self, value: int | Fraction | Cyclo = 0) -> None:
        if isinstance(value, Cyclo):
            self._n, self._den, self._terms = value._n, value._den, value._terms
        else:
            q = Fraction(value)
            self._n = 1
            self._den = q.denominator
            self._terms = ((0, q.numerator),) if q.numerator else ()
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: tuple[tuple[int, int], ...], den: int) -> Cyclo:
        obj = cls.__new__(cls)
        obj._n = n
        obj._den = den
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def _build(cls, n: int, coeffs: dict[int, int], den: int, reduced: bool = False) -> Cyclo:
        if not reduced:
            coeffs = _reduce(n, coeffs)
        else:
            coeffs = {k: c for k, c in coeffs.items() if c}
        n, coeffs = _minimize(n, coeffs)
        if not coeffs:
            return ZERO
        g = den
        for c in coeffs.values():
            g = math.gcd(g, c)
            if g == 1:
                break
        if den < 0:
            g = -g
        if g != 1:
            coeffs = {k: c // g for k, c in coeffs.items()}
            den //= g
        return cls._raw(n, tuple(sorted(coeffs.items())), den)

    @classmethod
    def from_terms(cls, n: int, coeffs: Mapping[int, int | Fraction]) -> Cyclo:
        """Build ``sum c_k E(n)^k`` from arbitrary exponents and rationals."""
        if n < 1:
            raise ValueError(f"conductor must be positive, got {n}")
        fr = {k % n: Fraction(c) for k, c in coeffs.items()}
        den = 1
        for c in fr.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints: dict[int, int] = {}
        for k, c in fr.items():
            v = c.numerator * (den // c.denominator)
            ints[k] = ints.get(k, 0) + v
        return cls._build(n, ints, den)

    # -- inspection -------------------------------------------------------

    @property
    def conductor(self) -> int:
        return self._n

    @property
    def terms(self) -> dict[int, Fraction]:
        """Exponent to rational coefficient, in the canonical basis."""
        return {k: Fraction(c, self._den) for k, c in self._terms}

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return self._n == 1

    def to_fraction(self) -> Fraction:
        if self._n != 1:
            raise ValueError(f"{self} is not rational")
        return Fraction(self._terms[0][1], self._den) if self._terms else Fraction(0)

    def is_root_of_unity_times_rational(self) -> bool:
        return len(self._terms) == 1

    # -- protocol ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Cyclo):
            return (
                self._n == other._n
                and self._den == other._den
                and self._terms == other._terms
            )
        if isinstance(other, (int, Fraction)):
            return self == Cyclo(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self._n == 1:
                # agree with hash(Fraction) / hash(int) for rationals
                self._hash = hash(self.to_fraction())
            else:
                self._hash = hash((self._n, self._den, self._terms))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return f"Cyclo({format_cyclo(self)!r})"

    def __str__(self) -> str:
        return format_cyclo(self)

    def __complex__(self) -> complex:
        n = self._n
        re = im = 0.0
        for k, c in self._terms:
            ang = 2.0 * math.pi * k / n
            re += c * math.cos(ang)
            im += c * math.sin(ang)
        return complex(re / self._den, im / self._den)

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> Cyclo:
        return Cyclo._raw(self._n, tuple((k, -c) for k, c in self._terms), self._den)

    def __pos__(self) -> Cyclo:
        return self

    def __add__(self, other: Number) -> Cyclo:
        if not isinstance(other, Cyclo):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = Cyclo(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        n1, n2 = self._n, other._n
        d1, d2 = self._den, other._den
        if n1 == n2:
            coeffs = {k: c * d2 for k, c in self._terms}
            for k, c in other._terms:
                coeffs[k] = coeffs.get(k, 0) + c * d1
            return Cyclo._build(n1, coeffs, d1 * d2, reduced=True)
        n = n1 * n2 // math.gcd(n1, n2)
        s1, s2 = n // n1, n // n2
        coeffs = {}
        for k, c in self._terms:
            coeffs[k * s1] = c * d2
        for k, c in other._terms:
            kk = k * s2
            coeffs[kk] = coeffs.get(kk, 0) + c * d1
        return Cyclo._build(n, coeffs, d1 * d2)

    __radd__ = __add__

    def __sub__(self, other: Number) -> Cyclo:
        if not isinstance(other, (Cyclo, int, Fraction)):
            return NotImplemented
        return self + (-Cyclo(other) if not isinstance(other, Cyclo) else -other)

    def __rsub__(self, other: Number) -> Cyclo:
        return (-self) + other

    def __mul__(self, other: Number) -> Cyclo:
        if not isinstance(other, Cyclo):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = Cyclo(other)
        return _mul_cached(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> Cyclo:
        if not isinstance(other, (Cyclo, int, Fraction)):
            return NotImplemented
        return self * inv(Cyclo(other))

    def __rtruediv__(self, other: Number) -> Cyclo:
        return Cyclo(other) * inv(self)

    def __pow__(self, e: int) -> Cyclo:
        if not isinstance(e, int):
            return NotImplemented
        base = self
        if e < 0:
            base, e = inv(self), -e
        result = ONE
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def galois(self, u: int) -> Cyclo:
        """Apply the automorphism ``E(n) -> E(n)^u`` (``u`` coprime to n)."""
        n = self._n
        if math.gcd(u, n) != 1:
            raise ValueError(f"{u} is not a unit modulo {n}")
        coeffs: dict[int, int] = {}
        for k, c in self._terms:
            kk = (k * u) % n
            coeffs[kk] = coeffs.get(kk, 0) + c
        return Cyclo._raw(n, tuple(sorted(_reduce(n, coeffs).items())), self._den)

    def conj(self) -> Cyclo:
        return self.galois(-1)

    def real_part(self) -> Cyclo:
        return (self + self.conj()) * Fraction(1, 2)

    def imag_part(self) -> Cyclo:
        # (x - conj x) / (2i)
        return (self - self.conj()) * from_root(4, 3) * Fraction(1, 2)


ZERO = Cyclo._raw(1, (), 1)
ONE = Cyclo._raw(1, ((0, 1),), 1)


def _mul_raw(x: Cyclo, y: Cyclo) -> Cyclo:
    if not x._terms or not y._terms:
        return ZERO
    if x._n == 1 and y._n == 1:
        return Cyclo(x.to_fraction() * y.to_fraction())
    n1, n2 = x._n, y._n
    n = n1 * n2 // math.gcd(n1, n2)
    s1, s2 = n // n1, n // n2
    coeffs: dict[int, int] = {}
    yt = [(k * s2, c) for k, c in y._terms]
    for k1, c1 in x._terms:
        kk1 = k1 * s1
        for kk2, c2 in yt:
            k = (kk1 + kk2) % n
            coeffs[k] = coeffs.get(k, 0) + c1 * c2
    return Cyclo._build(n, coeffs, x._den * y._den)


@lru_cache(maxsize=1 << 16)
def _mul_cached(x: Cyclo, y: Cyclo) -> Cyclo:
    return _mul_raw(x, y)


def from_root(n: int, k: int = 1) -> Cyclo:
    """Return ``E(n)^k``, the k-th power of ``exp(2*pi*i/n)``."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"root order must be a positive integer, got {n!r}")
    return Cyclo._build(n, {k % n: 1}, 1)


def add(x: Number, y: Number) -> Cyclo:
    return Cyclo(x) + Cyclo(y)


def mul(x: Number, y: Number) -> Cyclo:
    return Cyclo(x) * Cyclo(y)


def conj(x: Number) -> Cyclo:
    return Cyclo(x).conj()


def _solve_rational(mat: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(mat)
    a = [row[:] + [r] for row, r in zip(mat, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular multiplication matrix")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        row = [v / pv for v in a[col]]
        a[col] = row
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], row)]
    return [a[r][n] for r in range(n)]


@lru_cache(maxsize=1 << 14)
def inv(x: Cyclo) -> Cyclo:
    """Multiplicative inverse; raises ``ZeroDivisionError`` for 0."""
    x = Cyclo(x)
    if not x._terms:
        raise ZeroDivisionError("inverse of zero cyclotomic")
    n = x._n
    if len(x._terms) == 1:
        (k, c), = x._terms
        q = Fraction(x._den, c)
        return Cyclo.from_terms(n, {-k: q})
    basis = _field(n).basis
    index = {b: i for i, b in enumerate(basis)}
    dim = len(basis)
    mat = [[Fraction(0)] * dim for _ in range(dim)]
    for j, b in enumerate(basis):
        coeffs: dict[int, int] = {}
        for k, c in x._terms:
            kk = (k + b) % n
            coeffs[kk] = coeffs.get(kk, 0) + c
        for k, c in _reduce(n, coeffs).items():
            mat[index[k]][j] = Fraction(c, x._den)
    one = _reduce(n, {0: 1})
    rhs = [Fraction(one.get(b, 0)) for b in basis]
    sol = _solve_rational(mat, rhs)
    return Cyclo.from_terms(n, {b: s for b, s in zip(basis, sol) if s})


# -- numeric embedding ------------------------------------------------------


@dataclass(frozen=True)
class ComplexInterval:
    """Axis-aligned box in the complex plane known to contain a value."""

    re_lo: mpmath.mpf
    re_hi: mpmath.mpf
    im_lo: mpmath.mpf
    im_hi: mpmath.mpf

    def contains(self, other: ComplexInterval) -> bool:
        return (
            self.re_lo <= other.re_lo
            and other.re_hi <= self.re_hi
            and self.im_lo <= other.im_lo
            and other.im_hi <= self.im_hi
        )

    def contains_point(self, z: complex) -> bool:
        return self.re_lo <= z.real <= self.re_hi and self.im_lo <= z.imag <= self.im_hi

    @property
    def width(self) -> mpmath.mpf:
        return max(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    @property
    def midpoint(self) -> complex:
        return complex(
            float((self.re_lo + self.re_hi) / 2), float((self.im_lo + self.im_hi) / 2)
        )


def _enclose(x: Cyclo, dps: int) -> tuple[mpmath.iv.mpf, mpmath.iv.mpf]:
    ctx = mpmath.iv
    old = ctx.dps
    ctx.dps = dps
    try:
        re = ctx.mpf(0)
        im = ctx.mpf(0)
        two_pi = 2 * ctx.pi
        for k, c in x._terms:
            ang = two_pi * k / x._n
            re += c * ctx.cos(ang)
            im += c * ctx.sin(ang)
        re /= x._den
        im /= x._den
        return re, im
    finally:
        ctx.dps = old


def _outward(lo: mpmath.mpf, hi: mpmath.mpf, grid: int) -> tuple[mpmath.mpf, mpmath.mpf]:
    # snap outward onto a 10^-grid lattice plus one cell of slack, so that a
    # finer enclosure of the same value always nests inside this one
    scale = mpmath.mpf(10) ** grid
    with mpmath.workdps(grid + 30):
        lo2 = (mpmath.floor(lo * scale) - 1) / scale
        hi2 = (mpmath.ceil(hi * scale) + 1) / scale
    return lo2, hi2


def to_complex(x: Number, digits: int) -> ComplexInterval:
    """Enclose ``x`` in a box of width ``< 10**-digits``."""
    if digits < 1:
        raise ValueError("digits must be positive")
    x = Cyclo(x)
    grid = digits + 1
    dps = digits + 15
    while True:
        re, im = _enclose(x, dps)
        with mpmath.workdps(grid + 30):
            re_lo, re_hi = _outward(mpmath.mpf(re.a), mpmath.mpf(re.b), grid)
            im_lo, im_hi = _outward(mpmath.mpf(im.a), mpmath.mpf(im.b), grid)
            box = ComplexInterval(re_lo, re_hi, im_lo, im_hi)
            if box.width < mpmath.mpf(10) ** (-digits):
                return box
        dps *= 2


def is_real(x: Number) -> bool:
    x = Cyclo(x)
    return x.conj() == x


def sign_of_real(x: Cyclo) -> int:
    """Sign of a real cyclotomic: exact zero test, then widening precision."""
    if not is_real(x):
        raise ValueError(f"{x} is not real")
    if x.is_zero():
        return 0
    if x.is_rational():
        return 1 if x.to_fraction() > 0 else -1
    dps = 20
    while True:
        re, _ = _enclose(x, dps)
        if re.a > 0:
            return 1
        if re.b < 0:
            return -1
        dps *= 2


def is_positive_real(x: Number) -> bool:
    x = Cyclo(x)
    return is_real(x) and sign_of_real(x) > 0


def _round_half_even(q: Fraction, digits: int) -> Fraction:
    scale = 10**digits
    return Fraction(round(q * scale), scale)


def _fmt_decimal(q: Fraction, digits: int, strip: bool) -> str:
    r = _round_half_even(q, digits)
    neg = r < 0
    r = abs(r)
    whole = r.numerator // r.denominator
    frac = (r - whole) * 10**digits
    s = f"{whole}.{int(frac):0{digits}d}" if digits else f"{whole}"
    if strip and "." in s:
        s = s.rstrip("0").rstrip(".")
    return ("-" if neg and s.strip("0.") else "") + s


def _component_decimal(part: Cyclo, digits: int) -> str:
    if part.is_rational():
        return _fmt_decimal(part.to_fraction(), digits, strip=True)
    # an irrational value is never exactly on a rounding boundary, so a
    # sufficiently tight enclosure decides the rounding
    dps = digits + 20
    scale = 10**digits
    while True:
        re, _ = _enclose(part, dps)
        with mpmath.workdps(dps + 10):
            lo = mpmath.nint(mpmath.mpf(re.a) * scale)
            hi = mpmath.nint(mpmath.mpf(re.b) * scale)
        if lo == hi:
            return _fmt_decimal(Fraction(int(lo), scale), digits, strip=False)
        dps *= 2


def format_numeric(x: Number, digits: int = 3) -> str:
    """Decimal rendering like ``-0.809 + 0.588i``; rational parts lose trailing zeros."""
    x = Cyclo(x)
    re = x.real_part()
    im = x.imag_part()
    if im.is_zero():
        return _component_decimal(re, digits)
    ims = _component_decimal(im, digits)
    neg = ims.startswith("-")
    mag = ims.lstrip("-")
    imag = "i" if mag == "1" else f"{mag}i"
    if re.is_zero():
        return ("-" if neg else "") + imag
    return f"{_component_decimal(re, digits)} {'-' if neg else '+'} {imag}"


# -- text form --------------------------------------------------------------


class ParseError(ValueError):
    """Malformed cyclotomic literal; ``offset`` is the byte position."""

    def __init__(self, message: str, text: str, pos: int) -> None:
        self.offset = len(text[:pos].encode("utf-8"))
        self.text = text
        super().__init__(f"{message} at byte {self.offset} in {text!r}")


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, self.text, self.pos)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, s: str) -> None:
        self.skip()
        if not self.text.startswith(s, self.pos):
            raise self.error(f"expected {s!r}")
        self.pos += len(s)

    def integer(self, signed: bool = False) -> int:
        self.skip()
        start = self.pos
        if signed and self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
            self.skip()
        digits_at = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits_at:
            raise self.error("expected integer")
        return int(self.text[start:self.pos].replace(" ", "").replace("\t", ""))

    def root(self) -> tuple[int, int]:
        self.expect("E(")
        n_at = self.pos
        n = self.integer()
        if n < 1:
            self.pos = n_at
            raise self.error("root order must be positive")
        self.expect(")")
        k = 1
        if self.peek() == "^":
            self.pos += 1
            k = self.integer(signed=True)
        return n, k

    def term(self) -> Cyclo:
        if self.peek() == "E":
            n, k = self.root()
            return from_root(n, k)
        num = self.integer()
        coeff = Fraction(num)
        if self.peek() == "/":
            self.pos += 1
            den_at = self.pos
            den = self.integer()
            if den == 0:
                self.pos = den_at
                raise self.error("zero denominator")
            coeff = Fraction(num, den)
        if self.peek() == "*":
            self.pos += 1
            n, k = self.root()
            return Cyclo.from_terms(n, {k: coeff})
        return Cyclo(coeff)

    def expr(self) -> Cyclo:
        total = ZERO
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        total = total + (self.term() if sign > 0 else -self.term())
        while True:
            c = self.peek()
            if not c:
                return total
            if c not in "+-":
                raise self.error(f"unexpected {c!r}")
            self.pos += 1
            t = self.term()
            total = total + t if c == "+" else total - t


def parse_cyclo(text: str) -> Cyclo:
    """Parse a literal such as ``-1/2*E(3)^2 + E(7)``."""
    p = _Parser(text)
    if not p.peek():
        raise p.error("empty literal")
    return p.expr()


def _fmt_coeff(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_cyclo(x: Number) -> str:
    x = Cyclo(x)
    if x.is_zero():
        return "0"
    parts = []
    for k, c in sorted(x.terms.items()):
        mag = abs(c)
        if k == 0:
            body = _fmt_coeff(mag)
        else:
            root = f"E({x.conductor})" + (f"^{k}" if k != 1 else "")
            body = root if mag == 1 else f"{_fmt_coeff(mag)}*{root}"
        parts.append((c < 0, body))
    neg, body = parts[0]
    out = ("-" if neg else "") + body
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


def sum_cyclo(values: Iterable[Number]) -> Cyclo:
    total = ZERO
    for v in values:
        total = total + v
    return total


# -- bulk evaluation --------------------------------------------------------
#
# Equation checkers multiply and add many values that live in one field.
# Lifting them once to a common conductor and reducing only the final sum is
# far cheaper than canonicalizing every intermediate product.

RawCyclo = tuple[int, tuple[tuple[int, int], ...]]  # (den, ((k, c), ...))


def lift(x: Cyclo, m: int) -> RawCyclo:
    """Coefficients of ``x`` at conductor ``m`` (a multiple of its own)."""
    s, rem = divmod(m, x._n)
    if rem:
        raise ValueError(f"conductor {x._n} does not divide {m}")
    return x._den, tuple((k * s, c) for k, c in x._terms)


def raw_sum_is_zero(m: int, products: Iterable[tuple[int, Iterable[RawCyclo]]]) -> bool:
    """Decide ``sum sign * prod(factors) == 0`` exactly."""
    acc: dict[int, Fraction | int] = {}
    parts = []
    lcm = 1
    for sign, factors in products:
        cur: dict[int, int] = {0: sign}
        den = 1
        for fden, fterms in factors:
            if not fterms:
                cur = {}
                break
            den *= fden
            if len(fterms) == 1:
                (k2, c2), = fterms
                cur = {(k + k2) % m: c * c2 for k, c in cur.items()}
                continue
            new: dict[int, int] = {}
            for k1, c1 in cur.items():
                for k2, c2 in fterms:
                    k = (k1 + k2) % m
                    new[k] = new.get(k, 0) + c1 * c2
            cur = new
        if cur:
            parts.append((cur, den))
            lcm = lcm * den // math.gcd(lcm, den)
    for cur, den in parts:
        f = lcm // den
        for k, c in cur.items():
            acc[k] = acc.get(k, 0) + c * f
    return not _reduce(m, {k: c for k, c in acc.items() if c})
