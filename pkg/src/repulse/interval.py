"""Self-contained interval arithmetic with outward rounding.

Endpoints are binary64.  Every operation returns an interval that contains
the exact image of its inputs: results of +,-,*,/ and sqrt are widened by
one ulp in each direction unless an error-free transformation proves the
float result exact (or proves the direction of its rounding error).
Elementary functions are evaluated by argument reduction plus a truncated
series whose remainder is bounded explicitly, so no correctly-rounded libm
is assumed anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction

_INF = math.inf
_nextafter = math.nextafter

__all__ = [
    "DomainError",
    "Interval",
    "PI",
    "TWO_PI",
    "HALF_PI",
    "PI_SQ",
    "LN2",
    "SIXTH",
    "sin",
    "cos",
    "exp",
    "log",
    "sqrt",
    "sinc",
    "remainder_R",
    "s3_kernel",
    "pow_int",
    "hull",
]


class DomainError(ValueError):
    """Raised when an operation is applied outside its mathematical domain."""


def _down(x: float) -> float:
    return _nextafter(x, -_INF)


def _up(x: float) -> float:
    return _nextafter(x, _INF)


# ---------------------------------------------------------------------------
# Directed rounding via error-free transformations (no fma on this platform).
# ---------------------------------------------------------------------------

def _two_sum(a: float, b: float):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


_SPLITTER = 134217729.0  # 2**27 + 1
_NO_SPLIT = 6.69692879491417e299  # overflow guard for Veltkamp splitting


def _two_prod(a: float, b: float):
    """Dekker product: returns (p, e) with a*b == p + e exactly, or (p, None)
    when the splitting could overflow/underflow and e is unknown."""
    p = a * b
    if not math.isfinite(p):
        return p, None
    ap = abs(p)
    if ap > 1e300 or (ap != 0.0 and ap < 1e-290) or abs(a) > _NO_SPLIT or abs(b) > _NO_SPLIT:
        return p, None
    ca = _SPLITTER * a
    ah = ca - (ca - a)
    al = a - ah
    cb = _SPLITTER * b
    bh = cb - (cb - b)
    bl = b - bh
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def _add_down(a: float, b: float) -> float:
    s, e = _two_sum(a, b)
    return _down(s) if e < 0.0 else s


def _add_up(a: float, b: float) -> float:
    s, e = _two_sum(a, b)
    return _up(s) if e > 0.0 else s


def _sub_down(a: float, b: float) -> float:
    return _add_down(a, -b)


def _sub_up(a: float, b: float) -> float:
    return _add_up(a, -b)


def _mul_down(a: float, b: float) -> float:
    p, e = _two_prod(a, b)
    if e is None:
        return _down(p)
    return _down(p) if e < 0.0 else p


def _mul_up(a: float, b: float) -> float:
    p, e = _two_prod(a, b)
    if e is None:
        return _up(p)
    return _up(p) if e > 0.0 else p


def _div_err_sign(a: float, b: float, q: float):
    """Sign of a - q*b (the residual of the division), or None if unknown."""
    p, e = _two_prod(q, b)
    if e is None:
        return None
    # a - p is exact by Sterbenz when p/2 <= a <= 2p (same sign); q is the
    # correctly rounded quotient so p is within a couple ulp of a.
    if a == p:
        d1 = 0.0
    else:
        if (a > 0.0) != (p > 0.0):
            return None
        aa, pp = abs(a), abs(p)
        if not (0.5 * pp <= aa <= 2.0 * pp):
            return None
        d1 = a - p
    s, t = _two_sum(d1, -e)
    r = s if s != 0.0 else t
    if r > 0.0:
        return 1
    if r < 0.0:
        return -1
    return 0


def _div_down(a: float, b: float) -> float:
    q = a / b
    s = _div_err_sign(a, b, q)
    if s is None:
        return _down(q)
    # true quotient = q + (a - q*b)/b
    if s == 0:
        return q
    return _down(q) if (s > 0) != (b > 0.0) else q


def _div_up(a: float, b: float) -> float:
    q = a / b
    s = _div_err_sign(a, b, q)
    if s is None:
        return _up(q)
    if s == 0:
        return q
    return _up(q) if (s > 0) == (b > 0.0) else q


def _sqrt_down(x: float) -> float:
    s = math.sqrt(x)
    if Fraction(s) * Fraction(s) <= Fraction(x):
        return s
    return _down(s)


def _sqrt_up(x: float) -> float:
    s = math.sqrt(x)
    if Fraction(s) * Fraction(s) >= Fraction(x):
        return s
    return _up(s)


def _float_down(fr: Fraction) -> float:
    f = float(fr)
    return f if Fraction(f) <= fr else _down(f)


def _float_up(fr: Fraction) -> float:
    f = float(fr)
    return f if Fraction(f) >= fr else _up(f)


# ---------------------------------------------------------------------------
# The interval type.
# ---------------------------------------------------------------------------

class Interval:
    """Closed interval [lo, hi] with outward-rounded binary64 endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        if hi is None:
            hi = lo
        lo = float(lo)
        hi = float(hi)
        if not lo <= hi:
            raise ValueError(f"invalid interval endpoints [{lo!r}, {hi!r}]")
        if lo == _INF or hi == -_INF:
            raise ValueError("interval endpoints out of range")
        self.lo = lo
        self.hi = hi

    @classmethod
    def _raw(cls, lo: float, hi: float) -> "Interval":
        iv = object.__new__(cls)
        iv.lo = lo
        iv.hi = hi
        return iv

    @classmethod
    def from_fraction(cls, lo, hi=None) -> "Interval":
        """Tightest interval containing the exact rational(s)."""
        flo = Fraction(lo)
        fhi = flo if hi is None else Fraction(hi)
        return cls._raw(_float_down(flo), _float_up(fhi))

    # -- basic queries ------------------------------------------------------

    @property
    def width(self) -> float:
        return _sub_up(self.hi, self.lo)

    @property
    def mid(self) -> float:
        m = 0.5 * (self.lo + self.hi)
        if not math.isfinite(m):
            m = 0.5 * self.lo + 0.5 * self.hi
        if m < self.lo:
            m = self.lo
        if m > self.hi:
            m = self.hi
        return m

    @property
    def mag(self) -> float:
        """max |x| over the interval."""
        return max(-self.lo, self.hi)

    @property
    def mig(self) -> float:
        """min |x| over the interval."""
        if self.lo <= 0.0 <= self.hi:
            return 0.0
        return min(-self.lo, self.hi) if self.hi < 0.0 else self.lo

    def contains(self, x) -> bool:
        if isinstance(x, Fraction):
            return Fraction(self.lo) <= x <= Fraction(self.hi)
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: "Interval") -> "Interval":
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            raise DomainError("empty intersection")
        return Interval._raw(lo, hi)

    def __repr__(self) -> str:
        return f"Interval({self.lo!r}, {self.hi!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Interval) and self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, Interval):
            return x
        if isinstance(x, (int, float)):
            x = float(x)
            return Interval._raw(x, x)
        if isinstance(x, Fraction):
            return Interval.from_fraction(x)
        return NotImplemented

    def __add__(self, other):
        o = Interval._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Interval._raw(_add_down(self.lo, o.lo), _add_up(self.hi, o.hi))

    __radd__ = __add__

    def __neg__(self):
        return Interval._raw(-self.hi, -self.lo)

    def __sub__(self, other):
        o = Interval._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Interval._raw(_sub_down(self.lo, o.hi), _sub_up(self.hi, o.lo))

    def __rsub__(self, other):
        o = Interval._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o.__sub__(self)

    def __mul__(self, other):
        o = Interval._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b, c, d = self.lo, self.hi, o.lo, o.hi
        if a >= 0.0:
            if c >= 0.0:
                return Interval._raw(_mul_down(a, c), _mul_up(b, d))
            if d <= 0.0:
                return Interval._raw(_mul_down(b, c), _mul_up(a, d))
            return Interval._raw(_mul_down(b, c), _mul_up(b, d))
        if b <= 0.0:
            if c >= 0.0:
                return Interval._raw(_mul_down(a, d), _mul_up(b, c))
            if d <= 0.0:
                return Interval._raw(_mul_down(b, d), _mul_up(a, c))
            return Interval._raw(_mul_down(a, d), _mul_up(a, c))
        if c >= 0.0:
            return Interval._raw(_mul_down(a, d), _mul_up(b, d))
        if d <= 0.0:
            return Interval._raw(_mul_down(b, c), _mul_up(a, c))
        return Interval._raw(
            min(_mul_down(a, d), _mul_down(b, c)),
            max(_mul_up(a, c), _mul_up(b, d)),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Interval._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        c, d = o.lo, o.hi
        if c <= 0.0 <= d:
            raise DomainError("division by an interval containing 0")
        a, b = self.lo, self.hi
        if c > 0.0:
            if a >= 0.0:
                return Interval._raw(_div_down(a, d), _div_up(b, c))
            if b <= 0.0:
                return Interval._raw(_div_down(a, c), _div_up(b, d))
            return Interval._raw(_div_down(a, c), _div_up(b, c))
        if a >= 0.0:
            return Interval._raw(_div_down(b, d), _div_up(a, c))
        if b <= 0.0:
            return Interval._raw(_div_down(b, c), _div_up(a, d))
        return Interval._raw(_div_down(b, d), _div_up(a, d))

    def __rtruediv__(self, other):
        o = Interval._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o.__truediv__(self)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return pow_int(self, k)

    def __abs__(self):
        if self.lo >= 0.0:
            return self
        if self.hi <= 0.0:
            return Interval._raw(-self.hi, -self.lo)
        return Interval._raw(0.0, self.mag)


ZERO = Interval._raw(0.0, 0.0)
ONE = Interval._raw(1.0, 1.0)
UNIT = Interval._raw(-1.0, 1.0)


def hull(a: Interval, b: Interval) -> Interval:
    return Interval._raw(min(a.lo, b.lo), max(a.hi, b.hi))


# ---------------------------------------------------------------------------
# Integer powers (monotone by parity, never naive repeated self-multiply).
# ---------------------------------------------------------------------------

def _pow_dir(x: float, k: int, up: bool) -> float:
    """x**k for x >= 0 with all rounding pushed in one direction."""
    mul = _mul_up if up else _mul_down
    acc = 1.0
    base = x
    while k:
        if k & 1:
            acc = mul(acc, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return acc


def pow_int(a: Interval, k: int) -> Interval:
    """a**k for a nonnegative integer exponent k."""
    if k < 0:
        raise DomainError("pow_int requires a nonnegative exponent")
    if k == 0:
        return ONE
    if k == 1:
        return a
    if k % 2 == 0:
        m = a.mag
        lo_abs = a.mig
        return Interval._raw(_pow_dir(lo_abs, k, False), _pow_dir(m, k, True))
    if a.lo >= 0.0:
        return Interval._raw(_pow_dir(a.lo, k, False), _pow_dir(a.hi, k, True))
    if a.hi <= 0.0:
        return Interval._raw(-_pow_dir(-a.lo, k, True), -_pow_dir(-a.hi, k, False))
    return Interval._raw(-_pow_dir(-a.lo, k, True), _pow_dir(a.hi, k, True))


# ---------------------------------------------------------------------------
# Certified constants, built once from exact rational series.
# ---------------------------------------------------------------------------

def _atan_inv_bounds(q: int, terms: int):
    """Rational lower/upper bounds of atan(1/q) from the alternating series."""
    x = Fraction(1, q)
    x2 = x * x
    partials = []
    s = Fraction(0)
    p = x
    for k in range(terms):
        term = p / (2 * k + 1)
        s = s - term if k % 2 else s + term
        partials.append(s)
        p *= x2
    # alternating with decreasing terms: value lies between consecutive sums
    return min(partials[-1], partials[-2]), max(partials[-1], partials[-2])


def _ln2_bounds(terms: int):
    """ln 2 = 2*atanh(1/3); positive series plus a geometric tail bound."""
    x = Fraction(1, 3)
    x2 = x * x
    s = Fraction(0)
    p = x
    for k in range(terms):
        s += p / (2 * k + 1)
        p *= x2
    tail = p / ((2 * terms + 1) * (1 - x2))
    return 2 * s, 2 * (s + tail)


def _build_pi() -> Interval:
    lo5, hi5 = _atan_inv_bounds(5, 14)
    lo239, hi239 = _atan_inv_bounds(239, 6)
    return Interval.from_fraction(16 * lo5 - 4 * hi239, 16 * hi5 - 4 * lo239)


PI = _build_pi()
if not (PI.lo <= math.pi <= PI.hi and PI.width <= 5e-16):  # pragma: no cover
    raise RuntimeError("pi enclosure failed self-validation")
TWO_PI = Interval._raw(_mul_down(PI.lo, 2.0), _mul_up(PI.hi, 2.0))
HALF_PI = Interval._raw(_mul_down(PI.lo, 0.5), _mul_up(PI.hi, 0.5))
PI_SQ = PI * PI
LN2 = Interval.from_fraction(*_ln2_bounds(22))
SIXTH = Interval.from_fraction(Fraction(1, 6))

_INV_HALF_PI = 2.0 / math.pi
_INV_LN2 = 1.0 / math.log(2.0)


# ---------------------------------------------------------------------------
# Series machinery.
# ---------------------------------------------------------------------------

def _inv_factorial(n: int) -> Interval:
    return Interval.from_fraction(Fraction(1, math.factorial(n)))

# sin r = r * sum_j (-1)^j r^(2j) / (2j+1)!   (j = 0..8, remainder at r^18/19!)
_SIN_COEFFS = [_inv_factorial(2 * j + 1) for j in range(9)]
# cos r = sum_j (-1)^j r^(2j) / (2j)!         (j = 0..9, remainder at r^20/20!)
_COS_COEFFS = [_inv_factorial(2 * j) for j in range(10)]
# exp r = sum_j r^j / j!                      (j = 0..13, remainder at r^14/14!)
_EXP_COEFFS = [_inv_factorial(j) for j in range(14)]
# sinc x = sum_j (-1)^j x^(2j) / (2j+1)!      (j = 0..7, remainder at x^16/17!)
_SINC_COEFFS = [_inv_factorial(2 * j + 1) for j in range(8)]
# R(x) = sum_{j>=0} (-1)^j x^(2j+2) / (2j+5)! (j = 0..6, remainder at x^14/19! * x^2)
_R_COEFFS = [_inv_factorial(2 * j + 5) for j in range(7)]

_REM_14 = _inv_factorial(14)
_REM_17 = _inv_factorial(17)
_REM_19 = _inv_factorial(19)
_REM_20 = _inv_factorial(20)

# pi/4 plus reduction slop (k * ulp(pi/2) stays below 3e-7 for |x| <= 1e9)
_TRIG_REDUCED_MAX = 0.78545
_TRIG_POINT_MAX = 1e9


_SIN_C = [(c.lo, c.hi) for c in _SIN_COEFFS]
_COS_C = [(c.lo, c.hi) for c in _COS_COEFFS]
_SINC_C = [(c.lo, c.hi) for c in _SINC_COEFFS]
_R_C = [(c.lo, c.hi) for c in _R_COEFFS]


def _alternating_eval(r2: Interval, coeffs, rem_coeff: Interval, rem_pow: int, mag: float) -> Interval:
    """sum_j (-1)^j c_j r2^j with |remainder| <= rem_coeff * mag^rem_pow."""
    rem = _mul_up(rem_coeff.hi, _pow_dir(mag, rem_pow, True))
    lo, hi = _poly_alt_raw(r2.lo, r2.hi, coeffs, rem)
    return Interval._raw(lo, hi)


def _poly_alt_raw(s_lo: float, s_hi: float, coeffs, rem: float):
    """Raw-endpoint Horner for sum_j (-1)^j c_j s^j plus remainder [-rem, rem].

    Requires s_lo >= 0 (s is a square).
    """
    c_lo, c_hi = coeffs[-1]
    for j in range(len(coeffs) - 2, -1, -1):
        # t = s * acc, with s >= 0
        if c_lo >= 0.0:
            t_lo = _mul_down(s_lo, c_lo)
            t_hi = _mul_up(s_hi, c_hi)
        elif c_hi <= 0.0:
            t_lo = _mul_down(s_hi, c_lo)
            t_hi = _mul_up(s_lo, c_hi)
        else:
            t_lo = _mul_down(s_hi, c_lo)
            t_hi = _mul_up(s_hi, c_hi)
        b_lo, b_hi = coeffs[j]
        c_lo = _sub_down(b_lo, t_hi)
        c_hi = _sub_up(b_hi, t_lo)
    return _sub_down(c_lo, rem), _add_up(c_hi, rem)


def _reduced(x: float, k: int):
    """r = x - k*(pi/2) as raw endpoints."""
    if k == 0:
        return x, x
    if k > 0:
        return _sub_down(x, _mul_up(float(k), HALF_PI.hi)), _sub_up(x, _mul_down(float(k), HALF_PI.lo))
    return _sub_down(x, _mul_up(float(k), HALF_PI.lo)), _sub_up(x, _mul_down(float(k), HALF_PI.hi))


def _sin_taylor_raw(r_lo: float, r_hi: float):
    m = max(-r_lo, r_hi)
    if m > _TRIG_REDUCED_MAX + 1e-9:
        raise AssertionError("sin series argument out of reduced range")
    s_lo = 0.0 if r_lo <= 0.0 <= r_hi else min(_mul_down(r_lo, r_lo), _mul_down(r_hi, r_hi))
    s_hi = _mul_up(m, m)
    rem = _mul_up(_REM_19.hi, _pow_dir(m, 18, True))
    p_lo, p_hi = _poly_alt_raw(s_lo, s_hi, _SIN_C, rem)
    # r * poly with poly > 0 on the reduced range
    if p_lo >= 0.0:
        if r_lo >= 0.0:
            lo, hi = _mul_down(r_lo, p_lo), _mul_up(r_hi, p_hi)
        elif r_hi <= 0.0:
            lo, hi = _mul_down(r_lo, p_hi), _mul_up(r_hi, p_lo)
        else:
            lo, hi = _mul_down(r_lo, p_hi), _mul_up(r_hi, p_hi)
        return max(lo, -1.0), min(hi, 1.0)
    v = Interval._raw(r_lo, r_hi) * Interval._raw(p_lo, p_hi)
    return max(v.lo, -1.0), min(v.hi, 1.0)


def _cos_taylor_raw(r_lo: float, r_hi: float):
    m = max(-r_lo, r_hi)
    if m > _TRIG_REDUCED_MAX + 1e-9:
        raise AssertionError("cos series argument out of reduced range")
    s_lo = 0.0 if r_lo <= 0.0 <= r_hi else min(_mul_down(r_lo, r_lo), _mul_down(r_hi, r_hi))
    s_hi = _mul_up(m, m)
    rem = _mul_up(_REM_20.hi, _pow_dir(m, 20, True))
    p_lo, p_hi = _poly_alt_raw(s_lo, s_hi, _COS_C, rem)
    return max(p_lo, -1.0), min(p_hi, 1.0)


def _sin_point_raw(x: float):
    if x == 0.0:
        return 0.0, 0.0
    if abs(x) > _TRIG_POINT_MAX:
        return -1.0, 1.0
    k = round(x * _INV_HALF_PI)
    r_lo, r_hi = _reduced(x, k)
    m = k % 4
    if m == 0:
        return _sin_taylor_raw(r_lo, r_hi)
    if m == 1:
        return _cos_taylor_raw(r_lo, r_hi)
    if m == 2:
        lo, hi = _sin_taylor_raw(r_lo, r_hi)
        return -hi, -lo
    lo, hi = _cos_taylor_raw(r_lo, r_hi)
    return -hi, -lo


def _cos_point_raw(x: float):
    if x == 0.0:
        return 1.0, 1.0
    if abs(x) > _TRIG_POINT_MAX:
        return -1.0, 1.0
    k = round(x * _INV_HALF_PI)
    r_lo, r_hi = _reduced(x, k)
    m = k % 4
    if m == 0:
        return _cos_taylor_raw(r_lo, r_hi)
    if m == 1:
        lo, hi = _sin_taylor_raw(r_lo, r_hi)
        return -hi, -lo
    if m == 2:
        lo, hi = _cos_taylor_raw(r_lo, r_hi)
        return -hi, -lo
    return _sin_taylor_raw(r_lo, r_hi)


_TWO_PI_F = 2.0 * math.pi


def _crosses(a_lo: float, a_hi: float, frac: float) -> bool:
    """Does [a_lo, a_hi] possibly contain a point (k + frac) * 2*pi?"""
    k_lo = math.floor(a_lo / _TWO_PI_F - frac)
    k_hi = math.floor(a_hi / _TWO_PI_F - frac) + 1
    if k_hi - k_lo > 4:
        return True
    for k in range(k_lo, k_hi + 1):
        kf = k + frac
        c_lo = _mul_down(TWO_PI.lo, kf) if kf >= 0 else _mul_down(TWO_PI.hi, kf)
        c_hi = _mul_up(TWO_PI.hi, kf) if kf >= 0 else _mul_up(TWO_PI.lo, kf)
        if c_lo <= a_hi and c_hi >= a_lo:
            return True
    return False


def sin(a: Interval) -> Interval:
    """Enclosure of sin over a, clamped to [-1, 1]."""
    if a.lo == a.hi:
        lo, hi = _sin_point_raw(a.lo)
        return Interval._raw(lo, hi)
    if a.hi - a.lo >= 6.3:
        return UNIT
    l1, h1 = _sin_point_raw(a.lo)
    l2, h2 = _sin_point_raw(a.hi)
    lo = l1 if l1 < l2 else l2
    hi = h1 if h1 > h2 else h2
    if hi < 1.0 and _crosses(a.lo, a.hi, 0.25):
        hi = 1.0
    if lo > -1.0 and _crosses(a.lo, a.hi, 0.75):
        lo = -1.0
    return Interval._raw(lo, hi)


def cos(a: Interval) -> Interval:
    """Enclosure of cos over a, clamped to [-1, 1]."""
    if a.lo == a.hi:
        lo, hi = _cos_point_raw(a.lo)
        return Interval._raw(lo, hi)
    if a.hi - a.lo >= 6.3:
        return UNIT
    l1, h1 = _cos_point_raw(a.lo)
    l2, h2 = _cos_point_raw(a.hi)
    lo = l1 if l1 < l2 else l2
    hi = h1 if h1 > h2 else h2
    if hi < 1.0 and _crosses(a.lo, a.hi, 0.0):
        hi = 1.0
    if lo > -1.0 and _crosses(a.lo, a.hi, 0.5):
        lo = -1.0
    return Interval._raw(lo, hi)


def _exp_point_interval(x: float) -> Interval:
    if x > 709.0:
        raise DomainError("exp argument too large")
    if x < -745.0:
        return Interval._raw(0.0, 5e-324)
    k = round(x * _INV_LN2)
    r = Interval._raw(x, x) - LN2 * k
    m = r.mag
    if m > 0.3566:
        raise AssertionError("exp series argument out of reduced range")
    acc = _EXP_COEFFS[-1]
    for c in reversed(_EXP_COEFFS[:-1]):
        acc = c + r * acc
    rem = _mul_up(1.5 * _REM_14.hi, _pow_dir(m, 14, True))
    acc = acc + Interval._raw(-rem, rem)
    lo = math.ldexp(acc.lo, k)
    hi = math.ldexp(acc.hi, k)
    if lo != 0.0 and abs(lo) < 1e-300:
        lo = _down(lo)
        hi = _up(hi)
    return Interval._raw(max(lo, 0.0), hi)


def exp(a: Interval) -> Interval:
    """Enclosure of exp over a (monotone increasing)."""
    lo = _exp_point_interval(a.lo)
    hi = _exp_point_interval(a.hi)
    return Interval._raw(lo.lo, hi.hi)


def _log_point_interval(x: float) -> Interval:
    if x <= 0.0:
        raise DomainError("log requires a positive argument")
    m, e2 = math.frexp(x)  # x = m * 2**e2, m in [0.5, 1)
    if m < 0.70710678118654757:
        m *= 2.0
        e2 -= 1
    mi = Interval._raw(m, m)
    u = (mi - 1.0) / (mi + 1.0)
    u2 = u * u
    # log m = 2 * (u + u^3/3 + u^5/5 + ...)
    acc = Interval.from_fraction(Fraction(1, 21))
    for j in range(9, 0, -1):
        acc = Interval.from_fraction(Fraction(1, 2 * j - 1)) + u2 * acc
    um = u.mag
    tail = _mul_up(_pow_dir(um, 23, True), 1.0 / (23.0 * (1.0 - 0.03)))
    logm = 2.0 * u * acc + Interval._raw(-2.0 * tail, 2.0 * tail)
    return logm + LN2 * e2


def log(a: Interval) -> Interval:
    """Enclosure of the natural log over a (requires a.lo > 0)."""
    if a.lo <= 0.0:
        raise DomainError("log requires a strictly positive interval")
    lo = _log_point_interval(a.lo)
    hi = _log_point_interval(a.hi)
    return Interval._raw(lo.lo, hi.hi)


def sqrt(a: Interval) -> Interval:
    """Enclosure of sqrt over a (requires a.lo >= 0)."""
    if a.lo < 0.0:
        raise DomainError("sqrt requires a nonnegative interval")
    return Interval._raw(_sqrt_down(a.lo), _sqrt_up(a.hi))


# ---------------------------------------------------------------------------
# sin(x)/x and the two cubic remainder kernels.
# ---------------------------------------------------------------------------

_SINC_RANGE = Interval._raw(-0.22, 1.0)


def _sinc_series(a: Interval) -> Interval:
    return _alternating_eval(pow_int(a, 2), _SINC_C, _REM_17, 16, a.mag)


def _sinc_direct(a: Interval) -> Interval:
    return sin(a) / a


def sinc(a: Interval) -> Interval:
    """Enclosure of sin(x)/x extended by 1 at x = 0.

    Series with a certified remainder on |x| <= 1/2, direct evaluation
    outside, hulled across the pieces.
    """
    pieces = []
    if a.lo <= 0.5 and a.hi >= -0.5:
        inner = Interval._raw(max(a.lo, -0.5), min(a.hi, 0.5))
        pieces.append(_sinc_series(inner))
    if a.hi > 0.5:
        pieces.append(_sinc_direct(Interval._raw(max(a.lo, 0.5), a.hi)))
    if a.lo < -0.5:
        pieces.append(_sinc_direct(Interval._raw(a.lo, min(a.hi, -0.5))))
    out = pieces[0]
    for p in pieces[1:]:
        out = hull(out, p)
    return out.intersect(_SINC_RANGE)


_R_RANGE = Interval._raw(0.0, SIXTH.hi)


def _R_point(x: float) -> Interval:
    """Enclosure of R(|x|) at a single point; R(x) = (sin x - x + x^3/6)/x^3."""
    x = abs(x)
    xi = Interval._raw(x, x)
    if x <= 0.5:
        x2 = pow_int(xi, 2)
        poly = _alternating_eval(x2, _R_C, _REM_19, 14, x)
        return (x2 * poly).intersect(_R_RANGE)
    x3 = pow_int(xi, 3)
    num = sin(xi) - xi + x3 * SIXTH
    return (num / x3).intersect(_R_RANGE)


def remainder_R(a: Interval) -> Interval:
    """Enclosure of R(x) with sin x = x - x^3/6 + x^3 R(x), R(0) = 0.

    R is even, continuous and increasing in |x|, which lets the enclosure
    over an interval be built from the two extreme |x| values.
    """
    lo = _R_point(a.mig)
    hi = _R_point(a.mag)
    return Interval._raw(lo.lo, hi.hi).intersect(_R_RANGE)


def s3_kernel(a: Interval) -> Interval:
    """Enclosure of S3(u) = (u - sin u)/u^3 with S3(0) = 1/6.

    Uses the identity S3(u) = 1/6 - R(u), so S3 is decreasing in |u| and
    takes values in [0, 1/6].
    """
    return (SIXTH - remainder_R(a)).intersect(_R_RANGE)
