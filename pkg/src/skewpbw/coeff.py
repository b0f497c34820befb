"""Exact coefficients: the rational function field Q(q) and its cyclotomic
specialisations Q(zeta_t), plus Gaussian binomials.

Polynomials are stored as tuples of Python ints, lowest degree first.  A
generic scalar is a reduced fraction ``num/den`` with the leading
coefficient of ``den`` positive.  In root-of-unity mode ``q`` denotes a fixed
primitive t-th root of unity and a scalar is ``num/den`` with ``den`` a
positive integer and ``deg num < phi(t)``.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from sympy import QQ, ZZ
from sympy.polys.euclidtools import dup_cancel, dup_invert
from sympy.polys.specialpolys import dup_zz_cyclotomic_poly

from .errors import ParseError, SpecializationPoleError
from .parsing import parse_with

# --- dense integer polynomials, low degree first ---------------------------


def _trim(p):
    n = len(p)
    while n and p[n - 1] == 0:
        n -= 1
    return tuple(p[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _psub(a, b):
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return _trim(out)


def _pmul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        c = a[0]
        return tuple(c * x for x in b)
    if len(b) == 1:
        c = b[0]
        return tuple(c * x for x in a)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _prem_monic(a, m):
    """Remainder of ``a`` modulo the monic polynomial ``m``."""
    d = len(m) - 1
    out = list(a)
    for k in range(len(out) - 1, d - 1, -1):
        c = out[k]
        if c:
            shift = k - d
            for i in range(d + 1):
                out[shift + i] -= c * m[i]
    return _trim(out[:d])


def _to_dup(p, dom=ZZ):
    return [dom(c) for c in reversed(p)] or [dom(0)]


def _from_dup(p):
    return _trim(tuple(int(c) for c in reversed(p)))


@lru_cache(maxsize=None)
def cyclotomic(t):
    """The t-th cyclotomic polynomial as a low-first coefficient tuple."""
    return _from_dup(dup_zz_cyclotomic_poly(t, ZZ))


def _render_poly(p):
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = "q" if k == 1 else f"q^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += sign + body
    return out


def _is_monomial(p):
    return all(c == 0 for c in p[:-1])


# --- coefficient modes -------------------------------------------------------


@dataclass(frozen=True)
class CoeffMode:
    """``t is None`` for symbolic q; otherwise q is a primitive t-th root of unity."""

    t: int | None = None

    def __post_init__(self):
        if self.t is not None and (not isinstance(self.t, int) or self.t < 2):
            raise ValueError(f"root-of-unity order must be an integer >= 2, got {self.t!r}")

    @property
    def generic(self):
        return self.t is None

    def const(self, n):
        return Scalar._const(n, self.t)

    def one(self):
        return self.const(1)

    def zero(self):
        return self.const(0)

    def q(self):
        return Scalar.q(self.t)

    def parse(self, text):
        return parse_scalar(text, self)

    def __str__(self):
        return "generic" if self.t is None else f"root {self.t}"


GENERIC = CoeffMode()


class Scalar:
    """An immutable element of Q(q) or of Q(zeta_t)."""

    __slots__ = ("num", "den", "t", "_hash")

    def __init__(self, num, den, t):
        # trusted constructor: (num, den) must already be canonical
        self.num = num
        self.den = den
        self.t = t
        self._hash = None

    # -- construction -------------------------------------------------------

    @classmethod
    def _const(cls, n, t=None):
        from fractions import Fraction

        if isinstance(n, Fraction):
            return cls._make((n.numerator,), (n.denominator,), t)
        return cls((n,) if n else (), (1,), t)

    @classmethod
    def q(cls, t=None):
        if t is None:
            return cls((0, 1), (1,), None)
        return cls._make((0, 1), (1,), t)

    @classmethod
    def from_polys(cls, num, den=(1,), t=None):
        return cls._make(tuple(num), tuple(den), t)

    @classmethod
    def _make(cls, num, den, t):
        if t is None:
            num, den = _canon_generic(num, den)
        else:
            num, den = _canon_root(num, den, t)
        return cls(num, den, t)

    @property
    def mode(self):
        return CoeffMode(self.t)

    # -- predicates ----------------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    @property
    def is_zero(self):
        return not self.num

    @property
    def is_constant(self):
        return len(self.num) <= 1 and len(self.den) == 1

    def constant_value(self):
        from fractions import Fraction

        if not self.is_constant:
            raise ValueError(f"{self} is not a rational constant")
        return Fraction(self.num[0] if self.num else 0, self.den[0])

    # -- arithmetic ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.t != self.t:
                raise ValueError(f"mixed coefficient modes: {self.mode} vs {other.mode}")
            return other
        if isinstance(other, int):
            return Scalar._const(other, self.t)
        from fractions import Fraction

        if isinstance(other, Fraction):
            return Scalar._const(other, self.t)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        a, b = self, other
        if self.t is None:
            if a.den == b.den:
                if a.den == (1,):
                    return Scalar(_padd(a.num, b.num), (1,), None)
                return Scalar._make(_padd(a.num, b.num), a.den, None)
            num = _padd(_pmul(a.num, b.den), _pmul(b.num, a.den))
            return Scalar._make(num, _pmul(a.den, b.den), None)
        da, db = a.den[0], b.den[0]
        num = _padd(tuple(c * db for c in a.num), tuple(c * da for c in b.num))
        return Scalar._make(num, (da * db,), self.t)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(tuple(-c for c in self.num), self.den, self.t)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self, other
        if not a.num or not b.num:
            return Scalar((), (1,), self.t)
        if self.t is None:
            if a.den == (1,) and b.den == (1,):
                return Scalar(_pmul(a.num, b.num), (1,), None)
            return Scalar._make(_pmul(a.num, b.num), _pmul(a.den, b.den), None)
        num = _prem_monic(_pmul(a.num, b.num), cyclotomic(self.t))
        return Scalar._make(num, (a.den[0] * b.den[0],), self.t)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero scalar")
        if self.t is None:
            return Scalar._make(self.den, self.num, None)
        phi = cyclotomic(self.t)
        inv = dup_invert(_to_dup(self.num, QQ), _to_dup(phi, QQ), QQ)
        # self = num/d, so self^-1 = d * num^-1
        coeffs = [QQ.to_sympy(c) for c in reversed(inv)]
        from fractions import Fraction

        fr = [Fraction(int(c.p), int(c.q)) * self.den[0] for c in coeffs]
        common = 1
        for f in fr:
            common = common * f.denominator // gcd(common, f.denominator)
        num = tuple(int(f * common) for f in fr)
        return Scalar._make(num, (common,), self.t)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        base = self
        if n < 0:
            base = self.inverse()
            n = -n
        result = Scalar._const(1, self.t)
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison / hashing -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = Scalar._const(other, self.t)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.t == other.t and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.t, self.num, self.den))
        return self._hash

    # -- rendering -------------------------------------------------------------

    def __str__(self):
        num = _render_poly(self.num)
        if self.den == (1,):
            return num
        den = _render_poly(self.den)
        if sum(1 for c in self.num if c) > 1:
            num = f"({num})"
        if sum(1 for c in self.den if c) > 1 or (len(self.den) > 1 and self.den[-1] != 1):
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"Scalar({str(self)!r}, mode={self.mode})"

    @property
    def is_compound(self):
        """True when rendering needs parentheses inside a product."""
        return sum(1 for c in self.num if c) > 1 or self.den != (1,) or (self.num and self.num[-1] < 0)


def _canon_generic(num, den):
    num = _trim(num)
    den = _trim(den)
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return (), (1,)
    if _is_monomial(den):
        k = len(den) - 1
        v = 0
        while num[v] == 0:
            v += 1
        s = min(k, v)
        if s:
            num = num[s:]
            k -= s
        d = den[-1]
        g = gcd(gcd(*num), d)
        if d < 0:
            g = -g
        if g != 1:
            num = tuple(c // g for c in num)
            d //= g
        return num, (0,) * k + (d,)
    p, q = dup_cancel(_to_dup(num), _to_dup(den), ZZ)
    return _from_dup(p), _from_dup(q)


def _canon_root(num, den, t):
    phi = cyclotomic(t)
    num = _trim(num)
    den = _trim(den)
    if len(den) != 1:
        raise ValueError("root-of-unity scalars need an integer denominator")
    if len(num) >= len(phi):
        num = _prem_monic(num, phi)
    d = den[0]
    if d == 0:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return (), (1,)
    g = gcd(gcd(*num), d)
    if d < 0:
        g = -g
    if g != 1:
        num = tuple(c // g for c in num)
        d //= g
    return num, (d,)


# --- operations -------------------------------------------------------------


def q_binomial(m, j, q):
    """Gaussian binomial [m choose j] at ``q`` via the q-Pascal recurrence."""
    if not (isinstance(m, int) and isinstance(j, int)) or m < 0 or j < 0:
        raise ValueError("q_binomial needs non-negative integers")
    if j > m:
        raise ValueError(f"q_binomial requires j <= m, got m={m}, j={j}")
    one = Scalar._const(1, q.t)
    powers = [one]
    for _ in range(m):
        powers.append(powers[-1] * q)
    row = [one]
    for n in range(1, m + 1):
        new = [one] * (n + 1)
        for k in range(1, n):
            # [n k] = [n-1 k-1] + q^k [n-1 k]
            new[k] = row[k - 1] + powers[k] * row[k]
        row = new
    return row[j]


def root_order(s):
    """Multiplicative order of ``s``, or None if it is infinite."""
    if not s:
        raise ValueError("root_order of zero")
    if s.t is None:
        if not s.is_constant:
            return None
        v = s.constant_value()
        if v == 1:
            return 1
        if v == -1:
            return 2
        return None
    # roots of unity in Q(zeta_t) have order dividing lcm(2, t)
    limit = s.t if s.t % 2 == 0 else 2 * s.t
    p = s
    for k in range(1, limit + 1):
        if p == 1:
            return k
        p = p * s
    return None


def specialize(s, t):
    """Image of a generic scalar under q -> zeta_t."""
    if s.t is not None:
        raise ValueError("specialize expects a generic scalar")
    phi = cyclotomic(t)
    den = _prem_monic(s.den, phi)
    if not den:
        raise SpecializationPoleError(
            f"denominator {_render_poly(s.den)} vanishes at a primitive {t}-th root of unity "
            f"(divisible by the cyclotomic factor {_render_poly(phi)})"
        )
    num = Scalar._make(s.num, (1,), t)
    return num / Scalar._make(den, (1,), t)


class _ScalarSemantics:
    def __init__(self, mode):
        self.mode = mode

    def number(self, n):
        return self.mode.const(n)

    def name(self, name):
        if name == "q":
            return self.mode.q()
        raise ParseError(f"unknown symbol {name!r} in scalar (only q is allowed)")

    def divide(self, a, b):
        if not b:
            raise ParseError("division by zero in scalar")
        return a / b

    def power(self, a, n):
        if n < 0 and not a:
            raise ParseError("negative power of zero")
        return a**n

    def bracket(self, a, b):
        raise ParseError("brackets are not allowed inside scalars")


def parse_scalar(text, mode=GENERIC):
    """Parse a scalar such as ``(q^2+1)/(q-1)`` or ``q^-1``."""
    return parse_with(text, _ScalarSemantics(mode))
