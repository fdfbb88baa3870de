"""Exact scalars.

All symbolic computation happens over the rational function field Q(u), where
u is a formal square root of the quantum parameter v (u² = v). Elements of
Q(v) are exactly the elements whose normalized numerator and denominator only
involve even powers of u.

On the Hall algebra side, v is specialized to sqrt(q); values then live in
Q(sqrt(q)) and are represented by :class:`QuadNum`.
"""

import math
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

import sympy
from sympy import QQ
from sympy.polys.fields import FracElement, field

from . import exceptions
from . import log

__all__ = [
    'FIELD',
    'DOMAIN',
    'LaurentPoly',
    'FieldElem',
    'QuadNum',
    'ZERO',
    'ONE',
    'U',
    'V',
    'field_ops',
    'specialize',
    'sqrt_unit',
    'qint',
    'qbinom',
    'parse_scalar',
    'format_scalar',
]

logger = log.pkg_logger.getChild('scalars')

FIELD, _U_GEN = field('u', QQ)
DOMAIN = FIELD.to_domain()
_U_SYMBOL, = FIELD.symbols
_V_SYMBOL = sympy.Symbol('v')

Scalar = Union['FieldElem', int, Fraction]


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


class LaurentPoly:
    """Immutable Laurent polynomial in u with rational coefficients."""

    __slots__ = ('_coeffs', '_hash')

    def __init__(self, coeffs: Mapping[int, Rational] = None):
        self._coeffs: Dict[int, Fraction] = {}
        if coeffs:
            for e, c in coeffs.items():
                if c:
                    self._coeffs[int(e)] = Fraction(c)
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coeff: Rational = 1) -> 'LaurentPoly':
        return cls({exponent: coeff})

    @classmethod
    def _from_poly(cls, poly, shift: int = 0,
                   scale: Fraction = Fraction(1)) -> 'LaurentPoly':
        return cls({e + shift: _to_fraction(c) * scale
                    for (e,), c in poly.terms()})

    @property
    def coeffs(self) -> Dict[int, Fraction]:
        return dict(self._coeffs)

    def terms(self) -> Iterator[Tuple[int, Fraction]]:
        """Yield (exponent, coefficient) pairs, highest exponent first."""
        for e in sorted(self._coeffs, reverse=True):
            yield e, self._coeffs[e]

    def low(self) -> int:
        return min(self._coeffs)

    def high(self) -> int:
        return max(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def to_frac(self) -> FracElement:
        if not self._coeffs:
            return FIELD.zero
        low = self.low()
        poly = FIELD.ring.from_dict({
            (e - low,): QQ(c.numerator, c.denominator)
            for e, c in self._coeffs.items()})
        return FIELD.new(poly) * _U_GEN ** low

    def __add__(self, other: 'LaurentPoly') -> 'LaurentPoly':
        result = dict(self._coeffs)
        for e, c in other._coeffs.items():
            result[e] = result.get(e, 0) + c
        return LaurentPoly(result)

    def __neg__(self) -> 'LaurentPoly':
        return LaurentPoly({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other: 'LaurentPoly') -> 'LaurentPoly':
        return self + (-other)

    def __mul__(self, other: 'LaurentPoly') -> 'LaurentPoly':
        result: Dict[int, Fraction] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                result[e1 + e2] = result.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(result)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash

    def __repr__(self):
        return f'LaurentPoly({self._coeffs!r})'

    def __str__(self):
        if not self._coeffs:
            return '0'
        parts = []
        for e, c in self.terms():
            mono = _format_power(e)
            if mono == '1':
                text = str(abs(c))
            elif abs(c) == 1:
                text = mono
            else:
                text = f'{abs(c)}*{mono}'
            if not parts:
                parts.append(text if c > 0 else '-' + text)
            else:
                parts.append(('+ ' if c > 0 else '- ') + text)
        return ' '.join(parts)

    def evaluate_at_sqrt(self, q: int) -> 'QuadNum':
        """Evaluate at v = sqrt(q), i.e. u^(2m) ↦ sqrt(q)^m.

        Raises:
            OddHalfPower: if an odd power of u occurs.
        """
        total = QuadNum(0, 0, q)
        for e, c in self._coeffs.items():
            if e % 2:
                raise exceptions.OddHalfPower(
                    f'u^{e} has no value at v = sqrt({q})')
            total = total + QuadNum.sqrt_power(q, e // 2) * c
        return total


def _format_power(e: int) -> str:
    if e == 0:
        return '1'
    if e % 2:
        return 'u' if e == 1 else f'u^{e}'
    m = e // 2
    return 'v' if m == 1 else f'v^{m}'


class FieldElem:
    """Element of Q(u), u² = v.

    Backed by a sympy rational function, which is kept in lowest terms after
    every operation, so equality of normal forms is equality of elements.
    """

    __slots__ = ('_f',)

    def __init__(self, value: Union['FieldElem', FracElement, int,
                                    Fraction] = 0):
        if isinstance(value, FieldElem):
            self._f = value._f
        elif isinstance(value, FracElement):
            self._f = value
        elif isinstance(value, Fraction):
            self._f = FIELD(QQ(value.numerator, value.denominator))
        elif isinstance(value, int):
            self._f = FIELD(value)
        else:
            raise TypeError(f'Cannot make a scalar from {value!r}')

    @classmethod
    def from_laurent(cls, num: LaurentPoly,
                     den: Optional[LaurentPoly] = None) -> 'FieldElem':
        if den is None:
            return cls(num.to_frac())
        if den.is_zero():
            raise exceptions.DivisionByZero('zero denominator')
        return cls(num.to_frac() / den.to_frac())

    @classmethod
    def u_power(cls, e: int) -> 'FieldElem':
        return cls(_U_GEN ** e)

    @classmethod
    def v_power(cls, m: int) -> 'FieldElem':
        return cls(_U_GEN ** (2 * m))

    @property
    def frac(self) -> FracElement:
        return self._f

    def _parts(self) -> Tuple[LaurentPoly, LaurentPoly]:
        numer, denom = self._f.numer, self._f.denom
        if not numer:
            return LaurentPoly(), LaurentPoly({0: 1})
        n_low = min(e for (e,), _ in numer.terms())
        d_low = min(e for (e,), _ in denom.terms())
        lead = _to_fraction(denom.LC)
        shift = n_low - d_low
        num = LaurentPoly({e - n_low + shift: _to_fraction(c) / lead
                           for (e,), c in numer.terms()})
        den = LaurentPoly({e - d_low: _to_fraction(c) / lead
                           for (e,), c in denom.terms()})
        return num, den

    @property
    def num(self) -> LaurentPoly:
        """Numerator, for the denominator normalized as in :attr:`den`."""
        return self._parts()[0]

    @property
    def den(self) -> LaurentPoly:
        """Denominator: monic, lowest u-exponent zero."""
        return self._parts()[1]

    def monomial(self) -> Optional[Tuple[Fraction, int]]:
        """Return (c, e) if this element is c·u^e, else None."""
        num, den = self._parts()
        if den != LaurentPoly({0: 1}) or len(num.coeffs) != 1:
            return None
        (e, c), = num.coeffs.items()
        return c, e

    def is_zero(self) -> bool:
        return not self._f

    def is_even(self) -> bool:
        """Whether the element lies in Q(v)."""
        num, den = self._parts()
        return all(e % 2 == 0 for e in num.coeffs) and \
            all(e % 2 == 0 for e in den.coeffs)

    def inv(self) -> 'FieldElem':
        if not self._f:
            raise exceptions.DivisionByZero('inverse of zero')
        return FieldElem(1 / self._f)

    def __bool__(self):
        return bool(self._f)

    def __add__(self, other: Scalar) -> 'FieldElem':
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return FieldElem(self._f + other._f)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> 'FieldElem':
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return FieldElem(self._f - other._f)

    def __rsub__(self, other: Scalar) -> 'FieldElem':
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return FieldElem(other._f - self._f)

    def __neg__(self) -> 'FieldElem':
        return FieldElem(-self._f)

    def __mul__(self, other: Scalar) -> 'FieldElem':
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return FieldElem(self._f * other._f)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> 'FieldElem':
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other: Scalar) -> 'FieldElem':
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, n: int) -> 'FieldElem':
        if n < 0:
            return self.inv() ** (-n)
        return FieldElem(self._f ** n)

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._f == other._f

    def __hash__(self):
        return hash(self._f)

    def __repr__(self):
        return f'FieldElem({format_scalar(self)!r})'

    def __str__(self):
        return format_scalar(self)


def _coerce(value) -> Optional[FieldElem]:
    if isinstance(value, FieldElem):
        return value
    if isinstance(value, (int, Fraction)):
        return FieldElem(value)
    return None


ZERO = FieldElem(0)
ONE = FieldElem(1)
U = FieldElem.u_power(1)
V = FieldElem.v_power(1)


class QuadNum:
    """Exact number a + b·sqrt(q) with rational a, b and non-square q."""

    __slots__ = ('a', 'b', 'q')

    def __init__(self, a: Rational, b: Rational, q: int):
        if q < 2 or math.isqrt(q) ** 2 == q:
            raise ValueError(f'q must be a positive non-square, got {q}')
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.q = q

    @classmethod
    def sqrt_power(cls, q: int, k: int) -> 'QuadNum':
        """sqrt(q) to the integer power k."""
        if k % 2 == 0:
            return cls(Fraction(q) ** (k // 2), 0, q)
        return cls(0, Fraction(q) ** ((k - 1) // 2), q)

    def _check(self, other: 'QuadNum'):
        if self.q != other.q:
            raise ValueError(f'Mixing sqrt({self.q}) and sqrt({other.q})')

    def _lift(self, other) -> Optional['QuadNum']:
        if isinstance(other, QuadNum):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return QuadNum(other, 0, self.q)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return QuadNum(self.a + other.a, self.b + other.b, self.q)

    __radd__ = __add__

    def __neg__(self):
        return QuadNum(-self.a, -self.b, self.q)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return QuadNum(self.a * other.a + self.b * other.b * self.q,
                       self.a * other.b + self.b * other.a, self.q)

    __rmul__ = __mul__

    def inv(self) -> 'QuadNum':
        norm = self.a * self.a - self.b * self.b * self.q
        if not norm:
            raise exceptions.DivisionByZero('inverse of zero')
        return QuadNum(self.a / norm, -self.b / norm, self.q)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        result = QuadNum(1, 0, self.q)
        for _ in range(n):
            result = result * self
        return result

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, QuadNum):
            return (self.a, self.b, self.q) == (other.a, other.b, other.q)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.q))

    def __repr__(self):
        return f'QuadNum({self.a!s}, {self.b!s}, {self.q})'

    def __str__(self):
        if not self.b:
            return str(self.a)
        root = f'sqrt({self.q})' if self.b == 1 else f'{self.b}*sqrt({self.q})'
        if not self.a:
            return root
        return f'{self.a} + {root}'

    def to_json(self) -> Tuple[str, str]:
        return str(self.a), str(self.b)


def field_ops(x: FieldElem, y: Optional[FieldElem] = None,
              op: str = 'add') -> FieldElem:
    """Apply one of the field operations add, mul, neg, inv.

    Raises:
        DivisionByZero: on inv of zero.
        ValueError: on an unknown operation or a missing second operand.
    """
    if op == 'neg':
        return -x
    if op == 'inv':
        return x.inv()
    if y is None:
        raise ValueError(f'{op} needs two operands')
    if op == 'add':
        return x + y
    if op == 'mul':
        return x * y
    raise ValueError(f'Unknown field operation {op!r}')


def specialize(x: FieldElem, q: int) -> QuadNum:
    """Evaluate x at v = sqrt(q).

    Raises:
        OddHalfPower: if x does not lie in Q(v).
        PoleAtSqrtQ: if the denominator vanishes at sqrt(q).
    """
    num, den = x.num, x.den
    if not x.is_even():
        raise exceptions.OddHalfPower(f'{x} involves odd powers of u')
    den_value = den.evaluate_at_sqrt(q)
    if not den_value:
        raise exceptions.PoleAtSqrtQ(f'{x} has a pole at v = sqrt({q})')
    return num.evaluate_at_sqrt(q) / den_value


def sqrt_unit(s: FieldElem) -> FieldElem:
    """Square root of a scalar ±v^m in Q(u).

    Returns u^m for s = v^m, the root with positive leading coefficient.

    Raises:
        NotASquare: if s is not +v^m (in particular for -v^m).
    """
    mono = s.monomial()
    if mono is None:
        raise exceptions.NotASquare(f'{s} is not of the form ±v^m')
    c, e = mono
    if c == -1:
        raise exceptions.NotASquare(f'{s} has no square root in Q(u)')
    if c != 1 or e % 2:
        raise exceptions.NotASquare(f'{s} is not of the form ±v^m')
    return FieldElem.u_power(e // 2)


def qint(n: int) -> FieldElem:
    """Quantum integer [n] = (v^n - v^-n)/(v - v^-1)."""
    return (FieldElem.v_power(n) - FieldElem.v_power(-n)) / (V - V.inv())


def qfactorial(n: int) -> FieldElem:
    result = ONE
    for k in range(1, n + 1):
        result = result * qint(k)
    return result


def qbinom(n: int, r: int) -> FieldElem:
    """Quantum binomial coefficient [n; r]."""
    if r < 0 or r > n:
        return ZERO
    return qfactorial(n) / (qfactorial(r) * qfactorial(n - r))


def parse_scalar(text: str) -> FieldElem:
    """Parse a scalar written in v and u (u² = v).

    Accepts integers, rationals, ``+ - * /``, ``^`` or ``**`` and
    parentheses, e.g. ``-v^-2``, ``u^3``, ``(v^2 - 1)/(v)``.

    Raises:
        ValueError: if the text is not a rational function of u and v.
    """
    try:
        expr = sympy.sympify(
            text, locals={'v': _V_SYMBOL, 'u': _U_SYMBOL})
    except (sympy.SympifyError, SyntaxError, TypeError) as e:
        raise ValueError(f'Cannot parse scalar {text!r}') from e
    expr = expr.subs(_V_SYMBOL, _U_SYMBOL ** 2)
    if expr.free_symbols - {_U_SYMBOL}:
        raise ValueError(f'Unknown symbols in scalar {text!r}')
    return FieldElem(FIELD.from_expr(expr))


def format_scalar(x: FieldElem) -> str:
    """Text form of a scalar; :func:`parse_scalar` reads it back."""
    num, den = x.num, x.den
    if den == LaurentPoly({0: 1}):
        return str(num)
    return f'({num})/({den})'
