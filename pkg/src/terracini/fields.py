"""Exact base fields: the rationals and prime fields.

Rationals are plain :class:`fractions.Fraction` values.  Prime-field
residues are :class:`Fp` instances that carry their modulus, so mixing two
different primes is caught at the arithmetic level.
"""

from fractions import Fraction
from functools import lru_cache
import numbers

from sympy import isprime
from sympy.ntheory import sqrt_mod

from .errors import InvalidInputError, ReductionError


class Fp:
    """An element of the prime field F_p."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise InvalidInputError(
                    f"cannot mix residues mod {self.p} and mod {other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return _fraction_mod(other, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Fp(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Fp(o, self.p) / self

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, e):
        if e < 0:
            return Fp(pow(self.value, -1, self.p), self.p) ** (-e)
        return Fp(pow(self.value, e, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self._coerce(other)
            except ReductionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Fp({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


def _fraction_mod(x, p):
    den = x.denominator % p
    if den == 0:
        raise ReductionError(f"denominator of {x} is divisible by {p}")
    return x.numerator * pow(den, -1, p) % p


def parse_rational(text):
    """Parse ``"7"``, ``"-3/4"`` (or an int) into a Fraction."""
    if isinstance(text, bool):
        raise InvalidInputError(f"not a number: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise InvalidInputError(f"coordinates must be integer or 'a/b' strings, got {text!r}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise InvalidInputError(f"bad rational literal {text!r}") from None


class RationalField:
    """The field Q."""

    characteristic = 0
    name = "Q"

    def __call__(self, x):
        if isinstance(x, Fp):
            raise InvalidInputError("prime-field residue used where a rational was expected")
        return parse_rational(x)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def contains(self, x):
        return isinstance(x, (int, Fraction)) and not isinstance(x, bool)

    def to_json(self):
        return "Q"

    def format(self, x):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The field F_p for a prime p."""

    def __init__(self, p):
        if not isinstance(p, numbers.Integral) or p < 2 or not isprime(int(p)):
            raise InvalidInputError(f"modulus {p!r} is not prime")
        self.p = int(p)
        self.characteristic = self.p
        self.name = f"F_{self.p}"

    def __call__(self, x):
        if isinstance(x, Fp):
            if x.p != self.p:
                raise InvalidInputError(f"residue mod {x.p} used in F_{self.p}")
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return Fp(x, self.p)
        return Fp(_fraction_mod(parse_rational(x), self.p), self.p)

    @property
    def zero(self):
        return Fp(0, self.p)

    @property
    def one(self):
        return Fp(1, self.p)

    def contains(self, x):
        return isinstance(x, Fp) and x.p == self.p

    def sqrt(self, x):
        """A square root of ``x`` or None when ``x`` is a non-residue."""
        x = self(x)
        if x.value == 0:
            return self.zero
        r = sqrt_mod(x.value, self.p)
        return None if r is None else Fp(r, self.p)

    def elements(self):
        return (Fp(i, self.p) for i in range(self.p))

    def to_json(self):
        return {"Fp": self.p}

    def format(self, x):
        return str(int(x))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p):
    return PrimeField(p)


def field_from_json(spec):
    """Decode ``"Q"`` or ``{"Fp": p}``."""
    if spec in ("Q", "q", "QQ", None):
        return QQ
    if isinstance(spec, dict) and set(spec) == {"Fp"}:
        return GF(int(spec["Fp"]))
    raise InvalidInputError(f"unknown field specification {spec!r}")


def field_of(x):
    """Field an individual scalar lives in."""
    if isinstance(x, Fp):
        return GF(x.p)
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return QQ
    raise InvalidInputError(f"{x!r} is not an exact scalar")
