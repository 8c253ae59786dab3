"""Monomial bases of homogeneous forms, first-order jets, binary forms."""

from dataclasses import dataclass
from math import comb

from .errors import InvalidInputError, UnsupportedCharacteristicError
from .fields import QQ, field_of


def dim_forms(n, d):
    """Dimension of the space of degree-d forms in n+1 variables."""
    return comb(n + d, n)


def _exponents(nvars, d):
    # x0 heaviest: larger leading exponents come first
    if nvars == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in _exponents(nvars - 1, d - a):
            yield (a,) + rest


@dataclass(frozen=True)
class MonomialBasis:
    n: int
    d: int
    monomials: tuple

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def index(self, exponent):
        return self.monomials.index(tuple(exponent))


def monomial_basis(n, d):
    """Graded-lex basis of degree-d monomials in x0..xn, x0^d first."""
    if n < 1 or d < 0:
        raise InvalidInputError(f"need n >= 1 and d >= 0, got n={n}, d={d}")
    return MonomialBasis(n, d, tuple(_exponents(n + 1, d)))


def eval_monomial(exponent, p):
    out = 1
    for a, x in zip(exponent, p):
        if a:
            out = out * x ** a
    if isinstance(out, int):
        out = field_of(p[0])(out) if p else QQ(out)
    return out


def monomial_gradient(exponent, p):
    """All first partials of x^exponent at p; no characteristic check."""
    F = field_of(p[0])
    grad = []
    for s, a in enumerate(exponent):
        if a == 0:
            grad.append(F.zero)
            continue
        lowered = list(exponent)
        lowered[s] -= 1
        grad.append(F(a) * eval_monomial(lowered, p))
    return tuple(grad)


def check_characteristic(char, d):
    if char and d % char == 0:
        raise UnsupportedCharacteristicError(
            f"characteristic {char} divides the degree {d}; the value condition "
            "is no longer implied by the partial derivatives")


def jet_row(monomial, p):
    """Partial derivatives (d/dx_0, ..., d/dx_n) of a monomial at p.

    The value condition is dropped: by Euler's relation it is a combination
    of the partials whenever the characteristic does not divide the degree.
    """
    monomial = tuple(monomial)
    p = tuple(p)
    if len(monomial) != len(p):
        raise InvalidInputError("monomial and point live in different spaces")
    check_characteristic(field_of(p[0]).characteristic, sum(monomial))
    return monomial_gradient(monomial, p)


@dataclass(frozen=True)
class BinaryForm:
    """Form of degree ``degree`` in (t, u); coeffs[j] multiplies t^(e-j) u^j."""

    degree: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1:
            raise InvalidInputError(
                f"binary form of degree {self.degree} needs {self.degree + 1} coefficients")

    @classmethod
    def monomial(cls, degree, j, field=QQ):
        return cls(degree, tuple(field.one if i == j else field.zero
                                 for i in range(degree + 1)))

    @property
    def field(self):
        return field_of(self.coeffs[0])

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __call__(self, t, u):
        if u == 1:
            acc = self.field.zero
            for c in self.coeffs:
                acc = acc * t + c
            return acc
        e = self.degree
        tp, up = [1], [1]
        for _ in range(e):
            tp.append(tp[-1] * t)
            up.append(up[-1] * u)
        acc = self.field.zero
        for j, c in enumerate(self.coeffs):
            if c:
                acc = acc + c * tp[e - j] * up[j]
        return acc

    def __mul__(self, other):
        zero = self.field.zero
        out = [zero] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return BinaryForm(self.degree + other.degree, tuple(out))

    def __add__(self, other):
        if other.degree != self.degree:
            raise InvalidInputError("adding binary forms of different degree")
        return BinaryForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c):
        return BinaryForm(self.degree, tuple(c * a for a in self.coeffs))

    def d_dt(self):
        e = self.degree
        if e == 0:
            return BinaryForm(0, (self.field.zero,))
        return BinaryForm(e - 1, tuple((e - j) * self.coeffs[j] for j in range(e)))

    def d_du(self):
        e = self.degree
        if e == 0:
            return BinaryForm(0, (self.field.zero,))
        return BinaryForm(e - 1, tuple(j * self.coeffs[j] for j in range(1, e + 1)))

    def power(self, k):
        out = BinaryForm(0, (self.field.one,))
        for _ in range(k):
            out = out * self
        return out


def compose_with_rational_curve(basis, curve):
    """Pull every basis monomial back along the curve's parametrization.

    Returns one BinaryForm of degree e*d per monomial, in basis order.
    """
    comps = curve.components
    if len(comps) != basis.n + 1:
        raise InvalidInputError(
            f"curve lives in P^{len(comps) - 1}, basis in P^{basis.n}")
    cache = {}

    def pw(i, a):
        if (i, a) not in cache:
            cache[(i, a)] = comps[i] if a == 1 else pw(i, a - 1) * comps[i]
        return cache[(i, a)]

    out = []
    for exponent in basis:
        form = BinaryForm(0, (comps[0].field.one,))
        for i, a in enumerate(exponent):
            if a:
                form = form * pw(i, a)
        out.append(form)
    return out
