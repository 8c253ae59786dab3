"""Rational curves and smooth plane cubics.

Rational curves are given by N+1 binary forms of a common degree e.  Their
curve-level conditions matrices encode the length-2 subscheme that a double
point cuts on the curve: a value and one derivative in the affine chart of
P^1 containing the parameter.

Plane cubics are short Weierstrass curves y^2 z = x^3 + a x z^2 + b z^3 with
their chord-tangent group law (identity O = (0:1:0)).  Three points are
collinear iff they sum to O, which turns linear equivalence of divisors cut
by forms into an equation in the group.
"""

from dataclasses import dataclass

from .errors import (InvalidInputError, PointCollisionError,
                     UnsupportedCharacteristicError)
from .exact_linalg import Matrix, RankStrategy, rank, row_space_basis
from .fields import QQ, PrimeField, field_from_json, field_of
from .polyspace import (BinaryForm, compose_with_rational_curve, eval_monomial,
                        monomial_basis, monomial_gradient)
from .terracini_core import ProjectivePoint, DEFAULT_BOUND


# -- rational curves ---------------------------------------------------------

def _poly_gcd_degree(polys, field):
    """Degree of the gcd of univariate polynomials (coefficient lists,
    highest degree first)."""

    def strip(p):
        i = 0
        while i < len(p) and p[i] == 0:
            i += 1
        return p[i:]

    def rem(a, b):
        a = list(a)
        while a and len(a) >= len(b):
            f = a[0] / b[0]
            padded = list(b) + [0] * (len(a) - len(b))
            a = strip([x - f * y for x, y in zip(a, padded)])
        return a

    g = []
    for p in polys:
        p = strip(list(p))
        if not p:
            continue
        if not g:
            g = p
            continue
        a, b = g, p
        while b:
            a, b = b, rem(a, b)
        g = a
    return len(g) - 1 if g else -1


def normalize_parameter(t, u, field=None):
    """Representative (t/u, 1) or (1, 0) of a point of P^1."""
    F = field or field_of(t)
    t, u = F(t), F(u)
    if u != 0:
        return (t / u, F.one)
    if t == 0:
        raise InvalidInputError("(0, 0) is not a point of P^1")
    return (F.one, F.zero)


class RationalCurve:
    """Map P^1 -> P^N given by N+1 binary forms of one degree."""

    def __init__(self, components):
        comps = tuple(components)
        if len(comps) < 2:
            raise InvalidInputError("a rational curve needs at least two components")
        e = comps[0].degree
        if any(c.degree != e for c in comps):
            raise InvalidInputError("components must share one degree")
        if all(c.is_zero() for c in comps):
            raise InvalidInputError("all components are zero")
        F = comps[0].field
        if any(c.field != F for c in comps):
            raise InvalidInputError("components over different fields")
        if all(c.coeffs[0] == 0 for c in comps) or \
                _poly_gcd_degree([c.coeffs for c in comps], F) > 0:
            raise InvalidInputError("components have a common factor; remove it first")
        self.components = comps
        self.degree = e
        self.N = len(comps) - 1
        self.field = F

    @classmethod
    def from_coefficients(cls, rows, field=QQ):
        return cls([BinaryForm(len(r) - 1, tuple(field(x) for x in r)) for r in rows])

    def point(self, t, u):
        coords = [c(t, u) for c in self.components]
        if all(x == 0 for x in coords):
            raise InvalidInputError(f"all components vanish at ({t}, {u})")
        return ProjectivePoint(coords)

    def coefficient_matrix(self):
        return Matrix([c.coeffs for c in self.components], self.field)

    def is_nondegenerate(self):
        return rank(self.coefficient_matrix()).rank == self.N + 1

    def to_json(self):
        F = self.field
        return {"type": "rational",
                "components": [[F.format(x) for x in c.coeffs] for c in self.components]}

    def __repr__(self):
        return f"RationalCurve(N={self.N}, degree={self.degree})"


def rational_normal_curve(dprime, field=QQ):
    """(t^d', t^(d'-1) u, ..., u^d') in P^d'."""
    if dprime < 1:
        raise InvalidInputError("d' must be >= 1")
    return RationalCurve([BinaryForm.monomial(dprime, j, field) for j in range(dprime + 1)])


def line_curve(n, field=QQ):
    """The coordinate line (t : u : 0 : ... : 0) in P^n."""
    zero = BinaryForm(1, (field.zero, field.zero))
    return RationalCurve([BinaryForm.monomial(1, 0, field), BinaryForm.monomial(1, 1, field)]
                         + [zero] * (n - 1))


def _composed(curve, m):
    return compose_with_rational_curve(monomial_basis(curve.N, m), curve)


def restriction_rank(curve, m, strategy=None):
    """Dimension of the image of degree-m forms restricted to the curve.

    Equals e*m + 1 exactly when the restricted linear series is complete.
    """
    if m < 1:
        raise InvalidInputError("m must be >= 1")
    forms = _composed(curve, m)
    return rank(Matrix([f.coeffs for f in forms], curve.field), strategy).rank


def curve_jet_conditions(curve, params, m):
    """Conditions imposed on the restricted degree-m system by double points.

    Columns are a basis of the restricted system (inside binary forms of
    degree e*m); rows 2i and 2i+1 are the value and the chart derivative at
    parameter i.  With a complete restriction there are e*m + 1 columns.
    """
    F = curve.field
    norm = [normalize_parameter(t, u, F) for t, u in params]
    if len(set(norm)) != len(norm):
        raise InvalidInputError("curve parameters must be pairwise distinct")
    for t, u in norm:
        curve.point(t, u)
    forms = _composed(curve, m)
    coeffs = Matrix([f.coeffs for f in forms], F)
    em = curve.degree * m
    basis = [BinaryForm(em, row) for row in row_space_basis(coeffs)]
    d_t = [b.d_dt() for b in basis]
    d_u = [b.d_du() for b in basis]
    rows = []
    for t, u in norm:
        deriv = d_t if u != 0 else d_u
        rows.append([b(t, u) for b in basis])
        rows.append([db(t, u) for db in deriv])
    return Matrix(rows, F, cols=len(basis))


def random_parameters(k, rng, field=QQ, bound=DEFAULT_BOUND):
    """k distinct points of P^1 with small integer (or uniform residue) coordinates."""
    out, seen = [], set()
    while len(out) < k:
        if isinstance(field, PrimeField):
            t, u = rng.randrange(field.p), rng.randrange(field.p)
        else:
            t, u = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if t == 0 and u == 0:
            continue
        par = normalize_parameter(t, u, field)
        if par not in seen:
            seen.add(par)
            out.append(par)
    return out


def curve_from_json(doc):
    """Decode ``{"type": "rnc", "dprime": ...}`` or ``{"type": "rational", ...}``
    or ``{"type": "weierstrass", ...}``."""
    kind = doc.get("type")
    F = field_from_json(doc.get("field", "Q"))
    if kind == "rnc":
        return rational_normal_curve(int(doc["dprime"]), F)
    if kind == "rational":
        return RationalCurve.from_coefficients(doc["components"], F)
    if kind == "weierstrass":
        return WeierstrassCurve(F(doc["a"]), F(doc["b"]), F)
    raise InvalidInputError(f"unknown curve type {kind!r}")


# -- plane cubics ------------------------------------------------------------

@dataclass(frozen=True)
class ECPoint:
    """A point of a Weierstrass cubic: affine (x, y), or O when x is None."""

    x: object = None
    y: object = None

    @property
    def is_infinity(self):
        return self.x is None

    def __repr__(self):
        return "O" if self.is_infinity else f"({self.x}, {self.y})"


O = ECPoint()


class WeierstrassCurve:
    """y^2 z = x^3 + a x z^2 + b z^3 over Q or F_p, characteristic not 2 or 3."""

    def __init__(self, a, b, field=None):
        F = field or field_of(a)
        if F.characteristic in (2, 3):
            raise UnsupportedCharacteristicError(
                "short Weierstrass form needs characteristic other than 2 and 3")
        self.a, self.b, self.field = F(a), F(b), F
        if 4 * self.a ** 3 + 27 * self.b ** 2 == 0:
            raise InvalidInputError("singular cubic: 4a^3 + 27b^2 = 0")

    def __repr__(self):
        return f"WeierstrassCurve(a={self.a}, b={self.b}, field={self.field!r})"

    def __eq__(self, other):
        return (isinstance(other, WeierstrassCurve) and self.field == other.field
                and self.a == other.a and self.b == other.b)

    def __hash__(self):
        return hash((self.a, self.b, self.field))

    def rhs(self, x):
        return x ** 3 + self.a * x + self.b

    def contains(self, P):
        if P.is_infinity:
            return True
        return P.y ** 2 == self.rhs(P.x)

    def point(self, x, y):
        P = ECPoint(self.field(x), self.field(y))
        if not self.contains(P):
            raise InvalidInputError(f"{P} is not on {self}")
        return P

    def points(self):
        """All points (small prime fields only)."""
        if not isinstance(self.field, PrimeField):
            raise InvalidInputError("point enumeration needs a finite field")
        out = [O]
        for x in self.field.elements():
            r = self.field.sqrt(self.rhs(x))
            if r is None:
                continue
            out.append(ECPoint(x, r))
            if r != 0:
                out.append(ECPoint(x, -r))
        return out

    def two_torsion(self):
        """Points T with 2T = O that are defined over the base field."""
        out = [O]
        if isinstance(self.field, PrimeField):
            out.extend(ECPoint(x, self.field.zero) for x in self.field.elements()
                       if self.rhs(x) == 0)
        return out

    def homogeneous(self, P):
        F = self.field
        return (F.zero, F.one, F.zero) if P.is_infinity else (P.x, P.y, F.one)

    def gradient(self, coords):
        """Gradient of y^2 z - x^3 - a x z^2 - b z^3."""
        x, y, z = coords
        a, b = self.a, self.b
        return (-3 * x ** 2 - a * z ** 2,
                2 * y * z,
                y ** 2 - 2 * a * x * z - 3 * b * z ** 2)

    def to_json(self):
        F = self.field
        return {"type": "weierstrass", "a": F.format(self.a), "b": F.format(self.b),
                "field": F.to_json()}


def _check(C, *pts):
    for P in pts:
        if not C.contains(P):
            raise InvalidInputError(f"{P} is not on {C}")


def ec_neg(C, P):
    _check(C, P)
    return P if P.is_infinity else ECPoint(P.x, -P.y)


def ec_add(C, P, Q):
    """Chord-tangent sum."""
    _check(C, P, Q)
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        if P.y + Q.y == 0:
            return O
        lam = (3 * P.x ** 2 + C.a) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam ** 2 - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return ECPoint(x3, y3)


def ec_sub(C, P, Q):
    return ec_add(C, P, ec_neg(C, Q))


def ec_scalar_mul(C, k, P):
    if k < 0:
        return ec_scalar_mul(C, -k, ec_neg(C, P))
    acc, base = O, P
    while k:
        if k & 1:
            acc = ec_add(C, acc, base)
        base = ec_add(C, base, base)
        k >>= 1
    return acc


def ec_sum(C, points):
    acc = O
    for P in points:
        acc = ec_add(C, acc, P)
    return acc


def ec_solve_last_point(C, prefix, target=O):
    """The point p_k with p_1 + ... + p_k = target, target 2-torsion.

    Then 2(p_1 + ... + p_k) = O, i.e. the divisor 2S is cut on C by a form
    of degree 2k/3.  Raises PointCollisionError when p_k repeats a prefix
    point, so the caller can resample.
    """
    if not ec_scalar_mul(C, 2, target).is_infinity:
        raise InvalidInputError(f"target {target} is not 2-torsion")
    prefix = list(prefix)
    last = ec_sub(C, target, ec_sum(C, prefix))
    if last in prefix:
        raise PointCollisionError(f"forced point {last} repeats a prefix point")
    return last


def cubic_tangent_direction(C, P):
    """A vector t, not proportional to P, with grad F(P) . t = 0."""
    _check(C, P)
    F = C.field
    if P.is_infinity:
        # gradient at (0:1:0) is (0, 0, 1)
        return (F.one, F.zero, F.zero)
    gx, gy, _ = C.gradient(C.homogeneous(P))
    # z-component 0 keeps t off the line through P; (gx, gy) != 0 by smoothness
    return (gy, -gx, F.zero)


EC_MULTIPLE_BOUND = 8


def random_ec_point(C, rng, base=None, bound=EC_MULTIPLE_BOUND):
    """Random point: random x with a square root over F_p, random multiple
    j*base with |j| <= bound over Q (heights grow like j^2)."""
    if isinstance(C.field, PrimeField):
        while True:
            x = C.field(rng.randrange(C.field.p))
            r = C.field.sqrt(C.rhs(x))
            if r is None:
                continue
            return ECPoint(x, r if rng.random() < 0.5 else -r)
    if base is None:
        raise InvalidInputError("sampling over Q needs a base point")
    while True:
        P = ec_scalar_mul(C, rng.randint(-bound, bound), base)
        if not P.is_infinity:
            return P


def random_ec_points(C, k, rng, base=None, bound=EC_MULTIPLE_BOUND):
    out = []
    while len(out) < k:
        P = random_ec_point(C, rng, base, bound)
        if P not in out:
            out.append(P)
    return out


def cubic_conditions_matrix(C, S, dprime):
    """Conditions imposed by 2S (on C) on degree-d' plane forms.

    For each point: the values of all monomials, then their derivatives along
    the tangent direction.  Multiples of the cubic satisfy both rows, so the
    rank equals the rank of the conditions on H^0(O_C(d')) (dimension 3d').
    """
    if dprime < 1:
        raise InvalidInputError("d' must be >= 1")
    S = list(S)
    _check(C, *S)
    if len(set(S)) != len(S):
        raise InvalidInputError("points of S must be pairwise distinct")
    basis = monomial_basis(2, dprime)
    rows = []
    for P in S:
        p = C.homogeneous(P)
        t = cubic_tangent_direction(C, P)
        rows.append([eval_monomial(m, p) for m in basis])
        rows.append([sum((g * ti for g, ti in zip(monomial_gradient(m, p), t)), C.field.zero)
                     for m in basis])
    return Matrix(rows, C.field, cols=len(basis))


def cubic_membership_rank(C, S, dprime, strategy=None):
    return rank(cubic_conditions_matrix(C, S, dprime), strategy or RankStrategy())
