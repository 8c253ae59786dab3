import random
from fractions import Fraction
from itertools import product

import pytest
import sympy

from terracini.curves import (O, ECPoint, RationalCurve, WeierstrassCurve,
                              cubic_conditions_matrix, cubic_tangent_direction,
                              curve_from_json, curve_jet_conditions, ec_add, ec_neg,
                              ec_scalar_mul, ec_solve_last_point, ec_sum, line_curve,
                              random_ec_points, random_parameters, rational_normal_curve,
                              restriction_rank)
from terracini.errors import InvalidInputError, PointCollisionError, UnsupportedCharacteristicError
from terracini.exact_linalg import rank_exact, rank_modular
from terracini.fields import GF, QQ
from terracini.polyspace import dim_forms

from conftest import sympy_rank


def oracle_curve_rank(curve, params, m):
    """Value and t-derivative of every composed monomial, built by sympy."""
    t, u = sympy.symbols("t u")
    xs = sympy.symbols(f"x0:{curve.N + 1}")
    phi = [sum(sympy.Rational(str(c)) * t ** (f.degree - j) * u ** j
               for j, c in enumerate(f.coeffs)) for f in curve.components]
    monos = sorted(sympy.itermonomials(xs, m, m), key=sympy.default_sort_key)
    composed = [sympy.expand(mm.subs(dict(zip(xs, phi)), simultaneous=True)) for mm in monos]
    rows = []
    for t0, u0 in params:
        t0, u0 = sympy.Rational(str(t0)), sympy.Rational(str(u0))
        if u0 != 0:
            g = [c.subs(u, 1) for c in composed]
            rows.append([x.subs(t, t0 / u0) for x in g])
            rows.append([sympy.diff(x, t).subs(t, t0 / u0) for x in g])
        else:
            g = [c.subs(t, 1) for c in composed]
            rows.append([x.subs(u, 0) for x in g])
            rows.append([sympy.diff(x, u).subs(u, 0) for x in g])
    return sympy.Matrix(rows).rank()


# -- rational curves ---------------------------------------------------------

def test_rational_normal_curve_shape():
    c = rational_normal_curve(1)
    assert [f.coeffs for f in c.components] == [(1, 0), (0, 1)]
    c3 = rational_normal_curve(3)
    assert len(c3.components) == 4 and c3.N == 3 and c3.degree == 3
    assert c3.point(Fraction(1), Fraction(1)).coords == (1, 1, 1, 1)
    assert c3.is_nondegenerate()


def test_common_factor_rejected():
    with pytest.raises(InvalidInputError):
        RationalCurve.from_coefficients([[0, 1, 0], [0, 0, 1]])  # u divides both
    with pytest.raises(InvalidInputError):
        RationalCurve.from_coefficients([[1, 0, -1], [0, 1, -1]])  # t - u divides both


def test_curve_jet_rnc_linear_forms():
    rng = random.Random(2)
    for dp in range(1, 7):
        c = rational_normal_curve(dp)
        for k in range(1, dp + 2):
            params = random_parameters(k, rng)
            mat = curve_jet_conditions(c, params, 1)
            assert mat.shape == (2 * k, dp + 1)
            assert rank_exact(mat) == min(2 * k, dp + 1)


def test_curve_jet_line_quartics():
    line = line_curve(2)
    params3 = [(Fraction(0), Fraction(1)), (Fraction(1), Fraction(0)), (Fraction(5), Fraction(1))]
    m3 = curve_jet_conditions(line, params3, 4)
    assert m3.shape == (6, 5)
    assert rank_exact(m3) == 5 == oracle_curve_rank(line, params3, 4)
    m2 = curve_jet_conditions(line, params3[:2], 4)
    assert rank_exact(m2) == 4 == oracle_curve_rank(line, params3[:2], 4)


def test_curve_jet_matches_oracle_on_incomplete_curve():
    c = RationalCurve.from_coefficients([[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 0, 0, 1]])
    rng = random.Random(6)
    for m in (1, 2):
        for k in (1, 2, 3, 4):
            params = random_parameters(k, rng, bound=9)
            mat = curve_jet_conditions(c, params, m)
            assert mat.cols == restriction_rank(c, m)
            assert rank_exact(mat) == oracle_curve_rank(c, params, m)


def test_curve_jet_errors():
    c = rational_normal_curve(3)
    with pytest.raises(InvalidInputError):
        curve_jet_conditions(c, [(Fraction(1), Fraction(2)), (Fraction(2), Fraction(4))], 1)


def test_restriction_rank_examples():
    for m in range(1, 13):
        assert restriction_rank(line_curve(2), m) == m + 1
    for dp in range(1, 5):
        for m in range(1, 4):
            assert restriction_rank(rational_normal_curve(dp), m) == dp * m + 1
    quartic = RationalCurve.from_coefficients([[1, 0, 0, 0, 0], [0, 1, 0, 0, 0],
                                               [0, 0, 0, 0, 1]])
    assert restriction_rank(quartic, 1) == 3


def test_rnc_curve_level_never_deficient():
    rng = random.Random(21)
    for _ in range(100):
        dp = rng.randint(1, 8)
        k = rng.randint(1, dp + 1)
        mat = curve_jet_conditions(rational_normal_curve(dp), random_parameters(k, rng), 1)
        assert rank_exact(mat) == min(2 * k, dp + 1)


def test_curve_json():
    c = curve_from_json({"type": "rnc", "dprime": 4})
    assert c.N == 4
    c = curve_from_json({"type": "rational", "components": [["1", "0"], ["0", "1"], ["1", "1"]]})
    assert c.N == 2 and c.degree == 1
    C = curve_from_json({"type": "weierstrass", "a": "1", "b": "1", "field": {"Fp": 5}})
    assert C == WeierstrassCurve(1, 1, GF(5))
    with pytest.raises(InvalidInputError):
        curve_from_json({"type": "hyperelliptic"})


# -- plane cubics ------------------------------------------------------------

E5 = WeierstrassCurve(1, 1, GF(5))


def test_curve_validation():
    with pytest.raises(InvalidInputError):
        WeierstrassCurve(0, 0, GF(7))
    with pytest.raises(UnsupportedCharacteristicError):
        WeierstrassCurve(1, 1, GF(3))
    with pytest.raises(InvalidInputError):
        E5.point(0, 2)


def test_identity_and_inverse():
    P = E5.point(0, 1)
    assert ec_add(E5, P, O) == P == ec_add(E5, O, P)
    assert ec_neg(E5, P) == E5.point(0, 4)
    assert ec_add(E5, P, ec_neg(E5, P)) == O


def _cubic_along_line(C, P, v):
    """Coefficients (s^0, s^1, s^2, s^3) of y^2 - x^3 - ax - b on P + s v."""
    K = C.field.p
    s = sympy.symbols("s")
    x = int(P.x) + s * v[0]
    y = int(P.y) + s * v[1]
    poly = sympy.Poly(sympy.expand(y ** 2 - x ** 3 - int(C.a) * x - int(C.b)), s)
    coeffs = poly.all_coeffs()[::-1] + [0] * 4
    return [int(c) % K for c in coeffs[:4]]


def test_doubling_over_f5():
    P = E5.point(0, 1)
    R = ec_scalar_mul(E5, 2, P)
    assert R == E5.point(4, 2)
    # brute-force: the line through P and -R is tangent at P
    minus_R = (4, -2 % 5)
    v = ((minus_R[0] - 0) % 5, (minus_R[1] - 1) % 5)
    c = _cubic_along_line(E5, P, v)
    assert c[0] == 0 and c[1] == 0          # double root at s = 0
    assert sum(c) % 5 == 0                  # root at s = 1, i.e. at -R


def test_group_axioms_exhaustive_f13():
    C = WeierstrassCurve(1, 1, GF(13))
    pts = C.points()
    assert all(C.contains(P) for P in pts)
    for P in pts:
        assert ec_add(C, P, O) == P
        assert ec_add(C, P, ec_neg(C, P)) == O
        for Q in pts:
            assert ec_add(C, P, Q) == ec_add(C, Q, P)
            assert C.contains(ec_add(C, P, Q))
    for P, Q, R in product(pts, repeat=3):
        assert ec_add(C, ec_add(C, P, Q), R) == ec_add(C, P, ec_add(C, Q, R))
    # the group order annihilates every point
    for P in pts:
        assert ec_scalar_mul(C, len(pts), P) == O


def test_associativity_random_triples_large_prime():
    C = WeierstrassCurve(1, 1, GF(10007))
    rng = random.Random(5)
    for _ in range(200):
        P, Q, R = random_ec_points(C, 3, rng)
        assert ec_add(C, ec_add(C, P, Q), R) == ec_add(C, P, ec_add(C, Q, R))


def test_solve_last_point_examples():
    P1, P2 = E5.point(0, 1), E5.point(2, 1)
    assert ec_solve_last_point(E5, [], O) == O
    p3 = ec_solve_last_point(E5, [P1, P2], O)
    assert p3 == ec_neg(E5, ec_add(E5, P1, P2))
    # independent check: on the line y = 1 the third intersection is x = 3
    assert p3 == E5.point(3, 1)
    assert ec_scalar_mul(E5, 2, ec_sum(E5, [P1, P2, p3])) == O


def test_solve_last_point_affine_two_torsion():
    C = WeierstrassCurve(-1, 0, GF(10007))   # y^2 = x^3 - x has full 2-torsion
    T = [Q for Q in C.two_torsion() if not Q.is_infinity]
    assert len(T) == 3
    rng = random.Random(1)
    prefix = random_ec_points(C, 4, rng)
    last = ec_solve_last_point(C, prefix, T[1])
    assert ec_sum(C, prefix + [last]) == T[1]
    with pytest.raises(InvalidInputError):
        ec_solve_last_point(C, prefix, prefix[0])


def test_solve_last_point_collision():
    P = E5.point(0, 1)
    # P + (-2P) + P = O forces the last point to repeat P
    with pytest.raises(PointCollisionError):
        ec_solve_last_point(E5, [P, ec_neg(E5, ec_scalar_mul(E5, 2, P))], O)


def test_tangent_direction():
    C = WeierstrassCurve(1, 1, GF(10007))
    rng = random.Random(3)
    for P in random_ec_points(C, 30, rng) + [O]:
        p = C.homogeneous(P)
        g = C.gradient(p)
        assert sum(a * b for a, b in zip(g, p)) == 0          # Euler, F(p) = 0
        t = cubic_tangent_direction(C, P)
        assert sum(a * b for a, b in zip(g, t)) == 0
        assert rank_modular(_rows(C, [p, t])) == 2           # not proportional


def _rows(C, vecs):
    from terracini.exact_linalg import Matrix
    return Matrix([list(v) for v in vecs], C.field)


def test_tangent_direction_f5_point():
    t = cubic_tangent_direction(E5, E5.point(0, 1))
    g = E5.gradient((E5.field(0), E5.field(1), E5.field(1)))
    assert [int(x) for x in g] == [4, 2, 3]
    assert sum(a * b for a, b in zip(g, t)) == 0


def test_cubic_conditions_shape_and_errors():
    C = WeierstrassCurve(1, 1, GF(10007))
    S = random_ec_points(C, 3, random.Random(0))
    for dp in (1, 2, 3):
        assert cubic_conditions_matrix(C, S, dp).shape == (6, dim_forms(2, dp))
    with pytest.raises(InvalidInputError):
        cubic_conditions_matrix(C, [ECPoint(C.field(0), C.field(2))], 2)
    with pytest.raises(InvalidInputError):
        cubic_conditions_matrix(C, [S[0], S[0]], 2)


def test_multiples_of_cubic_satisfy_conditions():
    # the cubic times any linear form lies in the kernel of every row
    C = WeierstrassCurve(1, 1, GF(10007))
    S = random_ec_points(C, 4, random.Random(8))
    M = cubic_conditions_matrix(C, S, 4)
    from terracini.polyspace import monomial_basis
    basis = monomial_basis(2, 4).monomials
    K = C.field
    cubic = {(0, 2, 1): K(1), (3, 0, 0): K(-1), (1, 0, 2): -C.a, (0, 0, 3): -C.b}
    for lin in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        vec = [K(0)] * len(basis)
        for e, c in cubic.items():
            vec[basis.index(tuple(a + b for a, b in zip(e, lin)))] += c
        for row in M:
            assert sum((a * b for a, b in zip(row, vec)), K(0)) == 0


def test_even_construction_rank_drop():
    C = WeierstrassCurve(1, 1, GF(10007))
    rng = random.Random(7)
    for dp in (2, 4, 6):
        k = 3 * dp // 2
        prefix = random_ec_points(C, k - 1, rng)
        S = prefix + [ec_solve_last_point(C, prefix, O)]
        M = cubic_conditions_matrix(C, S, dp)
        assert rank_modular(M) == sympy_rank(M) == min(2 * k, 3 * dp) - 1


def test_random_even_set_is_not_member():
    C = WeierstrassCurve(1, 1, GF(10007))
    rng = random.Random(9)
    for _ in range(20):
        S = random_ec_points(C, 3, rng)
        if ec_scalar_mul(C, 2, ec_sum(C, S)).is_infinity:
            continue
        assert rank_modular(cubic_conditions_matrix(C, S, 2)) == 6


def test_odd_degree_never_deficient():
    C = WeierstrassCurve(1, 1, GF(10007))
    rng = random.Random(10)
    for _ in range(100):
        dp = rng.choice((1, 3, 5))
        k = rng.randint(1, 3 * dp // 2 + 2)
        S = random_ec_points(C, k, rng)
        assert rank_modular(cubic_conditions_matrix(C, S, dp)) == min(2 * k, 3 * dp)


def test_rational_cubic_with_base_point():
    C = WeierstrassCurve(0, 17, QQ)
    B = C.point(-2, 3)
    rng = random.Random(4)
    prefix = random_ec_points(C, 2, rng, base=B)
    S = prefix + [ec_solve_last_point(C, prefix)]
    assert rank_exact(cubic_conditions_matrix(C, S, 2)) == 5
    with pytest.raises(InvalidInputError):
        random_ec_points(C, 1, rng)
