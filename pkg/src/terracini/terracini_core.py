"""Terracini matrices of point sets under the Veronese embedding.

For S = {p_1, ..., p_k} in P^n and degree d, the Terracini matrix stacks,
for each point, the n+1 partial derivatives of every degree-d monomial.
Its row span is the span of the (affine cones over the) tangent spaces of
nu_d(P^n) at the points, so with ``r`` its rank

    h^0(I_{2S}(d)) = C(n+d, n) - r      and      h^1(I_{2S}(d)) = k(n+1) - r.

S lies in the k-th Terracini locus iff both are positive.
"""

from dataclasses import dataclass

from .errors import InvalidInputError
from .exact_linalg import Matrix, RankStrategy, rank
from .fields import QQ, PrimeField, field_from_json, field_of
from .polyspace import check_characteristic, dim_forms, monomial_basis, monomial_gradient
from .reports import ProbeReport, trial_rng

DEFAULT_BOUND = 100


class ProjectivePoint:
    """Point of P^n, normalized so the first nonzero coordinate is 1."""

    __slots__ = ("coords",)

    def __init__(self, coords, field=None):
        coords = tuple(coords)
        if field is not None:
            coords = tuple(field(x) for x in coords)
        elif coords:
            F = field_of(coords[0])
            coords = tuple(F(x) for x in coords)
        lead = next((x for x in coords if x != 0), None)
        if lead is None:
            raise InvalidInputError("all homogeneous coordinates are zero")
        self.coords = tuple(x / lead for x in coords)

    @property
    def n(self):
        return len(self.coords) - 1

    @property
    def field(self):
        return field_of(self.coords[0])

    def __eq__(self, other):
        return isinstance(other, ProjectivePoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __repr__(self):
        return "(" + ":".join(str(x) for x in self.coords) + ")"

    def to_json(self):
        F = self.field
        return [F.format(x) for x in self.coords]


class PointSet:
    """Finite configuration of pairwise distinct points in one P^n."""

    def __init__(self, points, field=None):
        pts = tuple(p if isinstance(p, ProjectivePoint) else ProjectivePoint(p, field)
                    for p in points)
        if not pts:
            raise InvalidInputError("a point set needs at least one point")
        n = pts[0].n
        F = pts[0].field
        for p in pts:
            if p.n != n:
                raise InvalidInputError("points live in different projective spaces")
            if p.field != F:
                raise InvalidInputError("points have coordinates in different fields")
        if len(set(pts)) != len(pts):
            raise InvalidInputError("point set contains duplicate points")
        self.points = pts
        self.n = n
        self.field = F

    @property
    def k(self):
        return len(self.points)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def subset(self, indices):
        return PointSet([self.points[i] for i in indices])

    def __repr__(self):
        return f"PointSet(n={self.n}, k={self.k}, field={self.field!r})"

    def to_json(self):
        return {"n": self.n, "field": self.field.to_json(),
                "points": [p.to_json() for p in self.points]}

    @classmethod
    def from_json(cls, doc):
        """Build from ``{"n": int, "field": "Q" | {"Fp": p}, "points": [...]}``."""
        try:
            n = int(doc["n"])
            F = field_from_json(doc.get("field", "Q"))
            raw = doc["points"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"malformed point-set document: {exc}") from None
        pts = []
        for row in raw:
            if len(row) != n + 1:
                raise InvalidInputError(
                    f"point {row!r} does not have n+1 = {n + 1} coordinates")
            pts.append(ProjectivePoint([F(x) for x in row]))
        return cls(pts)


def jet_block(coords, basis):
    """The (n+1) x len(basis) block of partials at raw homogeneous coords."""
    cols = [monomial_gradient(m, coords) for m in basis]
    return [list(r) for r in zip(*cols)]


@dataclass(frozen=True)
class TerraciniMatrix:
    matrix: Matrix
    n: int
    d: int
    k: int

    @property
    def conditions(self):
        return self.k * (self.n + 1)

    @property
    def ambient_dim(self):
        return dim_forms(self.n, self.d)

    def point_rows(self, indices):
        """Sub-matrix of the row blocks of the given points."""
        step = self.n + 1
        rows = [i * step + s for i in indices for s in range(step)]
        return self.matrix.take_rows(rows)


def terracini_matrix(S, d):
    """Row block i holds d m_j / d x_s (p_i) at entry (i(n+1)+s, j)."""
    if d < 1:
        raise InvalidInputError("degree must be at least 1")
    if not isinstance(S, PointSet):
        S = PointSet(S)
    check_characteristic(S.field.characteristic, d)
    basis = monomial_basis(S.n, d)
    rows = []
    for p in S:
        rows.extend(jet_block(p.coords, basis))
    return TerraciniMatrix(Matrix(rows, S.field, cols=len(basis)), S.n, d, S.k)


@dataclass(frozen=True)
class MembershipVerdict:
    rank: int
    conditions: int
    ambient_dim: int
    h0_positive: bool
    h1_positive: bool
    member: bool
    certified: bool
    characteristic: int
    method: str = "fraction-free"
    primes_used: tuple = ()

    @property
    def h0(self):
        return self.ambient_dim - self.rank

    @property
    def h1(self):
        return self.conditions - self.rank

    def to_dict(self):
        return {
            "rank": self.rank,
            "conditions": self.conditions,
            "ambient_dim": self.ambient_dim,
            "h0": self.h0,
            "h1": self.h1,
            "h0_positive": self.h0_positive,
            "h1_positive": self.h1_positive,
            "member": self.member,
            "certified": self.certified,
            "characteristic": self.characteristic,
            "method": self.method,
            "primes_used": list(self.primes_used),
        }


def verdict_from_rank(report, conditions, ambient_dim, characteristic):
    r = report.rank
    return MembershipVerdict(
        rank=r, conditions=conditions, ambient_dim=ambient_dim,
        h0_positive=r < ambient_dim, h1_positive=r < conditions,
        member=r < min(conditions, ambient_dim), certified=report.certified,
        characteristic=characteristic, method=report.method,
        primes_used=tuple(report.primes_used))


def membership(S, d, strategy=None):
    """Decide whether S lies in the Terracini locus of nu_d(P^n)."""
    T = terracini_matrix(S, d)
    strategy = (strategy or RankStrategy()).excluding(d)
    rep = rank(T.matrix, strategy)
    return verdict_from_rank(rep, T.conditions, T.ambient_dim,
                             T.matrix.field.characteristic)


def random_point(n, rng, field=QQ, bound=DEFAULT_BOUND):
    """Integer coordinates uniform in [-bound, bound] (uniform residues over F_p)."""
    while True:
        if isinstance(field, PrimeField):
            coords = [rng.randrange(field.p) for _ in range(n + 1)]
        else:
            coords = [rng.randint(-bound, bound) for _ in range(n + 1)]
        if any(coords):
            return ProjectivePoint([field(c) for c in coords])


def random_point_set(n, k, rng, field=QQ, bound=DEFAULT_BOUND):
    pts = []
    seen = set()
    while len(pts) < k:
        p = random_point(n, rng, field, bound)
        if p not in seen:
            seen.add(p)
            pts.append(p)
    return PointSet(pts)


def ah_probe(n, d, k, trials, rng_seed, field=QQ, strategy=None, bound=DEFAULT_BOUND):
    """Sample k general points ``trials`` times and record Terracini ranks.

    The configuration is flagged defective when no trial reaches the
    expected generic rank min(k(n+1), C(n+d, n)).
    """
    if trials < 1:
        raise InvalidInputError("trials must be >= 1")
    expected = min(k * (n + 1), dim_forms(n, d))
    ranks, members = [], 0
    for t in range(trials):
        rng = trial_rng(rng_seed, f"ah:{n}:{d}:{k}", t)
        v = membership(random_point_set(n, k, rng, field, bound), d, strategy)
        ranks.append(v.rank)
        members += v.member
    defective = max(ranks) < expected
    summary = (f"defect flagged: max rank {max(ranks)} < {expected}" if defective
               else f"no defect: generic rank {expected} reached")
    params = {"n": n, "d": d, "k": k, "field": field.to_json(),
              "strategy": (strategy or RankStrategy()).to_dict()}
    return ProbeReport.from_ranks("ah", params, ranks, expected, members,
                                  summary, rng_seed, defective)
