"""Certified non-empty Terracini loci, thresholds, and emptiness probes.

Two recipes produce members:

* points on a curve Y in P^n: once 2k exceeds the dimension of the degree-m
  system restricted to Y, the double points are dependent on Y, and a
  dependency on Y lifts to one on P^n (the restriction of the conditions
  matrices is surjective on cokernels).  If in addition k(n+1) is below the
  number of degree-m forms, S is in the Terracini locus of nu_m(P^n).
* even degree on a plane cubic: k = 3d'/2 points whose group sum is
  2-torsion satisfy 2S ~ d'H, so one form of degree d' cuts exactly 2S and
  the conditions drop rank by one.
"""

from dataclasses import dataclass, field

from .curves import (O, WeierstrassCurve, cubic_membership_rank, curve_jet_conditions,
                     ec_scalar_mul, ec_solve_last_point, ec_sum, line_curve,
                     random_ec_points, random_parameters, rational_normal_curve,
                     restriction_rank)
from .errors import (InvalidInputError, PointCollisionError, RefusalError,
                     RetryBudgetExhausted)
from .exact_linalg import RankStrategy, rank
from .fields import GF
from .polyspace import dim_forms
from .reports import SCHEMA, ProbeReport, trial_rng
from .terracini_core import PointSet, membership, verdict_from_rank

RETRY_BUDGET = 16
DEFAULT_ELLIPTIC_PRIME = 10007


@dataclass(frozen=True)
class ThresholdReport:
    n: int
    m: int
    e: int
    ambient_dim: int
    h0_restricted: int
    paper_k: int
    minimal_k: int
    k_max_span: int
    feasible: bool

    def to_dict(self):
        return {"schema": SCHEMA, "report": "thresholds", "n": self.n, "m": self.m,
                "e": self.e, "ambient_dim": self.ambient_dim,
                "h0_restricted": self.h0_restricted, "paper_k": self.paper_k,
                "minimal_k": self.minimal_k, "k_max_span": self.k_max_span,
                "feasible": self.feasible}

    csv_header = ("n", "m", "e", "ambient_dim", "h0_restricted", "paper_k",
                  "minimal_k", "k_max_span", "feasible")

    def csv_row(self):
        return {k: getattr(self, k) for k in self.csv_header}


def thresholds(n, m, e):
    """Exact dimension counts for k points on a degree-e curve in P^n, degree m.

    ``paper_k`` is ceil(h/2) + 1 and ``minimal_k`` = floor(h/2) + 1 (the
    first k with 2k > h), where h = e*m + 1 is the dimension of the complete
    restricted system.  The span bound is k(n+1) < C(n+m, n).
    """
    if n < 2:
        raise InvalidInputError("the curve construction needs n >= 2")
    if m < 1 or e < 1:
        raise InvalidInputError("need m >= 1 and e >= 1")
    if m < e + 1 - n:
        raise InvalidInputError(
            f"m = {m} < e + 1 - n = {e + 1 - n}: restriction need not be complete")
    M = dim_forms(n, m)
    h0 = e * m + 1
    minimal_k = h0 // 2 + 1
    k_max = (M - 1) // (n + 1)
    return ThresholdReport(n, m, e, M, h0, -(-h0 // 2) + 1, minimal_k, k_max,
                           minimal_k <= k_max)


@dataclass
class CertifiedExample:
    construction: str
    parameters: dict
    points: object
    verdict: object
    curve_rank: int
    curve_conditions: int
    curve_system_dim: int
    certified: bool
    curve: object = None
    ambient_rank: int = None
    ambient_conditions: int = None
    curve_points: list = field(default_factory=list)
    seed: int = None

    @property
    def curve_deficiency(self):
        return self.curve_conditions - self.curve_rank

    @property
    def ambient_deficiency(self):
        if self.ambient_rank is None:
            return None
        return self.ambient_conditions - self.ambient_rank

    def to_dict(self):
        d = {"schema": SCHEMA, "report": "certified-example",
             "construction": self.construction, "parameters": self.parameters,
             "seed": self.seed}
        if self.curve is not None:
            d["curve"] = self.curve.to_json()
        d["points"] = self.points.to_json() if hasattr(self.points, "to_json") else self.points
        if self.curve_points:
            d["curve_points"] = self.curve_points
        d["curve_level"] = {"rank": self.curve_rank, "conditions": self.curve_conditions,
                            "system_dim": self.curve_system_dim,
                            "deficiency": self.curve_deficiency}
        if self.ambient_rank is not None:
            d["ambient_level"] = {"rank": self.ambient_rank,
                                  "conditions": self.ambient_conditions,
                                  "deficiency": self.ambient_deficiency}
        d["verdict"] = self.verdict.to_dict()
        d["certified"] = self.certified
        return d


def construct_on_rational_curve(n, m, curve=None, k=None, seed=0, strategy=None):
    """Points on a rational curve in P^n forming a member of T_k(nu_m(P^n)).

    ``curve`` defaults to a coordinate line; ``k`` to the minimal value.
    Refuses (RefusalError) when k violates 2k > restricted dimension or the
    span bound k(n+1) < C(n+m, n).
    """
    curve = curve or line_curve(n)
    if curve.N != n:
        raise InvalidInputError(f"curve lives in P^{curve.N}, not P^{n}")
    th = thresholds(n, m, curve.degree)
    k = th.minimal_k if k is None else k
    h_restricted = restriction_rank(curve, m)
    if 2 * k <= h_restricted or k * (n + 1) >= th.ambient_dim:
        raise RefusalError(
            f"k = {k} is infeasible for (n, m, e) = ({n}, {m}, {curve.degree})", th)
    strategy = strategy or RankStrategy()
    for attempt in range(RETRY_BUDGET):
        rng = trial_rng(seed, f"rational:{n}:{m}:{k}", attempt)
        params = random_parameters(k, rng, curve.field)
        images = [curve.point(t, u) for t, u in params]
        if len(set(images)) != k:
            continue
        S = PointSet(images)
        cmat = curve_jet_conditions(curve, params, m)
        crank = rank(cmat, strategy).rank
        v = membership(S, m, strategy)
        if not v.member:
            continue
        return CertifiedExample(
            construction="rational-curve",
            parameters={"n": n, "m": m, "k": k, "e": curve.degree,
                        "strategy": strategy.to_dict()},
            points=S, verdict=v, curve_rank=crank, curve_conditions=2 * k,
            curve_system_dim=cmat.cols, certified=v.certified and v.member,
            curve=curve, ambient_rank=v.rank, ambient_conditions=v.conditions,
            curve_points=[[curve.field.format(t), curve.field.format(u)] for t, u in params],
            seed=seed)
    raise RetryBudgetExhausted(
        f"no member found on the curve after {RETRY_BUDGET} draws")


def default_cubic(field=None):
    """y^2 = x^3 + x + 1 over F_10007 unless told otherwise."""
    return WeierstrassCurve(1, 1, field or GF(DEFAULT_ELLIPTIC_PRIME))


def construct_elliptic_even(dprime, curve=None, target=O, seed=0, base=None):
    """k = 3d'/2 points on a plane cubic in T_k(nu_d'(C)), with h0 = h1 = 1."""
    if dprime % 2:
        raise RefusalError(
            f"d' = {dprime} is odd: 3d' is odd and no divisor S has 2S ~ d'H")
    if 3 * dprime < 6:
        raise RefusalError(f"3d' = {3 * dprime} is below the degree bound 4g + 2 = 6")
    C = curve or default_cubic()
    k = 3 * dprime // 2
    system_dim = 3 * dprime
    expected = min(2 * k, system_dim) - 1
    for attempt in range(RETRY_BUDGET):
        rng = trial_rng(seed, f"elliptic-even:{dprime}", attempt)
        prefix = random_ec_points(C, k - 1, rng, base)
        try:
            last = ec_solve_last_point(C, prefix, target)
        except PointCollisionError:
            continue
        S = prefix + [last]
        rep = cubic_membership_rank(C, S, dprime)
        if rep.rank != expected:
            continue
        return _elliptic_example("elliptic-even", C, S, dprime, rep, seed,
                                 {"dprime": dprime, "k": k,
                                  "target": _point_json(C, target)})
    raise RetryBudgetExhausted(
        f"could not certify rank {expected} after {RETRY_BUDGET} draws")


def _point_json(C, P):
    if P.is_infinity:
        return "O"
    return [C.field.format(P.x), C.field.format(P.y)]


def _elliptic_example(name, C, S, dprime, rep, seed, params):
    k = len(S)
    system_dim = 3 * dprime
    v = verdict_from_rank(rep, 2 * k, system_dim, C.field.characteristic)
    return CertifiedExample(
        construction=name, parameters=params,
        points=[_point_json(C, P) for P in S], verdict=v,
        curve_rank=rep.rank, curve_conditions=2 * k, curve_system_dim=system_dim,
        certified=rep.certified and v.member, curve=C, seed=seed)


def group_sum_is_two_torsion(C, S):
    return ec_scalar_mul(C, 2, ec_sum(C, S)).is_infinity


def probe_emptiness(target, dprime, k, trials, seed, curve=None, base=None, strategy=None):
    """Sample k-point sets and look for members of T_k on the curve.

    ``target`` is ``"rnc"`` (rational normal curve of degree d', linear
    forms) or ``"elliptic-odd"`` (plane cubic re-embedded by odd d').
    """
    if trials < 1:
        raise InvalidInputError("trials must be >= 1")
    if k < 1:
        raise InvalidInputError("k must be >= 1")
    strategy = strategy or RankStrategy()
    ranks, members = [], 0
    if target == "rnc":
        rnc = rational_normal_curve(dprime)
        system_dim = dprime + 1
        params_out = {"target": "rnc", "dprime": dprime, "k": k}
        for t in range(trials):
            rng = trial_rng(seed, f"rnc:{dprime}:{k}", t)
            mat = curve_jet_conditions(rnc, random_parameters(k, rng), 1)
            ranks.append(rank(mat, strategy).rank)
    elif target == "elliptic-odd":
        if dprime % 2 == 0:
            raise InvalidInputError("elliptic-odd probes need odd d'")
        C = curve or default_cubic()
        system_dim = 3 * dprime
        params_out = {"target": "elliptic-odd", "dprime": dprime, "k": k,
                      "curve": C.to_json()}
        for t in range(trials):
            rng = trial_rng(seed, f"elliptic-odd:{dprime}:{k}", t)
            S = random_ec_points(C, k, rng, base)
            ranks.append(cubic_membership_rank(C, S, dprime, strategy).rank)
    else:
        raise InvalidInputError(f"unknown probe target {target!r}")
    expected = min(2 * k, system_dim)
    members = sum(r < expected for r in ranks)
    summary = (f"no member found in {trials} trials" if members == 0
               else f"{members} member(s) found in {trials} trials")
    return ProbeReport.from_ranks("emptiness", params_out, ranks, expected, members,
                                  summary, seed, extra={"system_dim": system_dim})


def surjection_check(example):
    """Curve-level dependence must force ambient dependence.

    True iff (curve rank < 2k) implies (ambient rank < k(n+1)).
    """
    if example.ambient_rank is None:
        raise InvalidInputError("example carries no ambient Terracini matrix")
    curve_dep = example.curve_rank < example.curve_conditions
    ambient_dep = example.ambient_rank < example.ambient_conditions
    return (not curve_dep) or ambient_dep


def scan_rows(n, ms, curve_kind="line", seed=0, strategy=None):
    """One row per m: the threshold counts plus the certified minimal-k example."""
    rows = []
    for m in ms:
        curve = _scan_curve(n, curve_kind)
        th = thresholds(n, m, curve.degree)
        row = th.csv_row()
        row.update(k="", member="", ambient_rank="", conditions="", curve_rank="",
                   surjection="", certified="", status="infeasible")
        if th.feasible:
            try:
                ex = construct_on_rational_curve(n, m, curve, None, seed, strategy)
            except RefusalError:
                row["status"] = "refused"
            else:
                row.update(k=ex.parameters["k"], member=ex.verdict.member,
                           ambient_rank=ex.ambient_rank, conditions=ex.ambient_conditions,
                           curve_rank=ex.curve_rank, surjection=surjection_check(ex),
                           certified=ex.certified, status="certified")
        rows.append(row)
    return rows


SCAN_HEADER = ThresholdReport.csv_header + ("k", "member", "ambient_rank", "conditions",
                                            "curve_rank", "surjection", "certified",
                                            "status")


def _scan_curve(n, kind):
    if kind == "line":
        return line_curve(n)
    if kind == "rnc":
        return rational_normal_curve(n)
    raise InvalidInputError(f"unknown scan curve {kind!r}")
