"""Dense exact matrices and certified rank computation.

Rational ranks come from fraction-free (Bareiss) elimination over Python
integers; prime-field ranks from ordinary Gaussian elimination.  A rational
matrix reduced modulo a prime has rank at most its rational rank, so a
modular rank is always a lower bound and several agreeing primes give a
Monte Carlo estimate.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
import random

from sympy import isprime

from .errors import InvalidInputError, ReductionError
from .fields import QQ, GF, PrimeField, field_of


MAX_PRIME_DRAWS = 100_000


class Matrix:
    """Immutable dense matrix over a single exact field (row-major)."""

    __slots__ = ("rows", "cols", "field", "_data")

    def __init__(self, data, field=None, cols=None):
        data = tuple(tuple(row) for row in data)
        if cols is None:
            cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != cols:
                raise InvalidInputError("ragged matrix rows")
        if field is None:
            field = _common_field(data)
        else:
            for row in data:
                for x in row:
                    if not field.contains(x):
                        raise InvalidInputError(
                            f"entry {x!r} does not belong to {field!r}")
        self.rows = len(data)
        self.cols = cols
        self.field = field
        self._data = data

    @classmethod
    def identity(cls, size, field=QQ):
        return cls([[field.one if i == j else field.zero for j in range(size)]
                    for i in range(size)], field, cols=size)

    @classmethod
    def zeros(cls, rows, cols, field=QQ):
        return cls([[field.zero] * cols for _ in range(rows)], field, cols=cols)

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def entries(self):
        """Row-major flat tuple of all entries."""
        return tuple(x for row in self._data for x in row)

    def row(self, i):
        return self._data[i]

    def tolist(self):
        return [list(row) for row in self._data]

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.shape == other.shape and self._data == other._data)

    def __hash__(self):
        return hash((self.field, self._data))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.field!r})"

    def transpose(self):
        return Matrix(list(zip(*self._data)) if self.rows else [],
                      self.field, cols=self.rows)

    def vstack(self, other):
        if other.cols != self.cols or other.field != self.field:
            raise InvalidInputError("incompatible matrices for vstack")
        return Matrix(self._data + other._data, self.field, cols=self.cols)

    def take_rows(self, indices):
        return Matrix([self._data[i] for i in indices], self.field, cols=self.cols)

    def __matmul__(self, other):
        if self.cols != other.rows or self.field != other.field:
            raise InvalidInputError("incompatible matrices for product")
        zero = self.field.zero
        cols_other = list(zip(*other._data)) if other.rows else [()] * other.cols
        out = []
        for row in self._data:
            out.append([sum((a * b for a, b in zip(row, col)), zero)
                        for col in cols_other])
        return Matrix(out, self.field, cols=other.cols)

    def reduce_mod(self, p):
        """Image of a rational matrix in F_p.

        Raises ReductionError when some denominator is divisible by p.
        """
        if self.field != QQ:
            raise InvalidInputError("only rational matrices can be reduced mod p")
        F = GF(p)
        return Matrix([[F(x) for x in row] for row in self._data], F, cols=self.cols)


def _common_field(data):
    fld = None
    for row in data:
        for x in row:
            f = field_of(x)
            if fld is None:
                fld = f
            elif f != fld:
                raise InvalidInputError("matrix mixes entries from different fields")
    return QQ if fld is None else fld


def _integer_rows(m):
    """Clear denominators row by row (scaling a row keeps the rank)."""
    out = []
    for row in m:
        den = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        out.append([int(Fraction(x) * den) for x in row])
    return out


def _bareiss_rank(a, ncols):
    """Rank of an integer matrix (list of lists, modified in place)."""
    nrows = len(a)
    rank = 0
    prev = 1
    for c in range(ncols):
        if rank == nrows:
            break
        pivot = None
        for r in range(rank, nrows):
            if a[r][c] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        if pivot != rank:
            a[rank], a[pivot] = a[pivot], a[rank]
        prow = a[rank]
        pv = prow[c]
        for r in range(rank + 1, nrows):
            row = a[r]
            f = row[c]
            # every updated entry is a minor of the input, so division is exact
            for j in range(c + 1, ncols):
                row[j] = (pv * row[j] - f * prow[j]) // prev
            row[c] = 0
        prev = pv
        rank += 1
    return rank


def _modular_rank(a, ncols, p):
    nrows = len(a)
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        pivot = None
        for r in range(rank, nrows):
            if a[r][c] % p:
                pivot = r
                break
        if pivot is None:
            continue
        if pivot != rank:
            a[rank], a[pivot] = a[pivot], a[rank]
        prow = a[rank]
        inv = pow(prow[c], -1, p)
        for r in range(rank + 1, nrows):
            row = a[r]
            f = row[c] * inv % p
            if f:
                for j in range(c, ncols):
                    row[j] = (row[j] - f * prow[j]) % p
        rank += 1
    return rank


def rank_exact(m):
    """True rank of a rational matrix by fraction-free elimination."""
    if m.field != QQ:
        raise InvalidInputError("rank_exact needs a matrix over Q")
    return _bareiss_rank(_integer_rows(m), m.cols)


def rank_modular(m, p=None):
    """Rank over F_p.

    ``m`` is either a matrix over F_p (``p`` optional) or a rational matrix,
    which is first reduced modulo ``p``.
    """
    if isinstance(m.field, PrimeField):
        if p is not None and p != m.field.p:
            raise InvalidInputError(f"matrix lives over F_{m.field.p}, not F_{p}")
        p = m.field.p
        rows = [[x.value for x in row] for row in m]
    else:
        if p is None or not isprime(int(p)):
            raise InvalidInputError(f"modulus {p!r} is not prime")
        rows = [[_reduce(x, p) for x in row] for row in m]
    return _modular_rank(rows, m.cols, p)


def _reduce(x, p):
    x = Fraction(x)
    d = x.denominator % p
    if d == 0:
        raise ReductionError(f"denominator of {x} is divisible by {p}")
    return x.numerator * pow(d, -1, p) % p


def random_prime(bits, rng, exclude=()):
    """Uniformly drawn prime with exactly ``bits`` bits, not dividing any
    integer in ``exclude``."""
    lo, hi = 1 << (bits - 1), (1 << bits) - 1
    for _ in range(MAX_PRIME_DRAWS):
        c = rng.randint(lo, hi) | 1
        if c > hi or not isprime(c):
            continue
        if any(e % c == 0 for e in exclude if e):
            continue
        return c
    raise InvalidInputError(f"no admissible {bits}-bit prime found")


@dataclass(frozen=True)
class RankStrategy:
    """How to compute ranks.

    kind is one of ``"fraction-free"``, ``"modular"`` (single prime
    ``prime``) or ``"multi-prime"`` (``count`` primes of ``bits`` bits drawn
    from ``seed``).  ``exclude`` lists integers whose prime divisors must not
    be used as moduli (characteristic constraints of the caller).
    """

    kind: str = "fraction-free"
    prime: int = None
    count: int = 3
    bits: int = 31
    seed: int = 0
    accept_monte_carlo: bool = True
    exclude: tuple = ()

    def __post_init__(self):
        if self.kind not in ("fraction-free", "modular", "multi-prime"):
            raise InvalidInputError(f"unknown rank strategy {self.kind!r}")
        if self.kind == "modular" and (self.prime is None or not isprime(int(self.prime))):
            raise InvalidInputError(f"modular strategy needs a prime, got {self.prime!r}")
        if self.kind == "multi-prime" and (self.count < 1 or self.bits < 3):
            raise InvalidInputError("multi-prime needs count >= 1 and bits >= 3")

    @classmethod
    def fraction_free(cls):
        return cls("fraction-free")

    @classmethod
    def modular(cls, p):
        return cls("modular", prime=p)

    @classmethod
    def multi_prime(cls, count=3, bits=31, seed=0, accept_monte_carlo=True):
        return cls("multi-prime", count=count, bits=bits, seed=seed,
                   accept_monte_carlo=accept_monte_carlo)

    def excluding(self, *values):
        return RankStrategy(self.kind, self.prime, self.count, self.bits, self.seed,
                            self.accept_monte_carlo, tuple(self.exclude) + values)

    def to_dict(self):
        d = {"kind": self.kind}
        if self.kind == "modular":
            d["prime"] = self.prime
        if self.kind == "multi-prime":
            d.update(count=self.count, bits=self.bits, seed=self.seed,
                     accept_monte_carlo=self.accept_monte_carlo)
        return d


@dataclass(frozen=True)
class RankReport:
    rank: int
    method: str
    certified: bool
    primes_used: tuple = field(default_factory=tuple)

    def to_dict(self):
        return {"rank": self.rank, "method": self.method,
                "certified": self.certified, "primes_used": list(self.primes_used)}


def rank(m, strategy=None):
    """Rank of ``m`` computed as ``strategy`` says, wrapped in a RankReport."""
    strategy = strategy or RankStrategy()
    if isinstance(m.field, PrimeField):
        # elimination inside F_p is exact whatever the strategy
        return RankReport(rank_modular(m), "modular", True, (m.field.p,))
    if strategy.kind == "fraction-free":
        return RankReport(rank_exact(m), "fraction-free", True)
    if strategy.kind == "modular":
        p = strategy.prime
        if any(e % p == 0 for e in strategy.exclude if e):
            raise InvalidInputError(f"prime {p} violates the characteristic constraint")
        return RankReport(rank_modular(m, p), "modular", False, (p,))

    rng = random.Random(strategy.seed)
    primes, ranks = [], []
    exclude = tuple(strategy.exclude)
    while len(primes) < strategy.count:
        p = random_prime(strategy.bits, rng, exclude + tuple(primes))
        try:
            r = rank_modular(m, p)
        except ReductionError:
            exclude += (p,)
            continue
        primes.append(p)
        ranks.append(r)
    agree = len(set(ranks)) == 1
    return RankReport(max(ranks), "modular-multi-prime",
                      agree and strategy.accept_monte_carlo, tuple(primes))


def row_space_basis(m):
    """Reduced row echelon basis of the row space (list of row tuples)."""
    F = m.field
    a = [list(row) if F != QQ else [Fraction(x) for x in row] for row in m]
    basis_rows = []
    r = 0
    for c in range(m.cols):
        pivot = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = F.one / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    basis_rows = [tuple(row) for row in a[:r]]
    return basis_rows
