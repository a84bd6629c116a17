"""Closed-form invariants of chain exponent tuples and the identity suite.

For a tuple a = (a_1, ..., a_n) of positive integers, the chain polynomial

    p_a = z_1^{a_1} z_2 + z_2^{a_2} z_3 + ... + z_n^{a_n}

is quasi-homogeneous with an isolated singularity at the origin when
a_n >= 2.  Its Milnor number is the alternating product sum

    mu(a) = a_1...a_n - a_2...a_n + ... + (-1)^{n-1} a_n + (-1)^n,

with the conventions mu(()) = 1 and d(()) = 1 for the empty tuple.  Writing
r_i for the product of the last i entries, two unit power series built from
the factors (1 - t^{r_i}) carry all the linear algebra computed here:

* the alpha series (exponents (-1)^{i+n-1}) gives the colors of the rainbow
  Seifert matrix S(a);
* the alpha-prime product (exponents (-1)^{i+n}) is a polynomial of degree
  exactly mu(a); its coefficients fill the first column of the companion
  matrix M(a) and the colors of S(a)^{-1}.

The verify_* functions check, with exact integer/rational arithmetic:
M(a)^mu == (-1)^n S^{-1} S^T, M(a)^d == Id, the palindromic symmetry of the
alpha-prime coefficients, the inverse-color identity, quasi-homogeneity of
the weights, and the fractional-rotation congruence satisfied by parallel
transport over a circle in the base.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Sequence

from .series import (
    IntMatrix,
    RainbowMatrix,
    TruncatedSeries,
    one_minus_t_power,
    rainbow_extend,
    rainbow_invert,
    series_inv,
    series_mul,
    substitute_nilpotent,
)


class ChainTupleError(ValueError):
    """Invalid chain exponent tuple for the requested operation."""


class InternalInconsistencyError(RuntimeError):
    """A structural fact the theory guarantees failed to hold; must never fire."""


@dataclass(frozen=True)
class ChainTuple:
    """Exponent tuple a = (a_1, ..., a_n); the empty tuple is allowed."""

    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        entries = tuple(int(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        if any(e < 1 for e in entries):
            raise ChainTupleError(f"entries must be >= 1, got {entries}")

    @classmethod
    def of(cls, *entries: int) -> ChainTuple:
        return cls(tuple(entries))

    @classmethod
    def parse(cls, text: str) -> ChainTuple:
        """Parse a comma-separated tuple like '2,3'; '' is the empty tuple."""
        text = text.strip()
        if not text:
            return cls(())
        try:
            entries = tuple(int(part) for part in text.split(","))
        except ValueError as exc:
            raise ChainTupleError(f"cannot parse tuple {text!r}") from exc
        return cls(entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.entries)

    @property
    def is_isolated(self) -> bool:
        """True when the singularity at 0 is isolated (empty tuple counts)."""
        return len(self.entries) == 0 or self.entries[-1] >= 2

    def require_isolated(self) -> None:
        if not self.is_isolated:
            raise ChainTupleError(
                f"({self}) has non-isolated singularity: last entry must be >= 2"
            )

    def first(self, k: int) -> ChainTuple:
        return ChainTuple(self.entries[:k])

    def last(self, k: int) -> ChainTuple:
        n = len(self.entries)
        return ChainTuple(self.entries[n - k:] if k else ())

    @property
    def tail(self) -> ChainTuple:
        """Drop the first entry (the empty tuple maps to itself)."""
        return ChainTuple(self.entries[1:])


def alternating_mu(entries: Sequence[int]) -> int:
    """Alternating product sum; works for any integer sequence, mu(()) = 1."""
    n = len(entries)
    total = 0
    suffix = 1
    for i in range(n, -1, -1):
        # suffix == product of entries[i:]
        total += (-1) ** i * suffix
        if i > 0:
            suffix *= entries[i - 1]
    # total = sum_i (-1)^i prod_{j>i} a_j; reorder to the stated alternating sum
    return total


def milnor_number(a: ChainTuple) -> int:
    return alternating_mu(a.entries)


def degree_d(a: ChainTuple) -> int:
    return prod(a.entries) if a.entries else 1


def r_sequence(a: ChainTuple) -> tuple[int, ...]:
    """(r_0, ..., r_n) with r_i the product of the last i entries; r_0 = 1."""
    n = len(a)
    out = [1]
    for i in range(1, n + 1):
        out.append(out[-1] * a.entries[n - i])
    return tuple(out)


def _factor_product(a: ChainTuple, order: int, parity_shift: int) -> TruncatedSeries:
    """prod_i (1 - t^{r_i})^{(-1)^{i + n + parity_shift}} mod t^order."""
    n = len(a)
    series = TruncatedSeries.one(order)
    for i, r in enumerate(r_sequence(a)):
        factor = one_minus_t_power(r, order)
        if (i + n + parity_shift) % 2 == 1:
            factor = series_inv(factor)
        series = series_mul(series, factor)
    return series


def alpha_series(a: ChainTuple) -> TruncatedSeries:
    """Seifert color series 1 + alpha_1 t + ... + alpha_{mu-1} t^{mu-1} mod t^mu."""
    mu = milnor_number(a)
    if mu < 1:
        raise ChainTupleError(f"mu({a}) = {mu} < 1: no color series")
    return _factor_product(a, mu, parity_shift=1)


def alpha_prime_poly(a: ChainTuple) -> tuple[int, ...]:
    """Coefficients (1, alpha'_1, ..., alpha'_mu) of the degree-mu polynomial.

    The defining product is computed at order mu+2 and the trailing
    coefficient checked to vanish, so polynomiality of degree exactly mu is
    enforced rather than assumed.
    """
    mu = milnor_number(a)
    if mu < 1:
        raise ChainTupleError(f"mu({a}) = {mu} < 1: no alpha' polynomial")
    series = _factor_product(a, mu + 2, parity_shift=0)
    if series.coeffs[mu + 1] != 0:
        raise InternalInconsistencyError(
            f"alpha' product of ({a}) is not a polynomial of degree {mu}"
        )
    if series.coeffs[mu] == 0:
        raise InternalInconsistencyError(
            f"alpha' product of ({a}) has degree below {mu}"
        )
    return series.coeffs[: mu + 1]


def seifert_series(a: ChainTuple) -> RainbowMatrix:
    """Seifert matrix S(a) via direct substitution t -> N_mu into the alpha series."""
    mu = milnor_number(a)
    return substitute_nilpotent(alpha_series(a), mu)


def seifert_inductive(a: ChainTuple) -> RainbowMatrix:
    """S(a) by color-level induction; only defined for entries >= 2.

    Base case S(a_1) = Id - N_{a_1 - 1}; the step inverts the matrix one
    level down, zero-pads its colors to size mu(a), and sets color number
    mu(a_2, ..., a_n) to (-1)^n.
    """
    if len(a) == 0:
        raise ChainTupleError("inductive route needs a nonempty tuple")
    if any(e < 2 for e in a.entries):
        raise ChainTupleError(
            f"inductive route requires all entries >= 2, got ({a})"
        )
    n = len(a)
    if n == 1:
        k = a.entries[0] - 1
        return RainbowMatrix(k, (-1,) + (0,) * (k - 2)) if k > 1 else RainbowMatrix(1, ())
    below = seifert_inductive(a.tail)
    extended = rainbow_extend(rainbow_invert(below), milnor_number(a))
    mu_below = milnor_number(a.tail)
    colors = list(extended.colors)
    if colors[mu_below - 1] != 0:
        raise InternalInconsistencyError("inverted colors reach past mu of the tail")
    colors[mu_below - 1] = (-1) ** n
    return RainbowMatrix(extended.size, tuple(colors))


def companion_matrix(a: ChainTuple) -> IntMatrix:
    """mu x mu matrix with first column -alpha'_1..-alpha'_mu and superdiagonal 1s."""
    mu = milnor_number(a)
    ap = alpha_prime_poly(a)
    rows = []
    for i in range(mu):
        row = [0] * mu
        row[0] = -ap[i + 1]
        if i + 1 < mu:
            row[i + 1] = 1
        rows.append(tuple(row))
    return IntMatrix(tuple(rows))


def companion_power(a: ChainTuple, k: int) -> IntMatrix:
    """M(a)^k computed in the quotient ring Z[t]/(alpha'(t)).

    The companion matrix is multiplication by t^{-1} on that quotient in the
    monomial basis, so column j of M^k holds the coefficients of
    t^{j-1-k} mod alpha'(t).  This is provably equal to mat_pow(M, k) (the
    matrix is non-derogatory) and costs O(mu * (mu + k)) instead of repeated
    matrix products; the equality is cross-checked in the test suite.
    """
    if k < 0:
        raise ChainTupleError("companion_power expects k >= 0")
    mu = milnor_number(a)
    ap = alpha_prime_poly(a)

    def shift_down(p: list[int]) -> list[int]:
        # t^{-1} p mod alpha'(t), using t^{-1} = -sum_j alpha'_j t^{j-1}
        head = p[0]
        out = [p[i + 1] if i + 1 < mu else 0 for i in range(mu)]
        if head:
            for i in range(mu):
                out[i] -= head * ap[i + 1]
        return out

    columns: list[list[int]] = []
    # cache[m] = coefficients of t^{-m}; build incrementally up to k
    cache: dict[int, list[int]] = {0: [1] + [0] * (mu - 1)}
    p = cache[0]
    for m in range(1, k + 1):
        p = shift_down(p)
        if k - mu + 1 <= m:
            cache[m] = p
    for j in range(1, mu + 1):
        e = j - 1 - k
        if e >= 0:
            col = [0] * mu
            col[e] = 1
        else:
            col = cache[-e]
        columns.append(col)
    return IntMatrix(tuple(tuple(columns[j][i] for j in range(mu)) for i in range(mu)))


def inverse_seifert_colors(a: ChainTuple) -> tuple[int, ...]:
    """Colors of S(a)^{-1}, by honest series inversion of the alpha series."""
    return series_inv(alpha_series(a)).coeffs[1:]


def monodromy_from_seifert(a: ChainTuple) -> IntMatrix:
    """(-1)^n S(a)^{-1} S(a)^T using the Toeplitz structure of both factors.

    (S^{-1} S^T)_{ij} = sum_{k >= max(i,j)} u_{k-i} alpha_{k-j} with u the
    inverse colors; the sums are accumulated per diagonal offset in O(mu^2).
    """
    mu = milnor_number(a)
    n = len(a)
    u = (1,) + inverse_seifert_colors(a)  # row pattern of S^{-1}
    al = alpha_series(a).coeffs  # column pattern of S^T (below diagonal)
    sign = (-1) ** n
    rows = [[0] * mu for _ in range(mu)]
    # upper part (i <= j): sum_{m=0}^{mu-1-j} u_{m + (j-i)} alpha_m
    for delta in range(mu):
        acc = 0
        for j in range(mu - 1, delta - 1, -1):
            acc += u[mu - 1 - j + delta] * al[mu - 1 - j]
            rows[j - delta][j] = sign * acc
    # strictly lower part (i > j): sum_{m=0}^{mu-1-i} u_m alpha_{m + (i-j)}
    for delta in range(1, mu):
        acc = 0
        for i in range(mu - 1, delta - 1, -1):
            acc += u[mu - 1 - i] * al[mu - 1 - i + delta]
            rows[i][i - delta] = sign * acc
    return IntMatrix(tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one exact identity check; sides kept when the check compares matrices."""

    name: str
    ok: bool
    detail: str = ""
    lhs: IntMatrix | None = None
    rhs: IntMatrix | None = None


def verify_monodromy_identity(a: ChainTuple) -> IdentityReport:
    """M(a)^{mu(a)} == (-1)^n S(a)^{-1} S(a)^T, exactly."""
    lhs = companion_power(a, milnor_number(a))
    rhs = monodromy_from_seifert(a)
    return IdentityReport("monodromy_identity", lhs == rhs, lhs=lhs, rhs=rhs)


def verify_periodicity(a: ChainTuple) -> IdentityReport:
    """M(a)^{d(a)} == Id, exactly."""
    power = companion_power(a, degree_d(a))
    return IdentityReport("periodicity", power.is_identity())


def verify_alpha_prime_symmetry(a: ChainTuple) -> IdentityReport:
    """alpha'_{mu-i} == (-1)^{n-1} alpha'_i for all 0 <= i <= mu (alpha'_0 = 1)."""
    mu = milnor_number(a)
    ap = alpha_prime_poly(a)
    sign = (-1) ** (len(a) - 1)
    ok = all(ap[mu - i] == sign * ap[i] for i in range(mu + 1))
    return IdentityReport("alpha_prime_symmetry", ok)


def verify_inverse_coefficients(a: ChainTuple) -> IdentityReport:
    """Colors of S(a)^{-1} equal alpha'_1 ... alpha'_{mu-1}."""
    mu = milnor_number(a)
    ap = alpha_prime_poly(a)
    ok = inverse_seifert_colors(a) == ap[1:mu]
    return IdentityReport("inverse_coefficients", ok)


def quasi_weights(a: ChainTuple) -> tuple[int, ...]:
    """Weights q_k = mu(last n-k entries) * d(first k-1 entries) of the torus action."""
    n = len(a)
    return tuple(
        milnor_number(a.last(n - k)) * degree_d(a.first(k - 1)) for k in range(1, n + 1)
    )


def verify_quasi_homogeneity(a: ChainTuple) -> IdentityReport:
    """Every monomial of p_a has weighted degree d(a) under quasi_weights."""
    if len(a) == 0:
        return IdentityReport("quasi_homogeneity", True, "empty tuple")
    q = quasi_weights(a)
    d = degree_d(a)
    n = len(a)
    ok = all(
        a.entries[k] * q[k] + (q[k + 1] if k + 1 < n else 0) == d for k in range(n)
    )
    return IdentityReport("quasi_homogeneity", ok)


def verify_transport_congruence(a: ChainTuple) -> IdentityReport:
    """Exact mod-1 congruence of circular parallel-transport exponents.

    For each k:  -mu(a) (-1)^{k-1} d(a_1..a_{k-1}) / (a_1...a_n) must equal
    mu(a_{k+1}..a_n) / (a_k...a_n) modulo 1.
    """
    n = len(a)
    mu = milnor_number(a)
    d = degree_d(a)
    for k in range(1, n + 1):
        lhs = Fraction(-mu * (-1) ** (k - 1) * degree_d(a.first(k - 1)), d)
        rhs = Fraction(milnor_number(a.last(n - k)), prod(a.entries[k - 1:]))
        if (lhs - rhs).denominator != 1:
            return IdentityReport("transport_congruence", False, f"fails at k={k}")
    return IdentityReport("transport_congruence", True)


@dataclass(frozen=True)
class InvariantBundle:
    """All closed-form invariants of one tuple, cross-checked at build time."""

    tuple_a: ChainTuple
    mu: int
    d: int
    r: tuple[int, ...]
    alpha: tuple[int, ...]
    alpha_prime: tuple[int, ...]
    weights: tuple[int, ...]


def invariant_bundle(a: ChainTuple) -> InvariantBundle:
    mu = milnor_number(a)
    if mu < 1:
        raise ChainTupleError(f"mu({a}) = {mu} < 1")
    d = degree_d(a)
    r = r_sequence(a)
    if len(a) > 0 and mu + milnor_number(a.tail) != d:
        raise InternalInconsistencyError(f"mu recursion fails for ({a})")
    if r[0] != 1 or r[-1] != d:
        raise InternalInconsistencyError(f"r sequence endpoints wrong for ({a})")
    return InvariantBundle(
        tuple_a=a,
        mu=mu,
        d=d,
        r=r,
        alpha=alpha_series(a).coeffs[1:],
        alpha_prime=alpha_prime_poly(a)[1:],
        weights=quasi_weights(a),
    )


def identity_suite(a: ChainTuple) -> list[IdentityReport]:
    """Run the full exact identity suite on one tuple."""
    return [
        verify_monodromy_identity(a),
        verify_periodicity(a),
        verify_alpha_prime_symmetry(a),
        verify_inverse_coefficients(a),
        verify_transport_congruence(a),
        verify_quasi_homogeneity(a),
    ]
