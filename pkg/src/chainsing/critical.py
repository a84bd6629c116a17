"""Exact critical-point geometry of the chain fibrations.

Three families of critical data, all driven by one linear recursion

    xi_{k+2} = c_k xi_k - (c_{k+1} - 1) xi_{k+1},

whose closed form ties zeros of the sequence to alternating product sums:
if xi_k = 0 then xi_{k+l} = (-1)^{l-1} xi_{k+1} mu(c_{k+1}, ..., c_{k+l-1}).

* morsification_critical_values: the perturbed map p_a + z_1 has mu(a)
  nondegenerate critical points; eliminating the gradient equations with the
  recursion leaves one monomial constraint z_1^{mu} = K with K an exact
  rational, and the critical value at each point is (mu/d) z_1.
* fa_critical_values: the z_1-projection of the sign-normalized hypersurface
  {z_1^{a_1} z_2 - z_2^{a_2} z_3 + ... = 1} has d(a) critical values, the
  d-th roots of an exact positive rational.  (The sign-normalized form is the
  one whose fiberwise critical curve has a positive leading constant; for
  n = 1 the fiber is finite and the convention returns the a_1-th roots of
  unity.)
* critv_curve / branch_points: the fiberwise critical values of the
  bifibration over (z_0, z_1) sweep the plane curve
  z_1^d - c (z_0^{a_0} z_1 - 1)^{mu'} = 0 with c > 0 exact, mu' the Milnor
  number two levels in; its branch points over z_0 sit at z_0^{a_0 d} = C''.

Constants stay exact Fractions; floats appear only inside CriticalData.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Sequence

from .invariants import (
    ChainTuple,
    ChainTupleError,
    InternalInconsistencyError,
    alternating_mu,
    degree_d,
    milnor_number,
)


@dataclass(frozen=True)
class XiSequence:
    """Solution of the driving recursion together with its coefficients."""

    coeff_seq: tuple[int, ...]
    values: tuple[int, ...]


def xi_sequence(xi0: int, xi1: int, coeffs: Sequence[int]) -> XiSequence:
    """Run the recursion and verify its closed form at every zero.

    coeffs = (c_0, c_1, ..., c_{m-1}) produces values (xi_0, ..., xi_m).
    """
    coeffs = tuple(int(c) for c in coeffs)
    if len(coeffs) < 2:
        raise ValueError("need at least two coefficients")
    values = [int(xi0), int(xi1)]
    for k in range(len(coeffs) - 1):
        values.append(coeffs[k] * values[k] - (coeffs[k + 1] - 1) * values[k + 1])
    for k, v in enumerate(values):
        if v != 0:
            continue
        for l in range(2, len(values) - k):
            expected = (-1) ** (l - 1) * values[k + 1] * alternating_mu(
                coeffs[k + 1 : k + l]
            )
            if values[k + l] != expected:
                raise InternalInconsistencyError(
                    f"closed form fails at k={k}, l={l} for coeffs {coeffs}"
                )
    return XiSequence(coeffs, tuple(values))


@dataclass(frozen=True)
class CriticalData:
    """count points radius * exp(i (base_angle + 2 pi k / count)), k = 0..count-1."""

    count: int
    radius: float
    base_angle: float
    exact_radius: tuple[Fraction, Fraction] | None = None  # radius == const ** exponent

    def values(self) -> list[complex]:
        return [
            self.radius
            * complex(
                math.cos(self.base_angle + 2 * math.pi * k / self.count),
                math.sin(self.base_angle + 2 * math.pi * k / self.count),
            )
            for k in range(self.count)
        ]


@dataclass(frozen=True)
class MorsificationConstants:
    """Exact elimination data for p_a + z_1: z_k = c_k z_1^{xi_k}, z_1^mu = K."""

    c: tuple[Fraction, ...]  # c_1, ..., c_{n+1}
    xi: tuple[int, ...]  # xi_1, ..., xi_{n+1}
    exponent_sign: int  # the raw constraint is 1 = c_{n+1} z_1^{sign * mu}
    K: Fraction  # normalized: z_1^mu = K


def rational_constants(a: ChainTuple) -> MorsificationConstants:
    """Exact c_k chain for the morsification gradient system."""
    n = len(a)
    if n < 1:
        raise ChainTupleError("morsification needs a nonempty tuple")
    a.require_isolated()
    ent = a.entries
    # driving sequence (0, a_1, ..., a_n) with xi_0 = 0, xi_1 = 1
    xi = xi_sequence(0, 1, (0,) + ent).values
    c: list[Fraction] = [Fraction(1)]  # c_1 = 1 (z_1 itself)
    c.append(Fraction(-1, ent[0]))  # c_2 from 1 + a_1 z_1^{a_1 - 1} z_2 = 0
    for k in range(2, n + 1):
        # z_{k+1} = -z_{k-1}^{a_{k-1}} / (a_k z_k^{a_k - 1})
        prev, cur = c[k - 2], c[k - 1]
        c.append(-(prev ** ent[k - 2]) / (ent[k - 1] * cur ** (ent[k - 1] - 1)))
    mu = milnor_number(a)
    sign = (-1) ** n
    if xi[n + 1] != sign * mu:
        raise InternalInconsistencyError(
            f"final xi exponent {xi[n + 1]} != {sign}*mu for ({a})"
        )
    # 1 = c_{n+1} z_1^{sign * mu}  ==>  z_1^mu = c_{n+1}^{-sign}
    K = c[n] ** (-sign)
    return MorsificationConstants(tuple(c), tuple(xi[1:]), sign, K)


def _root_data(count: int, K: Fraction, prefactor: Fraction) -> CriticalData:
    """Critical data for {prefactor * z : z^count = K} with K rational."""
    magnitude = abs(K) * abs(prefactor) ** count
    radius = float(magnitude) ** (1.0 / count)
    base = 0.0 if K > 0 else math.pi / count
    return CriticalData(
        count=count,
        radius=radius,
        base_angle=base,
        exact_radius=(magnitude, Fraction(1, count)),
    )


def morsification_critical_values(a: ChainTuple) -> CriticalData:
    """The mu(a) critical values of p_a + z_1: (mu/d) z_1 over z_1^mu = K."""
    consts = rational_constants(a)
    mu = milnor_number(a)
    d = degree_d(a)
    return _root_data(mu, consts.K, Fraction(mu, d))


def fa_constant(a: ChainTuple) -> Fraction:
    """Exact positive K with z_1^d = K at the fiber critical points (n >= 2)."""
    n = len(a)
    ent = a.entries
    # exponent bookkeeping: ansatz z_k = c_k z_1^{alpha_k} z_2^{beta_k}
    beta = xi_sequence(0, 1, ent).values  # beta_{k} = value index k-1
    c: list[Fraction] = [Fraction(1), Fraction(1)]  # c_1 = c_2 = 1
    for k in range(2, n + 1):
        # z_{k+1} = +z_{k-1}^{a_{k-1}} / (a_k z_k^{a_k - 1})  (sign-normalized form)
        prev, cur = c[k - 2], c[k - 1]
        c.append((prev ** ent[k - 2]) / (ent[k - 1] * cur ** (ent[k - 1] - 1)))
    rho = prod(ent[1:])  # a_2 ... a_n
    mu_tail = milnor_number(a.tail)
    q = c[n] * Fraction(rho, mu_tail) ** beta[n]
    K = q ** ((-1) ** (n + 1))
    if K <= 0:
        raise InternalInconsistencyError(f"fiber constant for ({a}) is not positive")
    return K


def fa_critical_values(a: ChainTuple) -> CriticalData:
    """The d(a) critical values of the z_1-projection of the degree-one fiber."""
    n = len(a)
    if n < 1:
        raise ChainTupleError("fiber projection needs a nonempty tuple")
    a.require_isolated()
    if n == 1:
        return _root_data(a.entries[0], Fraction(1), Fraction(1))
    return _root_data(degree_d(a), fa_constant(a), Fraction(1))


@dataclass(frozen=True)
class CurveCoeffs:
    """The fiberwise critical curve z_1^d - c (z_0^{a_0} z_1 - 1)^mu = 0."""

    d: int
    mu: int
    c: Fraction

    def __post_init__(self) -> None:
        if self.c <= 0:
            raise InternalInconsistencyError("curve constant must be positive")
        if not 0 < self.mu < self.d:
            raise InternalInconsistencyError("curve needs 0 < mu < d")


def critv_curve(a_tilde: ChainTuple) -> CurveCoeffs:
    """Exact coefficients of the critical curve of the (a_0, ..., a_n) bifibration."""
    if len(a_tilde) < 2:
        raise ChainTupleError("need (a_0, a_1, ...) with at least two entries")
    a = a_tilde.tail  # (a_1, ..., a_n)
    if a.entries[0] < 2:
        raise ChainTupleError("a_1 > 1 is required for the bifibration curve")
    a.require_isolated()
    n = len(a)
    d = degree_d(a)
    mu_tail = milnor_number(a.tail)
    c = Fraction(1) if n == 1 else fa_constant(a)
    return CurveCoeffs(d=d, mu=mu_tail, c=c)


def branch_constants(a_tilde: ChainTuple) -> tuple[Fraction, Fraction, Fraction]:
    """(C', R, C''): branch points satisfy z_0^{a_0} z_1 = C', z_1^d = R, z_0^{a_0 d} = C''."""
    curve = critv_curve(a_tilde)
    a = a_tilde.tail
    mu_up = milnor_number(a)  # = d - mu of the curve
    c_prime = Fraction(curve.d, mu_up)
    r = curve.c * Fraction(curve.mu, mu_up) ** curve.mu
    c_dprime = c_prime ** curve.d / r
    return c_prime, r, c_dprime


def branch_points(a_tilde: ChainTuple) -> CriticalData:
    """Branch points of the critical curve over z_0: equiangular a_0...a_n points."""
    _, _, c_dprime = branch_constants(a_tilde)
    a0 = a_tilde.entries[0]
    count = a0 * degree_d(a_tilde.tail)
    return _root_data(count, c_dprime, Fraction(1))
