"""Closed-form critical data vs independent numerical solves of the raw systems.

The oracles below never touch the package's elimination machinery: they set up
the literal critical-point equations, reduce them mechanically to univariate
polynomials, solve with numpy's eigenvalue root finder, Newton-polish against
the same raw equations, and evaluate the critical values by direct
substitution into the defining map.
"""

import cmath
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from chainsing.critical import (
    CriticalData,
    branch_constants,
    branch_points,
    critv_curve,
    fa_constant,
    fa_critical_values,
    morsification_critical_values,
    rational_constants,
    xi_sequence,
)
from chainsing.invariants import ChainTuple, ChainTupleError, alternating_mu, degree_d, milnor_number


def T(*entries):
    return ChainTuple.of(*entries)


# ---------------------------------------------------------------------------
# xi recursion


def test_xi_sequence_examples():
    assert xi_sequence(0, 1, (0, 2, 3)).values == (0, 1, -1, 4)
    assert xi_sequence(0, 1, (0, 3)).values == (0, 1, -2)
    assert xi_sequence(0, 0, (0, 2, 3)).values == (0, 0, 0, 0)


def test_xi_closed_form_on_random_sequences():
    # the built-in check raises InternalInconsistencyError on any violation
    rng = random.Random(123)
    for _ in range(1000):
        length = rng.randint(2, 7)
        coeffs = tuple(rng.randint(1, 6) for _ in range(length))
        seq = xi_sequence(0, rng.randint(-5, 5), coeffs)
        # spot-check the closed form independently at k = 0
        for l in range(2, len(seq.values)):
            expected = (-1) ** (l - 1) * seq.values[1] * alternating_mu(coeffs[1:l])
            assert seq.values[l] == expected


def test_xi_needs_two_coefficients():
    with pytest.raises(ValueError):
        xi_sequence(0, 1, (3,))


# ---------------------------------------------------------------------------
# morsification closed forms


def test_rational_constants_examples():
    mc = rational_constants(T(2, 3))
    assert mc.c[1] == Fraction(-1, 2)
    assert mc.c[2] == Fraction(-4, 3)
    assert mc.K == Fraction(-3, 4)  # z_1^4 = -3/4
    assert rational_constants(T(2)).K == Fraction(-1, 2)  # z_1 = -1/2
    assert rational_constants(T(3)).K == Fraction(-1, 3)  # z_1^2 = -1/3


def test_morsification_examples():
    one = morsification_critical_values(T(2))
    assert one.count == 1
    v = one.values()[0]
    assert abs(v - (-0.25)) < 1e-15

    two = morsification_critical_values(T(3))
    assert two.count == 2
    assert abs(two.radius - (2 / 3) / math.sqrt(3)) < 1e-15
    assert sorted(cmath.phase(v) for v in two.values()) == pytest.approx(
        [-math.pi / 2, math.pi / 2]
    )

    four = morsification_critical_values(T(2, 3))
    assert four.count == 4
    assert abs(four.radius - 0.620403) < 1e-6
    assert four.exact_radius == (Fraction(4, 27), Fraction(1, 4))


def test_morsification_requires_isolated():
    with pytest.raises(ChainTupleError):
        morsification_critical_values(T(2, 1))
    with pytest.raises(ChainTupleError):
        morsification_critical_values(ChainTuple(()))


# ---------------------------------------------------------------------------
# numerical oracles (n <= 2)


def _newton_system_polish(fs, jac, z, iters=8):
    z = np.array(z, dtype=complex)
    for _ in range(iters):
        f = np.array([f(z) for f in fs], dtype=complex)
        j = np.array(jac(z), dtype=complex)
        try:
            z = z - np.linalg.solve(j, f)
        except np.linalg.LinAlgError:
            break
    return z


def morsification_oracle(a):
    """Critical values of p_a + z_1 from the raw gradient system."""
    ent = a.entries
    if len(ent) == 1:
        (a1,) = ent
        # f'(z) = 1 + a1 z^{a1-1}
        coeffs = np.zeros(a1, dtype=complex)
        coeffs[-1] = a1
        coeffs[0] = 1.0
        zs = np.roots(coeffs[::-1])
        out = []
        for z in zs:
            z = complex(z)
            for _ in range(4):  # Newton against the raw derivative
                z -= (1 + a1 * z ** (a1 - 1)) / (a1 * (a1 - 1) * z ** (a1 - 2))
            out.append(z**a1 + z)
        return out
    a1, a2 = ent
    # g1 = 1 + a1 z1^{a1-1} z2,  g2 = z1^{a1} + a2 z2^{a2-1}
    # z2 = -1/(a1 z1^{a1-1}); clearing denominators in g2 gives a univariate poly
    e = (a1 - 1) * (a2 - 1)
    poly = np.zeros(a1 + e + 1, dtype=complex)
    poly[a1 + e] = 1.0
    poly[0] = a2 * (-1.0 / a1) ** (a2 - 1)
    z1s = np.roots(poly[::-1])
    values = []
    for z1 in z1s:
        z2 = -1.0 / (a1 * z1 ** (a1 - 1))
        fs = [
            lambda z: 1 + a1 * z[0] ** (a1 - 1) * z[1],
            lambda z: z[0] ** a1 + a2 * z[1] ** (a2 - 1),
        ]
        jac = lambda z: [
            [a1 * (a1 - 1) * z[0] ** (a1 - 2) * z[1], a1 * z[0] ** (a1 - 1)],
            [a1 * z[0] ** (a1 - 1), a2 * (a2 - 1) * z[1] ** (a2 - 2)],
        ]
        z1, z2 = _newton_system_polish(fs, jac, (z1, z2))
        assert abs(1 + a1 * z1 ** (a1 - 1) * z2) < 1e-10
        assert abs(z1**a1 + a2 * z2 ** (a2 - 1)) < 1e-10
        values.append(z1**a1 * z2 + z2**a2 + z1)
    return values


def fa_oracle(a):
    """Critical values of the z_1 projection of the sign-normalized fiber."""
    ent = a.entries
    if len(ent) == 1:
        (a1,) = ent
        coeffs = np.zeros(a1 + 1, dtype=complex)
        coeffs[a1] = 1.0
        coeffs[0] = -1.0
        return [complex(z) for z in np.roots(coeffs[::-1])]
    a1, a2 = ent
    # system: z1^{a1} - a2 z2^{a2-1} = 0,  z1^{a1} z2 - z2^{a2} = 1
    # substitution gives (a2 - 1) z2^{a2} = 1, then z1^{a1} = a2 z2^{a2-1}
    z2_poly = np.zeros(a2 + 1, dtype=complex)
    z2_poly[a2] = a2 - 1.0
    z2_poly[0] = -1.0
    values = []
    for z2 in np.roots(z2_poly[::-1]):
        z1_poly = np.zeros(a1 + 1, dtype=complex)
        z1_poly[a1] = 1.0
        z1_poly[0] = -a2 * z2 ** (a2 - 1)
        for z1 in np.roots(z1_poly[::-1]):
            fs = [
                lambda z: z[0] ** a1 - a2 * z[1] ** (a2 - 1),
                lambda z: z[0] ** a1 * z[1] - z[1] ** a2 - 1,
            ]
            jac = lambda z: [
                [a1 * z[0] ** (a1 - 1), -a2 * (a2 - 1) * z[1] ** (a2 - 2)],
                [a1 * z[0] ** (a1 - 1) * z[1], z[0] ** a1 - a2 * z[1] ** (a2 - 1)],
            ]
            z1p, z2p = _newton_system_polish(fs, jac, (z1, z2))
            assert abs(z1p**a1 - a2 * z2p ** (a2 - 1)) < 1e-10
            assert abs(z1p**a1 * z2p - z2p**a2 - 1) < 1e-10
            values.append(complex(z1p))
    return values


def assert_matches(data: CriticalData, values, radius_rtol=1e-9, angle_tol=1e-9):
    assert len(values) == data.count
    gap = 2 * math.pi / data.count
    slots = set()
    for v in values:
        assert abs(abs(v) - data.radius) <= radius_rtol * data.radius
        pos = (cmath.phase(v) - data.base_angle) / gap
        slot = round(pos)
        assert abs(pos - slot) * gap <= angle_tol
        slots.add(slot % data.count)
    assert len(slots) == data.count  # all equiangular positions hit exactly once


def oracle_tuples():
    singles = [T(k) for k in range(2, 6)]
    doubles = [T(a1, a2) for a1 in range(1, 6) for a2 in range(2, 6)]
    return singles + doubles


def test_morsification_matches_oracle():
    for a in oracle_tuples():
        data = morsification_critical_values(a)
        values = morsification_oracle(a)
        assert data.count == milnor_number(a)
        assert_matches(data, values)


def test_fa_matches_oracle():
    for a in oracle_tuples():
        data = fa_critical_values(a)
        values = fa_oracle(a)
        assert data.count == degree_d(a)
        assert_matches(data, values)


def test_oracle_gaps_are_equiangular():
    for a in oracle_tuples():
        for values in (morsification_oracle(a), fa_oracle(a)):
            phases = sorted(cmath.phase(v) for v in values)
            gap = 2 * math.pi / len(values)
            diffs = [b - a for a, b in zip(phases, phases[1:])]
            diffs.append(phases[0] + 2 * math.pi - phases[-1])
            assert all(abs(d - gap) < 1e-12 for d in diffs)


# ---------------------------------------------------------------------------
# fiber projection closed forms


def test_fa_examples():
    two = fa_critical_values(T(2))
    assert two.count == 2
    vals = sorted(two.values(), key=lambda z: z.real)
    assert abs(vals[0] + 1) < 1e-15 and abs(vals[1] - 1) < 1e-15

    six = fa_critical_values(T(2, 3))
    assert six.count == 6
    assert six.exact_radius == (Fraction(27, 4), Fraction(1, 6))

    other = fa_critical_values(T(3, 2))
    assert other.count == 6
    assert fa_constant(T(3, 2)) == Fraction(4, 1)  # 2^2 / 1^1


def test_fa_constant_positive_on_sweep():
    for a1 in range(1, 7):
        for a2 in range(2, 7):
            assert fa_constant(T(a1, a2)) > 0
    for a in [T(2, 2, 2), T(3, 2, 4), T(2, 3, 2)]:
        assert fa_constant(a) > 0


# ---------------------------------------------------------------------------
# bifibration curve and branch points


def test_critv_curve_examples():
    cv = critv_curve(T(1, 2, 3))
    assert (cv.d, cv.mu, cv.c) == (6, 2, Fraction(27, 4))
    cv13 = critv_curve(T(1, 3))
    assert (cv13.d, cv13.mu, cv13.c) == (3, 1, Fraction(1))
    cv222 = critv_curve(T(2, 2, 2))
    assert (cv222.d, cv222.mu) == (4, 1)


def test_critv_curve_requires_a1_greater_than_one():
    with pytest.raises(ChainTupleError):
        critv_curve(T(1, 1, 3))
    with pytest.raises(ChainTupleError):
        critv_curve(T(2))


def test_curve_is_consistent_numerically():
    # sample the closed-form curve and confirm the defining equation vanishes
    # at fiberwise critical points of the raw map, for (1,2,3)
    cv = critv_curve(T(1, 2, 3))
    c = float(cv.c)
    rng = random.Random(5)
    for _ in range(20):
        z0 = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        # fiberwise critical points over z0: z2 elimination of the raw system
        # z0 z1 - z1^2 z2 + z2^3 = 1 with d/dz2 = -z1^2 + 3 z2^2 = 0
        for sign in (1, -1):
            # z2 = sign * z1 / sqrt(3) at critical points; plug into the fiber eq
            # z0 z1 - z1^2 z2 + z2^3 = 1 becomes a cubic in z1 for each branch
            for z1 in np.roots(
                [
                    -sign / math.sqrt(3) + sign / (3 * math.sqrt(3)),
                    0,
                    z0,
                    -1.0,
                ]
            ):
                z1 = complex(z1)
                residual = z1**6 - c * (z0 * z1 - 1) ** 2
                assert abs(residual) < 1e-7 * max(1.0, abs(z1) ** 6)


def test_branch_points_examples():
    bp = branch_points(T(1, 2, 3))
    assert bp.count == 6
    assert bp.exact_radius == (Fraction(27, 4), Fraction(1, 6))

    double = branch_points(T(2, 2, 3))
    assert double.count == 12
    assert double.exact_radius == (Fraction(27, 4), Fraction(1, 12))

    c_prime, r, c_dprime = branch_constants(T(2, 2, 2))
    assert c_dprime > 0
    assert branch_points(T(2, 2, 2)).count == 8

    with pytest.raises(ChainTupleError):
        branch_points(T(2, 1, 3))


def test_branch_points_and_fiber_critical_values():
    # at a_0 = 1 the branch locus and the fiber critical values always share
    # count d(a), equiangular layout and positive-real normalization
    for a in [T(2, 3), T(3, 2), T(2, 2), T(4, 3), T(2, 2, 2), T(3, 2, 2)]:
        bp = branch_points(ChainTuple((1,) + a.entries))
        fv = fa_critical_values(a)
        assert bp.count == fv.count == degree_d(a)
        assert bp.base_angle == fv.base_angle == 0.0
    # for (2,3) the two constants literally coincide (both 27/4)
    assert branch_points(T(1, 2, 3)).exact_radius == fa_critical_values(T(2, 3)).exact_radius


def test_branch_points_match_fibration_one_level_up():
    """Branch z_0 values are the critical values of the (a_0, a) projection.

    Solved independently: critical points of the sign-normalized projection
    of {p(z_0,...,z_n) = 1} to z_0 satisfy z_0^{a_0 d} = C''; checked here by
    eliminating the (1,3,2) system by hand against branch_constants.
    """
    # f for (1,3,2): z0 z1 - z1^3 z2 + z2^2 = 1; grad conditions give
    # z2 = z1^3/2, z0 = (3/2) z1^5, so (5/4) z1^6 = 1 and z0^6 = (3/2)^6 (4/5)^5
    c_prime, r, c_dprime = branch_constants(T(1, 3, 2))
    assert r == Fraction(4, 5)
    assert c_dprime == Fraction(3, 2) ** 6 * Fraction(4, 5) ** 5


def test_branch_points_numerically():
    # branch points of z^6 - (27/4)(z0 z - 1)^2 over z0 satisfy z0^6 = 27/4
    c = 27.0 / 4.0
    c_prime, r, c_dprime = branch_constants(T(1, 2, 3))
    assert float(c_prime) == pytest.approx(6.0 / 4.0)
    for k in range(6):
        z0 = float(c_dprime) ** (1 / 6) * cmath.exp(2j * math.pi * k / 6)
        # double root in z: F and dF/dz share a root
        coeffs = np.zeros(7, dtype=complex)
        coeffs[6] = 1.0
        coeffs[2] -= c * z0**2
        coeffs[1] += 2 * c * z0
        coeffs[0] -= c
        roots = np.roots(coeffs[::-1])
        min_gap = min(
            abs(x - y) for i, x in enumerate(roots) for y in roots[i + 1 :]
        )
        assert min_gap < 1e-6  # a genuine double root appears over each branch point
