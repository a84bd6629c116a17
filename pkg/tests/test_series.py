"""Truncated-series and rainbow-matrix algebra: pinned examples and random sweeps."""

import random

import pytest

from chainsing.series import (
    IntMatrix,
    MatrixError,
    RainbowMatrix,
    SeriesError,
    TruncatedSeries,
    mat_inverse_unimodular,
    mat_pow,
    one_minus_t_power,
    rainbow_extend,
    rainbow_invert,
    series_int_pow,
    series_inv,
    series_mul,
    substitute_nilpotent,
    unitriangular_inverse,
)


def S(*coeffs):
    return TruncatedSeries(tuple(coeffs))


def test_series_mul_examples():
    assert series_mul(S(1, 1, 0), S(1, -1, 0)) == S(1, 0, -1)
    assert series_mul(S(1, 1, 1, 1), S(1, 0, 0, -1)) == S(1, 1, 1, 0)
    s = S(1, 7, -3, 2)
    assert series_mul(s, TruncatedSeries.one(4)) == s


def test_series_mul_order_mismatch():
    with pytest.raises(SeriesError):
        series_mul(S(1, 1), S(1, 1, 1))


def test_series_inv_examples():
    assert series_inv(S(1, -1, 0, 0)) == S(1, 1, 1, 1)
    inv = series_inv(S(1, 1, 1, 0))
    assert inv == S(1, -1, 0, 1)
    assert series_mul(S(1, 1, 1, 0), inv).is_one()
    assert series_inv(TruncatedSeries.one(5)) == TruncatedSeries.one(5)


def test_series_inv_requires_unit():
    with pytest.raises(SeriesError):
        series_inv(S(2, 1))
    with pytest.raises(SeriesError):
        series_inv(S(0, 1))


def test_series_int_pow_examples():
    assert series_int_pow(S(1, -1, 0), -1) == S(1, 1, 1)
    assert series_int_pow(S(1, 0, 0, -1), 1) == S(1, 0, 0, -1)
    assert series_int_pow(S(1, -1, 0), 2) == S(1, -2, 1)
    assert series_int_pow(S(1, 5, -2), 0).is_one()


def test_random_unit_series_inverse():
    rng = random.Random(20260810)
    for _ in range(300):
        order = rng.randint(1, 64)
        coeffs = [rng.choice([1, -1])] + [rng.randint(-9, 9) for _ in range(order - 1)]
        s = TruncatedSeries(tuple(coeffs))
        assert series_mul(s, series_inv(s)).is_one()


def test_substitute_nilpotent_examples():
    r = substitute_nilpotent(S(1, 1, 1, 0), 4)
    assert r.colors == (1, 1, 0)
    assert r.dense().rows == ((1, 1, 1, 0), (0, 1, 1, 1), (0, 0, 1, 1), (0, 0, 0, 1))
    assert substitute_nilpotent(S(1, -1), 2).dense().rows == ((1, -1), (0, 1))
    assert substitute_nilpotent(S(1, 0, 0), 3).dense() == IntMatrix.identity(3)


def test_substitute_nilpotent_errors():
    with pytest.raises(SeriesError):
        substitute_nilpotent(S(1, 1), 3)  # order too small
    with pytest.raises(SeriesError):
        substitute_nilpotent(S(-1, 1), 2)  # constant != 1


def test_substitution_is_ring_homomorphism():
    rng = random.Random(7)
    for _ in range(50):
        k = rng.randint(1, 8)
        s1 = TruncatedSeries(tuple([1] + [rng.randint(-4, 4) for _ in range(k - 1)]))
        s2 = TruncatedSeries(tuple([1] + [rng.randint(-4, 4) for _ in range(k - 1)]))
        lhs = substitute_nilpotent(series_mul(s1, s2), k).dense()
        rhs = substitute_nilpotent(s1, k).dense() @ substitute_nilpotent(s2, k).dense()
        assert lhs == rhs


def test_rainbow_invert_examples():
    assert rainbow_invert(RainbowMatrix(2, (-1,))).colors == (1,)
    assert rainbow_invert(RainbowMatrix(4, (1, 1, 0))).colors == (-1, 0, 1)
    assert rainbow_invert(RainbowMatrix(1, ())).colors == ()


def test_rainbow_extend_examples():
    assert rainbow_extend(RainbowMatrix(2, (1,)), 4).colors == (1, 0, 0)
    r = RainbowMatrix(3, (2, -3))
    assert rainbow_extend(r, 3) == r
    assert rainbow_extend(r, 5).colors == (2, -3, 0, 0)
    with pytest.raises(MatrixError):
        rainbow_extend(r, 2)


def test_rainbow_closure_under_product_and_inverse():
    rng = random.Random(99)
    for _ in range(200):
        k = rng.randint(1, 12)
        a = RainbowMatrix(k, tuple(rng.randint(-5, 5) for _ in range(k - 1)))
        b = RainbowMatrix(k, tuple(rng.randint(-5, 5) for _ in range(k - 1)))
        # product of dense forms is the rainbow with the color-series product
        assert (a @ b).dense() == a.dense() @ b.dense()
        inv = rainbow_invert(a)
        assert (inv.dense() @ a.dense()).is_identity()
        # colors of a product are the truncated-series product of color series
        prod_series = series_mul(a.color_series(), b.color_series())
        assert (a @ b).color_series() == prod_series


def test_rainbow_anti_transpose_invariance():
    rng = random.Random(3)
    for _ in range(40):
        k = rng.randint(1, 10)
        a = RainbowMatrix(k, tuple(rng.randint(-5, 5) for _ in range(k - 1))).dense()
        assert a.anti_transpose() == a


def test_mat_examples():
    m = IntMatrix.from_rows([[1, -1], [0, 1]])
    assert mat_inverse_unimodular(m).rows == ((1, 1), (0, 1))
    m3 = IntMatrix.from_rows([[-1, 1], [-1, 0]])
    assert mat_pow(m3, 2).rows == ((0, -1), (1, -1))
    a = IntMatrix.from_rows([[3, 1], [2, 5]])
    assert a @ IntMatrix.identity(2) == a


def test_mat_errors():
    with pytest.raises(MatrixError):
        IntMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(MatrixError):
        IntMatrix.from_rows([[1, 2]]) @ IntMatrix.from_rows([[1, 2]])
    with pytest.raises(MatrixError):
        mat_inverse_unimodular(IntMatrix.from_rows([[2, 0], [0, 1]]))
    with pytest.raises(MatrixError):
        mat_inverse_unimodular(IntMatrix.from_rows([[0, 0], [0, 0]]))


def test_unitriangular_inverse_matches_general():
    rng = random.Random(11)
    for _ in range(50):
        n = rng.randint(1, 8)
        rows = [
            [1 if i == j else (rng.randint(-4, 4) if j > i else 0) for j in range(n)]
            for i in range(n)
        ]
        m = IntMatrix.from_rows(rows)
        assert unitriangular_inverse(m) == mat_inverse_unimodular(m)
    with pytest.raises(MatrixError):
        unitriangular_inverse(IntMatrix.from_rows([[1, 0], [1, 1]]))


def test_one_minus_t_power():
    assert one_minus_t_power(3, 4) == S(1, 0, 0, -1)
    # exponent at or past the truncation order leaves only the constant term
    assert one_minus_t_power(9, 4).coeffs == (1, 0, 0, 0)
    assert one_minus_t_power(4, 4).coeffs == (1, 0, 0, 0)


def test_constructors_reject_bad_input():
    with pytest.raises(SeriesError):
        TruncatedSeries(())
    with pytest.raises(MatrixError):
        RainbowMatrix(0, ())
    with pytest.raises(MatrixError):
        RainbowMatrix(3, (1,))
    with pytest.raises(SeriesError):
        TruncatedSeries((1.5, 2))
