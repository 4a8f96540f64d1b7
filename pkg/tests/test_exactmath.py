import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohsys.exactmath import (
    BinaryForm,
    FieldMatrix,
    PrimeField,
    Rational,
    generic_rank,
    kernel_dimension,
    multiplication_matrix,
    vanishing_divisor_degree,
)

F101 = PrimeField(101)
F7 = PrimeField(7)


def form(*coeffs, field=F101):
    return BinaryForm(field, tuple(coeffs))


X = form(1, 0)
Y = form(0, 1)
ZERO = BinaryForm.zero(F101)


class TestPrimeField:
    def test_rejects_composite(self):
        with pytest.raises(ValueError):
            PrimeField(100)

    def test_inverse(self):
        for v in range(1, 101):
            assert F101.inv(v) * v % 101 == 1

    def test_element_arithmetic(self):
        a = F101.element(40)
        b = F101.element(70)
        assert int(a + b) == 9
        assert int(a - b) == (40 - 70) % 101
        assert int(a * b) == 40 * 70 % 101
        assert int((a / b) * b) == 40
        assert int(-a) == 61


class TestBinaryForm:
    def test_zero_normalization(self):
        assert form(0, 0, 0).is_zero
        assert form(0, 0, 0).degree == -1

    def test_nonzero_keeps_slot(self):
        # leading-zero coefficients are legitimate: the form y has degree 1
        assert form(0, 1).degree == 1

    def test_add_degree_mismatch(self):
        with pytest.raises(ValueError):
            X.add(form(1, 0, 0))

    def test_evaluate(self):
        f = form(1, 2, 3)  # x^2 + 2xy + 3y^2
        assert f.evaluate(1, 0) == 1
        assert f.evaluate(0, 1) == 3
        assert f.evaluate(1, 1) == 6

    def test_compose_linear_matches_evaluation(self):
        rng = random.Random(5)
        for _ in range(20):
            f = form(*[rng.randrange(101) for _ in range(4)])
            m = [rng.randrange(101) for _ in range(4)]
            g = f.compose_linear(*m)
            for b, c in [(1, 0), (0, 1), (1, 1), (2, 5), (17, 3)]:
                xb = (m[0] * b + m[1] * c) % 101
                yb = (m[2] * b + m[3] * c) % 101
                if f.is_zero:
                    assert g.is_zero
                else:
                    assert g.evaluate(b, c) == f.evaluate(xb, yb)


class TestRational:
    @given(st.integers(-10**9, 10**9), st.integers(1, 10**9))
    @settings(max_examples=200)
    def test_parse_print_round_trip(self, p, q):
        r = Rational(p, q)
        assert Rational(str(r)) == r

    def test_round_trip_bulk(self):
        rng = random.Random(0)
        for _ in range(10**4):
            r = Rational(rng.randrange(-10**12, 10**12), rng.randrange(1, 10**12))
            assert Rational(str(r)) == r
            assert r.denominator > 0

    def test_exact_reduction(self):
        assert Rational(2, 4) + Rational(1, 4) == Fraction(3, 4)
        assert (Fraction(7, 2) - Fraction(1, 2)).denominator == 1


class TestKernelDimension:
    def test_identity(self):
        assert kernel_dimension(FieldMatrix.identity(F101, 2)) == 0

    def test_zero_map(self):
        assert kernel_dimension(FieldMatrix.zeros(F101, 1, 3)) == 3

    def test_dependent_rows(self):
        m = FieldMatrix.from_rows(F101, [[1, 2], [2, 4]])
        assert m.rank() == 1
        assert kernel_dimension(m) == 1

    @given(
        st.integers(1, 6),
        st.integers(1, 6),
        st.integers(0, 2**32 - 1),
    )
    @settings(max_examples=100)
    def test_rank_nullity(self, rows, cols, seed):
        rng = random.Random(seed)
        m = FieldMatrix.from_rows(
            F7, [[rng.randrange(7) for _ in range(cols)] for _ in range(rows)]
        )
        assert m.rank() + kernel_dimension(m) == cols

    def test_rank_transpose_invariant(self):
        rng = random.Random(3)
        for _ in range(25):
            m = FieldMatrix.from_rows(
                F101, [[rng.randrange(101) for _ in range(5)] for _ in range(3)]
            )
            assert m.rank() == m.transpose().rank()


class TestMultiplicationMatrix:
    def test_by_x_from_degree_zero(self):
        assert multiplication_matrix(X, 0).to_lists() == [[1], [0]]

    def test_zero_form_shape(self):
        m = multiplication_matrix(ZERO, 2, slot_degree=3)
        assert (m.rows, m.cols) == (6, 3)
        assert m.rank() == 0

    def test_zero_form_needs_slot(self):
        with pytest.raises(ValueError):
            multiplication_matrix(ZERO, 2)

    def test_x_plus_y_from_degree_one(self):
        m = multiplication_matrix(form(1, 1), 1)
        assert m.to_lists() == [[1, 0], [1, 1], [0, 1]]

    @given(st.integers(0, 2**32 - 1), st.integers(0, 3), st.integers(0, 3), st.integers(0, 4))
    @settings(max_examples=60)
    def test_composition(self, seed, df, dg, j):
        rng = random.Random(seed)
        f = form(*[rng.randrange(1, 101) for _ in range(df + 1)])
        g = form(*[rng.randrange(1, 101) for _ in range(dg + 1)])
        lhs = multiplication_matrix(f.mul(g), j)
        rhs = multiplication_matrix(f, j + g.degree).mul(multiplication_matrix(g, j))
        assert lhs.to_lists() == rhs.to_lists()


class TestVanishingDivisorDegree:
    def test_no_common_zero(self):
        assert vanishing_divisor_degree([X, Y]) == 0

    def test_common_factor_x(self):
        assert vanishing_divisor_degree([X.mul(X), X.mul(Y)]) == 1

    def test_single_form(self):
        assert vanishing_divisor_degree([X.mul(X).mul(Y)]) == 3

    def test_all_zero_rejected(self):
        with pytest.raises(ValueError):
            vanishing_divisor_degree([ZERO, ZERO])

    def test_zero_members_ignored(self):
        assert vanishing_divisor_degree([ZERO, X]) == 1

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=60)
    def test_scalar_rescaling_invariance(self, seed):
        rng = random.Random(seed)
        forms = [form(*[rng.randrange(101) for _ in range(rng.randrange(2, 5))]) for _ in range(3)]
        if all(f.is_zero for f in forms):
            forms.append(X)
        scaled = [f.scale(rng.randrange(1, 101)) for f in forms]
        assert vanishing_divisor_degree(forms) == vanishing_divisor_degree(scaled)

    @given(st.integers(0, 2**32 - 1))
    @settings(max_examples=60, deadline=None)
    def test_coordinate_change_invariance(self, seed):
        rng = random.Random(seed)
        forms = [form(*[rng.randrange(101) for _ in range(4)]) for _ in range(3)]
        if all(f.is_zero for f in forms):
            forms.append(X)
        while True:
            a, b, c, d = (rng.randrange(101) for _ in range(4))
            if (a * d - b * c) % 101:
                break
        moved = [f.compose_linear(a, b, c, d) for f in forms]
        assert vanishing_divisor_degree(forms) == vanishing_divisor_degree(moved)


class TestGenericRank:
    def test_unit_matrix(self):
        assert generic_rank([[X, ZERO], [ZERO, X]]) == 2

    def test_degenerate_product_matrix(self):
        # rows proportional over the function field: rank 1
        x2 = X.mul(X)
        xy = X.mul(Y)
        y2 = Y.mul(Y)
        assert generic_rank([[x2, xy], [xy, y2]]) == 1

    def test_empty(self):
        assert generic_rank([]) == 0
