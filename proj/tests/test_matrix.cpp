#include <gtest/gtest.h>

#include "support.hpp"

using namespace test;

TEST(HermitianMatrix, FromUpperMirrorsConjugates) {
    const auto one = exact_upper(1, {gi(5)});
    EXPECT_EQ(one.size(), 1u);
    EXPECT_EQ(one(0, 0), gi(5));

    const auto k2 = exact_upper(2, {gi(1), gi(-1), gi(1)});
    EXPECT_EQ(k2(1, 0), gi(-1));

    const auto w = QuadExt::omega();
    const auto arc = exact_upper(2, {eis(0), w, eis(0)});
    EXPECT_EQ(arc(0, 1), w);
    EXPECT_EQ(arc(1, 0), w.conj());
    EXPECT_EQ(arc.field(), Field::q_minus3);
}

TEST(HermitianMatrix, ConstructorErrors) {
    EXPECT_THROW(exact_upper(2, {gi(1, 1), gi(0), gi(1)}), NonRealDiagonal);
    EXPECT_THROW(complex_upper(2, {Complex(1, 1), 0.0, 1.0}), NonRealDiagonal);
    EXPECT_THROW(exact_upper(2, {gi(1), gi(0)}), DimensionMismatch);
    EXPECT_THROW(ExactMatrix::from_upper(1, std::vector<QuadExt>{eis(1)}, Field::q_minus1), FieldMismatch);
    EXPECT_THROW(ExactMatrix::zero(2, Field::complex), FieldMismatch);

    try {
        exact_upper(3, {gi(1), gi(0), gi(0), gi(1, 2), gi(0), gi(1)});
        FAIL() << "expected NonRealDiagonal";
    } catch (const NonRealDiagonal& e) {
        EXPECT_EQ(e.index(), 1u);
    }
}

TEST(HermitianMatrix, FromFullChecksSymmetry) {
    const std::vector<QuadExt> good{gi(2), gi(1, 1), gi(1, -1), gi(2)};
    EXPECT_NO_THROW(ExactMatrix::from_full(2, std::span<const QuadExt>(good), Field::q_minus1));
    const std::vector<QuadExt> bad{gi(2), gi(1, 1), gi(1, 1), gi(2)};
    try {
        ExactMatrix::from_full(2, std::span<const QuadExt>(bad), Field::q_minus1);
        FAIL() << "expected NotHermitian";
    } catch (const NotHermitian& e) {
        EXPECT_EQ(e.row(), 0u);
        EXPECT_EQ(e.col(), 1u);
    }

    const std::vector<Complex> nearly{2.0, Complex(1, 1), Complex(1, -1 + 1e-14), 2.0};
    EXPECT_NO_THROW(ComplexMatrix::from_full(2, std::span<const Complex>(nearly)));
    const std::vector<Complex> off{2.0, Complex(1, 1), Complex(1, -1 + 1e-6), 2.0};
    EXPECT_THROW(ComplexMatrix::from_full(2, std::span<const Complex>(off)), NotHermitian);
}

TEST(HermitianMatrix, PrincipalSubmatrix) {
    const auto a = exact_diag({3, 1, -2});
    const std::vector<std::size_t> all{0, 1, 2}, ends{0, 2}, none;
    EXPECT_EQ(principal_submatrix(a, std::span<const std::size_t>(all)), a);
    EXPECT_EQ(principal_submatrix(a, std::span<const std::size_t>(ends)), exact_diag({3, -2}));
    EXPECT_THROW(principal_submatrix(a, std::span<const std::size_t>(none)), EmptySelection);
    const std::vector<std::size_t> out{0, 3};
    EXPECT_THROW(principal_submatrix(a, std::span<const std::size_t>(out)), BadIndex);

    // Bordered [[B, alpha], [alpha*, a]] loses its border.
    const auto bordered = exact_upper(3, {gi(1), gi(2, 1), gi(0, 1), gi(4), gi(3), gi(-1)});
    const auto b = exact_upper(2, {gi(1), gi(2, 1), gi(4)});
    EXPECT_EQ(delete_index(bordered, 2), b);
}

TEST(HermitianMatrix, Shifts) {
    const auto a = exact_diag({2, 0});
    EXPECT_EQ(shift(a, Rational(0)), a);
    EXPECT_EQ(shift(a, Rational(1)), exact_diag({1, -1}));
    const auto k2 = exact_upper(2, {gi(1), gi(-1), gi(1)});
    EXPECT_EQ(shift(k2, Rational(2)), exact_upper(2, {gi(-1), gi(-1), gi(-1)}));

    const auto p = exact_diag({1, 4});
    const auto a2 = exact_diag({2, 4});
    EXPECT_EQ(pencil_shift(a2, p, Rational(1)), exact_diag({1, 0}));
    EXPECT_EQ(pencil_shift(a2, p, Rational(0)), a2);
    EXPECT_EQ(pencil_shift(k2, ExactMatrix::identity(2), Rational(3, 2)), shift(k2, Rational(3, 2)));
    EXPECT_THROW(pencil_shift(a2, exact_diag({1, 1, 1}), Rational(1)), DimensionMismatch);
    EXPECT_THROW(pencil_shift(a2, exact_diag({1, 1}, Field::q_minus3), Rational(1)), FieldMismatch);
}

TEST(HermitianMatrix, Arithmetic) {
    const auto a = exact_upper(2, {gi(1), gi(2, 3), gi(-1)});
    EXPECT_EQ(a + ExactMatrix::zero(2), a);
    EXPECT_EQ(exact_diag({1, 0}) + exact_diag({0, 1}), ExactMatrix::identity(2));
    EXPECT_EQ(matrix_sum(a, a) - a, a);
    EXPECT_EQ(scale(a, Rational(-1)) + a, ExactMatrix::zero(2));
    EXPECT_THROW(a + exact_diag({1, 2, 3}), DimensionMismatch);

    const auto neg = inertia_exact(scale(a, Rational(-1)));
    const auto pos = inertia_exact(a);
    EXPECT_EQ(neg.n_plus, pos.n_minus);
    EXPECT_EQ(neg.n_minus, pos.n_plus);
}

TEST(HermitianMatrix, NormsAndTrace) {
    const auto a = complex_upper(2, {3.0, Complex(0, 4), 0.0});
    EXPECT_DOUBLE_EQ(a.frobenius_norm(), std::sqrt(9.0 + 16.0 + 16.0));
    EXPECT_DOUBLE_EQ(a.trace(), 3.0);
    EXPECT_EQ(exact_diag({1, Rational(1, 2)}).trace(), Rational(3, 2));
}

TEST(HermitianMatrix, EmbedAndRankOne) {
    const auto w = QuadExt::omega();
    const auto arc = exact_upper(2, {eis(1), -w, eis(1)});
    const auto c = embed(arc);
    EXPECT_EQ(c.field(), Field::complex);
    EXPECT_NEAR(c(0, 1).imag(), -std::sqrt(3.0) / 2, 1e-15);
    EXPECT_EQ(c(1, 0), std::conj(c(0, 1)));

    const std::vector<Complex> alpha{Complex(1, 0), Complex(0, 1)};
    const auto up = rank_one_update(ComplexMatrix::zero(2), alpha);
    EXPECT_EQ(up(0, 0), Complex(1, 0));
    EXPECT_EQ(up(0, 1), Complex(0, -1));
    EXPECT_EQ(up(1, 1), Complex(1, 0));
}

TEST(HermitianMatrix, CongruenceStaysHermitian) {
    const auto a = exact_upper(2, {gi(1), gi(1, 1), gi(-2)});
    const std::vector<QuadExt> s{gi(1), gi(0, 1), gi(2, -1), gi(Rational(1, 2))};
    const auto b = congruence(std::span<const QuadExt>(s), a);
    EXPECT_TRUE(b(0, 0).is_real());
    EXPECT_EQ(b(1, 0), b(0, 1).conj());
    const std::vector<QuadExt> identity{gi(1), gi(0), gi(0), gi(1)};
    EXPECT_EQ(congruence(std::span<const QuadExt>(identity), a), a);
}
