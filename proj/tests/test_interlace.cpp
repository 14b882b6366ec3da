#include <gtest/gtest.h>

#include <limits>

#include "support.hpp"

using namespace test;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

RelationOptions with(Method m, Mode mode = Mode::floating) { return {m, mode, kDefaultRelativeTolerance, {}}; }

}  // namespace

TEST(Roots, ExtendedIndexing) {
    const RealRootedPoly f{3, 1};
    EXPECT_EQ(extended_root(f, 0), kInf);
    EXPECT_EQ(extended_root(f, -4), kInf);
    EXPECT_EQ(extended_root(f, 1), 3);
    EXPECT_EQ(extended_root(f, 2), 1);
    EXPECT_EQ(extended_root(f, 5), -kInf);
}

TEST(Roots, ConstructionSortsDescending) {
    const RealRootedPoly f(std::vector<double>{1, 3, -2, 3});
    EXPECT_EQ(f.roots(), (std::vector<double>{3, 3, 1, -2}));
    EXPECT_EQ(f.degree(), 4u);
}

TEST(Roots, Nu) {
    const RealRootedPoly f{2, 1, 1, -1};
    EXPECT_EQ(nu(f, 0), 3u);
    EXPECT_EQ(nu(f, 1), 1u);
    EXPECT_EQ(nu(f, 2), 0u);
    EXPECT_EQ(nu(f, -5), 4u);
    EXPECT_EQ(nu(RealRootedPoly{}, 7), 0u);
}

TEST(ShiftDominance, Spectral) {
    const RealRootedPoly f{2, 0}, g{3, 1};
    EXPECT_TRUE(shift_dominates_spectral(f, g, 1).holds);
    const auto r = shift_dominates_spectral(f, g, 0);
    ASSERT_FALSE(r.holds);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(r.witness->kind, Witness::Kind::index);
    EXPECT_EQ(r.witness->index, 1);
    EXPECT_EQ(r.witness->lhs, 3);
    EXPECT_EQ(r.witness->rhs, 2);
    EXPECT_TRUE(shift_dominates_spectral(f, f, 0).holds);
    // Negative m compares against r_0(g) = +inf and always fails.
    EXPECT_FALSE(shift_dominates_spectral(f, g, -1).holds);
    EXPECT_FALSE(shift_dominates_nu(f, g, -1).holds);
}

TEST(ShiftDominance, ByCounts) {
    const RealRootedPoly f{2, 0}, g{3, 1};
    const auto samples = nu_sample_set(f, g);
    EXPECT_EQ(samples, (std::vector<double>{3, 2, 1, 0, -1}));
    EXPECT_TRUE(shift_dominates_nu(f, g, 1).holds);
    const auto r = shift_dominates_nu(f, g, 0);
    ASSERT_FALSE(r.holds);
    EXPECT_EQ(r.witness->kind, Witness::Kind::shift);
    EXPECT_EQ(r.witness->shift, 2);
    EXPECT_EQ(r.witness->lhs, 1);  // nu(g, 2)
    EXPECT_EQ(r.witness->rhs, 0);  // nu(f, 2)
    EXPECT_TRUE(shift_dominates_nu(f, f, 0).holds);
}

TEST(ShiftDominance, RoutesAgreeOnEdgeCases) {
    const std::vector<RealRootedPoly> polys{{}, {0}, {1, 1}, {2, 0}, {3, 1}, {2, 2, 2}, {5, -5}, {1, 0, -1}};
    for (const auto& f : polys)
        for (const auto& g : polys)
            for (long m = -3; m <= 3; ++m)
                EXPECT_EQ(shift_dominates_spectral(f, g, m).holds, shift_dominates_nu(f, g, m).holds)
                    << "m=" << m;
}

TEST(Interlacing, Examples) {
    EXPECT_TRUE(interlaces(RealRootedPoly{0}, RealRootedPoly{2, 0}).holds);
    EXPECT_TRUE(interlaces(RealRootedPoly{2, 0}, RealRootedPoly{2, 0}).holds);
    const auto r = interlaces_spectral(RealRootedPoly{3, 0}, RealRootedPoly{2, 0});
    ASSERT_FALSE(r.holds);
    EXPECT_EQ(r.witness->index, 1);
    EXPECT_FALSE(interlaces_nu(RealRootedPoly{3, 0}, RealRootedPoly{2, 0}).holds);
    // Degree condition: deg g must be deg f or deg f + 1.
    const auto d = interlaces_spectral(RealRootedPoly{1, 0}, RealRootedPoly{1});
    ASSERT_FALSE(d.holds);
    EXPECT_EQ(d.witness->kind, Witness::Kind::degree);
    EXPECT_FALSE(interlaces_nu(RealRootedPoly{1, 0}, RealRootedPoly{1}).holds);
    EXPECT_FALSE(interlaces(RealRootedPoly{}, RealRootedPoly{2, 1}).holds);
}

TEST(Compatibility, Examples) {
    EXPECT_TRUE(compatible(RealRootedPoly{0, 0}, RealRootedPoly{2, 0}).holds);
    const RealRootedPoly f{4, 1, -2};
    EXPECT_TRUE(compatible(f, f).holds);
    const auto r = compatible_spectral(RealRootedPoly{5, 4}, RealRootedPoly{1, 0});
    ASSERT_FALSE(r.holds);
    EXPECT_EQ(r.witness->index, 2);
    EXPECT_EQ(r.witness->lhs, 4);
    EXPECT_EQ(r.witness->rhs, 1);
    EXPECT_FALSE(compatible_nu(RealRootedPoly{5, 4}, RealRootedPoly{1, 0}).holds);
    // Symmetric, and weaker than interlacing.
    EXPECT_TRUE(compatible(RealRootedPoly{2, 0}, RealRootedPoly{0, 0}).holds);
    EXPECT_FALSE(interlaces(RealRootedPoly{2, 0}, RealRootedPoly{0, 0}).holds);
    // The degree may differ by one in either direction.
    EXPECT_TRUE(compatible(RealRootedPoly{1}, RealRootedPoly{2, 0}).holds);
    EXPECT_TRUE(compatible(RealRootedPoly{2, 0}, RealRootedPoly{1}).holds);
    EXPECT_FALSE(compatible(RealRootedPoly{2, 1, 0}, RealRootedPoly{1}).holds);
}

TEST(Relations, DisagreementCarriesBothReports) {
    const RealRootedPoly f{2, 0}, g{3, 1};
    const RelationReport ok = RelationReport::success();
    const RelationReport bad = shift_dominates_spectral(f, g, 0);
    try {
        herminertia::detail::agree(ok, bad, "test");
        FAIL() << "expected a disagreement";
    } catch (const RelationDisagreement& e) {
        EXPECT_TRUE(e.direct().holds);
        EXPECT_FALSE(e.counted().holds);
        EXPECT_NE(std::string(e.what()).find("test"), std::string::npos);
    }
}

TEST(Sampling, MergedBreakpoints) {
    EXPECT_EQ(merged_breakpoints({1.0, 1.0 + 1e-13, 0.0, -2.0}, 1e-12), (std::vector<double>{1.0 + 1e-13, 0.0, -2.0}));
    EXPECT_EQ(float_sample_set({3.0, 1.0}, 1e-12), (std::vector<double>{3.0, 1.0, 0.0}));
    EXPECT_EQ(float_sample_set({}, 1e-12), (std::vector<double>{0.0}));
}

TEST(Sampling, IntervalPointsSeparateRoots) {
    const std::vector<double> roots{2.0, 0.0, 1.0, 1.0 + 1e-14};
    const auto s = interval_sample_points(roots, 1e-12);
    ASSERT_EQ(s.size(), 4u);
    EXPECT_EQ(s.front(), -1);
    EXPECT_EQ(s.back(), 3);
    EXPECT_GT(s[1], 0);
    EXPECT_LT(s[1], 1);
    EXPECT_GT(s[2], 1);
    EXPECT_LT(s[2], 2);
    // Simple rationals keep exact eliminations small.
    EXPECT_EQ(s[1], Rational(1, 2));
    EXPECT_EQ(s[2], Rational(3, 2));
}

TEST(MatrixRelations, ShiftDominanceBothMethods) {
    const auto a = exact_diag({2, 0});
    const auto b = exact_diag({3, 1});
    for (auto m : {Method::spectral, Method::inertia, Method::both}) {
        EXPECT_TRUE(matrix_shift_dominates(a, b, 1, with(m)).holds);
        EXPECT_FALSE(matrix_shift_dominates(a, b, 0, with(m)).holds);
    }
    EXPECT_TRUE(matrix_shift_dominates(a, b, 1, with(Method::inertia, Mode::exact)).holds);
    EXPECT_FALSE(matrix_shift_dominates(a, b, 0, with(Method::both, Mode::exact)).holds);
    EXPECT_TRUE(matrix_shift_dominates(a, a, 0).holds);
    EXPECT_THROW(matrix_shift_dominates(embed(a), embed(b), 0, with(Method::inertia, Mode::exact)), FieldMismatch);
    EXPECT_THROW(matrix_shift_dominates(a, exact_diag({1, 1}, Field::q_minus3), 0), FieldMismatch);
}

TEST(MatrixRelations, ExplicitExactShifts) {
    const auto a = exact_diag({2, 0});
    const auto b = exact_diag({3, 1});
    RelationOptions opts{Method::inertia, Mode::exact, kDefaultRelativeTolerance, {Rational(5, 2)}};
    const auto r = matrix_shift_dominates(a, b, 0, opts);
    ASSERT_FALSE(r.holds);
    EXPECT_EQ(r.witness->shift, 2.5);
    opts.shifts = {Rational(-10)};
    EXPECT_TRUE(matrix_shift_dominates(a, b, 0, opts).holds);
}

TEST(MatrixRelations, RankOneUpdateInterlaces) {
    const auto a = complex_upper(3, {4.0, Complex(1, 1), 0.0, 1.0, Complex(0, 2), -2.0});
    const std::vector<Complex> alpha{Complex(1, 0), Complex(0, 1), Complex(2, 0)};
    const auto b = rank_one_update(a, alpha);
    EXPECT_TRUE(matrix_interlaces(a, b).holds);
    EXPECT_TRUE(matrix_shift_dominates(b, a, 1).holds);
    EXPECT_FALSE(matrix_interlaces(b, a).holds);
    EXPECT_TRUE(matrix_compatible(b, a).holds);
}

TEST(MatrixRelations, BorderedSubmatrixInterlaces) {
    const auto a = complex_upper(3, {1.0, Complex(2, 1), Complex(0, 1), 4.0, 3.0, -1.0});
    const auto b = delete_index(a, 2);
    EXPECT_TRUE(matrix_interlaces(b, a).holds);
}
