#include <gtest/gtest.h>

#include <numeric>

#include "support.hpp"

using namespace test;
using herminertia::detail::small_rational;

namespace {

// Unit upper-triangular S times a nonzero diagonal: always invertible.
std::vector<QuadExt> invertible(std::size_t n, int d, Rng& rng) {
    std::vector<QuadExt> s(n * n, QuadExt::zero(d));
    for (std::size_t i = 0; i < n; ++i) {
        Rational scale = small_rational(rng, 3);
        if (sgn(scale) == 0) scale = 1;
        for (std::size_t j = i; j < n; ++j)
            s[i * n + j] = (i == j ? QuadExt::one(d) : QuadExt(small_rational(rng, 2), small_rational(rng, 2), d)) * scale;
    }
    // Permute rows so the elimination sees varied pivots.
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t k = rng.below(i);
        for (std::size_t j = 0; j < n; ++j) std::swap(s[(i - 1) * n + j], s[k * n + j]);
    }
    return s;
}

}  // namespace

TEST(Properties, SylvesterInvariance) {
    Rng rng(2024);
    for (int t = 0; t < 500; ++t) {
        const std::size_t n = 1 + rng.below(6);
        const Field f = t % 2 ? Field::q_minus1 : Field::q_minus3;
        const auto a = random_exact_hermitian(n, f, rng);
        const auto s = invertible(n, field_radicand(f), rng);
        EXPECT_EQ(inertia_exact(congruence(std::span<const QuadExt>(s), a)), inertia_exact(a)) << io::format_hmat(a);
    }
}

TEST(Properties, InertiaSumsToOrder) {
    Rng rng(8);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + rng.below(7);
        const auto in = inertia_exact(random_exact_hermitian(n, Field::q_minus1, rng));
        EXPECT_EQ(in.n_plus + in.n_minus + in.n_zero, n);
    }
}

TEST(Properties, ExactAndFloatAgreeAwayFromZero) {
    Rng rng(77);
    int compared = 0;
    for (int t = 0; t < 200; ++t) {
        const auto a = random_exact_hermitian(1 + rng.below(6), t % 2 ? Field::q_minus1 : Field::q_minus3, rng);
        const Rational r = small_rational(rng, 5);
        const auto c = shift(embed(a), to_double(r));
        bool clear = true;
        for (double v : eigenvalues(c).values) clear = clear && (v == 0.0 || std::abs(v) > 1e-5);
        if (!clear) continue;
        ++compared;
        EXPECT_EQ(shifted_inertia(a, r, Mode::exact), inertia_float(c));
    }
    EXPECT_GT(compared, 150);
}

TEST(Properties, PositiveCountIsSubadditive) {
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + rng.below(6);
        const auto a = random_exact_hermitian(n, Field::q_minus3, rng);
        const auto b = random_exact_hermitian(n, Field::q_minus3, rng);
        EXPECT_LE(inertia_exact(a + b).n_plus, inertia_exact(a).n_plus + inertia_exact(b).n_plus);
    }
}

TEST(Properties, StaircaseIsRightContinuousAndNonincreasing) {
    // diag(3, 1, 1, -2): n+(A - rI) counts eigenvalues strictly above r.
    const auto a = exact_diag({3, 1, 1, -2});
    const std::vector<std::pair<Rational, std::size_t>> want{
        {Rational(-3), 4}, {Rational(-2), 3}, {Rational(0), 3}, {Rational(1), 1}, {Rational(2), 1}, {Rational(3), 0}};
    for (const auto& [r, count] : want) EXPECT_EQ(shifted_inertia(a, r, Mode::exact).n_plus, count) << r.get_str();

    Rng rng(12);
    for (int t = 0; t < 50; ++t) {
        const auto m = random_exact_hermitian(1 + rng.below(5), Field::q_minus1, rng);
        std::size_t last = m.size();
        for (int k = -100; k <= 100; ++k) {
            const auto now = shifted_inertia(m, Rational(k, 2), Mode::exact).n_plus;
            EXPECT_LE(now, last);
            last = now;
        }
        EXPECT_EQ(last, 0u);
    }
}

TEST(Properties, CauchyOnRandomBorders) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto a = random_complex_hermitian(2 + seed % 7, seed, 1e-6);
        const auto b = delete_index(a, seed % a.size());
        EXPECT_TRUE(matrix_interlaces(b, a).holds) << seed;
    }
}

TEST(Properties, TraceEqualsEigenvalueSum) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto a = random_complex_hermitian(1 + seed % 9, seed);
        const auto s = eigenvalues(a).values;
        EXPECT_NEAR(std::accumulate(s.begin(), s.end(), 0.0), a.trace(), 1e-10 * std::max(1.0, a.frobenius_norm()));
    }
}

TEST(Properties, RandomHermitianContract) {
    EXPECT_EQ(random_hermitian(4, Field::q_minus3, 9), random_hermitian(4, Field::q_minus3, 9));
    const auto q = std::get<ExactMatrix>(random_hermitian(3, Field::q_minus3, 1));
    for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(q(i, i).is_real());
    const auto one = std::get<ComplexMatrix>(random_hermitian(1, Field::complex, 4));
    EXPECT_EQ(one.size(), 1u);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto g = random_complex_hermitian(6, seed, 1e-6);
        const auto s = eigenvalues(g);
        for (std::size_t i = 0; i + 1 < s.size(); ++i) EXPECT_GE(s[i] - s[i + 1], 1e-6);
        for (const auto& e : g.entries()) EXPECT_LE(std::abs(e), 10.0);
    }
    EXPECT_THROW(random_hermitian(6, Field::complex, 1, 100.0), GapUnreachable);
}
