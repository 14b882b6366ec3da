// Independent references: Eigen's solvers for the floating paths, and the characteristic
// polynomial with Descartes' rule of signs for exact inertia.
#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "support.hpp"

using namespace test;

namespace {

Eigen::MatrixXcd to_eigen(const ComplexMatrix& a) {
    Eigen::MatrixXcd m(a.size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) m(i, j) = a(i, j);
    return m;
}

std::vector<double> descending(const Eigen::VectorXd& v) {
    std::vector<double> out(v.data(), v.data() + v.size());
    std::sort(out.rbegin(), out.rend());
    return out;
}

// Faddeev-LeVerrier: coefficients c_0..c_n of det(xI - A), all rational for Hermitian A.
std::vector<Rational> char_poly(const ExactMatrix& a) {
    const std::size_t n = a.size();
    const int d = field_radicand(a.field());
    using Mat = std::vector<QuadExt>;
    auto mul = [&](const Mat& x, const Mat& y) {
        Mat z(n * n, QuadExt::zero(d));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t j = 0; j < n; ++j) z[i * n + j] += x[i * n + k] * y[k * n + j];
        return z;
    };
    Mat am(n * n, QuadExt::zero(d));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) am[i * n + j] = a(i, j);

    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    Mat m(n * n, QuadExt::zero(d));
    for (std::size_t k = 1; k <= n; ++k) {
        m = mul(am, m);
        for (std::size_t i = 0; i < n; ++i) m[i * n + i] += QuadExt::rational(c[n - k + 1], d);
        const Mat am_m = mul(am, m);
        QuadExt tr = QuadExt::zero(d);
        for (std::size_t i = 0; i < n; ++i) tr += am_m[i * n + i];
        EXPECT_TRUE(tr.is_real());
        c[n - k] = -tr.a() / Rational(static_cast<long>(k));
    }
    return c;
}

std::size_t sign_changes(const std::vector<Rational>& c) {
    std::size_t changes = 0;
    int last = 0;
    for (const auto& x : c) {
        const int s = sgn(x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

// For a real-rooted polynomial Descartes' bound is exact.
Inertia descartes_inertia(const ExactMatrix& a) {
    auto c = char_poly(a);
    std::size_t zeros = 0;
    while (zeros < c.size() && sgn(c[zeros]) == 0) ++zeros;
    std::vector<Rational> flipped(c);
    for (std::size_t k = 1; k < flipped.size(); k += 2) flipped[k] = -flipped[k];
    return {sign_changes(c), sign_changes(flipped), zeros};
}

}  // namespace

TEST(Oracle, EigenSelfAdjointSolver) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(seed);
        const auto a = random_complex_hermitian(1 + rng.below(10), rng);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(a), Eigen::EigenvaluesOnly);
        const double tol = 1e-12 * std::max(1.0, a.frobenius_norm());
        expect_spectrum(eigenvalues(a), descending(es.eigenvalues()), tol, "seed");
    }
}

TEST(Oracle, EigenGeneralizedSolver) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed + 1000);
        const std::size_t n = 1 + rng.below(6);
        const auto p = random_positive_definite(n, rng);
        const auto a = random_complex_hermitian(n, rng);
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(a), to_eigen(p), Eigen::EigenvaluesOnly);
        const auto want = descending(es.eigenvalues());
        double scale = 1.0;
        for (double v : want) scale = std::max(scale, std::abs(v));
        expect_spectrum(eigenvalues(pencil_reduce(p, a)), want, 1e-9 * scale);
    }
}

TEST(Oracle, CharacteristicPolynomialFixedCases) {
    // det(xI - K2 Laplacian) = x^2 - 2x.
    EXPECT_EQ(char_poly(exact_upper(2, {gi(1), gi(-1), gi(1)})), (std::vector<Rational>{0, -2, 1}));
    // Directed 3-cycle with i-kind arcs: x^3 - 3x.
    EXPECT_EQ(char_poly(exact_upper(3, {gi(0), gi(0, 1), gi(0, -1), gi(0), gi(0, 1), gi(0)})),
              (std::vector<Rational>{0, -3, 0, 1}));
}

TEST(Oracle, DescartesMatchesExactInertia) {
    Rng rng(314);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 1 + rng.below(5);
        const Field f = t % 2 ? Field::q_minus1 : Field::q_minus3;
        auto a = random_exact_hermitian(n, f, rng);
        if (t % 3 == 0) {
            // Force a kernel: congruence of a diagonal with zeros.
            std::vector<Rational> d;
            for (std::size_t i = 0; i < n; ++i) d.push_back(rng.chance(0.4) ? Rational(0) : herminertia::detail::small_rational(rng, 3));
            std::vector<QuadExt> s;
            for (std::size_t i = 0; i < n * n; ++i)
                s.push_back(i / n == i % n ? QuadExt::one(field_radicand(f))
                            : i / n < i % n ? QuadExt(herminertia::detail::small_rational(rng, 2), herminertia::detail::small_rational(rng, 2), field_radicand(f))
                                            : QuadExt::zero(field_radicand(f)));
            a = congruence(std::span<const QuadExt>(s), exact_diag(d, f));
        }
        EXPECT_EQ(inertia_exact(a), descartes_inertia(a)) << io::format_hmat(a);
        const Rational r = herminertia::detail::small_rational(rng, 4);
        EXPECT_EQ(shifted_inertia(a, r, Mode::exact), descartes_inertia(shift(a, r))) << io::format_hmat(a);
    }
}
