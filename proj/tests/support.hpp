#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <herminertia/herminertia.hpp>

namespace test {

using namespace herminertia;

inline std::string data(const std::string& name) { return std::string(HERMINERTIA_TEST_DATA) + "/" + name; }

inline QuadExt gi(Rational a, Rational b = 0) { return QuadExt(std::move(a), std::move(b), -1); }
inline QuadExt eis(Rational a, Rational b = 0) { return QuadExt(std::move(a), std::move(b), -3); }

inline ExactMatrix exact_upper(std::size_t n, std::vector<QuadExt> upper) {
    const Field f = upper.empty() ? Field::q_minus1 : upper.front().field();
    return ExactMatrix::from_upper(n, std::span<const QuadExt>(upper), f);
}

inline ExactMatrix exact_diag(std::vector<Rational> d, Field f = Field::q_minus1) {
    return ExactMatrix::diagonal(std::span<const Rational>(d), f);
}

inline ComplexMatrix complex_upper(std::size_t n, std::vector<Complex> upper) {
    return ComplexMatrix::from_upper(n, std::span<const Complex>(upper));
}

inline ComplexMatrix complex_diag(std::vector<double> d) { return ComplexMatrix::diagonal(std::span<const double>(d)); }

inline void expect_spectrum(const Spectrum& s, const std::vector<double>& want, double tol, const char* where = "") {
    ASSERT_EQ(s.size(), want.size()) << where;
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(s[i], want[i], tol) << where << " index " << i;
}

}  // namespace test
