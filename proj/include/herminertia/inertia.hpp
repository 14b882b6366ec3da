#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "eigen.hpp"
#include "hermitian_matrix.hpp"

namespace herminertia {

/// Counts of positive, negative and zero eigenvalues.
struct Inertia {
    std::size_t n_plus = 0;
    std::size_t n_minus = 0;
    std::size_t n_zero = 0;

    std::size_t size() const noexcept { return n_plus + n_minus + n_zero; }
    friend bool operator==(const Inertia&, const Inertia&) = default;
};

inline std::string to_string(const Inertia& in) {
    return "(" + std::to_string(in.n_plus) + ", " + std::to_string(in.n_minus) + ", " + std::to_string(in.n_zero) +
           ")";
}

enum class Mode { floating, exact };

/// Relative zero-classification factor used when no tolerance is given.
inline constexpr double kDefaultRelativeTolerance = 1e-9;
inline constexpr double kAbsoluteToleranceFloor = 1e-12;

/// tau = rel * max(1, ||A||_F), never below the absolute floor.
inline double zero_tolerance(double frobenius, double rel = kDefaultRelativeTolerance) {
    return std::max(kAbsoluteToleranceFloor, rel * std::max(1.0, frobenius));
}

template <class T>
double zero_tolerance(const HermitianMatrix<T>& a, double rel = kDefaultRelativeTolerance) {
    return zero_tolerance(a.frobenius_norm(), rel);
}

inline Inertia inertia_of_spectrum(const Spectrum& s, double tau) {
    Inertia in;
    for (double v : s.values) {
        if (v > tau)
            ++in.n_plus;
        else if (v < -tau)
            ++in.n_minus;
        else
            ++in.n_zero;
    }
    return in;
}

/// Eigenvalue counting with zero band [-tau, tau]; tau defaults to zero_tolerance(A).
template <class T>
Inertia inertia_float(const HermitianMatrix<T>& a, std::optional<double> tau = std::nullopt) {
    const auto c = embed(a);
    const double t = tau ? *tau : zero_tolerance(c);
    if (t < 0.0) throw Error("tolerance must be nonnegative");
    return inertia_of_spectrum(eigenvalues(c), t);
}

/// Exact inertia by symmetric congruence elimination. Each step takes the nonzero diagonal
/// pivot of largest magnitude (lowest index on ties) and passes to its Schur complement; a
/// zero diagonal with a nonzero off-diagonal x eliminates [[0,x],[conj x,0]], which has
/// eigenvalues +-|x|.
inline Inertia inertia_exact(const ExactMatrix& a) {
    const std::size_t n = a.size();
    std::vector<QuadExt> m = a.entries();
    auto at = [&](std::size_t i, std::size_t j) -> QuadExt& { return m[i * n + j]; };
    std::vector<std::size_t> active(n);
    for (std::size_t i = 0; i < n; ++i) active[i] = i;
    Inertia in;

    while (!active.empty()) {
        std::optional<std::size_t> pivot;
        Rational best;
        for (std::size_t i : active) {
            const Rational& v = at(i, i).a();
            if (sgn(v) == 0) continue;
            Rational mag = abs(v);
            if (!pivot || mag > best) {
                pivot = i;
                best = std::move(mag);
            }
        }

        if (pivot) {
            const std::size_t k = *pivot;
            const Rational p = at(k, k).a();
            (sgn(p) > 0 ? in.n_plus : in.n_minus) += 1;
            active.erase(std::find(active.begin(), active.end(), k));
            const Rational inv = 1 / p;
            for (std::size_t ii = 0; ii < active.size(); ++ii) {
                const std::size_t i = active[ii];
                if (at(i, k).is_zero()) continue;
                const QuadExt ti = at(i, k) * inv;
                for (std::size_t jj = ii; jj < active.size(); ++jj) {
                    const std::size_t j = active[jj];
                    const QuadExt& ckj = at(k, j);
                    if (ckj.is_zero()) continue;
                    at(i, j) -= ti * ckj;
                    if (i != j) at(j, i) = at(i, j).conj();
                }
            }
            continue;
        }

        std::optional<std::pair<std::size_t, std::size_t>> block;
        for (std::size_t ii = 0; ii < active.size() && !block; ++ii)
            for (std::size_t jj = ii + 1; jj < active.size(); ++jj)
                if (!at(active[ii], active[jj]).is_zero()) {
                    block = {active[ii], active[jj]};
                    break;
                }
        if (!block) {
            in.n_zero += active.size();
            break;
        }

        const auto [bi, bj] = *block;
        const QuadExt x = at(bi, bj);
        const QuadExt one = QuadExt::one(x.d());
        const QuadExt inv_x = one / x;
        const QuadExt inv_xbar = inv_x.conj();
        in.n_plus += 1;
        in.n_minus += 1;
        active.erase(std::find(active.begin(), active.end(), bi));
        active.erase(std::find(active.begin(), active.end(), bj));
        for (std::size_t ii = 0; ii < active.size(); ++ii) {
            const std::size_t k = active[ii];
            const QuadExt& mki = at(k, bi);
            const QuadExt& mkj = at(k, bj);
            if (mki.is_zero() && mkj.is_zero()) continue;
            const QuadExt u = mkj * inv_x;     // multiplies row bi
            const QuadExt v = mki * inv_xbar;  // multiplies row bj
            for (std::size_t jj = ii; jj < active.size(); ++jj) {
                const std::size_t l = active[jj];
                QuadExt delta = QuadExt::zero(x.d());
                if (!u.is_zero() && !at(bi, l).is_zero()) delta += u * at(bi, l);
                if (!v.is_zero() && !at(bj, l).is_zero()) delta += v * at(bj, l);
                if (delta.is_zero()) continue;
                at(k, l) -= delta;
                if (k != l) at(l, k) = at(k, l).conj();
            }
        }
    }
    return in;
}

inline Inertia inertia_exact(const ComplexMatrix&) {
    throw FieldMismatch("exact inertia requires a quadratic-field matrix");
}

template <class T>
Inertia inertia(const HermitianMatrix<T>& a, Mode mode, std::optional<double> tau = std::nullopt) {
    return mode == Mode::exact ? inertia_exact(a) : inertia_float(a, tau);
}

/// Inertia of A - rI.
template <class T>
Inertia shifted_inertia(const HermitianMatrix<T>& a, const real_t<T>& r, Mode mode,
                        std::optional<double> tau = std::nullopt) {
    return inertia(shift(a, r), mode, tau);
}

/// Inertia of A - rP.
template <class T>
Inertia pencil_inertia(const HermitianMatrix<T>& a, const HermitianMatrix<T>& p, const real_t<T>& r, Mode mode,
                       std::optional<double> tau = std::nullopt) {
    return inertia(pencil_shift(a, p, r), mode, tau);
}

}  // namespace herminertia
