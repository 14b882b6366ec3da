#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "errors.hpp"
#include "hermitian_matrix.hpp"

namespace herminertia {

/// Real eigenvalues sorted nonincreasing: values[0] is the largest.
struct Spectrum {
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }

    friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

namespace detail {

/// Unitary reduction of a Hermitian matrix to real symmetric tridiagonal form.
/// On return `diag` holds the diagonal and `off[k]` couples k and k+1 (off[n-1] = 0).
inline void tridiagonalize(std::vector<Complex> a, std::size_t n, std::vector<double>& diag,
                           std::vector<double>& off) {
    auto at = [&](std::size_t i, std::size_t j) -> Complex& { return a[i * n + j]; };
    diag.assign(n, 0.0);
    off.assign(n, 0.0);
    std::vector<Complex> v(n), p(n), w(n);

    for (std::size_t k = 0; k + 2 < n; ++k) {
        // Householder vector for column k below the diagonal.
        double tail = 0.0;
        for (std::size_t i = k + 2; i < n; ++i) tail += std::norm(at(i, k));
        if (tail == 0.0) continue;

        const Complex x0 = at(k + 1, k);
        const double xnorm = std::sqrt(std::norm(x0) + tail);
        const Complex phase = std::abs(x0) == 0.0 ? Complex(1.0, 0.0) : x0 / std::abs(x0);
        const Complex alpha = -phase * xnorm;

        std::fill(v.begin(), v.end(), Complex(0.0, 0.0));
        v[k + 1] = x0 - alpha;
        for (std::size_t i = k + 2; i < n; ++i) v[i] = at(i, k);
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
        const double beta = 2.0 / vnorm2;

        // p = beta A v on the trailing block, then w = p - (beta v*p / 2) v.
        for (std::size_t i = k + 1; i < n; ++i) {
            Complex s(0.0, 0.0);
            for (std::size_t j = k + 1; j < n; ++j) s += at(i, j) * v[j];
            p[i] = beta * s;
        }
        Complex vp(0.0, 0.0);
        for (std::size_t i = k + 1; i < n; ++i) vp += std::conj(v[i]) * p[i];
        const double half = 0.5 * beta * vp.real();
        for (std::size_t i = k + 1; i < n; ++i) w[i] = p[i] - half * v[i];

        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                at(i, j) -= v[i] * std::conj(w[j]) + w[i] * std::conj(v[j]);

        at(k + 1, k) = alpha;
        at(k, k + 1) = std::conj(alpha);
        for (std::size_t i = k + 2; i < n; ++i) {
            at(i, k) = 0.0;
            at(k, i) = 0.0;
        }
    }

    // A diagonal unitary similarity makes the off-diagonal real and nonnegative.
    for (std::size_t i = 0; i < n; ++i) diag[i] = at(i, i).real();
    for (std::size_t i = 0; i + 1 < n; ++i) off[i] = std::abs(at(i + 1, i));
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit-shift QL iteration.
inline void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::size_t max_sweeps) {
    const std::size_t n = d.size();
    const double eps = std::numeric_limits<double>::epsilon();
    std::size_t sweeps = 0;

    for (std::size_t l = 0; l < n; ++l) {
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (++sweeps > max_sweeps)
                throw ConvergenceFailure("tridiagonal QL exceeded " + std::to_string(max_sweeps) + " sweeps");

            // Wilkinson-style shift from the leading 2x2 block.
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool deflated = false;
            for (std::size_t i = m; i-- > l;) {
                const double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (deflated) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        } while (m != l);
    }
}

}  // namespace detail

/// Eigenvalues of a Hermitian matrix, nonincreasing. Householder tridiagonalization
/// followed by implicit QL; backward stable.
inline Spectrum eigenvalues(const ComplexMatrix& a) {
    const std::size_t n = a.size();
    std::vector<double> d, e;
    detail::tridiagonalize(a.entries(), n, d, e);
    detail::tridiagonal_ql(d, e, std::max<std::size_t>(30 * n, 30));
    std::sort(d.begin(), d.end(), std::greater<>());
    return Spectrum{std::move(d)};
}

/// Exact matrices are embedded into floating point first.
inline Spectrum eigenvalues(const ExactMatrix& a) { return eigenvalues(embed(a)); }

/// Dense lower-triangular factor L with P = L L*.
struct CholeskyFactor {
    std::size_t n = 0;
    std::vector<Complex> lower;  // row-major, zero above the diagonal

    const Complex& operator()(std::size_t i, std::size_t j) const { return lower[i * n + j]; }
};

inline CholeskyFactor cholesky(const ComplexMatrix& p) {
    const std::size_t n = p.size();
    CholeskyFactor f{n, std::vector<Complex>(n * n, Complex(0.0, 0.0))};
    auto l = [&](std::size_t i, std::size_t j) -> Complex& { return f.lower[i * n + j]; };
    double maxdiag = 0.0;
    for (std::size_t i = 0; i < n; ++i) maxdiag = std::max(maxdiag, std::abs(p.diag(i)));
    const double tol = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * maxdiag;

    for (std::size_t j = 0; j < n; ++j) {
        double pivot = p.diag(j);
        for (std::size_t k = 0; k < j; ++k) pivot -= std::norm(l(j, k));
        if (!(pivot > tol)) throw NotPositiveDefinite(j);
        const double root = std::sqrt(pivot);
        l(j, j) = root;
        for (std::size_t i = j + 1; i < n; ++i) {
            Complex s = p(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / root;
        }
    }
    return f;
}

/// B = L^-1 A L^-* where P = L L*. The spectrum of B is the root multiset of det(lambda P - A).
inline ComplexMatrix pencil_reduce(const ComplexMatrix& p, const ComplexMatrix& a) {
    detail::require_same_shape(a, p);
    const std::size_t n = a.size();
    const auto f = cholesky(p);

    // X = L^-1 A, column by column.
    std::vector<Complex> x = a.entries();
    for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t i = 0; i < n; ++i) {
            Complex s = x[i * n + col];
            for (std::size_t k = 0; k < i; ++k) s -= f(i, k) * x[k * n + col];
            x[i * n + col] = s / f(i, i);
        }
    }
    // B = X L^-*  <=>  B* = L^-1 X*, and B is Hermitian so B = L^-1 X*.
    std::vector<Complex> y(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) y[i * n + j] = std::conj(x[j * n + i]);
    for (std::size_t col = 0; col < n; ++col) {
        for (std::size_t i = 0; i < n; ++i) {
            Complex s = y[i * n + col];
            for (std::size_t k = 0; k < i; ++k) s -= f(i, k) * y[k * n + col];
            y[i * n + col] = s / f(i, i);
        }
    }
    std::vector<Complex> upper;
    upper.reserve(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        upper.emplace_back(y[i * n + i].real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) upper.push_back(0.5 * (y[i * n + j] + std::conj(y[j * n + i])));
    }
    return ComplexMatrix::from_upper(n, upper);
}

}  // namespace herminertia
