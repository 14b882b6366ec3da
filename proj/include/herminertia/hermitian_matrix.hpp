#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace herminertia {

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Complex> {
    using real_type = double;
    static constexpr bool exact = false;

    static Complex zero(Field) { return {0.0, 0.0}; }
    static Complex from_real(double r, Field) { return {r, 0.0}; }
    static bool is_real(const Complex& z) { return z.imag() == 0.0; }
    static bool is_zero(const Complex& z) { return z == Complex(0.0, 0.0); }
    static double real_part(const Complex& z) { return z.real(); }
    static bool belongs(const Complex&, Field f) { return f == Field::complex; }
    static Complex to_complex(const Complex& z) { return z; }
};

template <>
struct scalar_traits<QuadExt> {
    using real_type = Rational;
    static constexpr bool exact = true;

    static QuadExt zero(Field f) { return QuadExt::zero(field_radicand(f)); }
    static QuadExt from_real(const Rational& r, Field f) { return QuadExt::rational(r, field_radicand(f)); }
    static bool is_real(const QuadExt& x) { return x.is_real(); }
    static bool is_zero(const QuadExt& x) { return x.is_zero(); }
    static const Rational& real_part(const QuadExt& x) { return x.a(); }
    static bool belongs(const QuadExt& x, Field f) { return x.field() == f; }
    static Complex to_complex(const QuadExt& x) { return x.to_complex(); }
};

template <class T>
using real_t = typename scalar_traits<T>::real_type;

/// Square self-adjoint matrix over a single scalar field. Immutable once built;
/// every factory produces an exactly conjugate-symmetric matrix with real diagonal.
template <class T>
class HermitianMatrix {
public:
    using value_type = T;
    using real_type = real_t<T>;
    using traits = scalar_traits<T>;

    HermitianMatrix() : field_(default_field()) {}

    static HermitianMatrix zero(std::size_t n, Field field = default_field()) {
        check_field(field);
        return HermitianMatrix(n, field, std::vector<T>(n * n, traits::zero(field)));
    }

    static HermitianMatrix identity(std::size_t n, Field field = default_field()) {
        auto m = zero(n, field);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = traits::from_real(real_type(1), field);
        return m;
    }

    static HermitianMatrix diagonal(std::span<const real_type> values, Field field = default_field()) {
        auto m = zero(values.size(), field);
        for (std::size_t i = 0; i < values.size(); ++i) m.at(i, i) = traits::from_real(values[i], field);
        return m;
    }

    /// Builds from the row-major upper triangle (i <= j), n(n+1)/2 entries.
    static HermitianMatrix from_upper(std::size_t n, std::span<const T> upper,
                                      Field field = default_field()) {
        check_field(field);
        if (upper.size() != n * (n + 1) / 2)
            throw DimensionMismatch("upper triangle of a " + std::to_string(n) + "x" + std::to_string(n) +
                                    " matrix needs " + std::to_string(n * (n + 1) / 2) + " entries, got " +
                                    std::to_string(upper.size()));
        std::vector<T> e(n * n, traits::zero(field));
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j, ++k) {
                const T& x = upper[k];
                if (!traits::belongs(x, field)) throw FieldMismatch("entry outside the matrix field");
                if (i == j && !traits::is_real(x)) throw NonRealDiagonal(i);
                e[i * n + j] = x;
                e[j * n + i] = conj(x);
            }
        }
        return HermitianMatrix(n, field, std::move(e));
    }

    /// Builds from a full row-major grid and verifies self-adjointness: exact for quadratic
    /// fields, within `tol` (relative to entry size, floor 1) for complex input.
    static HermitianMatrix from_full(std::size_t n, std::span<const T> full, Field field = default_field(),
                                     double tol = 1e-12) {
        check_field(field);
        if (full.size() != n * n) throw DimensionMismatch("expected " + std::to_string(n * n) + " entries");
        std::vector<T> upper;
        upper.reserve(n * (n + 1) / 2);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                const T& x = full[i * n + j];
                const T& y = full[j * n + i];
                if constexpr (traits::exact) {
                    if (!traits::belongs(x, field) || !traits::belongs(y, field))
                        throw FieldMismatch("entry outside the matrix field");
                    if (i == j && !x.is_real()) throw NonRealDiagonal(i);
                    if (!(x == conj(y))) throw NotHermitian(i, j);
                    upper.push_back(x);
                } else {
                    const double scale = std::max({1.0, std::abs(x), std::abs(y)});
                    if (i == j) {
                        if (std::abs(x.imag()) > tol * scale) throw NonRealDiagonal(i);
                        upper.emplace_back(x.real(), 0.0);
                    } else {
                        if (std::abs(x - std::conj(y)) > tol * scale) throw NotHermitian(i, j);
                        upper.push_back(x);
                    }
                }
            }
        }
        return from_upper(n, upper, field);
    }

    std::size_t size() const noexcept { return n_; }
    Field field() const noexcept { return field_; }

    const T& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    real_type diag(std::size_t i) const { return traits::real_part(entries_[i * n_ + i]); }

    /// Row-major copy of the full grid.
    const std::vector<T>& entries() const noexcept { return entries_; }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& x : entries_) s += std::norm(traits::to_complex(x));
        return std::sqrt(s);
    }

    real_type trace() const {
        real_type t(0);
        for (std::size_t i = 0; i < n_; ++i) t += diag(i);
        return t;
    }

    friend bool operator==(const HermitianMatrix& x, const HermitianMatrix& y) {
        return x.n_ == y.n_ && x.field_ == y.field_ && x.entries_ == y.entries_;
    }

    /// Adopts an already self-adjoint grid. Callers guarantee the invariant.
    static HermitianMatrix adopt(std::size_t n, Field field, std::vector<T> entries) {
        return HermitianMatrix(n, field, std::move(entries));
    }

    static constexpr Field default_field() {
        return traits::exact ? Field::q_minus1 : Field::complex;
    }

private:
    HermitianMatrix(std::size_t n, Field field, std::vector<T> entries)
        : n_(n), field_(field), entries_(std::move(entries)) {}

    static void check_field(Field f) {
        if ((f == Field::complex) == traits::exact)
            throw FieldMismatch(std::string("field ") + field_name(f) + " does not match the scalar type");
    }

    T& at(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }

    std::size_t n_ = 0;
    Field field_;
    std::vector<T> entries_;
};

using ComplexMatrix = HermitianMatrix<Complex>;
using ExactMatrix = HermitianMatrix<QuadExt>;

/// Convenience wrapper over HermitianMatrix::from_upper.
template <class T>
HermitianMatrix<T> make_hermitian(std::size_t n, std::span<const T> upper,
                                  Field field = HermitianMatrix<T>::default_field()) {
    return HermitianMatrix<T>::from_upper(n, upper, field);
}

template <class T>
HermitianMatrix<T> make_hermitian(std::size_t n, std::initializer_list<T> upper,
                                  Field field = HermitianMatrix<T>::default_field()) {
    return HermitianMatrix<T>::from_upper(n, std::span<const T>(upper.begin(), upper.size()), field);
}

namespace detail {

template <class T>
void require_same_shape(const HermitianMatrix<T>& a, const HermitianMatrix<T>& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("dimensions " + std::to_string(a.size()) + " and " + std::to_string(b.size()) +
                                " differ");
    if (a.field() != b.field())
        throw FieldMismatch(std::string("fields ") + field_name(a.field()) + " and " + field_name(b.field()) +
                            " differ");
}

}  // namespace detail

/// Rows and columns listed in `keep`, in the given order.
template <class T>
HermitianMatrix<T> principal_submatrix(const HermitianMatrix<T>& a, std::span<const std::size_t> keep) {
    if (keep.empty()) throw EmptySelection();
    for (std::size_t k : keep)
        if (k >= a.size()) throw BadIndex("index " + std::to_string(k) + " out of range");
    const std::size_t m = keep.size();
    std::vector<T> e;
    e.reserve(m * m);
    for (std::size_t i : keep)
        for (std::size_t j : keep) e.push_back(a(i, j));
    return HermitianMatrix<T>::adopt(m, a.field(), std::move(e));
}

/// Principal submatrix with one row/column removed.
template <class T>
HermitianMatrix<T> delete_index(const HermitianMatrix<T>& a, std::size_t index) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (i != index) keep.push_back(i);
    return principal_submatrix(a, std::span<const std::size_t>(keep));
}

/// A - rI.
template <class T>
HermitianMatrix<T> shift(const HermitianMatrix<T>& a, const real_t<T>& r) {
    auto e = a.entries();
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i)
        e[i * n + i] -= scalar_traits<T>::from_real(r, a.field());
    return HermitianMatrix<T>::adopt(n, a.field(), std::move(e));
}

/// A - rP.
template <class T>
HermitianMatrix<T> pencil_shift(const HermitianMatrix<T>& a, const HermitianMatrix<T>& p, const real_t<T>& r) {
    detail::require_same_shape(a, p);
    auto e = a.entries();
    const auto& pe = p.entries();
    const T scale = scalar_traits<T>::from_real(r, a.field());
    for (std::size_t k = 0; k < e.size(); ++k)
        if (!scalar_traits<T>::is_zero(pe[k])) e[k] -= scale * pe[k];
    return HermitianMatrix<T>::adopt(a.size(), a.field(), std::move(e));
}

template <class T>
HermitianMatrix<T> operator+(const HermitianMatrix<T>& a, const HermitianMatrix<T>& b) {
    detail::require_same_shape(a, b);
    auto e = a.entries();
    const auto& be = b.entries();
    for (std::size_t k = 0; k < e.size(); ++k) e[k] += be[k];
    return HermitianMatrix<T>::adopt(a.size(), a.field(), std::move(e));
}

template <class T>
HermitianMatrix<T> operator-(const HermitianMatrix<T>& a, const HermitianMatrix<T>& b) {
    detail::require_same_shape(a, b);
    auto e = a.entries();
    const auto& be = b.entries();
    for (std::size_t k = 0; k < e.size(); ++k) e[k] -= be[k];
    return HermitianMatrix<T>::adopt(a.size(), a.field(), std::move(e));
}

template <class T>
HermitianMatrix<T> matrix_sum(const HermitianMatrix<T>& a, const HermitianMatrix<T>& b) {
    return a + b;
}

/// cA for real c.
template <class T>
HermitianMatrix<T> scale(const HermitianMatrix<T>& a, const real_t<T>& c) {
    auto e = a.entries();
    const T factor = scalar_traits<T>::from_real(c, a.field());
    for (auto& x : e) x *= factor;
    return HermitianMatrix<T>::adopt(a.size(), a.field(), std::move(e));
}

/// Floating embedding of any matrix.
template <class T>
ComplexMatrix embed(const HermitianMatrix<T>& a) {
    if constexpr (std::is_same_v<T, Complex>) {
        return a;
    } else {
        std::vector<Complex> e;
        e.reserve(a.entries().size());
        for (const auto& x : a.entries()) e.push_back(x.to_complex());
        const std::size_t n = a.size();
        for (std::size_t i = 0; i < n; ++i) e[i * n + i] = {e[i * n + i].real(), 0.0};
        return ComplexMatrix::adopt(n, Field::complex, std::move(e));
    }
}

/// S A S* for a square row-major S of matching size.
template <class T>
HermitianMatrix<T> congruence(std::span<const T> s, const HermitianMatrix<T>& a) {
    const std::size_t n = a.size();
    if (s.size() != n * n) throw DimensionMismatch("congruence factor must be " + std::to_string(n) + "x" +
                                                   std::to_string(n));
    using traits = scalar_traits<T>;
    const T zero = traits::zero(a.field());
    std::vector<T> sa(n * n, zero);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (traits::is_zero(s[i * n + k])) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!traits::is_zero(a(k, j))) sa[i * n + j] += s[i * n + k] * a(k, j);
        }
    std::vector<T> upper;
    upper.reserve(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            T x = zero;
            for (std::size_t k = 0; k < n; ++k)
                if (!traits::is_zero(sa[i * n + k]) && !traits::is_zero(s[j * n + k]))
                    x += sa[i * n + k] * conj(s[j * n + k]);
            if (i == j) x = traits::from_real(traits::real_part(x), a.field());
            upper.push_back(std::move(x));
        }
    return HermitianMatrix<T>::from_upper(n, upper, a.field());
}

/// A + alpha alpha*.
inline ComplexMatrix rank_one_update(const ComplexMatrix& a, std::span<const Complex> alpha) {
    const std::size_t n = a.size();
    if (alpha.size() != n) throw DimensionMismatch("vector length differs from matrix dimension");
    auto e = a.entries();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) e[i * n + j] += alpha[i] * std::conj(alpha[j]);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = {e[i * n + i].real(), 0.0};
    return ComplexMatrix::adopt(n, Field::complex, std::move(e));
}

}  // namespace herminertia
