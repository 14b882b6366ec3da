#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "errors.hpp"
#include "rational.hpp"

namespace herminertia {

using Complex = std::complex<double>;

/// Entry field of a matrix: floating complex, Q(i), or Q(sqrt(-3)).
enum class Field { complex, q_minus1, q_minus3 };

inline const char* field_name(Field f) {
    switch (f) {
        case Field::complex: return "complex";
        case Field::q_minus1: return "q(-1)";
        case Field::q_minus3: return "q(-3)";
    }
    return "?";
}

inline std::optional<Field> parse_field(std::string_view s) {
    if (s == "complex") return Field::complex;
    if (s == "q(-1)") return Field::q_minus1;
    if (s == "q(-3)") return Field::q_minus3;
    return std::nullopt;
}

inline int field_radicand(Field f) {
    switch (f) {
        case Field::q_minus1: return -1;
        case Field::q_minus3: return -3;
        default: throw FieldMismatch("complex field has no radicand");
    }
}

/// Element a + b*sqrt(d) of the imaginary quadratic field Q(sqrt(d)), d in {-1, -3}.
class QuadExt {
public:
    QuadExt() = default;

    QuadExt(Rational a, Rational b, int d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
        if (d_ != -1 && d_ != -3) throw FieldMismatch("quadratic radicand must be -1 or -3");
    }

    /// Rational embedded in the field of radicand d.
    static QuadExt rational(Rational a, int d) { return QuadExt(std::move(a), Rational(0), d); }
    static QuadExt zero(int d) { return rational(Rational(0), d); }
    static QuadExt one(int d) { return rational(Rational(1), d); }
    /// i in Q(i).
    static QuadExt imag_unit() { return QuadExt(Rational(0), Rational(1), -1); }
    /// The primitive sixth root of unity (1 + sqrt(-3))/2.
    static QuadExt omega() { return QuadExt(Rational(1, 2), Rational(1, 2), -3); }

    const Rational& a() const noexcept { return a_; }
    const Rational& b() const noexcept { return b_; }
    int d() const noexcept { return d_; }
    Field field() const noexcept { return d_ == -1 ? Field::q_minus1 : Field::q_minus3; }

    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    bool is_real() const { return sgn(b_) == 0; }

    QuadExt conj() const { return QuadExt(a_, -b_, d_); }

    /// |x|^2 = a^2 - d b^2.
    Rational abs_squared() const { return Rational(a_ * a_ - d_ * (b_ * b_)); }

    Complex to_complex() const {
        const double root = std::sqrt(static_cast<double>(-d_));
        return {to_double(a_), to_double(b_) * root};
    }

    QuadExt operator-() const { return QuadExt(-a_, -b_, d_); }

    QuadExt& operator+=(const QuadExt& y) {
        check(y);
        a_ += y.a_;
        b_ += y.b_;
        return *this;
    }
    QuadExt& operator-=(const QuadExt& y) {
        check(y);
        a_ -= y.a_;
        b_ -= y.b_;
        return *this;
    }
    QuadExt& operator*=(const QuadExt& y) {
        check(y);
        if (sgn(b_) == 0 && sgn(y.b_) == 0) {
            a_ *= y.a_;
            return *this;
        }
        Rational a = a_ * y.a_ + d_ * (b_ * y.b_);
        Rational b = a_ * y.b_ + b_ * y.a_;
        a_ = std::move(a);
        b_ = std::move(b);
        return *this;
    }
    QuadExt& operator/=(const QuadExt& y) {
        check(y);
        if (y.is_zero()) throw DivisionByZero();
        if (sgn(y.b_) == 0) {
            a_ /= y.a_;
            b_ /= y.a_;
            return *this;
        }
        Rational n = y.abs_squared();
        *this *= y.conj();
        a_ /= n;
        b_ /= n;
        return *this;
    }

    QuadExt& operator*=(const Rational& s) {
        a_ *= s;
        b_ *= s;
        return *this;
    }

    friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
    friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
    friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
    friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
    friend QuadExt operator*(QuadExt x, const Rational& s) { return x *= s; }
    friend QuadExt operator*(const Rational& s, QuadExt x) { return x *= s; }

    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
    }

private:
    void check(const QuadExt& y) const {
        if (d_ != y.d_) throw MixedField();
    }

    Rational a_{0};
    Rational b_{0};
    int d_ = -1;
};

inline Complex conj(const Complex& x) { return std::conj(x); }
inline QuadExt conj(const QuadExt& x) { return x.conj(); }

inline double abs_squared(const Complex& x) { return std::norm(x); }
inline Rational abs_squared(const QuadExt& x) { return x.abs_squared(); }

/// Tagged scalar used where the field is only known at run time.
using Scalar = std::variant<Complex, QuadExt>;
/// Real result of abs_squared on a Scalar.
using RealValue = std::variant<double, Rational>;

enum class ArithOp { add, sub, mul, div };

inline Scalar conjugate(const Scalar& x) {
    return std::visit([](const auto& v) -> Scalar { return conj(v); }, x);
}

inline RealValue abs_squared(const Scalar& x) {
    return std::visit([](const auto& v) -> RealValue { return abs_squared(v); }, x);
}

inline Field field_of(const Scalar& x) {
    if (const auto* q = std::get_if<QuadExt>(&x)) return q->field();
    return Field::complex;
}

/// Field arithmetic on tagged scalars; both operands must share a field.
inline Scalar field_arithmetic(const Scalar& x, const Scalar& y, ArithOp op) {
    if (x.index() != y.index()) throw MixedField();
    if (const auto* qx = std::get_if<QuadExt>(&x)) {
        const auto& qy = std::get<QuadExt>(y);
        switch (op) {
            case ArithOp::add: return *qx + qy;
            case ArithOp::sub: return *qx - qy;
            case ArithOp::mul: return *qx * qy;
            case ArithOp::div: return *qx / qy;
        }
    }
    const auto& cx = std::get<Complex>(x);
    const auto& cy = std::get<Complex>(y);
    switch (op) {
        case ArithOp::add: return cx + cy;
        case ArithOp::sub: return cx - cy;
        case ArithOp::mul: return cx * cy;
        case ArithOp::div:
            if (cy == Complex(0.0, 0.0)) throw DivisionByZero();
            return cx / cy;
    }
    throw Error("unknown arithmetic operation");
}

// ---------------------------------------------------------------------------
// Text syntax
//
//   complex:  R | Ri | R+Ri | R-Ri        (R a floating literal; "i" alone means 1i)
//   exact:    p/q | p/q*s | p/q+p/q*s | p/q-p/q*s   (s = sqrt(d); p/q may be an integer)

namespace detail {

inline std::optional<double> parse_double(std::string_view s) {
    if (s.empty()) return std::nullopt;
    std::string buf(s);
    char* end = nullptr;
    double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size()) return std::nullopt;
    return v;
}

/// Position of the sign separating two terms, or npos.
inline std::size_t term_split(std::string_view s) {
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') return k;
    }
    return std::string_view::npos;
}

inline std::optional<double> parse_imag_coeff(std::string_view s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_double(s);
}

inline std::optional<Rational> parse_radical_coeff(std::string_view s) {
    // s is the part before "s" (may end in '*')
    if (!s.empty() && s.back() == '*') s.remove_suffix(1);
    if (s.empty() || s == "+") return Rational(1);
    if (s == "-") return Rational(-1);
    return parse_rational(s);
}

}  // namespace detail

inline std::optional<Complex> parse_complex(std::string_view s) {
    if (s.empty()) return std::nullopt;
    if (s.back() != 'i') {
        auto re = detail::parse_double(s);
        if (!re) return std::nullopt;
        return Complex(*re, 0.0);
    }
    std::string_view body = s.substr(0, s.size() - 1);
    auto split = detail::term_split(body);
    if (split == std::string_view::npos) {
        auto im = detail::parse_imag_coeff(body);
        if (!im) return std::nullopt;
        return Complex(0.0, *im);
    }
    auto re = detail::parse_double(body.substr(0, split));
    auto im = detail::parse_imag_coeff(body.substr(split));
    if (!re || !im) return std::nullopt;
    return Complex(*re, *im);
}

inline std::optional<QuadExt> parse_quad(std::string_view s, int d) {
    if (s.empty()) return std::nullopt;
    if (s.back() != 's') {
        auto a = parse_rational(s);
        if (!a) return std::nullopt;
        return QuadExt::rational(*a, d);
    }
    std::string_view body = s.substr(0, s.size() - 1);
    std::string_view stripped = body;
    if (!stripped.empty() && stripped.back() == '*') stripped.remove_suffix(1);
    // The separator must not be the sign of a single leading coefficient.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = stripped.size(); k-- > 1;) {
        if (stripped[k] == '+' || stripped[k] == '-') {
            split = k;
            break;
        }
    }
    if (split == std::string_view::npos) {
        auto b = detail::parse_radical_coeff(body);
        if (!b) return std::nullopt;
        return QuadExt(Rational(0), *b, d);
    }
    auto a = parse_rational(body.substr(0, split));
    auto b = detail::parse_radical_coeff(body.substr(split));
    if (!a || !b) return std::nullopt;
    return QuadExt(*a, *b, d);
}

inline std::string format_double(double x) {
    if (x == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string to_string(const Complex& z) {
    if (z.imag() == 0.0) return format_double(z.real());
    std::string im = format_double(std::abs(z.imag()));
    return format_double(z.real()) + (z.imag() < 0 ? "-" : "+") + im + "i";
}

inline std::string to_string(const QuadExt& x) {
    if (x.is_real()) return x.a().get_str();
    Rational mag = abs(x.b());
    std::string coeff = mag == 1 ? "" : mag.get_str() + "*";
    if (sgn(x.a()) == 0) return (sgn(x.b()) < 0 ? "-" : "") + coeff + "s";
    return x.a().get_str() + (sgn(x.b()) < 0 ? "-" : "+") + coeff + "s";
}

inline std::string to_string(const Scalar& x) {
    return std::visit([](const auto& v) { return to_string(v); }, x);
}

}  // namespace herminertia
