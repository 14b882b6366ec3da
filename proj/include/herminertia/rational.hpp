#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

namespace herminertia {

/// Arbitrary-precision rational, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

inline double to_double(const Rational& q) { return q.get_d(); }

/// Exact value of a finite double.
inline Rational from_double(double x) {
    Rational q(x);
    q.canonicalize();
    return q;
}

inline int sign(const Rational& q) { return sgn(q); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace detail

/// Parses `p`, `p/q`, or a plain decimal `x.y` (no exponent) into an exact rational.
inline std::optional<Rational> parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) return std::nullopt;

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!detail::all_digits(num) || !detail::all_digits(den)) return std::nullopt;
        Integer d(std::string(den), 10);
        if (d == 0) return std::nullopt;
        value = Rational(Integer(std::string(num), 10), d);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto whole = s.substr(0, dot);
        auto frac = s.substr(dot + 1);
        if (whole.empty() && frac.empty()) return std::nullopt;
        if ((!whole.empty() && !detail::all_digits(whole)) ||
            (!frac.empty() && !detail::all_digits(frac)))
            return std::nullopt;
        std::string digits = std::string(whole) + std::string(frac);
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        value = Rational(Integer(digits.empty() ? "0" : digits, 10), scale);
    } else {
        if (!detail::all_digits(s)) return std::nullopt;
        value = Rational(Integer(std::string(s), 10));
    }
    value.canonicalize();
    if (negative) value = -value;
    return value;
}

/// Exact square root when q is the square of a rational.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0 || mpz_perfect_square_p(q.get_den_mpz_t()) == 0)
        return std::nullopt;
    Integer num, den;
    mpz_sqrt(num.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(den.get_mpz_t(), q.get_den_mpz_t());
    return Rational(num, den);
}

/// Rational bounds lo <= sqrt(q) <= hi with hi - lo <= 2^-bits (q >= 0).
inline std::pair<Rational, Rational> sqrt_bounds(const Rational& q, unsigned bits) {
    // sqrt(p/r) = sqrt(p*r*4^bits) / (r*2^bits)
    Integer scaled = q.get_num() * q.get_den();
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * bits);
    Integer root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    Integer denom = q.get_den();
    mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), bits);
    Rational lo(root, denom);
    lo.canonicalize();
    Rational hi(root + (root * root == scaled ? 0 : 1), denom);
    hi.canonicalize();
    return {lo, hi};
}

namespace detail {

inline Rational simplest_positive(const Rational& lo, const Rational& hi) {
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    if (lo == fl) return Rational(fl);
    if (fl + 1 <= hi) return Rational(fl + 1);
    Rational tail = 1 / simplest_positive(1 / (hi - fl), 1 / (lo - fl));
    return Rational(fl) + tail;
}

}  // namespace detail

/// The rational with the smallest denominator in [lo, hi] (smallest magnitude on ties).
inline Rational simplest_between(Rational lo, Rational hi) {
    if (lo > hi) std::swap(lo, hi);
    if (sgn(lo) <= 0 && sgn(hi) >= 0) return Rational(0);
    if (sgn(hi) < 0) return -detail::simplest_positive(-hi, -lo);
    return detail::simplest_positive(lo, hi);
}

}  // namespace herminertia
