#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eigen.hpp"
#include "errors.hpp"
#include "inertia.hpp"

namespace herminertia {

/// Real-rooted polynomial held as its root multiset, nonincreasing.
class RealRootedPoly {
public:
    RealRootedPoly() = default;
    explicit RealRootedPoly(std::vector<double> roots) : roots_(std::move(roots)) {
        std::sort(roots_.begin(), roots_.end(), std::greater<>());
    }
    RealRootedPoly(std::initializer_list<double> roots) : RealRootedPoly(std::vector<double>(roots)) {}
    explicit RealRootedPoly(const Spectrum& s) : roots_(s.values) {}

    std::size_t degree() const noexcept { return roots_.size(); }
    const std::vector<double>& roots() const noexcept { return roots_; }

    friend bool operator==(const RealRootedPoly&, const RealRootedPoly&) = default;

private:
    std::vector<double> roots_;
};

/// r_i(f) with 1-based i: +inf for i < 1, -inf for i > deg f.
inline double extended_root(const RealRootedPoly& f, long i) {
    if (i < 1) return std::numeric_limits<double>::infinity();
    if (static_cast<std::size_t>(i) > f.degree()) return -std::numeric_limits<double>::infinity();
    return f.roots()[static_cast<std::size_t>(i - 1)];
}

/// Number of roots strictly greater than r.
inline std::size_t nu(const RealRootedPoly& f, double r) {
    const auto& roots = f.roots();
    return static_cast<std::size_t>(
        std::count_if(roots.begin(), roots.end(), [r](double x) { return x > r; }));
}

/// Where a relation fails: an index, a shift, or the degree condition.
struct Witness {
    enum class Kind { index, shift, degree };
    Kind kind = Kind::index;
    long index = 0;
    double shift = 0.0;
    double lhs = 0.0;  ///< left side of the violated inequality
    double rhs = 0.0;  ///< right side of the violated inequality
};

/// Verdict of a relation check. A witness is present exactly when the relation fails.
/// `indeterminate` marks a failure that sits inside the floating tolerance band.
struct RelationReport {
    bool holds = true;
    std::optional<Witness> witness;
    bool indeterminate = false;

    static RelationReport success() { return {}; }
    static RelationReport failure(Witness w) { return {false, w, false}; }
};

inline RelationReport index_failure(long i, double lhs, double rhs) {
    return RelationReport::failure({Witness::Kind::index, i, 0.0, lhs, rhs});
}

// ---------------------------------------------------------------------------
// Root-list relations

/// r_{i+m}(g) <= r_i(f) for all i, by direct comparison of sorted roots.
inline RelationReport shift_dominates_spectral(const RealRootedPoly& f, const RealRootedPoly& g, long m) {
    const long deg_f = static_cast<long>(f.degree());
    const long deg_g = static_cast<long>(g.degree());
    const long last = std::max(deg_f, deg_g - m);
    for (long i = 1; i <= last; ++i) {
        const double lhs = extended_root(g, i + m);
        const double rhs = extended_root(f, i);
        if (!(lhs <= rhs)) return index_failure(i, lhs, rhs);
    }
    return RelationReport::success();
}

/// ng(r) - nf(r) <= m on every sample r. The witness records (ng(r), nf(r)).
template <class CountF, class CountG, class Shift>
RelationReport counts_dominate(CountF&& nf, CountG&& ng, std::span<const Shift> samples, long m) {
    for (const Shift& r : samples) {
        const auto a = static_cast<long>(ng(r));
        const auto b = static_cast<long>(nf(r));
        if (a - b > m) {
            double at;
            if constexpr (std::is_same_v<Shift, Rational>)
                at = to_double(r);
            else
                at = static_cast<double>(r);
            return RelationReport::failure({Witness::Kind::shift, 0, at, double(a), double(b)});
        }
    }
    return RelationReport::success();
}

/// Distinct roots of f and g (descending) plus one point below the smallest root.
inline std::vector<double> nu_sample_set(const RealRootedPoly& f, const RealRootedPoly& g) {
    std::vector<double> s = f.roots();
    s.insert(s.end(), g.roots().begin(), g.roots().end());
    std::sort(s.begin(), s.end(), std::greater<>());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    s.push_back(s.empty() ? 0.0 : s.back() - 1.0);
    return s;
}

/// nu(g, r) - nu(f, r) <= m for every real r, checked on nu_sample_set. Sufficient because
/// both counts are right-continuous staircases that only change at roots.
inline RelationReport shift_dominates_nu(const RealRootedPoly& f, const RealRootedPoly& g, long m) {
    const auto samples = nu_sample_set(f, g);
    return counts_dominate([&](double r) { return nu(f, r); }, [&](double r) { return nu(g, r); },
                           std::span<const double>(samples), m);
}

/// f interlaces g: counts satisfy 0 <= ng - nf <= 1 on the samples.
template <class CountF, class CountG, class Shift>
RelationReport interlaces_by_counts(CountF&& nf, CountG&& ng, std::span<const Shift> samples) {
    auto upper = counts_dominate(nf, ng, samples, 1);
    if (!upper.holds) return upper;
    return counts_dominate(ng, nf, samples, 0);
}

/// f and g compatible: |ng - nf| <= 1 on the samples.
template <class CountF, class CountG, class Shift>
RelationReport compatible_by_counts(CountF&& nf, CountG&& ng, std::span<const Shift> samples) {
    auto upper = counts_dominate(nf, ng, samples, 1);
    if (!upper.holds) return upper;
    return counts_dominate(ng, nf, samples, 1);
}

/// Definition: deg f <= deg g <= deg f + 1 and r_i(g) >= r_i(f) >= r_{i+1}(g).
inline RelationReport interlaces_spectral(const RealRootedPoly& f, const RealRootedPoly& g) {
    const long n = static_cast<long>(f.degree());
    const long m = static_cast<long>(g.degree());
    if (!(n <= m && m <= n + 1))
        return RelationReport::failure({Witness::Kind::degree, 0, 0.0, double(n), double(m)});
    for (long i = 1; i <= m; ++i) {
        const double ri_f = extended_root(f, i);
        if (!(extended_root(g, i) >= ri_f)) return index_failure(i, ri_f, extended_root(g, i));
        if (!(ri_f >= extended_root(g, i + 1))) return index_failure(i, extended_root(g, i + 1), ri_f);
    }
    return RelationReport::success();
}

/// Same relation through root counting: 0 <= nu(g,r) - nu(f,r) <= 1.
inline RelationReport interlaces_nu(const RealRootedPoly& f, const RealRootedPoly& g) {
    const auto samples = nu_sample_set(f, g);
    return interlaces_by_counts([&](double r) { return nu(f, r); }, [&](double r) { return nu(g, r); },
                                std::span<const double>(samples));
}

/// Definition: |deg f - deg g| <= 1 and r_{i-1}(g) >= r_i(f) >= r_{i+1}(g).
inline RelationReport compatible_spectral(const RealRootedPoly& f, const RealRootedPoly& g) {
    const long n = static_cast<long>(f.degree());
    const long m = static_cast<long>(g.degree());
    if (std::abs(n - m) > 1)
        return RelationReport::failure({Witness::Kind::degree, 0, 0.0, double(n), double(m)});
    const long last = std::max(n, m) + 1;
    for (long i = 1; i <= last; ++i) {
        const double ri_f = extended_root(f, i);
        if (!(extended_root(g, i - 1) >= ri_f)) return index_failure(i, ri_f, extended_root(g, i - 1));
        if (!(ri_f >= extended_root(g, i + 1))) return index_failure(i, extended_root(g, i + 1), ri_f);
    }
    return RelationReport::success();
}

inline RelationReport compatible_nu(const RealRootedPoly& f, const RealRootedPoly& g) {
    const auto samples = nu_sample_set(f, g);
    return compatible_by_counts([&](double r) { return nu(f, r); }, [&](double r) { return nu(g, r); },
                                std::span<const double>(samples));
}

namespace detail {

inline std::string describe(const RelationReport& r) {
    if (r.holds) return "holds";
    const auto& w = *r.witness;
    switch (w.kind) {
        case Witness::Kind::index:
            return "fails at i=" + std::to_string(w.index) + " (" + std::to_string(w.lhs) + " vs " +
                   std::to_string(w.rhs) + ")";
        case Witness::Kind::shift:
            return "fails at r=" + std::to_string(w.shift) + " (" + std::to_string(w.lhs) + " vs " +
                   std::to_string(w.rhs) + ")";
        case Witness::Kind::degree:
            return "fails degree condition (" + std::to_string(w.lhs) + ", " + std::to_string(w.rhs) + ")";
    }
    return "fails";
}

}  // namespace detail

/// The direct comparison and the counting criterion reached different verdicts.
class RelationDisagreement : public MethodDisagreement {
public:
    RelationDisagreement(const std::string& what, RelationReport direct, RelationReport counted)
        : MethodDisagreement(what + ": direct comparison " + detail::describe(direct) + ", counting criterion " +
                             detail::describe(counted)),
          direct_(std::move(direct)),
          counted_(std::move(counted)) {}

    const RelationReport& direct() const noexcept { return direct_; }
    const RelationReport& counted() const noexcept { return counted_; }

private:
    RelationReport direct_, counted_;
};

namespace detail {

inline RelationReport agree(const RelationReport& direct, const RelationReport& counted, const char* what) {
    if (direct.holds != counted.holds) throw RelationDisagreement(what, direct, counted);
    return direct;
}

}  // namespace detail

/// f interlaces g; both routes are evaluated and must agree.
inline RelationReport interlaces(const RealRootedPoly& f, const RealRootedPoly& g) {
    return detail::agree(interlaces_spectral(f, g), interlaces_nu(f, g), "interlacing");
}

/// f and g compatible (symmetric); both routes are evaluated and must agree.
inline RelationReport compatible(const RealRootedPoly& f, const RealRootedPoly& g) {
    return detail::agree(compatible_spectral(f, g), compatible_nu(f, g), "compatibility");
}

/// Shift dominance through both routes.
inline RelationReport shift_dominates(const RealRootedPoly& f, const RealRootedPoly& g, long m) {
    return detail::agree(shift_dominates_spectral(f, g, m), shift_dominates_nu(f, g, m), "shift dominance");
}

// ---------------------------------------------------------------------------
// Sampling the shift r for matrix inertia checks

/// Cluster representatives of the roots (descending). Roots within tau of the top of a
/// cluster join it; the representative is the cluster maximum.
inline std::vector<double> merged_breakpoints(std::vector<double> roots, double tau) {
    std::sort(roots.begin(), roots.end(), std::greater<>());
    std::vector<double> reps;
    for (double r : roots)
        if (reps.empty() || reps.back() - r > tau) reps.push_back(r);
    return reps;
}

/// Merged roots plus a point one below the minimum.
inline std::vector<double> float_sample_set(std::vector<double> roots, double tau) {
    auto s = merged_breakpoints(std::move(roots), tau);
    s.push_back(s.empty() ? 0.0 : s.back() - 1.0);
    return s;
}

/// Simple rational shifts strictly between consecutive merged roots, plus one point below and one
/// above. A right-continuous staircase takes every one of its values at these points.
inline std::vector<Rational> interval_sample_points(std::vector<double> roots, double tau) {
    auto reps = merged_breakpoints(std::move(roots), tau);
    std::vector<Rational> s;
    if (reps.empty()) {
        s.emplace_back(0);
        return s;
    }
    std::reverse(reps.begin(), reps.end());
    s.push_back(from_double(std::floor(reps.front()) - 1.0));
    for (std::size_t k = 0; k + 1 < reps.size(); ++k) {
        // The upper cluster reaches down to reps[k + 1] - tau; pick the simplest rational in
        // the middle half of what is left, which keeps exact eliminations cheap.
        const double gap = std::max(reps[k + 1] - tau - reps[k], (reps[k + 1] - reps[k]) / 2);
        s.push_back(simplest_between(from_double(reps[k] + gap / 4), from_double(reps[k] + 3 * gap / 4)));
    }
    s.push_back(from_double(std::ceil(reps.back()) + 1.0));
    return s;
}

// ---------------------------------------------------------------------------
// Matrix relations

enum class Method { spectral, inertia, both };

struct RelationOptions {
    Method method = Method::both;
    /// floating: sample at merged eigenvalues; exact: inertia by congruence at rational shifts.
    Mode mode = Mode::floating;
    double rel_tol = kDefaultRelativeTolerance;
    /// Exact-mode shifts. Empty means midpoints between the computed eigenvalues.
    std::vector<Rational> shifts;
};

namespace detail {

template <class T, class SpectralFn, class CountsFn>
RelationReport matrix_relation(const HermitianMatrix<T>& a, const HermitianMatrix<T>& b,
                               const RelationOptions& opts, SpectralFn&& spectral, CountsFn&& counts,
                               const char* what) {
    if (a.field() != b.field()) throw FieldMismatch("matrices come from different fields");
    const RealRootedPoly fa(eigenvalues(a));
    const RealRootedPoly fb(eigenvalues(b));

    std::optional<RelationReport> direct;
    if (opts.method != Method::inertia) direct = spectral(fa, fb);
    if (opts.method == Method::spectral) return *direct;

    std::vector<double> roots = fa.roots();
    roots.insert(roots.end(), fb.roots().begin(), fb.roots().end());
    const double tau = zero_tolerance(std::max(a.frobenius_norm(), b.frobenius_norm()), opts.rel_tol);

    RelationReport counted;
    if (opts.mode == Mode::exact) {
        if constexpr (!scalar_traits<T>::exact) {
            throw FieldMismatch("exact mode requires quadratic-field matrices");
        } else {
            const auto samples = opts.shifts.empty() ? interval_sample_points(roots, tau) : opts.shifts;
            auto np = [](const HermitianMatrix<T>& x) {
                return [&x](const Rational& r) { return inertia_exact(shift(x, r)).n_plus; };
            };
            counted = counts(np(a), np(b), std::span<const Rational>(samples));
        }
    } else {
        const auto samples = float_sample_set(roots, tau);
        const auto ca = embed(a);
        const auto cb = embed(b);
        auto np = [tau](const ComplexMatrix& x) {
            return [&x, tau](double r) { return inertia_float(shift(x, r), tau).n_plus; };
        };
        counted = counts(np(ca), np(cb), std::span<const double>(samples));
    }
    if (!direct) return counted;
    return agree(*direct, counted, what);
}

}  // namespace detail

/// lambda_{i+m}(B) <= lambda_i(A) for all i, decided by sorted eigenvalues, by the inertia
/// criterion n+(B - rI) - n+(A - rI) <= m, or by both (which must agree).
template <class T>
RelationReport matrix_shift_dominates(const HermitianMatrix<T>& a, const HermitianMatrix<T>& b, long m,
                                      const RelationOptions& opts = {}) {
    return detail::matrix_relation(
        a, b, opts, [m](const auto& fa, const auto& fb) { return shift_dominates_spectral(fa, fb, m); },
        [m](auto&& na, auto&& nb, auto samples) { return counts_dominate(na, nb, samples, m); },
        "shift dominance");
}

/// A interlaces B.
template <class T>
RelationReport matrix_interlaces(const HermitianMatrix<T>& a, const HermitianMatrix<T>& b,
                                 const RelationOptions& opts = {}) {
    return detail::matrix_relation(
        a, b, opts, [](const auto& fa, const auto& fb) { return interlaces_spectral(fa, fb); },
        [](auto&& na, auto&& nb, auto samples) { return interlaces_by_counts(na, nb, samples); }, "interlacing");
}

/// A and B compatible.
template <class T>
RelationReport matrix_compatible(const HermitianMatrix<T>& a, const HermitianMatrix<T>& b,
                                 const RelationOptions& opts = {}) {
    return detail::matrix_relation(
        a, b, opts, [](const auto& fa, const auto& fb) { return compatible_spectral(fa, fb); },
        [](auto&& na, auto&& nb, auto samples) { return compatible_by_counts(na, nb, samples); },
        "compatibility");
}

}  // namespace herminertia
