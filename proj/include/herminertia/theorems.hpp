#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <variant>
#include <vector>

#include "eigen.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "inertia.hpp"
#include "interlace.hpp"
#include "random.hpp"
#include "report_json.hpp"

namespace herminertia::theorems {

enum class TheoremId {
    inclusion_principle,
    cauchy,
    inertia_subadditive,
    shift_bounds,
    monotonicity,
    weyl_pairwise,
    weyl_indexed,
    rank_one_interlace,
    indefinite_compatible,
    pencil,
    lemma_bounds,
    lemma_pencil_identity,
    laplacian_deletion,
    mohar_deletion,
    nu_criterion,
};

inline constexpr std::array<TheoremId, 15> kAllTheorems{
    TheoremId::inclusion_principle, TheoremId::cauchy,           TheoremId::inertia_subadditive,
    TheoremId::shift_bounds,        TheoremId::monotonicity,     TheoremId::weyl_pairwise,
    TheoremId::weyl_indexed,        TheoremId::rank_one_interlace, TheoremId::indefinite_compatible,
    TheoremId::pencil,              TheoremId::lemma_bounds,     TheoremId::lemma_pencil_identity,
    TheoremId::laplacian_deletion,  TheoremId::mohar_deletion,   TheoremId::nu_criterion,
};

inline const char* theorem_name(TheoremId t) {
    switch (t) {
        case TheoremId::inclusion_principle: return "inclusion_principle";
        case TheoremId::cauchy: return "cauchy";
        case TheoremId::inertia_subadditive: return "inertia_subadditive";
        case TheoremId::shift_bounds: return "shift_bounds";
        case TheoremId::monotonicity: return "monotonicity";
        case TheoremId::weyl_pairwise: return "weyl_pairwise";
        case TheoremId::weyl_indexed: return "weyl_indexed";
        case TheoremId::rank_one_interlace: return "rank_one_interlace";
        case TheoremId::indefinite_compatible: return "indefinite_compatible";
        case TheoremId::pencil: return "pencil";
        case TheoremId::lemma_bounds: return "lemma_bounds";
        case TheoremId::lemma_pencil_identity: return "lemma_pencil_identity";
        case TheoremId::laplacian_deletion: return "laplacian_deletion";
        case TheoremId::mohar_deletion: return "mohar_deletion";
        case TheoremId::nu_criterion: return "nu_criterion";
    }
    return "?";
}

inline std::optional<TheoremId> parse_theorem(std::string_view s) {
    for (auto t : kAllTheorems)
        if (s == theorem_name(t)) return t;
    return std::nullopt;
}

/// Hermitian A whose leading `keep` x `keep` block is the compressed matrix.
struct BorderInput {
    ComplexMatrix a;
    std::size_t keep = 0;
};

struct MatrixPairInput {
    ComplexMatrix a, b;
};

struct ExactPairInput {
    ExactMatrix a, b;
};

/// A, B and a bound m that the caller guarantees satisfies n+(B) <= m.
struct ShiftBoundInput {
    ComplexMatrix a, b;
    long m = 0;
};

struct RankOneInput {
    ComplexMatrix a;
    std::vector<Complex> alpha;
};

/// P positive definite, A Hermitian.
struct PencilInput {
    ComplexMatrix p, a;
};

/// A generalized Laplacian over a quadratic field.
struct LaplacianInput {
    ExactMatrix l;
};

/// Graph, record to remove (or lower by `amount`), and the Laplacian family.
struct DeletionInput {
    GraphSpec graph;
    std::size_t record = 0;
    OperatorKind kind = OperatorKind::laplacian;
    std::optional<Rational> amount;
};

struct RootsInput {
    RealRootedPoly f, g;
    long m = 0;
};

using TheoremInput = std::variant<BorderInput, MatrixPairInput, ExactPairInput, ShiftBoundInput, RankOneInput,
                                  PencilInput, LaplacianInput, DeletionInput, RootsInput>;

struct VerifyOptions {
    double rel_tol = kDefaultRelativeTolerance;
    /// Check the hard-coded false variant of the claim instead of the claim itself.
    bool negative_control = false;
};

namespace detail {

/// Width of the band, in units of tau, inside which a failed comparison is a tolerance event.
inline constexpr double kToleranceBand = 10.0;

template <class Input>
const Input& expect(const TheoremInput& in, TheoremId t) {
    if (const auto* p = std::get_if<Input>(&in)) return *p;
    throw ShapeMismatch(std::string(theorem_name(t)) + ": wrong input shape");
}

/// Marks an index-witness failure whose two sides are within the band as indeterminate.
inline RelationReport judge(RelationReport r, double tau) {
    if (!r.holds && r.witness && r.witness->kind == Witness::Kind::index && std::isfinite(r.witness->lhs) &&
        std::isfinite(r.witness->rhs) && r.witness->lhs - r.witness->rhs <= kToleranceBand * tau)
        r.indeterminate = true;
    return r;
}

/// First definite failure, else first indeterminate one, else success.
inline RelationReport all_of(std::initializer_list<RelationReport> parts) {
    const RelationReport* soft = nullptr;
    for (const auto& p : parts) {
        if (p.holds) continue;
        if (!p.indeterminate) return p;
        if (!soft) soft = &p;
    }
    return soft ? *soft : RelationReport::success();
}

inline RelationOptions spectral_only(double rel) { return {Method::spectral, Mode::floating, rel, {}}; }

inline double tau_of(std::initializer_list<const ComplexMatrix*> ms, double rel) {
    double norm = 0.0;
    for (auto* m : ms) norm = std::max(norm, m->frobenius_norm());
    return zero_tolerance(norm, rel);
}

inline RealRootedPoly spectrum_poly(const ComplexMatrix& a) { return RealRootedPoly(eigenvalues(a)); }

inline RealRootedPoly drop_top(const RealRootedPoly& f) {
    std::vector<double> r = f.roots();
    if (!r.empty()) r.erase(r.begin());
    return RealRootedPoly(std::move(r));
}

inline RealRootedPoly truncate(const RealRootedPoly& f, std::size_t k) {
    std::vector<double> r = f.roots();
    r.resize(std::min(k, r.size()));
    return RealRootedPoly(std::move(r));
}

inline RelationReport dominates(const ComplexMatrix& a, const ComplexMatrix& b, long m, double rel, double tau) {
    return judge(matrix_shift_dominates(a, b, m, spectral_only(rel)), tau);
}

inline RelationReport count_mismatch(double r, std::size_t got, std::size_t expected) {
    return RelationReport::failure({Witness::Kind::shift, 0, r, double(got), double(expected)});
}

inline bool near_zero_eigenvalue(const Spectrum& s, double centre, double tau) {
    return std::any_of(s.values.begin(), s.values.end(),
                       [&](double v) { return std::abs(v - centre) <= kToleranceBand * tau; });
}

inline std::vector<std::size_t> leading(std::size_t k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    return idx;
}

// --- matrix analysis ------------------------------------------------------

inline RelationReport inclusion(const BorderInput& in, const VerifyOptions& o, bool cauchy_only) {
    const std::size_t n = in.a.size();
    if (in.keep == 0 || in.keep > n) throw ShapeMismatch("compressed block must have 1..n rows");
    if (cauchy_only && (n < 2 || in.keep != n - 1)) throw ShapeMismatch("cauchy needs a bordered matrix (keep = n-1)");
    const auto idx = leading(in.keep);
    const auto b = principal_submatrix(in.a, std::span<const std::size_t>(idx));
    const double tau = tau_of({&in.a}, o.rel_tol);

    if (cauchy_only) {
        if (o.negative_control)  // "lambda_i(A) <= lambda_i(B) for i < n"
            return judge(shift_dominates_spectral(spectrum_poly(b), truncate(spectrum_poly(in.a), n - 1), 0), tau);
        return judge(matrix_interlaces(b, in.a, spectral_only(o.rel_tol)), tau);
    }
    if (o.negative_control)  // "lambda_i(B) <= lambda_{i+1}(A)"
        return judge(shift_dominates_spectral(drop_top(spectrum_poly(in.a)), spectrum_poly(b), 0), tau);
    return all_of({dominates(in.a, b, 0, o.rel_tol, tau),
                   dominates(b, in.a, static_cast<long>(n - in.keep), o.rel_tol, tau)});
}

inline RelationReport subadditive(const ExactPairInput& in, const VerifyOptions& o) {
    const auto pa = inertia_exact(in.a).n_plus;
    const auto pb = inertia_exact(in.b).n_plus;
    const auto pab = inertia_exact(in.a + in.b).n_plus;
    const long bound = o.negative_control ? static_cast<long>(std::max(pa, pb) - pa) : static_cast<long>(pb);
    const std::array<double, 1> at_zero{0.0};
    return counts_dominate([&](double) { return pa; }, [&](double) { return pab; },
                           std::span<const double>(at_zero), bound);
}

inline RelationReport shift_bounds(const ShiftBoundInput& in, const VerifyOptions& o) {
    const auto ib = inertia_float(in.b, zero_tolerance(in.b, o.rel_tol));
    if (static_cast<long>(ib.n_plus) > in.m) throw ShapeMismatch("shift_bounds needs m >= n+(B)");
    const auto ab = in.a + in.b;
    const double tau = tau_of({&in.a, &in.b, &ab}, o.rel_tol);
    if (o.negative_control) return dominates(in.a, ab, in.m - 1, o.rel_tol, tau);
    const auto upper = dominates(in.a, ab, in.m, o.rel_tol, tau);
    const auto lower = static_cast<long>(ib.n_minus) <= in.m ? dominates(ab, in.a, in.m, o.rel_tol, tau)
                                                              : RelationReport::success();
    return all_of({upper, lower});
}

inline RelationReport monotonicity(const MatrixPairInput& in, const VerifyOptions& o) {
    if (inertia_float(in.b, zero_tolerance(in.b, o.rel_tol)).n_minus != 0)
        throw ShapeMismatch("monotonicity needs B positive semidefinite");
    const auto ab = in.a + in.b;
    const double tau = tau_of({&in.a, &in.b, &ab}, o.rel_tol);
    if (o.negative_control) return dominates(in.a, ab, 0, o.rel_tol, tau);
    return dominates(ab, in.a, 0, o.rel_tol, tau);
}

inline RelationReport weyl_pairwise(const MatrixPairInput& in, const VerifyOptions& o) {
    const auto ib = inertia_float(in.b, zero_tolerance(in.b, o.rel_tol));
    const long p = static_cast<long>(ib.n_plus), q = static_cast<long>(ib.n_minus);
    const auto ab = in.a + in.b;
    const double tau = tau_of({&in.a, &in.b, &ab}, o.rel_tol);
    if (o.negative_control) return dominates(ab, in.a, q - 1, o.rel_tol, tau);
    return all_of({dominates(ab, in.a, q, o.rel_tol, tau), dominates(in.a, ab, p, o.rel_tol, tau)});
}

/// lambda_{i+j-1}(A+B) <= lambda_i(A) + lambda_j(B), assembled for each j as shift dominance
/// of A over A + B - lambda_j(B) I with m = j - 1.
inline RelationReport weyl_indexed(const MatrixPairInput& in, const VerifyOptions& o) {
    const auto sb = eigenvalues(in.b);
    const auto ab = in.a + in.b;
    RelationReport soft = RelationReport::success();
    for (std::size_t j = 1; j <= sb.size(); ++j) {
        const auto c = shift(ab, sb[j - 1]);
        const double tau = tau_of({&in.a, &c}, o.rel_tol);
        const long m = static_cast<long>(j) - (o.negative_control ? 2 : 1);
        auto r = dominates(in.a, c, m, o.rel_tol, tau);
        if (!r.holds && !r.indeterminate) return r;
        if (!r.holds && soft.holds) soft = r;
    }
    return soft;
}

inline RelationReport rank_one(const RankOneInput& in, const VerifyOptions& o) {
    const auto up = rank_one_update(in.a, in.alpha);
    const double tau = tau_of({&in.a, &up}, o.rel_tol);
    if (o.negative_control) return judge(matrix_interlaces(up, in.a, spectral_only(o.rel_tol)), tau);
    return judge(matrix_interlaces(in.a, up, spectral_only(o.rel_tol)), tau);
}

inline RelationReport indefinite_compatible(const MatrixPairInput& in, const VerifyOptions& o) {
    const auto ib = inertia_float(in.b, zero_tolerance(in.b, o.rel_tol));
    if (ib.n_plus != 1 || ib.n_minus != 1) throw ShapeMismatch("indefinite_compatible needs n+(B) = n-(B) = 1");
    const auto ab = in.a + in.b;
    const double tau = tau_of({&in.a, &in.b, &ab}, o.rel_tol);
    if (o.negative_control) return judge(matrix_interlaces(in.a, ab, spectral_only(o.rel_tol)), tau);
    return judge(matrix_compatible(in.a, ab, spectral_only(o.rel_tol)), tau);
}

/// The pencil det(lambda P - A): its reduction keeps the inertia of A, and deleting the last
/// row and column of both P and A gives an interlacing pencil.
inline RelationReport pencil(const PencilInput& in, const VerifyOptions& o) {
    ComplexMatrix b;
    try {
        b = pencil_reduce(in.p, in.a);
    } catch (const NotPositiveDefinite&) {
        throw ShapeMismatch("pencil needs P positive definite");
    }
    const auto sa = eigenvalues(in.a);
    const auto sb = eigenvalues(b);
    const double ta = zero_tolerance(in.a, o.rel_tol), tb = zero_tolerance(b, o.rel_tol);
    const auto ia = inertia_of_spectrum(sa, ta);
    const auto ib = inertia_of_spectrum(sb, tb);
    const auto reference = o.negative_control ? inertia_float(in.p, zero_tolerance(in.p, o.rel_tol)) : ia;

    RelationReport same_inertia = RelationReport::success();
    if (!(ib == reference)) {
        same_inertia = ib.n_plus != reference.n_plus ? count_mismatch(0.0, ib.n_plus, reference.n_plus)
                                                     : count_mismatch(0.0, ib.n_minus, reference.n_minus);
        if (!o.negative_control && (near_zero_eigenvalue(sa, 0.0, ta) || near_zero_eigenvalue(sb, 0.0, tb)))
            same_inertia.indeterminate = true;
    }
    if (o.negative_control || in.a.size() < 2) return same_inertia;

    const std::size_t n = in.a.size();
    const auto c = pencil_reduce(delete_index(in.p, n - 1), delete_index(in.a, n - 1));
    const double tau = tau_of({&b, &c}, o.rel_tol);
    return all_of({same_inertia, judge(matrix_interlaces(c, b, spectral_only(o.rel_tol)), tau)});
}

// --- graphs -----------------------------------------------------------------

inline void require_generalized_laplacian(const ExactMatrix& l) {
    if (!is_generalized_laplacian(l).ok) throw ShapeMismatch("input is not a generalized Laplacian");
}

inline RelationReport lemma_bounds(const LaplacianInput& in, const VerifyOptions& o) {
    require_generalized_laplacian(in.l);
    const auto norm = normalizer(in.l);
    const auto s = eigenvalues(norm);
    const double tau = zero_tolerance(norm, o.rel_tol);
    const double top = o.negative_control ? 1.0 : 2.0;
    if (s.size() == 0) return RelationReport::success();
    if (!(s[0] <= top + tau)) return index_failure(1, s[0], top + tau);
    if (!(-tau <= s[s.size() - 1])) return index_failure(static_cast<long>(s.size()), -tau, s[s.size() - 1]);
    return RelationReport::success();
}

inline const std::array<Rational, 5>& lemma_shifts() {
    static const std::array<Rational, 5> shifts{Rational(0), Rational(3, 10), Rational(1), Rational(17, 10),
                                                Rational(2)};
    return shifts;
}

inline RelationReport lemma_pencil_identity(const LaplacianInput& in, const VerifyOptions& o) {
    require_generalized_laplacian(in.l);
    const auto norm = normalizer(in.l);
    const auto s = eigenvalues(norm);
    const double tau = zero_tolerance(norm, o.rel_tol);
    const auto d = o.negative_control ? ExactMatrix::identity(in.l.size(), in.l.field()) : diagonal_part(in.l);
    for (const auto& r : lemma_shifts()) {
        const double rd = to_double(r);
        const auto lhs = inertia_float(shift(norm, rd), tau).n_plus;
        const auto rhs = pencil_inertia(in.l, d, r, Mode::exact).n_plus;
        if (lhs != rhs) {
            auto report = count_mismatch(rd, lhs, rhs);
            report.indeterminate = !o.negative_control && near_zero_eigenvalue(s, rd, tau);
            return report;
        }
    }
    return RelationReport::success();
}

inline RelationReport deletion(const DeletionInput& in, const VerifyOptions& o, bool mohar);

}  // namespace detail

/// Both Laplacians and normalizers of a graph before and after removing (or lowering) one
/// record, with the two verdicts: L(after) interlaces L(before), and the normalized
/// operators are compatible.
struct DeletionOutcome {
    GraphSpec after;
    LaplacianDifference difference;
    ExactMatrix l_before, l_after;
    ComplexMatrix n_before, n_after;
    RelationReport interlace, compatible;
    /// Normalized interlacing, which need not hold; used as a negative control.
    RelationReport normalized_interlace;
};

inline DeletionOutcome deletion_outcome(const DeletionInput& in, double rel_tol = kDefaultRelativeTolerance) {
    if (in.kind != OperatorKind::laplacian && in.kind != OperatorKind::herm_laplacian_i &&
        in.kind != OperatorKind::herm_laplacian_omega)
        throw IncompatibleOperator(std::string("deletion needs a Laplacian kind, got ") + operator_name(in.kind));
    DeletionOutcome out;
    out.difference = laplacian_difference(in.graph, in.record, in.kind, in.amount);
    out.after = in.amount ? reduce_weight(in.graph, in.record, *in.amount) : delete_record(in.graph, in.record);
    out.l_before = build_exact(in.graph, in.kind);
    out.l_after = build_exact(out.after, in.kind);
    detail::require_generalized_laplacian(out.l_before);
    detail::require_generalized_laplacian(out.l_after);
    out.n_before = normalizer(out.l_before);
    out.n_after = normalizer(out.l_after);

    std::vector<double> roots = eigenvalues(out.n_before).values;
    const auto s2 = eigenvalues(out.n_after).values;
    roots.insert(roots.end(), s2.begin(), s2.end());
    const auto samples = interval_sample_points(roots, detail::tau_of({&out.n_before, &out.n_after}, rel_tol));
    auto before = [&](const Rational& r) { return normalized_n_plus(out.l_before, r); };
    auto after = [&](const Rational& r) { return normalized_n_plus(out.l_after, r); };
    const std::span<const Rational> at(samples);

    out.interlace = matrix_interlaces(out.l_after, out.l_before, {Method::inertia, Mode::exact, rel_tol, {}});
    out.compatible = compatible_by_counts(after, before, at);
    out.normalized_interlace = interlaces_by_counts(after, before, at);
    return out;
}

namespace detail {

inline RelationReport deletion(const DeletionInput& in, const VerifyOptions& o, bool mohar) {
    const bool omega = in.kind == OperatorKind::herm_laplacian_omega;
    if (mohar != omega ||
        (!mohar && in.kind != OperatorKind::laplacian && in.kind != OperatorKind::herm_laplacian_i))
        throw ShapeMismatch(mohar ? "mohar_deletion needs herm_laplacian_omega"
                                  : "laplacian_deletion needs laplacian or herm_laplacian_i");
    const auto out = deletion_outcome(in, o.rel_tol);
    if (o.negative_control) return out.normalized_interlace;
    return all_of({out.interlace, out.compatible});
}

// --- polynomials ------------------------------------------------------------

inline RelationReport agreement(const RelationReport& direct, const RelationReport& counted) {
    if (direct.holds == counted.holds) return RelationReport::success();
    return direct.holds ? counted : direct;
}

inline RelationReport nu_criterion(const RootsInput& in, const VerifyOptions& o) {
    const auto direct = shift_dominates_spectral(in.f, in.g, in.m);
    if (o.negative_control) {
        // Root samples only, without the point below the smallest root.
        auto samples = nu_sample_set(in.f, in.g);
        samples.pop_back();
        const auto counted = counts_dominate([&](double r) { return nu(in.f, r); },
                                             [&](double r) { return nu(in.g, r); },
                                             std::span<const double>(samples), in.m);
        return agreement(direct, counted);
    }
    return all_of({agreement(direct, shift_dominates_nu(in.f, in.g, in.m)),
                   agreement(interlaces_spectral(in.f, in.g), interlaces_nu(in.f, in.g)),
                   agreement(compatible_spectral(in.f, in.g), compatible_nu(in.f, in.g))});
}

}  // namespace detail

/// Checks the conclusion of one named result on inputs that satisfy its hypotheses.
inline RelationReport verify(TheoremId t, const TheoremInput& in, const VerifyOptions& o = {}) {
    using namespace detail;
    switch (t) {
        case TheoremId::inclusion_principle: return inclusion(expect<BorderInput>(in, t), o, false);
        case TheoremId::cauchy: return inclusion(expect<BorderInput>(in, t), o, true);
        case TheoremId::inertia_subadditive: return subadditive(expect<ExactPairInput>(in, t), o);
        case TheoremId::shift_bounds: return detail::shift_bounds(expect<ShiftBoundInput>(in, t), o);
        case TheoremId::monotonicity: return detail::monotonicity(expect<MatrixPairInput>(in, t), o);
        case TheoremId::weyl_pairwise: return detail::weyl_pairwise(expect<MatrixPairInput>(in, t), o);
        case TheoremId::weyl_indexed: return detail::weyl_indexed(expect<MatrixPairInput>(in, t), o);
        case TheoremId::rank_one_interlace: return rank_one(expect<RankOneInput>(in, t), o);
        case TheoremId::indefinite_compatible: return detail::indefinite_compatible(expect<MatrixPairInput>(in, t), o);
        case TheoremId::pencil: return detail::pencil(expect<PencilInput>(in, t), o);
        case TheoremId::lemma_bounds: return detail::lemma_bounds(expect<LaplacianInput>(in, t), o);
        case TheoremId::lemma_pencil_identity: return detail::lemma_pencil_identity(expect<LaplacianInput>(in, t), o);
        case TheoremId::laplacian_deletion: return deletion(expect<DeletionInput>(in, t), o, false);
        case TheoremId::mohar_deletion: return deletion(expect<DeletionInput>(in, t), o, true);
        case TheoremId::nu_criterion: return detail::nu_criterion(expect<RootsInput>(in, t), o);
    }
    throw ShapeMismatch("unknown theorem");
}

// ---------------------------------------------------------------------------
// Generators: every input satisfies the hypotheses of its theorem.

namespace detail {

inline constexpr double kSpectralGap = 1e-6;

inline std::size_t pick_size(Rng& rng, std::size_t lo, std::size_t bound) {
    const std::size_t hi = std::max(lo, bound);
    return static_cast<std::size_t>(rng.between(static_cast<long>(lo), static_cast<long>(hi)));
}

inline ComplexMatrix gapped(std::size_t n, Rng& rng) { return random_complex_hermitian(n, rng.next(), kSpectralGap); }

inline Field pick_quadratic_field(Rng& rng) { return rng.chance(0.5) ? Field::q_minus1 : Field::q_minus3; }

/// Exact Hermitian matrix, singular about a third of the time (S diag(..., 0, ...) S*).
inline ExactMatrix exact_matrix(std::size_t n, Field field, Rng& rng) {
    auto a = random_exact_hermitian(n, field, rng);
    if (!rng.chance(1.0 / 3.0)) return a;
    const int d = field_radicand(field);
    std::vector<Rational> diag;
    for (std::size_t i = 0; i < n; ++i) diag.push_back(rng.chance(0.4) ? Rational(0) : herminertia::detail::small_rational(rng, 6));
    std::vector<QuadExt> s;
    for (std::size_t i = 0; i < n * n; ++i) s.emplace_back(herminertia::detail::small_rational(rng, 3), herminertia::detail::small_rational(rng, 3), d);
    return congruence(std::span<const QuadExt>(s), ExactMatrix::diagonal(std::span<const Rational>(diag), field));
}

inline std::vector<int> signs(std::size_t plus, std::size_t minus) {
    std::vector<int> s(plus, 1);
    s.insert(s.end(), minus, -1);
    return s;
}

inline ExactMatrix laplacian_sample(std::size_t n, Rng& rng) {
    if (rng.chance(0.5)) return random_generalized_laplacian(n, pick_quadratic_field(rng), rng);
    const auto flavor = static_cast<GraphFlavor>(rng.below(4));
    const auto g = random_graph(n, flavor, rng.uniform(0.1, 0.9), rng.next());
    OperatorKind kind = OperatorKind::laplacian;
    if (flavor == GraphFlavor::digraph)
        kind = rng.chance(0.5) ? OperatorKind::herm_laplacian_i : OperatorKind::herm_laplacian_omega;
    return build_exact(g, kind);
}

inline DeletionInput deletion_sample(std::size_t bound, GraphFlavor flavor, OperatorKind kind, Rng& rng) {
    const std::size_t n = pick_size(rng, 2, bound);
    auto g = random_graph(n, flavor, rng.uniform(0.15, 0.85), rng.next());
    if (g.records().empty()) {
        // Guarantee something to delete.
        const std::size_t u = rng.below(n);
        std::size_t v = rng.below(n - 1);
        if (v >= u) ++v;
        EdgeRecord r{flavor == GraphFlavor::digraph ? RecordKind::arc : RecordKind::edge, u, v, Rational(1), 1};
        if (flavor == GraphFlavor::signed_graph && rng.chance(0.5)) r.sign = -1;
        g = GraphSpec(n, {r});
    }
    DeletionInput in{g, rng.below(g.records().size()), kind, std::nullopt};
    if (flavor == GraphFlavor::weighted && rng.chance(0.5)) {
        // Partial weight reduction: lower by half the weight.
        in.amount = Rational(g.records()[in.record].weight / 2);
    }
    return in;
}

inline RealRootedPoly grid_roots(std::size_t degree, Rng& rng) {
    std::vector<double> r;
    for (std::size_t i = 0; i < degree; ++i) r.push_back(static_cast<double>(rng.between(-6, 6)) / 2.0);
    return RealRootedPoly(std::move(r));
}

}  // namespace detail

inline TheoremInput generate_input(TheoremId t, std::uint64_t seed, std::size_t size_bound) {
    using namespace detail;
    Rng rng(seed);
    switch (t) {
        case TheoremId::inclusion_principle: {
            const std::size_t n = pick_size(rng, 2, size_bound);
            auto a = gapped(n, rng);
            return BorderInput{a, pick_size(rng, 1, n - 1)};
        }
        case TheoremId::cauchy: {
            const std::size_t n = pick_size(rng, 2, size_bound);
            return BorderInput{gapped(n, rng), n - 1};
        }
        case TheoremId::inertia_subadditive: {
            const std::size_t n = pick_size(rng, 1, size_bound);
            const Field f = pick_quadratic_field(rng);
            auto a = exact_matrix(n, f, rng);
            auto b = exact_matrix(n, f, rng);
            return ExactPairInput{a, b};
        }
        case TheoremId::shift_bounds: {
            const std::size_t n = pick_size(rng, 1, size_bound);
            auto a = gapped(n, rng);
            const std::size_t plus = rng.below(n + 1), minus = rng.below(n - plus + 1);
            auto b = random_signed_sum(n, signs(plus, minus), rng);
            const long m = static_cast<long>(inertia_float(b).n_plus);
            return ShiftBoundInput{a, b, m};
        }
        case TheoremId::monotonicity: {
            const std::size_t n = pick_size(rng, 1, size_bound);
            auto a = gapped(n, rng);
            return MatrixPairInput{a, random_signed_sum(n, signs(rng.below(n + 1), 0), rng)};
        }
        case TheoremId::weyl_pairwise: {
            const std::size_t n = pick_size(rng, 1, size_bound);
            auto a = gapped(n, rng);
            if (rng.chance(0.5)) return MatrixPairInput{a, gapped(n, rng)};
            const std::size_t plus = rng.below(n + 1), minus = rng.below(n - plus + 1);
            return MatrixPairInput{a, random_signed_sum(n, signs(plus, minus), rng)};
        }
        case TheoremId::weyl_indexed: {
            const std::size_t n = pick_size(rng, 1, size_bound);
            auto a = gapped(n, rng);
            return MatrixPairInput{a, gapped(n, rng)};
        }
        case TheoremId::rank_one_interlace: {
            const std::size_t n = pick_size(rng, 1, size_bound);
            auto a = gapped(n, rng);
            return RankOneInput{a, random_vector(n, rng)};
        }
        case TheoremId::indefinite_compatible: {
            const std::size_t n = pick_size(rng, 2, size_bound);
            auto a = gapped(n, rng);
            return MatrixPairInput{a, random_signed_sum(n, signs(1, 1), rng)};
        }
        case TheoremId::pencil: {
            const std::size_t n = pick_size(rng, 2, size_bound);
            auto p = random_positive_definite(n, rng);
            return PencilInput{p, gapped(n, rng)};
        }
        case TheoremId::lemma_bounds:
        case TheoremId::lemma_pencil_identity: {
            const std::size_t n = pick_size(rng, 1, size_bound);
            return LaplacianInput{laplacian_sample(n, rng)};
        }
        case TheoremId::laplacian_deletion: {
            const auto flavor = static_cast<GraphFlavor>(rng.below(4));
            const auto kind = flavor == GraphFlavor::digraph ? OperatorKind::herm_laplacian_i : OperatorKind::laplacian;
            return deletion_sample(size_bound, flavor, kind, rng);
        }
        case TheoremId::mohar_deletion:
            return deletion_sample(size_bound, GraphFlavor::digraph, OperatorKind::herm_laplacian_omega, rng);
        case TheoremId::nu_criterion: {
            auto f = grid_roots(rng.below(size_bound + 1), rng);
            RealRootedPoly g;
            if (rng.chance(1.0 / 3.0)) {
                // A near relative of f: drop or add one extreme root.
                std::vector<double> r = f.roots();
                if (!r.empty() && rng.chance(0.5))
                    r.erase(rng.chance(0.5) ? r.begin() : r.end() - 1);
                else
                    r.push_back(static_cast<double>(rng.between(-6, 6)) / 2.0);
                g = RealRootedPoly(std::move(r));
            } else {
                g = grid_roots(rng.below(size_bound + 1), rng);
            }
            return RootsInput{f, g, rng.between(-2, 2)};
        }
    }
    throw ShapeMismatch("unknown theorem");
}

inline Json input_json(const TheoremInput& in) {
    return std::visit(
        [](const auto& x) -> Json {
            using X = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<X, BorderInput>)
                return {{"a", to_json(x.a)}, {"keep", x.keep}};
            else if constexpr (std::is_same_v<X, MatrixPairInput> || std::is_same_v<X, ExactPairInput>)
                return {{"a", to_json(x.a)}, {"b", to_json(x.b)}};
            else if constexpr (std::is_same_v<X, ShiftBoundInput>)
                return {{"a", to_json(x.a)}, {"b", to_json(x.b)}, {"m", x.m}};
            else if constexpr (std::is_same_v<X, RankOneInput>) {
                Json alpha = Json::array();
                for (const auto& z : x.alpha) alpha.push_back(to_string(z));
                return {{"a", to_json(x.a)}, {"alpha", alpha}};
            } else if constexpr (std::is_same_v<X, PencilInput>)
                return {{"p", to_json(x.p)}, {"a", to_json(x.a)}};
            else if constexpr (std::is_same_v<X, LaplacianInput>)
                return {{"l", to_json(x.l)}};
            else if constexpr (std::is_same_v<X, DeletionInput>) {
                Json j{{"graph", to_json(x.graph)}, {"record", x.record}, {"kind", operator_name(x.kind)}};
                if (x.amount) j["amount"] = x.amount->get_str();
                return j;
            } else
                return {{"f", to_json(x.f)}, {"g", to_json(x.g)}, {"m", x.m}};
        },
        in);
}

// ---------------------------------------------------------------------------
// Fuzzing

struct FuzzOptions {
    double rel_tol = kDefaultRelativeTolerance;
    bool negative_control = false;
    /// Worker threads; results do not depend on this.
    unsigned threads = 1;
};

struct FuzzFailure {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    Json inputs;
    std::optional<RelationReport> report;  ///< empty when verification raised
    std::string error;
};

struct FuzzReport {
    TheoremId theorem{};
    bool negative_control = false;
    std::size_t trials = 0;      ///< requested
    std::size_t trials_run = 0;  ///< a negative control stops at its first counterexample
    std::uint64_t master_seed = 0;
    std::size_t size_bound = 0;
    double rel_tol = kDefaultRelativeTolerance;
    std::size_t passed = 0;
    std::size_t indeterminate = 0;
    std::vector<FuzzFailure> failures;
};

namespace detail {

struct TrialOutcome {
    enum class Kind { pass, indeterminate, failure } kind = Kind::pass;
    std::optional<RelationReport> report;
    std::string error;
};

inline TrialOutcome run_trial(TheoremId t, std::uint64_t seed, std::size_t bound, const VerifyOptions& vo) {
    try {
        const auto input = generate_input(t, seed, bound);
        const auto r = verify(t, input, vo);
        if (r.holds) return {TrialOutcome::Kind::pass, r, {}};
        return {r.indeterminate ? TrialOutcome::Kind::indeterminate : TrialOutcome::Kind::failure, r, {}};
    } catch (const std::exception& e) {
        return {TrialOutcome::Kind::failure, std::nullopt, e.what()};
    }
}

}  // namespace detail

/// Runs `trials` independent trials; trial i uses derive_seed(master_seed, i).
inline FuzzReport fuzz(TheoremId t, std::size_t trials, std::uint64_t master_seed, std::size_t size_bound,
                       const FuzzOptions& opts = {}) {
    if (trials == 0) throw Error("fuzz needs at least one trial");
    FuzzReport rep;
    rep.theorem = t;
    rep.negative_control = opts.negative_control;
    rep.trials = trials;
    rep.master_seed = master_seed;
    rep.size_bound = size_bound;
    rep.rel_tol = opts.rel_tol;
    const VerifyOptions vo{opts.rel_tol, opts.negative_control};

    std::vector<detail::TrialOutcome> outcomes;
    if (opts.negative_control || opts.threads <= 1) {
        for (std::size_t i = 0; i < trials; ++i) {
            outcomes.push_back(detail::run_trial(t, derive_seed(master_seed, i), size_bound, vo));
            if (opts.negative_control && outcomes.back().kind == detail::TrialOutcome::Kind::failure) break;
        }
    } else {
        outcomes.resize(trials);
        std::vector<std::thread> pool;
        const unsigned workers = std::min<unsigned>(opts.threads, static_cast<unsigned>(trials));
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < trials; i += workers)
                    outcomes[i] = detail::run_trial(t, derive_seed(master_seed, i), size_bound, vo);
            });
        for (auto& th : pool) th.join();
    }

    rep.trials_run = outcomes.size();
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto& o = outcomes[i];
        switch (o.kind) {
            case detail::TrialOutcome::Kind::pass: ++rep.passed; break;
            case detail::TrialOutcome::Kind::indeterminate: ++rep.indeterminate; break;
            case detail::TrialOutcome::Kind::failure: {
                const auto seed = derive_seed(master_seed, i);
                Json inputs;
                try {
                    inputs = input_json(generate_input(t, seed, size_bound));
                } catch (const std::exception& e) {
                    inputs = std::string("<generation failed: ") + e.what() + ">";
                }
                rep.failures.push_back({i, seed, std::move(inputs), o.report, o.error});
                break;
            }
        }
    }
    return rep;
}

inline Json to_json(const FuzzReport& r) {
    Json failures = Json::array();
    for (const auto& f : r.failures) {
        Json j{{"trial", f.trial}, {"seed", f.seed}, {"inputs", f.inputs}};
        if (f.report) j["report"] = herminertia::to_json(*f.report);
        if (!f.error.empty()) j["error"] = f.error;
        failures.push_back(std::move(j));
    }
    return Json{{"theorem", theorem_name(r.theorem)},
                {"negative_control", r.negative_control},
                {"trials", r.trials},
                {"trials_run", r.trials_run},
                {"master_seed", r.master_seed},
                {"size_bound", r.size_bound},
                {"tol", r.rel_tol},
                {"passed", r.passed},
                {"indeterminate", r.indeterminate},
                {"failures", failures}};
}

}  // namespace herminertia::theorems
