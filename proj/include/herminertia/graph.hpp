#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "hermitian_matrix.hpp"
#include "inertia.hpp"

namespace herminertia {

enum class RecordKind { edge, arc, digon };

/// One undirected edge, arc u->v, or digon {u,v}. Sign applies to edges only.
struct EdgeRecord {
    RecordKind kind = RecordKind::edge;
    std::size_t u = 0;
    std::size_t v = 0;
    Rational weight{1};
    int sign = 1;

    friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

/// Vertex count plus records; at most one record per unordered vertex pair.
class GraphSpec {
public:
    GraphSpec() = default;

    GraphSpec(std::size_t n, std::vector<EdgeRecord> records) : n_(n), records_(std::move(records)) {
        std::set<std::pair<std::size_t, std::size_t>> seen;
        for (std::size_t k = 0; k < records_.size(); ++k) {
            const auto& r = records_[k];
            const std::string where = "record " + std::to_string(k) + ": ";
            if (r.u >= n_ || r.v >= n_) throw BadIndex(where + "vertex index out of range");
            if (r.u == r.v && r.kind != RecordKind::edge) throw BadIndex(where + "arcs and digons need two vertices");
            if (sgn(r.weight) <= 0) throw Error(where + "weight must be positive");
            if (r.sign != 1 && r.sign != -1) throw Error(where + "sign must be +1 or -1");
            if (r.sign == -1 && (r.kind != RecordKind::edge || r.u == r.v))
                throw Error(where + "only undirected non-loop edges carry a sign");
            if (!seen.insert(std::minmax(r.u, r.v)).second) throw Error(where + "duplicate vertex pair");
        }
    }

    std::size_t vertex_count() const noexcept { return n_; }
    const std::vector<EdgeRecord>& records() const noexcept { return records_; }

    friend bool operator==(const GraphSpec&, const GraphSpec&) = default;

private:
    std::size_t n_ = 0;
    std::vector<EdgeRecord> records_;
};

enum class OperatorKind {
    adjacency,
    laplacian,
    normalized_laplacian,
    herm_adjacency_i,
    herm_laplacian_i,
    herm_normalized_i,
    herm_adjacency_omega,
    herm_laplacian_omega,
    herm_normalized_omega,
};

inline constexpr OperatorKind kAllOperatorKinds[] = {
    OperatorKind::adjacency,        OperatorKind::laplacian,          OperatorKind::normalized_laplacian,
    OperatorKind::herm_adjacency_i, OperatorKind::herm_laplacian_i,   OperatorKind::herm_normalized_i,
    OperatorKind::herm_adjacency_omega, OperatorKind::herm_laplacian_omega, OperatorKind::herm_normalized_omega,
};

inline const char* operator_name(OperatorKind k) {
    switch (k) {
        case OperatorKind::adjacency: return "adjacency";
        case OperatorKind::laplacian: return "laplacian";
        case OperatorKind::normalized_laplacian: return "normalized_laplacian";
        case OperatorKind::herm_adjacency_i: return "herm_adjacency_i";
        case OperatorKind::herm_laplacian_i: return "herm_laplacian_i";
        case OperatorKind::herm_normalized_i: return "herm_normalized_i";
        case OperatorKind::herm_adjacency_omega: return "herm_adjacency_omega";
        case OperatorKind::herm_laplacian_omega: return "herm_laplacian_omega";
        case OperatorKind::herm_normalized_omega: return "herm_normalized_omega";
    }
    return "?";
}

inline std::optional<OperatorKind> parse_operator(std::string_view s) {
    for (auto k : kAllOperatorKinds)
        if (s == operator_name(k)) return k;
    return std::nullopt;
}

inline bool is_directed(OperatorKind k) {
    return k != OperatorKind::adjacency && k != OperatorKind::laplacian && k != OperatorKind::normalized_laplacian;
}

inline bool is_normalized(OperatorKind k) {
    return k == OperatorKind::normalized_laplacian || k == OperatorKind::herm_normalized_i ||
           k == OperatorKind::herm_normalized_omega;
}

inline bool is_adjacency(OperatorKind k) {
    return k == OperatorKind::adjacency || k == OperatorKind::herm_adjacency_i ||
           k == OperatorKind::herm_adjacency_omega;
}

/// Unnormalized Laplacian of the same family.
inline OperatorKind laplacian_of(OperatorKind k) {
    switch (k) {
        case OperatorKind::adjacency:
        case OperatorKind::laplacian:
        case OperatorKind::normalized_laplacian: return OperatorKind::laplacian;
        case OperatorKind::herm_adjacency_i:
        case OperatorKind::herm_laplacian_i:
        case OperatorKind::herm_normalized_i: return OperatorKind::herm_laplacian_i;
        default: return OperatorKind::herm_laplacian_omega;
    }
}

inline OperatorKind normalized_of(OperatorKind k) {
    switch (laplacian_of(k)) {
        case OperatorKind::laplacian: return OperatorKind::normalized_laplacian;
        case OperatorKind::herm_laplacian_i: return OperatorKind::herm_normalized_i;
        default: return OperatorKind::herm_normalized_omega;
    }
}

/// Entry field of the exact operator: Q(sqrt(-3)) for the omega family, Q(i) otherwise.
inline Field operator_field(OperatorKind k) {
    return laplacian_of(k) == OperatorKind::herm_laplacian_omega ? Field::q_minus3 : Field::q_minus1;
}

/// d_i = total weight of records at vertex i; arcs and digons count through the underlying
/// undirected graph, loops count once, signs are ignored.
inline ExactMatrix degree_matrix(const GraphSpec& g, Field field = Field::q_minus1) {
    std::vector<Rational> d(g.vertex_count(), Rational(0));
    for (const auto& r : g.records()) {
        d[r.u] += r.weight;
        if (r.v != r.u) d[r.v] += r.weight;
    }
    return ExactMatrix::diagonal(std::span<const Rational>(d), field);
}

namespace detail {

inline void check_compatible(const GraphSpec& g, OperatorKind kind) {
    const bool directed = is_directed(kind);
    for (std::size_t k = 0; k < g.records().size(); ++k) {
        const auto& r = g.records()[k];
        const bool record_directed = r.kind != RecordKind::edge;
        if (directed != record_directed)
            throw IncompatibleOperator(std::string(operator_name(kind)) + " cannot be built from record " +
                                       std::to_string(k) + (directed ? " (undirected edge)" : " (arc or digon)"));
        if (r.sign != 1 && kind == OperatorKind::adjacency)
            throw IncompatibleOperator("signed records are only defined for the Laplacian family (record " +
                                       std::to_string(k) + ")");
    }
}

/// Exact adjacency-type matrix of the family of `kind`.
inline ExactMatrix adjacency_matrix(const GraphSpec& g, OperatorKind kind) {
    const Field field = operator_field(kind);
    const int d = field_radicand(field);
    const std::size_t n = g.vertex_count();
    const QuadExt arc_unit = field == Field::q_minus3 ? QuadExt::omega() : QuadExt::imag_unit();
    std::vector<QuadExt> e(n * n, QuadExt::zero(d));
    for (const auto& r : g.records()) {
        QuadExt value = QuadExt::rational(r.weight * r.sign, d);
        if (r.kind == RecordKind::arc) value = arc_unit * r.weight;
        e[r.u * n + r.v] = value;
        e[r.v * n + r.u] = value.conj();
    }
    return ExactMatrix::adopt(n, field, std::move(e));
}

}  // namespace detail

/// Exact operator for the non-normalized kinds.
inline ExactMatrix build_exact(const GraphSpec& g, OperatorKind kind) {
    if (is_normalized(kind))
        throw IncompatibleOperator(std::string(operator_name(kind)) + " needs square roots; build it in floating point");
    detail::check_compatible(g, kind);
    auto a = detail::adjacency_matrix(g, kind);
    if (is_adjacency(kind)) return a;
    return degree_matrix(g, operator_field(kind)) - a;
}

/// Outcome of the diagonal-dominance test, with the first offending row.
struct LaplacianCheck {
    bool ok = true;
    std::optional<std::size_t> row;
};

namespace detail {

/// sum_k sqrt(terms[k]) <= bound, exactly: perfect squares are summed exactly and the rest
/// bracketed with refining rational bounds. A sum with an irrational part never equals a
/// rational, so refinement terminates; an undecided tie after 4096 bits counts as a violation.
inline bool sqrt_sum_at_most(const std::vector<Rational>& terms, const Rational& bound) {
    Rational exact(0);
    std::vector<Rational> rest;
    for (const auto& t : terms) {
        if (auto s = exact_sqrt(t))
            exact += *s;
        else
            rest.push_back(t);
    }
    if (rest.empty()) return exact <= bound;
    for (unsigned bits = 32; bits <= 4096; bits *= 2) {
        Rational lo = exact, hi = exact;
        for (const auto& t : rest) {
            auto [l, h] = sqrt_bounds(t, bits);
            lo += l;
            hi += h;
        }
        if (hi <= bound) return true;
        if (lo >= bound) return false;
    }
    return false;
}

}  // namespace detail

/// l_ii >= sum_{j != i} |l_ij| for every row. Exact for quadratic fields; floating rows get
/// slack tau (default zero_tolerance(L)).
template <class T>
LaplacianCheck is_generalized_laplacian(const HermitianMatrix<T>& l, std::optional<double> tau = std::nullopt) {
    const std::size_t n = l.size();
    if constexpr (scalar_traits<T>::exact) {
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Rational> terms;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i && !l(i, j).is_zero()) terms.push_back(l(i, j).abs_squared());
            if (sgn(l.diag(i)) < 0 || !detail::sqrt_sum_at_most(terms, l.diag(i))) return {false, i};
        }
    } else {
        const double t = tau ? *tau : zero_tolerance(l);
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) s += std::abs(l(i, j));
            if (l.diag(i) < s - t) return {false, i};
        }
    }
    return {};
}

/// D^{-1/2} L D^{-1/2} with D = diag(L); rows and columns with zero diagonal become zero.
template <class T>
ComplexMatrix normalizer(const HermitianMatrix<T>& l, std::optional<double> tau = std::nullopt) {
    if (auto check = is_generalized_laplacian(l, tau); !check.ok) throw NotGeneralizedLaplacian(*check.row);
    const std::size_t n = l.size();
    std::vector<bool> live(n);
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        if constexpr (scalar_traits<T>::exact) {
            live[i] = sgn(l.diag(i)) != 0;
            d[i] = to_double(l.diag(i));
        } else {
            live[i] = l.diag(i) > (tau ? *tau : zero_tolerance(l));
            d[i] = l.diag(i);
        }
    }
    std::vector<Complex> e(n * n, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        if (!live[i]) continue;
        e[i * n + i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!live[j]) continue;
            double scale;
            if constexpr (scalar_traits<T>::exact)
                scale = std::sqrt(to_double(Rational(l.diag(i) * l.diag(j))));
            else
                scale = std::sqrt(d[i] * d[j]);
            const Complex x = scalar_traits<T>::to_complex(l(i, j)) / scale;
            e[i * n + j] = x;
            e[j * n + i] = std::conj(x);
        }
    }
    return ComplexMatrix::adopt(n, Field::complex, std::move(e));
}

/// Floating operator of any kind; normalized kinds go through the normalizer.
inline ComplexMatrix build_float(const GraphSpec& g, OperatorKind kind) {
    if (is_normalized(kind)) return normalizer(build_exact(g, laplacian_of(kind)));
    return embed(build_exact(g, kind));
}

using AnyMatrix = std::variant<ComplexMatrix, ExactMatrix>;

/// Exact matrix for adjacency and Laplacian kinds, floating for normalized kinds.
inline AnyMatrix build_operator(const GraphSpec& g, OperatorKind kind) {
    if (is_normalized(kind)) return build_float(g, kind);
    return build_exact(g, kind);
}

/// Diagonal of L as an exact diagonal matrix (the D of the normalizer).
inline ExactMatrix diagonal_part(const ExactMatrix& l) {
    std::vector<Rational> d;
    for (std::size_t i = 0; i < l.size(); ++i) d.push_back(l.diag(i));
    return ExactMatrix::diagonal(std::span<const Rational>(d), l.field());
}

/// n+(normalizer(L) - rI), exactly. With L' - rD' the part of L - rD on nonzero-diagonal
/// rows, normalizer(L) - rI is congruent to (L' - rD') (+) (-r I_k), k the zero rows.
inline std::size_t normalized_n_plus(const ExactMatrix& l, const Rational& r) {
    std::size_t zero_rows = 0;
    for (std::size_t i = 0; i < l.size(); ++i)
        if (sgn(l.diag(i)) == 0) ++zero_rows;
    const auto n_plus = pencil_inertia(l, diagonal_part(l), r, Mode::exact).n_plus;
    return n_plus + (sgn(r) < 0 ? zero_rows : 0);
}

inline GraphSpec delete_record(const GraphSpec& g, std::size_t which) {
    if (which >= g.records().size()) throw BadIndex("no record " + std::to_string(which));
    auto records = g.records();
    records.erase(records.begin() + static_cast<std::ptrdiff_t>(which));
    return GraphSpec(g.vertex_count(), std::move(records));
}

/// Lowers one record's weight by `amount` (0 < amount <= weight); reaching zero deletes it.
inline GraphSpec reduce_weight(const GraphSpec& g, std::size_t which, const Rational& amount) {
    if (which >= g.records().size()) throw BadIndex("no record " + std::to_string(which));
    const auto& w = g.records()[which].weight;
    if (sgn(amount) <= 0 || amount > w) throw Error("weight reduction must lie in (0, weight]");
    if (amount == w) return delete_record(g, which);
    auto records = g.records();
    records[which].weight -= amount;
    return GraphSpec(g.vertex_count(), std::move(records));
}

/// L(G) - L(G - e) = w [[1, c], [conj c, 1]] on {u, v}.
struct LaplacianDifference {
    Rational w;
    QuadExt c;
    std::size_t u = 0;
    std::size_t v = 0;
};

/// Extracts (w, c) from the actual matrix difference of the Laplacian before and after
/// removing record `which` (or lowering its weight by `amount`).
inline LaplacianDifference laplacian_difference(const GraphSpec& g, std::size_t which, OperatorKind kind,
                                                const std::optional<Rational>& amount = std::nullopt) {
    if (kind != OperatorKind::laplacian && kind != OperatorKind::herm_laplacian_i &&
        kind != OperatorKind::herm_laplacian_omega)
        throw IncompatibleOperator(std::string(operator_name(kind)) + " is not a Laplacian-family operator");
    if (which >= g.records().size()) throw BadIndex("no record " + std::to_string(which));
    const auto after = amount ? reduce_weight(g, which, *amount) : delete_record(g, which);
    const auto diff = build_exact(g, kind) - build_exact(after, kind);
    const auto& rec = g.records()[which];
    const std::size_t u = rec.u, v = rec.v, n = diff.size();

    auto fail = [&](const std::string& why) {
        return UnexpectedDifferenceShape("record " + std::to_string(which) + ": " + why);
    };
    if (u == v) throw fail("a loop leaves the Laplacian unchanged");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if ((i != u && i != v) || (j != u && j != v))
                if (!diff(i, j).is_zero()) throw fail("difference has support outside {u, v}");
    const Rational w = diff.diag(u);
    if (sgn(w) <= 0 || diff.diag(v) != w) throw fail("diagonal of the difference is not w, w");
    QuadExt c = diff(u, v) * Rational(1 / w);
    if (c.abs_squared() != 1) throw fail("off-diagonal coefficient is not unimodular");
    return {w, std::move(c), u, v};
}

}  // namespace herminertia
