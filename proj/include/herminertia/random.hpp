#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "eigen.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "hermitian_matrix.hpp"

namespace herminertia {

/// Mixes a master seed with a trial index (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic generator. Only the raw mt19937_64 stream is used, so draws are identical
/// across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    /// Uniform integer in [lo, hi].
    long between(long lo, long hi) { return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
    bool chance(double p) { return unit() < p; }

    template <class T>
    const T& pick(const std::vector<T>& xs) {
        return xs[below(xs.size())];
    }

private:
    std::mt19937_64 engine_;
};

namespace detail {

inline Rational small_rational(Rng& rng, long bound) {
    Rational q(rng.between(-bound, bound), rng.between(1, 4));
    q.canonicalize();
    return q;
}

inline bool gaps_at_least(const Spectrum& s, double gap) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i] - s[i + 1] < gap) return false;
    return true;
}

}  // namespace detail

/// Complex Hermitian matrix, |entries| <= 10.
inline ComplexMatrix random_complex_hermitian(std::size_t n, Rng& rng) {
    std::vector<Complex> upper;
    for (std::size_t i = 0; i < n; ++i) {
        upper.emplace_back(rng.uniform(-10.0, 10.0), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) upper.emplace_back(rng.uniform(-7.0, 7.0), rng.uniform(-7.0, 7.0));
    }
    return ComplexMatrix::from_upper(n, upper);
}

/// Quadratic-field Hermitian matrix with small rational coordinates (|entries| <= 10) and
/// roughly a quarter of the off-diagonal entries zero.
inline ExactMatrix random_exact_hermitian(std::size_t n, Field field, Rng& rng) {
    const int d = field_radicand(field);
    std::vector<QuadExt> upper;
    for (std::size_t i = 0; i < n; ++i) {
        upper.push_back(QuadExt::rational(detail::small_rational(rng, 10), d));
        for (std::size_t j = i + 1; j < n; ++j) {
            if (rng.chance(0.25)) {
                upper.push_back(QuadExt::zero(d));
                continue;
            }
            auto a = detail::small_rational(rng, 5);
            auto b = detail::small_rational(rng, 5);
            upper.emplace_back(a, b, d);
        }
    }
    return ExactMatrix::from_upper(n, upper, field);
}

/// Seeded Hermitian matrix in any field. With `spec_gap`, resamples (at most 100 times)
/// until all consecutive eigenvalue gaps reach the bound.
inline AnyMatrix random_hermitian(std::size_t n, Field field, std::uint64_t seed,
                                  std::optional<double> spec_gap = std::nullopt) {
    if (n == 0) throw ShapeMismatch("random matrices need n >= 1");
    Rng rng(seed);
    for (int attempt = 0; attempt < 100; ++attempt) {
        AnyMatrix m = field == Field::complex ? AnyMatrix(random_complex_hermitian(n, rng))
                                              : AnyMatrix(random_exact_hermitian(n, field, rng));
        if (!spec_gap) return m;
        const auto s = std::visit([](const auto& x) { return eigenvalues(x); }, m);
        if (detail::gaps_at_least(s, *spec_gap)) return m;
    }
    throw GapUnreachable("no sample with eigenvalue gaps >= " + std::to_string(*spec_gap) + " in 100 draws");
}

inline ComplexMatrix random_complex_hermitian(std::size_t n, std::uint64_t seed,
                                              std::optional<double> spec_gap = std::nullopt) {
    return std::get<ComplexMatrix>(random_hermitian(n, Field::complex, seed, spec_gap));
}

inline std::vector<Complex> random_vector(std::size_t n, Rng& rng, double bound = 3.0) {
    std::vector<Complex> v;
    for (std::size_t i = 0; i < n; ++i) v.emplace_back(rng.uniform(-bound, bound), rng.uniform(-bound, bound));
    return v;
}

/// sum_k sign_k x_k x_k* over the given signs.
inline ComplexMatrix random_signed_sum(std::size_t n, const std::vector<int>& signs, Rng& rng) {
    auto m = ComplexMatrix::zero(n);
    for (int s : signs) {
        auto x = random_vector(n, rng);
        if (s < 0) {
            auto neg = rank_one_update(ComplexMatrix::zero(n), x);
            m = m - neg;
        } else {
            m = rank_one_update(m, x);
        }
    }
    return m;
}

/// C C* + I.
inline ComplexMatrix random_positive_definite(std::size_t n, Rng& rng) {
    std::vector<int> signs(n, 1);
    return random_signed_sum(n, signs, rng) + ComplexMatrix::identity(n);
}

enum class GraphFlavor { simple, signed_graph, weighted, digraph };

inline const char* flavor_name(GraphFlavor f) {
    switch (f) {
        case GraphFlavor::simple: return "simple";
        case GraphFlavor::signed_graph: return "signed";
        case GraphFlavor::weighted: return "weighted";
        case GraphFlavor::digraph: return "digraph";
    }
    return "?";
}

/// Each unordered pair joins with probability `density`; the flavor fixes record kinds.
/// Weighted graphs draw weights from {1/2, 1, 3/2, 2}; digraphs pick arc u->v, arc v->u or
/// a digon uniformly.
inline GraphSpec random_graph(std::size_t n, GraphFlavor flavor, double density, std::uint64_t seed) {
    if (density < 0.0 || density > 1.0) throw Error("density must lie in [0, 1]");
    Rng rng(seed);
    std::vector<EdgeRecord> records;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (!(rng.unit() < density)) continue;
            EdgeRecord r{RecordKind::edge, u, v, Rational(1), 1};
            switch (flavor) {
                case GraphFlavor::simple: break;
                case GraphFlavor::signed_graph: r.sign = rng.chance(0.5) ? 1 : -1; break;
                case GraphFlavor::weighted: r.weight = Rational(rng.between(1, 4), 2); r.weight.canonicalize(); break;
                case GraphFlavor::digraph: {
                    const auto pick = rng.below(3);
                    r.kind = pick == 2 ? RecordKind::digon : RecordKind::arc;
                    if (pick == 1) std::swap(r.u, r.v);
                    break;
                }
            }
            records.push_back(std::move(r));
        }
    }
    return GraphSpec(n, std::move(records));
}

/// Random generalized Laplacian over a quadratic field whose off-diagonal moduli are
/// rational. Each vertex is isolated (zero row and column) with probability 1/5.
inline ExactMatrix random_generalized_laplacian(std::size_t n, Field field, Rng& rng) {
    const int d = field_radicand(field);
    std::vector<QuadExt> units;
    if (d == -1) {
        for (auto [a, b] : std::vector<std::pair<long, long>>{{5, 0}, {-5, 0}, {0, 5}, {0, -5}, {3, 4}, {4, -3}, {-3, 4}, {-4, -3}})
            units.emplace_back(Rational(a, 5), Rational(b, 5), d);
    } else {
        const QuadExt w = QuadExt::omega();
        QuadExt p = QuadExt::one(d);
        for (int k = 0; k < 6; ++k, p *= w) units.push_back(p);
    }
    std::vector<bool> live(n);
    for (std::size_t i = 0; i < n; ++i) live[i] = !rng.chance(0.2);

    std::vector<QuadExt> e(n * n, QuadExt::zero(d));
    std::vector<Rational> row_sum(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!live[i] || !live[j] || rng.chance(0.5)) continue;
            Rational mag(rng.between(1, 4), 2);
            mag.canonicalize();
            const QuadExt x = rng.pick(units) * mag;
            e[i * n + j] = x;
            e[j * n + i] = x.conj();
            row_sum[i] += mag;
            row_sum[j] += mag;
        }
    }
    const std::vector<Rational> slack{Rational(0), Rational(0), Rational(1, 2), Rational(1)};
    for (std::size_t i = 0; i < n; ++i)
        if (live[i]) e[i * n + i] = QuadExt::rational(row_sum[i] + rng.pick(slack), d);
    return ExactMatrix::adopt(n, field, std::move(e));
}

}  // namespace herminertia
