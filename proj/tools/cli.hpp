#pragma once

#include <cstdio>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <herminertia/herminertia.hpp>

namespace herminertia::cli {

enum ExitCode { kHolds = 0, kViolation = 1, kUsage = 2, kIndeterminate = 3 };

namespace detail {

struct Context {
    std::ostream& out;
    double tol = kDefaultRelativeTolerance;
    bool json = false;
};

/// Thrown for bad flag combinations that CLI11 cannot express.
struct UsageError : Error {
    using Error::Error;
};

inline std::string fmt(const char* pattern, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, x);
    return buf;
}

inline std::string header(const Context& c, const std::string& extra = {}) {
    return "# tol=" + fmt("%g", c.tol) + (extra.empty() ? "" : " " + extra);
}

inline void emit_json(const Context& c, Json j) {
    j["tol"] = c.tol;
    c.out << j.dump() << "\n";
}

inline std::string extension(const std::string& path) { return std::filesystem::path(path).extension().string(); }

inline OperatorKind operator_or(const std::string& name, OperatorKind fallback) {
    if (name.empty()) return fallback;
    auto k = parse_operator(name);
    if (!k) throw UsageError("unknown operator '" + name + "'");
    return *k;
}

/// `.hmat` as written, `.graph` built into the requested operator.
inline AnyMatrix load_matrix(const std::string& path, const std::string& op) {
    const auto ext = extension(path);
    if (ext == ".hmat") {
        if (!op.empty()) throw UsageError(path + ": --operator applies to .graph inputs only");
        return io::load_hmat(path);
    }
    if (ext == ".graph") {
        const auto g = io::load_graph(path);
        try {
            return build_operator(g, operator_or(op, OperatorKind::laplacian));
        } catch (const UsageError&) {
            throw;
        } catch (const Error& e) {
            throw Error(path + ": " + e.what());
        }
    }
    throw UsageError(path + ": unknown input type '" + ext + "' (expected .hmat or .graph)");
}

inline double norm_of(const AnyMatrix& m) {
    return std::visit([](const auto& x) { return x.frobenius_norm(); }, m);
}

inline Spectrum spectrum_of(const AnyMatrix& m) {
    return std::visit([](const auto& x) { return eigenvalues(x); }, m);
}

/// Values within tau of zero print as 0.
inline std::vector<double> snapped(const Spectrum& s, double tau) {
    std::vector<double> v = s.values;
    for (double& x : v)
        if (std::abs(x) <= tau) x = 0.0;
    return v;
}

inline std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + fmt("%.12g", v[i]);
    return s;
}

inline Json array_json(const std::vector<double>& v) {
    Json j = Json::array();
    for (double x : v) j.push_back(x);
    return j;
}

/// Float inertia plus a flag for eigenvalues in the band (tau, 10 tau] around zero, where the
/// classification depends on the tolerance.
inline std::pair<Inertia, bool> float_inertia(const ComplexMatrix& m, double rel) {
    const double tau = zero_tolerance(m, rel);
    const auto s = eigenvalues(m);
    bool soft = false;
    for (double v : s.values)
        if (std::abs(v) > tau && std::abs(v) <= 10.0 * tau) soft = true;
    return {inertia_of_spectrum(s, tau), soft};
}

inline int verdict(const Context& c, const RelationReport& r, const std::string& what) {
    if (c.json) {
        emit_json(c, to_json(r));
    } else {
        c.out << header(c) << "\n";
        c.out << what << ": " << (r.holds ? "holds" : herminertia::detail::describe(r))
              << (r.indeterminate ? " (indeterminate)" : "") << "\n";
    }
    if (r.holds) return kHolds;
    return r.indeterminate ? kIndeterminate : kViolation;
}

// --- subcommands ----------------------------------------------------------

inline int spectrum_cmd(const Context& c, const std::string& file, const std::string& op) {
    const auto m = load_matrix(file, op);
    const double tau = zero_tolerance(norm_of(m), c.tol);
    const auto values = snapped(spectrum_of(m), tau);
    if (c.json) {
        Json j{{"file", file}, {"spectrum", array_json(values)}};
        if (extension(file) == ".graph") j["operator"] = operator_name(operator_or(op, OperatorKind::laplacian));
        emit_json(c, j);
    } else {
        c.out << header(c) << "\n" << join(values) << "\n";
    }
    return kHolds;
}

struct InertiaArgs {
    std::string file, op, shift = "0";
    bool exact = false, pencil_degree = false;
};

inline int inertia_cmd(const Context& c, const InertiaArgs& a) {
    std::optional<Rational> exact_shift = parse_rational(a.shift);
    std::optional<double> float_shift = herminertia::detail::parse_double(a.shift);
    if (a.exact && !exact_shift) throw UsageError("--shift '" + a.shift + "' is not a rational number");
    if (!exact_shift && !float_shift) throw UsageError("--shift '" + a.shift + "' is not a number");
    const double r = exact_shift ? to_double(*exact_shift) : *float_shift;

    Inertia result;
    bool soft = false;
    if (a.pencil_degree) {
        if (extension(a.file) != ".graph") throw UsageError("--pencil-degree needs a .graph input");
        const auto g = io::load_graph(a.file);
        const auto l = build_exact(g, laplacian_of(operator_or(a.op, OperatorKind::laplacian)));
        const auto d = diagonal_part(l);
        if (a.exact) {
            result = pencil_inertia(l, d, *exact_shift, Mode::exact);
        } else {
            std::tie(result, soft) = float_inertia(pencil_shift(embed(l), embed(d), r), c.tol);
        }
    } else {
        const auto m = load_matrix(a.file, a.op);
        if (a.exact) {
            const auto* q = std::get_if<ExactMatrix>(&m);
            if (!q) throw UsageError(a.file + ": --exact needs a q(-1) or q(-3) matrix");
            result = shifted_inertia(*q, *exact_shift, Mode::exact);
        } else {
            const auto cm = std::visit([](const auto& x) { return embed(x); }, m);
            std::tie(result, soft) = float_inertia(shift(cm, r), c.tol);
        }
    }

    const std::string mode = a.exact ? "exact" : "float";
    if (c.json) {
        Json j{{"file", a.file}, {"shift", a.shift}, {"mode", mode}, {"pencil_degree", a.pencil_degree},
               {"inertia", to_json(result)}, {"indeterminate", soft}};
        emit_json(c, j);
    } else {
        c.out << header(c, "mode=" + mode + " shift=" + a.shift) << "\n";
        c.out << "inertia " << to_string(result) << (soft ? " (indeterminate)" : "") << "\n";
    }
    return soft ? kIndeterminate : kHolds;
}

struct CheckArgs {
    std::vector<std::string> files;
    std::optional<long> m;
    std::string relation;
    std::string method = "both";
};

inline Method parse_method(const std::string& s) {
    if (s == "spectral") return Method::spectral;
    if (s == "inertia") return Method::inertia;
    if (s == "both") return Method::both;
    throw UsageError("unknown method '" + s + "'");
}

inline int check_roots(const Context& c, const CheckArgs& a, Method method) {
    std::vector<RealRootedPoly> polys;
    for (const auto& f : a.files) {
        if (extension(f) != ".roots") throw UsageError(f + ": cannot mix .roots with matrix inputs");
        auto ps = io::load_roots(f);
        polys.insert(polys.end(), ps.begin(), ps.end());
    }
    if (polys.size() != 2)
        throw UsageError("expected exactly two root lists, got " + std::to_string(polys.size()));
    const auto& f = polys[0];
    const auto& g = polys[1];

    RelationReport r;
    if (a.m) {
        r = method == Method::spectral ? shift_dominates_spectral(f, g, *a.m)
            : method == Method::inertia ? shift_dominates_nu(f, g, *a.m)
                                        : shift_dominates(f, g, *a.m);
    } else if (a.relation == "interlace") {
        r = method == Method::spectral ? interlaces_spectral(f, g)
            : method == Method::inertia ? interlaces_nu(f, g)
                                        : interlaces(f, g);
    } else {
        r = method == Method::spectral ? compatible_spectral(f, g)
            : method == Method::inertia ? compatible_nu(f, g)
                                        : compatible(f, g);
    }
    return verdict(c, r, a.m ? "shift dominance m=" + std::to_string(*a.m) : a.relation);
}

template <class T>
RelationReport matrix_check(const HermitianMatrix<T>& x, const HermitianMatrix<T>& y, const CheckArgs& a,
                            const RelationOptions& opts) {
    if (a.m) return matrix_shift_dominates(x, y, *a.m, opts);
    if (a.relation == "interlace") return matrix_interlaces(x, y, opts);
    return matrix_compatible(x, y, opts);
}

inline int check_cmd(const Context& c, const CheckArgs& a) {
    if (a.m.has_value() == !a.relation.empty()) throw UsageError("give exactly one of --m or --relation");
    if (!a.relation.empty() && a.relation != "interlace" && a.relation != "compatible")
        throw UsageError("--relation must be interlace or compatible");
    const Method method = parse_method(a.method);
    if (a.files.empty() || a.files.size() > 2) throw UsageError("check takes one or two input files");
    if (extension(a.files[0]) == ".roots") return check_roots(c, a, method);
    if (a.files.size() != 2) throw UsageError("matrix check needs two files");

    const auto x = load_matrix(a.files[0], "");
    const auto y = load_matrix(a.files[1], "");
    if (x.index() != y.index()) throw UsageError("inputs come from different fields");
    const RelationOptions opts{method, Mode::floating, c.tol, {}};
    const double tau = zero_tolerance(std::max(norm_of(x), norm_of(y)), c.tol);
    const auto r = std::visit(
        [&](const auto& xm) {
            const auto& ym = std::get<std::decay_t<decltype(xm)>>(y);
            if (xm.size() != ym.size() && a.m) throw UsageError("shift dominance needs matrices of equal size");
            return theorems::detail::judge(matrix_check(xm, ym, a, opts), tau);
        },
        x);
    return verdict(c, r, a.m ? "shift dominance m=" + std::to_string(*a.m) : a.relation);
}

inline int build_cmd(const Context& c, const std::string& file, const std::string& op, const std::string& output) {
    if (extension(file) != ".graph") throw UsageError(file + ": build needs a .graph input");
    const auto m = load_matrix(file, op);
    const auto text = io::format_hmat(m);
    if (!output.empty()) {
        io::write_file(output, text);
        if (c.json)
            emit_json(c, Json{{"file", file}, {"operator", op}, {"output", output}});
        else
            c.out << header(c) << "\nwrote " << output << "\n";
    } else if (c.json) {
        emit_json(c, Json{{"file", file}, {"operator", op}, {"matrix", std::visit([](const auto& x) { return to_json(x); }, m)}});
    } else {
        c.out << header(c, "operator=" + op) << "\n" << text;
    }
    return kHolds;
}

struct DeleteArgs {
    std::string file, op, reduce;
    std::size_t record = 0;
};

inline int delete_cmd(const Context& c, const DeleteArgs& a) {
    const auto kind = operator_or(a.op, OperatorKind::laplacian);
    if (is_adjacency(kind)) throw UsageError("delete-edge needs a Laplacian or normalized Laplacian operator");
    if (extension(a.file) != ".graph") throw UsageError(a.file + ": delete-edge needs a .graph input");
    const auto g = io::load_graph(a.file);
    if (a.record >= g.records().size())
        throw UsageError(a.file + ": record " + std::to_string(a.record) + " out of range (graph has " +
                         std::to_string(g.records().size()) + ")");
    std::optional<Rational> amount;
    if (!a.reduce.empty()) {
        amount = parse_rational(a.reduce);
        if (!amount) throw UsageError("--reduce '" + a.reduce + "' is not a rational number");
    }
    const theorems::DeletionInput in{g, a.record, laplacian_of(kind), amount};
    const auto out = theorems::deletion_outcome(in, c.tol);

    auto values = [&](const auto& m) { return snapped(eigenvalues(m), zero_tolerance(m, c.tol)); };
    const auto lb = values(out.l_before), la = values(out.l_after);
    const auto nb = values(out.n_before), na = values(out.n_after);
    const int code = out.interlace.holds && out.compatible.holds ? kHolds : kViolation;

    if (c.json) {
        Json j{{"file", a.file},
               {"record", a.record},
               {"operator", operator_name(laplacian_of(kind))},
               {"w", out.difference.w.get_str()},
               {"c", to_string(out.difference.c)},
               {"laplacian_before", array_json(lb)},
               {"laplacian_after", array_json(la)},
               {"normalized_before", array_json(nb)},
               {"normalized_after", array_json(na)},
               {"interlace", to_json(out.interlace)},
               {"compatible", to_json(out.compatible)}};
        if (amount) j["reduce"] = amount->get_str();
        emit_json(c, j);
    } else {
        auto verdict_text = [](const RelationReport& r) {
            return r.holds ? std::string("holds") : herminertia::detail::describe(r);
        };
        c.out << header(c, std::string("operator=") + operator_name(laplacian_of(kind))) << "\n";
        c.out << "difference w=" << out.difference.w.get_str() << " c=" << to_string(out.difference.c) << " on ("
              << out.difference.u << ", " << out.difference.v << ")\n";
        c.out << "laplacian before: " << join(lb) << "\n";
        c.out << "laplacian after: " << join(la) << "\n";
        c.out << "normalized before: " << join(nb) << "\n";
        c.out << "normalized after: " << join(na) << "\n";
        c.out << "laplacian interlace (after, before): " << verdict_text(out.interlace) << "\n";
        c.out << "normalized compatible (after, before): " << verdict_text(out.compatible) << "\n";
    }
    return code;
}

struct VerifyArgs {
    std::string theorem;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    std::size_t size = 8;
    bool negative = false;
    unsigned threads = 1;
};

inline int verify_cmd(const Context& c, const VerifyArgs& a) {
    const auto id = theorems::parse_theorem(a.theorem);
    if (!id) throw UsageError("unknown theorem '" + a.theorem + "'");
    if (a.trials == 0) throw UsageError("--trials must be positive");
    if (a.size == 0) throw UsageError("--size must be positive");
    theorems::FuzzOptions opts;
    opts.rel_tol = c.tol;
    opts.negative_control = a.negative;
    opts.threads = a.threads;
    const auto rep = theorems::fuzz(*id, a.trials, a.seed, a.size, opts);

    if (c.json) {
        c.out << theorems::to_json(rep).dump() << "\n";
    } else {
        c.out << header(c, "theorem=" + a.theorem + " trials=" + std::to_string(a.trials) +
                               " seed=" + std::to_string(a.seed) + " size=" + std::to_string(a.size) +
                               (a.negative ? " negative" : ""))
              << "\n";
        c.out << "passed " << rep.passed << "/" << rep.trials_run << ", indeterminate " << rep.indeterminate
              << ", failures " << rep.failures.size() << "\n";
        for (const auto& f : rep.failures) {
            c.out << "trial " << f.trial << " seed " << f.seed << ": "
                  << (f.report ? herminertia::detail::describe(*f.report) : "error: " + f.error) << "\n";
        }
    }
    if (!rep.failures.empty()) return kViolation;
    return rep.indeterminate ? kIndeterminate : kHolds;
}

}  // namespace detail

/// Runs one command line (without the program name) and returns the exit status.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Inertia-index checks for Hermitian matrices and graph operators", "herminertia"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    detail::Context ctx{out};
    auto common = [&](CLI::App* sub, bool json = true) {
        sub->add_option("--tol", ctx.tol, "Relative zero tolerance")->check(CLI::PositiveNumber);
        if (json) sub->add_flag("--json", ctx.json, "Machine-readable output");
    };

    std::string file, op, output;
    auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of a matrix or graph operator, descending");
    spectrum->add_option("file", file, ".hmat or .graph input")->required();
    spectrum->add_option("--operator", op, "Operator kind for .graph inputs (default laplacian)");
    common(spectrum);

    detail::InertiaArgs ia;
    auto* inertia_sub = app.add_subcommand("inertia", "Inertia of A - rI, or of L - rD");
    inertia_sub->add_option("file", ia.file, ".hmat or .graph input")->required();
    inertia_sub->add_option("--shift", ia.shift, "Shift r (rational or decimal)");
    inertia_sub->add_option("--operator", ia.op, "Operator kind for .graph inputs");
    inertia_sub->add_flag("--exact", ia.exact, "Exact arithmetic (quadratic-field inputs, rational shift)");
    inertia_sub->add_flag("--pencil-degree", ia.pencil_degree, "Use L - rD with D the diagonal of the Laplacian");
    common(inertia_sub);

    detail::CheckArgs ca;
    long m_value = 0;
    auto* check = app.add_subcommand("check", "Shift dominance, interlacing or compatibility of two inputs");
    check->add_option("files", ca.files, "Two .hmat files, two .roots files, or one .roots file with two lines")
        ->required();
    auto* m_opt = check->add_option("--m", m_value, "Shift m in lambda_{i+m}(B) <= lambda_i(A)");
    check->add_option("--relation", ca.relation, "interlace or compatible");
    check->add_option("--method", ca.method, "spectral, inertia or both");
    common(check);

    auto* build = app.add_subcommand("build", "Write a graph operator as .hmat");
    build->add_option("graph", file, ".graph input")->required();
    build->add_option("--operator", op, "Operator kind")->required();
    build->add_option("-o,--output", output, "Output .hmat path");
    common(build);

    detail::DeleteArgs da;
    auto* del = app.add_subcommand("delete-edge", "Spectra and verdicts before and after deleting one record");
    del->add_option("graph", da.file, ".graph input")->required();
    del->add_option("--record", da.record, "Record index (0-based, file order)")->required();
    del->add_option("--operator", da.op, "Laplacian family (default laplacian)");
    del->add_option("--reduce", da.reduce, "Lower the weight by this amount instead of deleting");
    common(del);

    detail::VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Fuzz one named theorem");
    verify->add_option("theorem", va.theorem, "Theorem id")->required();
    verify->add_option("--trials", va.trials, "Number of trials");
    verify->add_option("--seed", va.seed, "Master seed");
    verify->add_option("--size", va.size, "Size bound (matrix order or vertex count)");
    verify->add_flag("--negative", va.negative, "Run the hard-coded negative control");
    verify->add_option("--threads", va.threads, "Worker threads")->check(CLI::PositiveNumber);
    common(verify);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kHolds;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kHolds;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (*spectrum) return detail::spectrum_cmd(ctx, file, op);
        if (*inertia_sub) return detail::inertia_cmd(ctx, ia);
        if (*check) {
            if (m_opt->count() > 0) ca.m = m_value;
            return detail::check_cmd(ctx, ca);
        }
        if (*build) return detail::build_cmd(ctx, file, op, output);
        if (*del) return detail::delete_cmd(ctx, da);
        if (*verify) return detail::verify_cmd(ctx, va);
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return kUsage;
    } catch (const MethodDisagreement& e) {
        err << "indeterminate: " << e.what() << "\n";
        return kIndeterminate;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace herminertia::cli
