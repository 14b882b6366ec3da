#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "hermitian_matrix.hpp"
#include "interlace.hpp"

namespace herminertia::io {

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

/// Lines with their 1-based numbers, skipping blanks and '#' comments.
inline std::vector<std::pair<std::size_t, std::string>> content_lines(std::string_view text) {
    std::vector<std::pair<std::size_t, std::string>> out;
    std::size_t number = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        std::string line(text.substr(pos, end - pos));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first != std::string::npos && line[first] != '#') out.emplace_back(number, line);
        if (end == text.size()) break;
        pos = end + 1;
    }
    return out;
}

}  // namespace detail

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, 0, path, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

// ---------------------------------------------------------------------------
// .hmat
//
//   hmat v1
//   field complex|q(-1)|q(-3)
//   n <dim>
//   <n rows of n scalars>

inline AnyMatrix parse_hmat(std::string_view text, const std::string& file = "<hmat>") {
    const auto lines = detail::content_lines(text);
    auto line_at = [&](std::size_t k) -> const std::pair<std::size_t, std::string>& {
        if (k >= lines.size())
            throw ParseError(file, lines.empty() ? 1 : lines.back().first, "<eof>", "unexpected end of file");
        return lines[k];
    };

    {
        const auto& [no, line] = line_at(0);
        if (detail::split_ws(line) != std::vector<std::string>{"hmat", "v1"})
            throw ParseError(file, no, line, "expected header 'hmat v1'");
    }
    Field field;
    {
        const auto& [no, line] = line_at(1);
        const auto tok = detail::split_ws(line);
        if (tok.size() != 2 || tok[0] != "field") throw ParseError(file, no, line, "expected 'field <name>'");
        const auto f = parse_field(tok[1]);
        if (!f) throw ParseError(file, no, tok[1], "unknown field");
        field = *f;
    }
    std::size_t n = 0;
    {
        const auto& [no, line] = line_at(2);
        const auto tok = detail::split_ws(line);
        if (tok.size() != 2 || tok[0] != "n" || !herminertia::detail::all_digits(tok[1]))
            throw ParseError(file, no, line, "expected 'n <dim>'");
        n = std::stoul(tok[1]);
    }
    if (lines.size() > 3 + n) throw ParseError(file, lines[3 + n].first, lines[3 + n].second, "extra row");

    std::vector<Complex> cf;
    std::vector<QuadExt> qf;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [no, line] = line_at(3 + i);
        const auto tok = detail::split_ws(line);
        if (tok.size() != n)
            throw ParseError(file, no, line, "row needs " + std::to_string(n) + " entries");
        for (const auto& t : tok) {
            if (field == Field::complex) {
                auto z = parse_complex(t);
                if (!z) throw ParseError(file, no, t, "bad complex scalar");
                cf.push_back(*z);
            } else {
                auto q = parse_quad(t, field_radicand(field));
                if (!q) throw ParseError(file, no, t, "bad exact scalar");
                qf.push_back(*q);
            }
        }
    }

    auto row_line = [&](std::size_t row) { return lines[3 + row].first; };
    try {
        if (field == Field::complex) return ComplexMatrix::from_full(n, cf);
        return ExactMatrix::from_full(n, qf, field);
    } catch (const NonRealDiagonal& e) {
        throw ParseError(file, row_line(e.index()), detail::split_ws(lines[3 + e.index()].second)[e.index()],
                         "diagonal entry is not real");
    } catch (const NotHermitian& e) {
        throw ParseError(file, row_line(e.row()), detail::split_ws(lines[3 + e.row()].second)[e.col()],
                         "matrix is not Hermitian");
    }
}

inline AnyMatrix load_hmat(const std::string& path) { return parse_hmat(read_file(path), path); }

template <class T>
std::string format_hmat(const HermitianMatrix<T>& a) {
    std::ostringstream out;
    out << "hmat v1\nfield " << field_name(a.field()) << "\nn " << a.size() << "\n";
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) out << (j ? " " : "") << to_string(a(i, j));
        out << "\n";
    }
    return out.str();
}

inline std::string format_hmat(const AnyMatrix& a) {
    return std::visit([](const auto& m) { return format_hmat(m); }, a);
}

// ---------------------------------------------------------------------------
// .graph
//
//   graph v1 n=<count>
//   edge U V [weight=W] [sign=+|-]
//   arc U V [weight=W]
//   digon U V [weight=W]

inline GraphSpec parse_graph(std::string_view text, const std::string& file = "<graph>") {
    const auto lines = detail::content_lines(text);
    if (lines.empty()) throw ParseError(file, 1, "<eof>", "empty graph file");

    std::size_t n = 0;
    {
        const auto& [no, line] = lines[0];
        const auto tok = detail::split_ws(line);
        if (tok.size() != 3 || tok[0] != "graph" || tok[1] != "v1" || tok[2].rfind("n=", 0) != 0 ||
            !herminertia::detail::all_digits(tok[2].substr(2)))
            throw ParseError(file, no, line, "expected header 'graph v1 n=<count>'");
        n = std::stoul(tok[2].substr(2));
    }

    std::vector<EdgeRecord> records;
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto& [no, line] = lines[k];
        const auto tok = detail::split_ws(line);
        EdgeRecord r;
        if (tok[0] == "edge")
            r.kind = RecordKind::edge;
        else if (tok[0] == "arc")
            r.kind = RecordKind::arc;
        else if (tok[0] == "digon")
            r.kind = RecordKind::digon;
        else
            throw ParseError(file, no, tok[0], "unknown record kind");
        if (tok.size() < 3) throw ParseError(file, no, line, "record needs two vertices");
        for (int side = 0; side < 2; ++side) {
            const auto& t = tok[1 + side];
            if (!herminertia::detail::all_digits(t)) throw ParseError(file, no, t, "bad vertex index");
            const std::size_t vtx = std::stoul(t);
            if (vtx >= n) throw ParseError(file, no, t, "vertex index out of range");
            (side == 0 ? r.u : r.v) = vtx;
        }
        for (std::size_t t = 3; t < tok.size(); ++t) {
            const auto& opt = tok[t];
            if (opt.rfind("weight=", 0) == 0) {
                auto w = parse_rational(std::string_view(opt).substr(7));
                if (!w || sgn(*w) <= 0) throw ParseError(file, no, opt, "weight must be a positive rational");
                r.weight = *w;
            } else if (opt == "sign=+" || opt == "sign=-") {
                if (r.kind != RecordKind::edge) throw ParseError(file, no, opt, "only edges carry a sign");
                r.sign = opt == "sign=+" ? 1 : -1;
            } else {
                throw ParseError(file, no, opt, "unknown record option");
            }
        }
        if (r.u == r.v && r.kind != RecordKind::edge)
            throw ParseError(file, no, tok[2], "arcs and digons need two distinct vertices");
        if (r.u == r.v && r.sign != 1) throw ParseError(file, no, line, "loops cannot be signed");
        if (!pairs.insert(std::minmax(r.u, r.v)).second)
            throw ParseError(file, no, line, "duplicate vertex pair");
        records.push_back(std::move(r));
    }
    return GraphSpec(n, std::move(records));
}

inline GraphSpec load_graph(const std::string& path) { return parse_graph(read_file(path), path); }

inline std::string format_graph(const GraphSpec& g) {
    std::ostringstream out;
    out << "graph v1 n=" << g.vertex_count() << "\n";
    for (const auto& r : g.records()) {
        out << (r.kind == RecordKind::edge ? "edge" : r.kind == RecordKind::arc ? "arc" : "digon") << " " << r.u
            << " " << r.v;
        if (r.weight != 1) out << " weight=" << r.weight.get_str();
        if (r.sign == -1) out << " sign=-";
        out << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// .roots: one descending root list per line, whitespace or comma separated, optionally
// bracketed as a JSON array. "[]" is the empty list.

inline std::vector<RealRootedPoly> parse_roots(std::string_view text, const std::string& file = "<roots>") {
    std::vector<RealRootedPoly> out;
    for (const auto& [no, raw] : detail::content_lines(text)) {
        std::string line = raw;
        for (char& c : line)
            if (c == ',' || c == '[' || c == ']') c = ' ';
        std::vector<double> roots;
        for (const auto& t : detail::split_ws(line)) {
            auto v = herminertia::detail::parse_double(t);
            if (!v || !std::isfinite(*v)) throw ParseError(file, no, t, "bad root");
            if (!roots.empty() && *v > roots.back()) throw ParseError(file, no, t, "roots must be nonincreasing");
            roots.push_back(*v);
        }
        out.emplace_back(std::move(roots));
    }
    return out;
}

inline std::vector<RealRootedPoly> load_roots(const std::string& path) {
    return parse_roots(read_file(path), path);
}

}  // namespace herminertia::io
