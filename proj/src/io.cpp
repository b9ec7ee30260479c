#include "simgrav/io.hpp"

#include <Eigen/Dense>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace simgrav {

namespace {

std::vector<std::string> split_words(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> words;
    for (std::string w; is >> w;) words.push_back(w);
    return words;
}

template <class T>
T parse_integer(const std::string& s, std::size_t line, const char* what) {
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError("line " + std::to_string(line) + ": invalid " + what + " '" + s + "'");
    return v;
}

double parse_real(const std::string& s, std::size_t line) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line) + ": invalid number '" + s + "'");
    }
}

std::string format_real(double v) {
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return os.str();
}

void assign_global(SquaredLengthMap& m, const ComplexFile::Length& l) {
    m.set(Simplex{l.i, l.j}, l.value);
}

}  // namespace

ComplexFile parse_complex_file(std::istream& in) {
    ComplexFile f;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            f.comments.push_back(line.substr(hash + 1));
            line.erase(hash);
        }
        const auto w = split_words(line);
        if (w.empty()) continue;
        if (w[0] == "simplex") {
            if (w.size() != 6) throw ParseError("line " + std::to_string(number) + ": simplex needs 5 vertices");
            std::array<VertexId, 5> t{};
            for (int k = 0; k < 5; ++k) t[k] = parse_integer<VertexId>(w[k + 1], number, "vertex");
            f.simplices.push_back(t);
        } else if (w[0] == "length") {
            if (w.size() != 4) throw ParseError("line " + std::to_string(number) + ": length needs vi vj x");
            ComplexFile::Length l{parse_integer<VertexId>(w[1], number, "vertex"),
                                  parse_integer<VertexId>(w[2], number, "vertex"), parse_real(w[3], number)};
            if (l.i == l.j) throw ParseError("line " + std::to_string(number) + ": length needs two distinct vertices");
            f.lengths.push_back(l);
        } else if (w[0] == "plength") {
            if (w.size() != 5) throw ParseError("line " + std::to_string(number) + ": plength needs s vi vj x");
            ComplexFile::SimplexLength l{parse_integer<std::size_t>(w[1], number, "simplex index"),
                                         parse_integer<VertexId>(w[2], number, "vertex"),
                                         parse_integer<VertexId>(w[3], number, "vertex"), parse_real(w[4], number)};
            if (l.i == l.j) throw ParseError("line " + std::to_string(number) + ": plength needs two distinct vertices");
            f.simplex_lengths.push_back(l);
        } else {
            throw ParseError("line " + std::to_string(number) + ": unknown record '" + w[0] + "'");
        }
    }
    for (const auto& l : f.simplex_lengths)
        if (l.simplex >= f.simplices.size())
            throw ParseError("plength refers to simplex " + std::to_string(l.simplex) + " but only " +
                             std::to_string(f.simplices.size()) + " are listed");
    return f;
}

ComplexFile read_complex_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return parse_complex_file(in);
}

void write_complex_file(std::ostream& out, const ComplexFile& file) {
    for (const auto& c : file.comments) out << '#' << c << '\n';
    for (const auto& s : file.simplices)
        out << "simplex " << s[0] << ' ' << s[1] << ' ' << s[2] << ' ' << s[3] << ' ' << s[4] << '\n';
    for (const auto& l : file.lengths) out << "length " << l.i << ' ' << l.j << ' ' << format_real(l.value) << '\n';
    for (const auto& l : file.simplex_lengths)
        out << "plength " << l.simplex << ' ' << l.i << ' ' << l.j << ' ' << format_real(l.value) << '\n';
}

std::optional<SquaredLengthMap> global_lengths(const ComplexFile& file, const SimplicialComplex& complex) {
    SquaredLengthMap m;
    for (const auto& l : file.lengths) assign_global(m, l);
    for (const auto& e : complex.faces(1))
        if (!m.has(e)) return std::nullopt;
    return m;
}

std::optional<PerSimplexLengths> per_simplex_lengths(const ComplexFile& file, const SimplicialComplex& complex) {
    SquaredLengthMap global;
    for (const auto& l : file.lengths) assign_global(global, l);
    PerSimplexLengths p(complex);
    for (std::size_t t = 0; t < complex.count(4); ++t)
        for (const auto& e : complex.four_simplices()[t].faces(1))
            if (global.has(e)) p.set(t, e, global.at(e));
    for (const auto& l : file.simplex_lengths) {
        const std::size_t top = complex.top_index_of_input(l.simplex);
        const Simplex edge{l.i, l.j};
        if (!complex.four_simplices()[top].contains(edge))
            throw ParseError("plength edge " + edge.to_string() + " is not in simplex line " +
                             std::to_string(l.simplex));
        p.set(top, edge, l.value);
    }
    if (!p.complete()) return std::nullopt;
    return p;
}

void apply_lengths_argument(ComplexFile& file, const std::string& argument, const SimplicialComplex& complex) {
    if (std::filesystem::is_regular_file(argument)) {
        const ComplexFile extra = read_complex_file(argument);
        file.lengths.insert(file.lengths.end(), extra.lengths.begin(), extra.lengths.end());
        file.simplex_lengths.insert(file.simplex_lengths.end(), extra.simplex_lengths.begin(),
                                    extra.simplex_lengths.end());
        return;
    }
    // A bare number sets every edge.
    {
        std::size_t used = 0;
        try {
            const double v = std::stod(argument, &used);
            if (used == argument.size()) {
                for (const auto& e : complex.faces(1)) file.lengths.push_back({e[0], e[1], v});
                return;
            }
        } catch (const std::exception&) {
        }
    }
    std::istringstream is(argument);
    for (std::string item; std::getline(is, item, ',');) {
        const auto dash = item.find('-');
        const auto eq = item.find('=');
        if (dash == std::string::npos || eq == std::string::npos || eq < dash)
            throw ParseError("--lengths: expected i-j=x, got '" + item + "'");
        ComplexFile::Length l{parse_integer<VertexId>(item.substr(0, dash), 0, "vertex"),
                              parse_integer<VertexId>(item.substr(dash + 1, eq - dash - 1), 0, "vertex"),
                              parse_real(item.substr(eq + 1), 0)};
        file.lengths.push_back(l);
    }
}

namespace fixtures {

namespace {

ComplexFile with_unit_lengths(std::vector<std::array<VertexId, 5>> simplices, std::string comment) {
    ComplexFile f;
    f.comments.push_back(" " + std::move(comment));
    f.simplices = std::move(simplices);
    const auto c = build_complex(f.simplices);
    for (const auto& e : c.faces(1)) f.lengths.push_back({e[0], e[1], 1.0});
    return f;
}

}  // namespace

ComplexFile boundary5() {
    std::vector<std::array<VertexId, 5>> s;
    for (VertexId skip = 0; skip < 6; ++skip) {
        std::array<VertexId, 5> t{};
        std::size_t k = 0;
        for (VertexId v = 0; v < 6; ++v)
            if (v != skip) t[k++] = v;
        s.push_back(t);
    }
    return with_unit_lengths(std::move(s), "boundary of the 5-simplex");
}

ComplexFile glued_pair() {
    return with_unit_lengths({{0, 1, 2, 3, 4}, {1, 2, 3, 4, 5}}, "two 4-simplices sharing {1,2,3,4}");
}

ComplexFile chain(std::size_t k) {
    if (k == 0) throw StructureError("chain needs at least one 4-simplex");
    std::vector<std::array<VertexId, 5>> s;
    for (VertexId i = 0; i < k; ++i) s.push_back({i, i + 1, i + 2, i + 3, i + 4});
    return with_unit_lengths(std::move(s), "chain of " + std::to_string(k) + " 4-simplices");
}

ComplexFile flat_subdivision() {
    // Vertices 0..4 span a generic 4-simplex; vertex 5 lies strictly inside.
    const std::array<Eigen::Vector4d, 6> x{
        Eigen::Vector4d(0.0, 0.0, 0.0, 0.0),  Eigen::Vector4d(1.3, 0.1, -0.2, 0.05),
        Eigen::Vector4d(0.2, 1.1, 0.15, -0.1), Eigen::Vector4d(-0.1, 0.3, 0.9, 0.2),
        Eigen::Vector4d(0.25, -0.2, 0.1, 1.2), Eigen::Vector4d::Zero()};
    std::array<Eigen::Vector4d, 6> pts = x;
    const std::array<double, 5> weights{0.18, 0.22, 0.2, 0.17, 0.23};
    for (int i = 0; i < 5; ++i) pts[5] += weights[i] * x[i];

    ComplexFile f;
    f.comments.push_back(" 4-simplex {0..4} subdivided at interior vertex 5; exact Euclidean lengths");
    for (VertexId skip = 0; skip < 5; ++skip) {
        std::array<VertexId, 5> t{};
        std::size_t k = 0;
        for (VertexId v = 0; v < 5; ++v)
            if (v != skip) t[k++] = v;
        t[4] = 5;
        f.simplices.push_back(t);
    }
    for (VertexId i = 0; i < 6; ++i)
        for (VertexId j = i + 1; j < 6; ++j) f.lengths.push_back({i, j, (pts[i] - pts[j]).squaredNorm()});
    return f;
}

}  // namespace fixtures

}  // namespace simgrav
