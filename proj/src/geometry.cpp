#include "simgrav/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace simgrav {

namespace {

constexpr std::array<std::array<int, 3>, 10> kLocalTriangles{{
    {0, 1, 2}, {0, 1, 3}, {0, 1, 4}, {0, 2, 3}, {0, 2, 4}, {0, 3, 4}, {1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}};

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Triangles whose stars are closed, with their star lengths.
std::map<std::size_t, std::size_t> closed_triangles(const SimplicialComplex& complex) {
    std::map<std::size_t, std::size_t> out;
    for (std::size_t t = 0; t < complex.count(2); ++t) {
        auto star = triangle_star(complex, complex.faces(2)[t]);
        if (star.closed) out.emplace(t, star.length());
    }
    return out;
}

}  // namespace

SquaredLengthMap SquaredLengthMap::uniform(const SimplicialComplex& complex, double value) {
    SquaredLengthMap m;
    for (const auto& e : complex.faces(1)) m.set(e, value);
    return m;
}

void SquaredLengthMap::set(const Simplex& edge, double value) {
    if (edge.dim() != 1) throw GeometryError("squared lengths are assigned to edges");
    values_[edge] = value;
}

double SquaredLengthMap::at(const Simplex& edge) const {
    auto it = values_.find(edge);
    if (it == values_.end()) throw GeometryError("no squared length for edge " + edge.to_string());
    return it->second;
}

SquaredDistances SquaredLengthMap::distances(const Simplex& s) const {
    const auto n = static_cast<Eigen::Index>(s.size());
    SquaredDistances d = SquaredDistances::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) d(i, j) = d(j, i) = at(Simplex{s[i], s[j]});
    return d;
}

SquaredLengthMap SquaredLengthMap::scaled(double factor) const {
    SquaredLengthMap m = *this;
    for (auto& [e, v] : m.values_) v *= factor;
    return m;
}

PerSimplexLengths::PerSimplexLengths(const SimplicialComplex& complex)
    : simplices_(complex.four_simplices()),
      per_simplex_(simplices_.size(), SquaredDistances::Zero(5, 5)),
      assigned_(simplices_.size(), Eigen::Matrix<bool, 5, 5>::Constant(false)) {}

PerSimplexLengths PerSimplexLengths::conformed(const SimplicialComplex& complex, const SquaredLengthMap& lengths) {
    PerSimplexLengths p(complex);
    for (std::size_t t = 0; t < p.simplices_.size(); ++t)
        for (const auto& e : p.simplices_[t].faces(1)) p.set(t, e, lengths.at(e));
    return p;
}

std::size_t PerSimplexLengths::local_position(std::size_t four_simplex, VertexId v) const {
    const Simplex& s = simplices_.at(four_simplex);
    auto it = std::lower_bound(s.begin(), s.end(), v);
    if (it == s.end() || *it != v)
        throw GeometryError("vertex " + std::to_string(v) + " is not in 4-simplex " + s.to_string());
    return static_cast<std::size_t>(it - s.begin());
}

void PerSimplexLengths::set(std::size_t four_simplex, const Simplex& edge, double value) {
    if (edge.dim() != 1) throw GeometryError("squared lengths are assigned to edges");
    auto i = local_position(four_simplex, edge[0]);
    auto j = local_position(four_simplex, edge[1]);
    per_simplex_[four_simplex](i, j) = per_simplex_[four_simplex](j, i) = value;
    assigned_[four_simplex](i, j) = assigned_[four_simplex](j, i) = true;
}

double PerSimplexLengths::at(std::size_t four_simplex, const Simplex& edge) const {
    auto i = local_position(four_simplex, edge[0]);
    auto j = local_position(four_simplex, edge[1]);
    if (!assigned_[four_simplex](i, j))
        throw GeometryError("no squared length for edge " + edge.to_string() + " in 4-simplex " +
                            simplices_[four_simplex].to_string());
    return per_simplex_[four_simplex](i, j);
}

bool PerSimplexLengths::complete() const {
    for (const auto& a : assigned_)
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j)
                if (!a(i, j)) return false;
    return true;
}

SquaredDistances PerSimplexLengths::distances(std::size_t four_simplex, const Simplex& face) const {
    std::vector<int> idx;
    for (VertexId v : face) idx.push_back(static_cast<int>(local_position(four_simplex, v)));
    return restrict_distances(per_simplex_[four_simplex], idx);
}

SquaredDistances restrict_distances(const SquaredDistances& d, const std::vector<int>& idx) {
    const auto n = static_cast<Eigen::Index>(idx.size());
    SquaredDistances r(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) r(i, j) = d(idx[i], idx[j]);
    return r;
}

Eigen::MatrixXd gram_matrix(const SquaredDistances& d, int origin) {
    const auto n = d.rows();
    Eigen::MatrixXd g(n - 1, n - 1);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i == origin) continue;
        Eigen::Index c = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == origin) continue;
            g(r, c) = 0.5 * (d(origin, i) + d(origin, j) - d(i, j));
            ++c;
        }
        ++r;
    }
    return g;
}

double simplex_volume(const SquaredDistances& d) {
    const auto dim = static_cast<int>(d.rows()) - 1;
    if (dim <= 0) return 1.0;
    const double det = gram_matrix(d).determinant();
    if (det < -kDegeneracyTolerance)
        throw SignatureError("negative Gram determinant " + std::to_string(det) + " in Euclidean mode");
    if (det <= kDegeneracyTolerance) return 0.0;
    return std::sqrt(det) / factorial(dim);
}

double simplex_volume(const Simplex& s, const SquaredLengthMap& lengths) {
    return simplex_volume(lengths.distances(s));
}

double hyperdihedral_angle(const SquaredDistances& four_simplex, const std::array<int, 3>& triangle) {
    std::array<int, 2> opposite{};
    int k = 0;
    for (int v = 0; v < 5; ++v)
        if (std::find(triangle.begin(), triangle.end(), v) == triangle.end()) opposite[k++] = v;
    if (k != 2) throw GeometryError("hyperdihedral angle needs three distinct local vertices");

    // Base point triangle[0]; directions to the other triangle vertices span the
    // triangle plane, directions to the opposite vertices are projected off it.
    const std::vector<int> order{triangle[0], triangle[1], triangle[2], opposite[0], opposite[1]};
    const Eigen::MatrixXd g = gram_matrix(restrict_distances(four_simplex, order), 0);
    const Eigen::Matrix2d plane = g.topLeftCorner(2, 2);
    if (plane.determinant() <= kDegeneracyTolerance) throw DegeneracyError("triangle has zero area");

    const Eigen::Matrix2d cross = g.block(0, 2, 2, 2);
    const Eigen::Matrix2d normal = g.bottomRightCorner(2, 2) - cross.transpose() * plane.inverse() * cross;
    if (normal(0, 0) <= kDegeneracyTolerance || normal(1, 1) <= kDegeneracyTolerance)
        throw DegeneracyError("4-simplex is degenerate at the triangle");
    const double c = std::clamp(normal(0, 1) / std::sqrt(normal(0, 0) * normal(1, 1)), -1.0, 1.0);
    return std::acos(c);
}

double hyperdihedral_angle(const Simplex& four_simplex, const Simplex& triangle, const SquaredLengthMap& lengths) {
    if (four_simplex.dim() != 4 || triangle.dim() != 2 || !four_simplex.contains(triangle))
        throw GeometryError("triangle " + triangle.to_string() + " is not a face of " + four_simplex.to_string());
    std::array<int, 3> local{};
    for (int i = 0; i < 3; ++i)
        local[i] = static_cast<int>(std::lower_bound(four_simplex.begin(), four_simplex.end(), triangle[i]) -
                                    four_simplex.begin());
    return hyperdihedral_angle(lengths.distances(four_simplex), local);
}

AngleData angle_data(const SimplicialComplex& complex, const Simplex& triangle, const SquaredLengthMap& lengths) {
    const auto star = triangle_star(complex, triangle);
    if (!star.closed)
        throw GeometryError("deficit angle is defined only for interior triangles; " + triangle.to_string() +
                            " has an open star");
    AngleData a;
    a.triangle = triangle;
    double sum = 0.0;
    for (std::size_t top : star.cycle) {
        const double alpha = hyperdihedral_angle(complex.four_simplices()[top], triangle, lengths);
        a.per_simplex_angle.emplace_back(top, alpha);
        sum += alpha;
    }
    a.deficit = 2.0 * std::numbers::pi - sum;
    a.area = simplex_volume(triangle, lengths);
    return a;
}

double deficit_angle(const SimplicialComplex& complex, const Simplex& triangle, const SquaredLengthMap& lengths) {
    return angle_data(complex, triangle, lengths).deficit;
}

double ActionParams::overall_coefficient() const {
    if (!(newton_constant > 0.0)) throw GeometryError("Newton constant must be positive");
    return coefficient.value_or(1.0 / (8.0 * std::numbers::pi * newton_constant));
}

double regge_action_global(const SimplicialComplex& complex, const SquaredLengthMap& lengths,
                           const ActionParams& params) {
    const double coefficient = params.overall_coefficient();
    double sum = 0.0;
    for (const auto& [t, n] : closed_triangles(complex)) {
        const auto a = angle_data(complex, complex.faces(2)[t], lengths);
        sum += a.deficit * a.area;
    }
    return coefficient * sum;
}

double regge_action_split(const SimplicialComplex& complex, const PerSimplexLengths& lengths,
                          const ActionParams& params) {
    const double coefficient = params.overall_coefficient();
    const auto closed = closed_triangles(complex);
    double sum = 0.0;
    for (std::size_t top = 0; top < complex.count(4); ++top) {
        const Simplex& s = complex.four_simplices()[top];
        const auto& d = lengths.distances(top);
        for (const auto& [i, j, k] : kLocalTriangles) {
            const Simplex tri{s[i], s[j], s[k]};
            auto it = closed.find(complex.index_of(tri));
            if (it == closed.end()) continue;
            const double alpha = hyperdihedral_angle(d, {i, j, k});
            const double area = simplex_volume(restrict_distances(d, {i, j, k}));
            sum += (2.0 * std::numbers::pi / static_cast<double>(it->second) - alpha) * area;
        }
    }
    return coefficient * sum;
}

}  // namespace simgrav
