#pragma once

#include <Eigen/Dense>

#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "simgrav/complex.hpp"

namespace simgrav {

/// Gram determinants within this distance of zero are treated as degenerate.
inline constexpr double kDegeneracyTolerance = 1e-12;

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Negative Gram determinant in Euclidean mode.
class SignatureError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

class DegeneracyError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

/// Squared lengths of a simplex's edges as a symmetric matrix over its local
/// vertex positions, with a zero diagonal.
using SquaredDistances = Eigen::MatrixXd;

/// One squared length per edge of a complex.
class SquaredLengthMap {
public:
    SquaredLengthMap() = default;

    static SquaredLengthMap uniform(const SimplicialComplex& complex, double value);

    void set(const Simplex& edge, double value);
    double at(const Simplex& edge) const;
    bool has(const Simplex& edge) const { return values_.count(edge) != 0; }
    std::size_t size() const { return values_.size(); }
    const std::map<Simplex, double>& values() const { return values_; }

    /// Squared distances among the vertices of `s`; throws if an edge is missing.
    SquaredDistances distances(const Simplex& s) const;

    SquaredLengthMap scaled(double factor) const;

private:
    std::map<Simplex, double> values_;
};

/// Independent squared lengths per 4-simplex: the extended configuration in
/// which neighbouring 4-simplices need not agree on shared edges.
class PerSimplexLengths {
public:
    explicit PerSimplexLengths(const SimplicialComplex& complex);

    /// Every 4-simplex takes its lengths from the global map.
    static PerSimplexLengths conformed(const SimplicialComplex& complex, const SquaredLengthMap& lengths);

    void set(std::size_t four_simplex, const Simplex& edge, double value);
    double at(std::size_t four_simplex, const Simplex& edge) const;
    bool complete() const;

    /// 5x5 squared distances of a 4-simplex in its own lengths.
    const SquaredDistances& distances(std::size_t four_simplex) const { return per_simplex_[four_simplex]; }
    /// Squared distances among the vertices of `face` as seen from the given 4-simplex.
    SquaredDistances distances(std::size_t four_simplex, const Simplex& face) const;

    std::size_t simplex_count() const { return per_simplex_.size(); }

private:
    std::size_t local_position(std::size_t four_simplex, VertexId v) const;

    std::vector<Simplex> simplices_;
    std::vector<SquaredDistances> per_simplex_;
    std::vector<Eigen::Matrix<bool, 5, 5>> assigned_;
};

/// Picks the rows/columns of `d` belonging to the local positions `idx`.
SquaredDistances restrict_distances(const SquaredDistances& d, const std::vector<int>& idx);

/// G_ij = (l2_{oi} + l2_{oj} - l2_{ij}) / 2 with vertex `origin` as the base point.
Eigen::MatrixXd gram_matrix(const SquaredDistances& d, int origin = 0);

/// V_d = sqrt(det Gram) / d!, with V_0 = 1.
double simplex_volume(const SquaredDistances& d);
double simplex_volume(const Simplex& s, const SquaredLengthMap& lengths);

/// Angle between the two 3-faces of a 4-simplex that share the triangle at
/// local positions `triangle` (three distinct indices in 0..4).
double hyperdihedral_angle(const SquaredDistances& four_simplex, const std::array<int, 3>& triangle);
double hyperdihedral_angle(const Simplex& four_simplex, const Simplex& triangle, const SquaredLengthMap& lengths);

struct AngleData {
    Simplex triangle;
    std::vector<std::pair<std::size_t, double>> per_simplex_angle;  // (4-simplex index, radians)
    double deficit = 0.0;
    double area = 0.0;
};

/// Requires a closed triangle star; throws GeometryError otherwise.
AngleData angle_data(const SimplicialComplex& complex, const Simplex& triangle, const SquaredLengthMap& lengths);
double deficit_angle(const SimplicialComplex& complex, const Simplex& triangle, const SquaredLengthMap& lengths);

struct ActionParams {
    double newton_constant = 1.0;
    std::optional<double> coefficient;  // defaults to 1 / (8 pi G)

    double overall_coefficient() const;
};

/// coefficient * sum over closed-star triangles of deficit * area.
double regge_action_global(const SimplicialComplex& complex, const SquaredLengthMap& lengths,
                           const ActionParams& params);

/// coefficient * sum over 4-simplices of sum over their closed-star triangles
/// of (2 pi / N - alpha) * A, each 4-simplex using its own lengths.
double regge_action_split(const SimplicialComplex& complex, const PerSimplexLengths& lengths,
                          const ActionParams& params);

}  // namespace simgrav
