#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "simgrav/complex.hpp"
#include "simgrav/geometry.hpp"

namespace simgrav {

/// l2(plus_simplex, edge) - l2(minus_simplex, edge) = 0 across an interior 3-face.
struct Constraint {
    Simplex face;
    Simplex edge;
    std::size_t face_index = 0;
    std::size_t plus_simplex = 0;   // lower-indexed cofacet of the face
    std::size_t minus_simplex = 0;  // higher-indexed cofacet

    friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// Columns of the extended configuration: one squared length per
/// (4-simplex, edge of it), ordered by 4-simplex then edge.
class ExtendedVariables {
public:
    explicit ExtendedVariables(const SimplicialComplex& complex);

    std::size_t size() const { return columns_.size(); }
    std::size_t column(std::size_t four_simplex, const Simplex& edge) const;
    const std::pair<std::size_t, Simplex>& operator[](std::size_t col) const { return columns_[col]; }

private:
    std::vector<std::pair<std::size_t, Simplex>> columns_;
    std::map<std::pair<std::size_t, Simplex>, std::size_t> index_;
};

/// Sparse integer matrix with one +1 and one -1 per row.
struct ConstraintMatrix {
    struct Entry {
        std::size_t column;
        int value;
    };

    std::size_t columns = 0;
    std::vector<std::vector<Entry>> rows;

    std::vector<std::vector<std::int64_t>> dense() const;
};

/// Six edge constraints per interior 3-face, faces in lattice order and edges
/// lexicographic within each face.
std::vector<Constraint> enumerate_constraints(const SimplicialComplex& complex);

ConstraintMatrix constraint_matrix(const std::vector<Constraint>& constraints, const ExtendedVariables& vars);

/// Values of the constraint arguments on a given extended configuration.
std::vector<double> constraint_residuals(const std::vector<Constraint>& constraints,
                                         const PerSimplexLengths& lengths);

struct EdgeSelection {
    Simplex edge;
    EdgeStarGraph graph;
    std::vector<std::size_t> forest_arcs;     // positions in graph.arcs
    std::vector<std::size_t> redundant_arcs;  // positions in graph.arcs
};

/// Independent subset of the constraints: per edge, the arcs of a spanning
/// forest of its edge-star graph grown in lexicographic face order.
struct KeptSet {
    std::uint64_t complex_fingerprint = 0;
    std::vector<EdgeSelection> per_edge;  // lexicographic by edge
    std::vector<Constraint> kept;
    std::vector<Constraint> redundant;
};

KeptSet select_kept(const SimplicialComplex& complex);

/// Exact rank over the rationals by fraction-free (Bareiss) elimination.
std::size_t constraint_rank(const ConstraintMatrix& matrix);
std::size_t exact_rank(std::vector<std::vector<std::int64_t>> dense);

/// Floating-point rank, used only as a cross-check.
std::size_t floating_rank(const ConstraintMatrix& matrix);

struct DeltaZeroLedger {
    struct EdgeEntry {
        Simplex edge;
        std::size_t closed_triangles = 0;
        std::ptrdiff_t cycle_rank = 0;
        std::ptrdiff_t excess = 0;  // closed_triangles - cycle_rank
    };

    std::uint64_t complex_fingerprint = 0;
    std::vector<Simplex> interior_faces;    // exponent +4 on V of each
    std::vector<Simplex> closed_triangles;  // exponent -3 on V of each
    std::vector<EdgeEntry> edges;           // exponent +2 * excess on V of each

    /// Per dimension d: exponent rule for a regularized delta of zero,
    /// delta^{d(d+1)/2}(0) ~ V^{-(d+1)}.
    static int delta_zero_exponent(int d) { return -(d + 1); }
};

DeltaZeroLedger delta_zero_ledger(const SimplicialComplex& complex);

}  // namespace simgrav
