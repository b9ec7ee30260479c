#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace simgrav {

using VertexId = std::uint32_t;

/// Thrown when an input does not describe a well-formed complex.
class StructureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An unoriented simplex of dimension 0..4 identified by its sorted vertex set.
class Simplex {
public:
    static constexpr std::size_t kMaxVertices = 5;

    Simplex() = default;
    Simplex(std::initializer_list<VertexId> vertices);
    explicit Simplex(std::span<const VertexId> vertices);

    int dim() const { return static_cast<int>(count_) - 1; }
    std::size_t size() const { return count_; }
    VertexId operator[](std::size_t i) const { return verts_[i]; }
    std::span<const VertexId> vertices() const { return {verts_.data(), count_}; }
    const VertexId* begin() const { return verts_.data(); }
    const VertexId* end() const { return verts_.data() + count_; }

    bool contains(VertexId v) const;
    bool contains(const Simplex& face) const;

    /// The face obtained by dropping the vertex at position `i`.
    Simplex without(std::size_t i) const;

    /// All faces of dimension `d`, in lexicographic order.
    std::vector<Simplex> faces(int d) const;

    std::string to_string() const;

    friend bool operator==(const Simplex& a, const Simplex& b);
    friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b);

private:
    std::array<VertexId, kMaxVertices> verts_{};
    std::uint8_t count_ = 0;
};

/// Face lattice of a set of 4-simplices.
///
/// Faces of every dimension are stored in lexicographic order and addressed by
/// a dense index per dimension. Cofacet lists map a d-face to the indices of
/// the (d+1)-faces containing it; `star4` maps any face to the indices of the
/// 4-simplices containing it.
class SimplicialComplex {
public:
    static constexpr int kTopDim = 4;

    const std::vector<Simplex>& four_simplices() const { return faces_[kTopDim]; }
    const std::vector<Simplex>& faces(int d) const { return faces_.at(d); }
    std::size_t count(int d) const { return faces_.at(d).size(); }

    /// Index of `s` within its dimension, or -1 when absent.
    std::ptrdiff_t find(const Simplex& s) const;
    std::size_t index_of(const Simplex& s) const;
    bool contains(const Simplex& s) const { return find(s) >= 0; }

    std::span<const std::size_t> cofacets(int d, std::size_t face) const;
    std::span<const std::size_t> facets(int d, std::size_t face) const;
    std::span<const std::size_t> star4(int d, std::size_t face) const;
    std::span<const std::size_t> star4(const Simplex& s) const;

    /// Position of the simplex in the caller's original input list.
    std::size_t input_position(std::size_t four_simplex) const { return input_order_[four_simplex]; }
    std::size_t top_index_of_input(std::size_t position) const { return input_to_top_[position]; }

    /// 3-faces with exactly two cofacets.
    std::vector<std::size_t> interior_three_faces() const;
    std::vector<std::size_t> boundary_three_faces() const;

    /// Stable 64-bit fingerprint of the set of 4-simplices.
    std::uint64_t fingerprint() const { return fingerprint_; }

    friend SimplicialComplex build_complex(std::span<const std::array<VertexId, 5>> tuples);

private:
    std::array<std::vector<Simplex>, kTopDim + 1> faces_;
    std::array<std::map<Simplex, std::size_t>, kTopDim + 1> index_;
    std::array<std::vector<std::vector<std::size_t>>, kTopDim + 1> cofacets_;
    std::array<std::vector<std::vector<std::size_t>>, kTopDim + 1> facets_;
    std::array<std::vector<std::vector<std::size_t>>, kTopDim + 1> star4_;
    std::vector<std::size_t> input_order_;
    std::vector<std::size_t> input_to_top_;
    std::uint64_t fingerprint_ = 0;
};

/// Builds the full face lattice. Throws StructureError on an empty list, a
/// repeated vertex inside a tuple, or a duplicated 4-simplex. Non-pseudomanifold
/// inputs are accepted here and reported by `validate`.
SimplicialComplex build_complex(std::span<const std::array<VertexId, 5>> tuples);
SimplicialComplex build_complex(std::initializer_list<std::array<VertexId, 5>> tuples);

/// Ordered fan or cycle of 4-simplices around a triangle.
struct TriangleStar {
    Simplex triangle;
    std::vector<std::size_t> cycle;       // 4-simplex indices
    std::vector<std::size_t> connections; // 3-face indices, connections[k] joins cycle[k], cycle[k+1 mod n]
    bool closed = false;

    std::size_t length() const { return cycle.size(); }
};

TriangleStar triangle_star(const SimplicialComplex& complex, const Simplex& triangle);

/// Nodes are the 4-simplices containing an edge; arcs are the 3-faces
/// containing it that are shared by exactly two 4-simplices.
struct EdgeStarGraph {
    struct Arc {
        std::size_t face;  // 3-face index
        std::size_t a, b;  // positions in `nodes`
    };

    Simplex edge;
    std::vector<std::size_t> nodes;  // 4-simplex indices, ascending
    std::vector<Arc> arcs;           // ascending by face index (lexicographic)
    std::vector<std::size_t> dangling;     // boundary 3-faces (one cofacet)
    std::vector<std::size_t> non_manifold; // 3-faces with more than two cofacets
    std::size_t components = 0;

    std::ptrdiff_t cycle_rank() const {
        return static_cast<std::ptrdiff_t>(arcs.size()) - static_cast<std::ptrdiff_t>(nodes.size()) +
               static_cast<std::ptrdiff_t>(components);
    }
};

EdgeStarGraph edge_star_graph(const SimplicialComplex& complex, const Simplex& edge);

/// True when every triangle and 3-face around the edge is interior and the
/// edge link has Euler characteristic 2.
bool edge_link_is_closed_sphere(const SimplicialComplex& complex, const Simplex& edge);

struct ValidationReport {
    bool valid = true;
    bool closed = true;
    std::size_t boundary_three_faces = 0;
    std::size_t open_triangles = 0;
    std::vector<std::string> violations;
};

ValidationReport validate(const SimplicialComplex& complex);

}  // namespace simgrav
