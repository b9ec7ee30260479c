#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "simgrav/complex.hpp"
#include "simgrav/geometry.hpp"

namespace simgrav {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Plain-text complex description:
///
///     # comment
///     simplex v0 v1 v2 v3 v4
///     length vi vj x          global squared length
///     plength s vi vj x       squared length inside simplex line s (0-based)
struct ComplexFile {
    struct Length {
        VertexId i, j;
        double value;
    };
    struct SimplexLength {
        std::size_t simplex;
        VertexId i, j;
        double value;
    };

    std::vector<std::array<VertexId, 5>> simplices;
    std::vector<Length> lengths;
    std::vector<SimplexLength> simplex_lengths;
    std::vector<std::string> comments;
};

ComplexFile parse_complex_file(std::istream& in);
ComplexFile read_complex_file(const std::string& path);
void write_complex_file(std::ostream& out, const ComplexFile& file);

/// Global map from `length` lines, or nullopt when they do not cover every edge.
std::optional<SquaredLengthMap> global_lengths(const ComplexFile& file, const SimplicialComplex& complex);

/// Per-simplex lengths: `length` lines everywhere, overridden by `plength` lines
/// for their simplex. Nullopt when some simplex edge stays unassigned.
std::optional<PerSimplexLengths> per_simplex_lengths(const ComplexFile& file, const SimplicialComplex& complex);

/// Parses `--lengths` input: a file path with `length`/`plength` lines, a single
/// number (uniform squared length), or an inline list "i-j=x,i-j=x,...".
void apply_lengths_argument(ComplexFile& file, const std::string& argument, const SimplicialComplex& complex);

namespace fixtures {

/// All six 4-faces of the 5-simplex on {0..5}; closed. Unit squared lengths.
ComplexFile boundary5();
/// {0,1,2,3,4} and {1,2,3,4,5}. Unit squared lengths.
ComplexFile glued_pair();
/// {i, ..., i+4} for i = 0..k-1. Unit squared lengths.
ComplexFile chain(std::size_t k);
/// A 4-simplex split into five by an interior point, with squared lengths taken
/// from explicit coordinates, so every interior deficit vanishes.
ComplexFile flat_subdivision();

}  // namespace fixtures

}  // namespace simgrav
