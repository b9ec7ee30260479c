#include "simgrav/complex.hpp"

#include "simgrav/detail/union_find.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace simgrav {

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t word) {
    for (int i = 0; i < 8; ++i) {
        h ^= (word >> (8 * i)) & 0xffu;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace

Simplex::Simplex(std::initializer_list<VertexId> vertices)
    : Simplex(std::span<const VertexId>(vertices.begin(), vertices.size())) {}

Simplex::Simplex(std::span<const VertexId> vertices) {
    if (vertices.empty() || vertices.size() > kMaxVertices)
        throw StructureError("simplex must have between 1 and 5 vertices");
    std::copy(vertices.begin(), vertices.end(), verts_.begin());
    count_ = static_cast<std::uint8_t>(vertices.size());
    std::sort(verts_.begin(), verts_.begin() + count_);
    if (std::adjacent_find(verts_.begin(), verts_.begin() + count_) != verts_.begin() + count_)
        throw StructureError("simplex " + to_string() + " has a repeated vertex");
}

bool Simplex::contains(VertexId v) const {
    return std::binary_search(begin(), end(), v);
}

bool Simplex::contains(const Simplex& face) const {
    return std::includes(begin(), end(), face.begin(), face.end());
}

Simplex Simplex::without(std::size_t i) const {
    std::array<VertexId, kMaxVertices> rest{};
    std::size_t n = 0;
    for (std::size_t k = 0; k < count_; ++k)
        if (k != i) rest[n++] = verts_[k];
    return Simplex(std::span<const VertexId>(rest.data(), n));
}

std::vector<Simplex> Simplex::faces(int d) const {
    std::vector<Simplex> out;
    const std::size_t k = static_cast<std::size_t>(d + 1);
    if (d < 0 || k > count_) return out;
    // Lexicographic combinations of positions.
    std::vector<std::size_t> pos(k);
    std::iota(pos.begin(), pos.end(), 0);
    std::array<VertexId, kMaxVertices> buf{};
    while (true) {
        for (std::size_t i = 0; i < k; ++i) buf[i] = verts_[pos[i]];
        out.emplace_back(std::span<const VertexId>(buf.data(), k));
        std::size_t i = k;
        while (i > 0 && pos[i - 1] == count_ - k + (i - 1)) --i;
        if (i == 0) break;
        ++pos[i - 1];
        for (std::size_t j = i; j < k; ++j) pos[j] = pos[j - 1] + 1;
    }
    return out;
}

std::string Simplex::to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < count_; ++i) os << (i ? "," : "") << verts_[i];
    os << '}';
    return os.str();
}

bool operator==(const Simplex& a, const Simplex& b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) {
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

std::ptrdiff_t SimplicialComplex::find(const Simplex& s) const {
    if (s.size() == 0) return -1;
    const auto& idx = index_[s.dim()];
    auto it = idx.find(s);
    return it == idx.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

std::size_t SimplicialComplex::index_of(const Simplex& s) const {
    auto i = find(s);
    if (i < 0) throw StructureError("simplex " + s.to_string() + " is not in the complex");
    return static_cast<std::size_t>(i);
}

std::span<const std::size_t> SimplicialComplex::cofacets(int d, std::size_t face) const {
    if (d >= kTopDim) return {};
    return cofacets_[d][face];
}

std::span<const std::size_t> SimplicialComplex::facets(int d, std::size_t face) const {
    if (d <= 0) return {};
    return facets_[d][face];
}

std::span<const std::size_t> SimplicialComplex::star4(int d, std::size_t face) const {
    return star4_[d][face];
}

std::span<const std::size_t> SimplicialComplex::star4(const Simplex& s) const {
    return star4(s.dim(), index_of(s));
}

std::vector<std::size_t> SimplicialComplex::interior_three_faces() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < count(3); ++i)
        if (cofacets_[3][i].size() == 2) out.push_back(i);
    return out;
}

std::vector<std::size_t> SimplicialComplex::boundary_three_faces() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < count(3); ++i)
        if (cofacets_[3][i].size() == 1) out.push_back(i);
    return out;
}

SimplicialComplex build_complex(std::span<const std::array<VertexId, 5>> tuples) {
    if (tuples.empty()) throw StructureError("complex needs at least one 4-simplex");

    SimplicialComplex c;
    std::vector<Simplex> input;
    input.reserve(tuples.size());
    for (const auto& t : tuples) input.emplace_back(std::span<const VertexId>(t.data(), t.size()));

    std::array<std::set<Simplex>, 5> sets;
    for (std::size_t i = 0; i < input.size(); ++i) {
        if (!sets[4].insert(input[i]).second)
            throw StructureError("duplicate 4-simplex " + input[i].to_string());
        for (int d = 0; d < 4; ++d)
            for (auto& f : input[i].faces(d)) sets[d].insert(f);
    }

    for (int d = 0; d <= 4; ++d) {
        c.faces_[d].assign(sets[d].begin(), sets[d].end());
        for (std::size_t i = 0; i < c.faces_[d].size(); ++i) c.index_[d].emplace(c.faces_[d][i], i);
        c.cofacets_[d].assign(c.faces_[d].size(), {});
        c.facets_[d].assign(c.faces_[d].size(), {});
        c.star4_[d].assign(c.faces_[d].size(), {});
    }

    for (int d = 1; d <= 4; ++d) {
        for (std::size_t i = 0; i < c.faces_[d].size(); ++i) {
            const Simplex& s = c.faces_[d][i];
            for (std::size_t k = 0; k < s.size(); ++k) {
                std::size_t f = c.index_[d - 1].at(s.without(k));
                c.facets_[d][i].push_back(f);
                c.cofacets_[d - 1][f].push_back(i);
            }
            std::sort(c.facets_[d][i].begin(), c.facets_[d][i].end());
        }
    }
    for (int d = 0; d < 4; ++d)
        for (auto& cf : c.cofacets_[d]) std::sort(cf.begin(), cf.end());

    for (std::size_t t = 0; t < c.faces_[4].size(); ++t) {
        c.star4_[4][t].push_back(t);
        for (int d = 0; d < 4; ++d)
            for (auto& f : c.faces_[4][t].faces(d)) c.star4_[d][c.index_[d].at(f)].push_back(t);
    }

    c.input_order_.resize(input.size());
    c.input_to_top_.resize(input.size());
    for (std::size_t p = 0; p < input.size(); ++p) {
        std::size_t t = c.index_[4].at(input[p]);
        c.input_order_[t] = p;
        c.input_to_top_[p] = t;
    }

    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const auto& s : c.faces_[4])
        for (VertexId v : s) h = fnv1a(h, v);
    c.fingerprint_ = fnv1a(h, c.faces_[4].size());
    return c;
}

SimplicialComplex build_complex(std::initializer_list<std::array<VertexId, 5>> tuples) {
    return build_complex(std::span<const std::array<VertexId, 5>>(tuples.begin(), tuples.size()));
}

TriangleStar triangle_star(const SimplicialComplex& complex, const Simplex& triangle) {
    if (triangle.dim() != 2) throw StructureError("triangle_star needs a 2-simplex");
    const std::size_t tri = complex.index_of(triangle);

    TriangleStar star;
    star.triangle = triangle;
    auto nodes = complex.star4(2, tri);
    const std::size_t n = nodes.size();

    auto position = [&](std::size_t top) {
        return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), top) - nodes.begin());
    };

    // Adjacency through 3-faces containing the triangle.
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n);  // (neighbor pos, face)
    for (std::size_t face : complex.cofacets(2, tri)) {
        auto cf = complex.cofacets(3, face);
        if (cf.size() > 2)
            throw StructureError("triangle " + triangle.to_string() + ": 3-face " +
                                 complex.faces(3)[face].to_string() + " has " + std::to_string(cf.size()) +
                                 " cofacets");
        if (cf.size() == 2) {
            std::size_t a = position(cf[0]), b = position(cf[1]);
            adj[a].emplace_back(b, face);
            adj[b].emplace_back(a, face);
        }
    }
    std::size_t arcs = 0;
    for (auto& a : adj) {
        if (a.size() > 2) throw StructureError("triangle " + triangle.to_string() + " has a branching star");
        std::sort(a.begin(), a.end(), [](auto& x, auto& y) { return x.second < y.second; });
        arcs += a.size();
    }
    arcs /= 2;

    std::size_t start = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (adj[i].size() < 2) {
            start = i;
            break;
        }

    std::vector<bool> seen(n, false);
    std::size_t cur = start;
    std::size_t via = static_cast<std::size_t>(-1);
    while (true) {
        seen[cur] = true;
        star.cycle.push_back(nodes[cur]);
        std::size_t next = cur;
        for (auto [nb, face] : adj[cur]) {
            if (face == via) continue;
            next = nb;
            via = face;
            break;
        }
        if (next == cur) break;
        star.connections.push_back(via);
        if (seen[next]) break;
        cur = next;
    }
    if (star.cycle.size() != n)
        throw StructureError("triangle " + triangle.to_string() + " has a disconnected star");
    star.closed = n > 0 && arcs == n;
    return star;
}

EdgeStarGraph edge_star_graph(const SimplicialComplex& complex, const Simplex& edge) {
    if (edge.dim() != 1) throw StructureError("edge_star_graph needs a 1-simplex");
    const std::size_t e = complex.index_of(edge);

    EdgeStarGraph g;
    g.edge = edge;
    auto star = complex.star4(1, e);
    g.nodes.assign(star.begin(), star.end());
    auto position = [&](std::size_t top) {
        return static_cast<std::size_t>(std::lower_bound(g.nodes.begin(), g.nodes.end(), top) - g.nodes.begin());
    };

    std::set<std::size_t> faces;
    for (std::size_t tri : complex.cofacets(1, e))
        for (std::size_t face : complex.cofacets(2, tri)) faces.insert(face);

    detail::UnionFind uf(g.nodes.size());
    std::size_t merges = 0;
    for (std::size_t face : faces) {
        auto cf = complex.cofacets(3, face);
        if (cf.size() == 1) {
            g.dangling.push_back(face);
        } else if (cf.size() == 2) {
            EdgeStarGraph::Arc arc{face, position(cf[0]), position(cf[1])};
            g.arcs.push_back(arc);
            if (uf.unite(arc.a, arc.b)) ++merges;
        } else {
            g.non_manifold.push_back(face);
        }
    }
    g.components = g.nodes.size() - merges;
    return g;
}

bool edge_link_is_closed_sphere(const SimplicialComplex& complex, const Simplex& edge) {
    const std::size_t e = complex.index_of(edge);
    const auto tris = complex.cofacets(1, e);
    std::set<std::size_t> faces;
    for (std::size_t tri : tris)
        for (std::size_t face : complex.cofacets(2, tri)) faces.insert(face);
    for (std::size_t face : faces)
        if (complex.cofacets(3, face).size() != 2) return false;
    for (std::size_t tri : tris) {
        try {
            if (!triangle_star(complex, complex.faces(2)[tri]).closed) return false;
        } catch (const StructureError&) {
            return false;
        }
    }
    const auto euler = static_cast<std::ptrdiff_t>(tris.size()) - static_cast<std::ptrdiff_t>(faces.size()) +
                       static_cast<std::ptrdiff_t>(complex.star4(1, e).size());
    return euler == 2 && edge_star_graph(complex, edge).components == 1;
}

ValidationReport validate(const SimplicialComplex& complex) {
    ValidationReport r;
    for (std::size_t f = 0; f < complex.count(3); ++f) {
        const auto n = complex.cofacets(3, f).size();
        if (n == 1) ++r.boundary_three_faces;
        if (n > 2) {
            r.valid = false;
            r.violations.push_back("3-face " + complex.faces(3)[f].to_string() + " has " + std::to_string(n) +
                                   " cofacets");
        }
    }
    r.closed = r.boundary_three_faces == 0;

    for (const auto& tri : complex.faces(2)) {
        try {
            if (!triangle_star(complex, tri).closed) ++r.open_triangles;
        } catch (const StructureError& err) {
            r.valid = false;
            r.violations.push_back(err.what());
        }
    }
    for (const auto& edge : complex.faces(1)) {
        auto g = edge_star_graph(complex, edge);
        if (g.components != 1) {
            r.valid = false;
            r.violations.push_back("edge " + edge.to_string() + " has a disconnected star (" +
                                   std::to_string(g.components) + " components)");
        }
    }
    return r;
}

}  // namespace simgrav
