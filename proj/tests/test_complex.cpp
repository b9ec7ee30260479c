#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "simgrav/complex.hpp"
#include "simgrav/io.hpp"

using namespace simgrav;

namespace {

SimplicialComplex boundary5() { return build_complex(fixtures::boundary5().simplices); }
SimplicialComplex glued_pair() { return build_complex({{0, 1, 2, 3, 4}, {1, 2, 3, 4, 5}}); }
SimplicialComplex single() { return build_complex({{0, 1, 2, 3, 4}}); }

std::size_t binomial(std::size_t n, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("simplex canonical form") {
    Simplex s{4, 1, 3};
    CHECK(s.dim() == 2);
    CHECK(s[0] == 1);
    CHECK(s[2] == 4);
    CHECK(s == Simplex{3, 4, 1});
    CHECK(s.contains(Simplex{1, 4}));
    CHECK_FALSE(s.contains(Simplex{0, 1}));
    CHECK(Simplex{0, 1, 2, 3, 4}.faces(2).size() == 10);
    CHECK(Simplex{0, 1, 2, 3, 4}.faces(3).front() == Simplex{0, 1, 2, 3});
    CHECK_THROWS_AS((Simplex{1, 1, 2}), StructureError);
}

TEST_CASE("build_complex face counts") {
    SUBCASE("boundary of the 5-simplex") {
        const auto c = boundary5();
        for (int d = 0; d <= 4; ++d) CHECK(c.count(d) == binomial(6, static_cast<std::size_t>(d + 1)));
    }
    SUBCASE("glued pair shares one 3-face") {
        const auto c = glued_pair();
        const auto interior = c.interior_three_faces();
        REQUIRE(interior.size() == 1);
        CHECK(c.faces(3)[interior[0]] == Simplex{1, 2, 3, 4});
    }
    SUBCASE("single 4-simplex is all boundary") {
        const auto c = single();
        CHECK(c.count(3) == 5);
        for (std::size_t f = 0; f < 5; ++f) CHECK(c.cofacets(3, f).size() == 1);
    }
}

TEST_CASE("build_complex rejects malformed input") {
    CHECK_THROWS_AS(build_complex({{0, 1, 2, 3, 4}, {4, 3, 2, 1, 0}}), StructureError);
    CHECK_THROWS_AS(build_complex({{0, 1, 2, 3, 3}}), StructureError);
    CHECK_THROWS_AS(build_complex(std::span<const std::array<VertexId, 5>>{}), StructureError);
}

TEST_CASE("facet and cofacet maps are inverse-consistent") {
    const auto c = build_complex(fixtures::chain(4).simplices);
    for (int d = 1; d <= 4; ++d)
        for (std::size_t i = 0; i < c.count(d); ++i)
            for (std::size_t f : c.facets(d, i)) {
                auto cf = c.cofacets(d - 1, f);
                CHECK(std::find(cf.begin(), cf.end(), i) != cf.end());
                CHECK(c.faces(d)[i].contains(c.faces(d - 1)[f]));
            }
}

TEST_CASE("triangle_star") {
    SUBCASE("boundary of the 5-simplex: closed cycles of length 3") {
        const auto c = boundary5();
        for (const auto& t : c.faces(2)) {
            const auto s = triangle_star(c, t);
            CHECK(s.closed);
            CHECK(s.length() == 3);
            CHECK(s.connections.size() == 3);
            for (std::size_t k = 0; k < s.length(); ++k) {
                const auto& face = c.faces(3)[s.connections[k]];
                CHECK(face.contains(t));
                CHECK(c.four_simplices()[s.cycle[k]].contains(face));
                CHECK(c.four_simplices()[s.cycle[(k + 1) % 3]].contains(face));
            }
        }
    }
    SUBCASE("glued pair: open fan of length 2") {
        const auto s = triangle_star(glued_pair(), Simplex{1, 2, 3});
        CHECK_FALSE(s.closed);
        CHECK(s.length() == 2);
        CHECK(s.connections.size() == 1);
    }
    SUBCASE("single simplex: fan of length 1") {
        const auto s = triangle_star(single(), Simplex{0, 1, 2});
        CHECK_FALSE(s.closed);
        CHECK(s.length() == 1);
    }
    SUBCASE("branching star is a structural error") {
        const auto c = build_complex({{0, 1, 2, 3, 4}, {0, 1, 2, 3, 5}, {0, 1, 2, 3, 6}});
        CHECK_THROWS_AS(triangle_star(c, Simplex{0, 1, 2}), StructureError);
    }
    SUBCASE("missing triangle") { CHECK_THROWS_AS(triangle_star(single(), Simplex{0, 1, 7}), StructureError); }
}

TEST_CASE("edge_star_graph") {
    SUBCASE("boundary of the 5-simplex") {
        const auto c = boundary5();
        for (const auto& e : c.faces(1)) {
            const auto g = edge_star_graph(c, e);
            CHECK(g.nodes.size() == 4);
            CHECK(g.arcs.size() == 6);
            CHECK(g.components == 1);
            CHECK(g.cycle_rank() == 3);
            CHECK(edge_link_is_closed_sphere(c, e));
        }
    }
    SUBCASE("glued pair") {
        const auto g = edge_star_graph(glued_pair(), Simplex{1, 2});
        CHECK(g.nodes.size() == 2);
        CHECK(g.arcs.size() == 1);
        CHECK(g.cycle_rank() == 0);
        CHECK(g.dangling.size() == 4);
    }
    SUBCASE("single simplex") {
        const auto g = edge_star_graph(single(), Simplex{0, 3});
        CHECK(g.nodes.size() == 1);
        CHECK(g.arcs.empty());
        CHECK(g.components == 1);
    }
}

TEST_CASE("validate") {
    SUBCASE("boundary of the 5-simplex is valid and closed") {
        const auto r = validate(boundary5());
        CHECK(r.valid);
        CHECK(r.closed);
        CHECK(r.boundary_three_faces == 0);
    }
    SUBCASE("glued pair has 8 boundary 3-faces") {
        const auto r = validate(glued_pair());
        CHECK(r.valid);
        CHECK_FALSE(r.closed);
        CHECK(r.boundary_three_faces == 8);
    }
    SUBCASE("three 4-simplices on one 3-face") {
        const auto r = validate(build_complex({{0, 1, 2, 3, 4}, {0, 1, 2, 3, 5}, {0, 1, 2, 3, 6}}));
        CHECK_FALSE(r.valid);
        CHECK(std::any_of(r.violations.begin(), r.violations.end(),
                          [](const std::string& v) { return v.find("3 cofacets") != std::string::npos; }));
    }
    SUBCASE("disconnected edge star") {
        // Two 4-simplices meeting only along the edge {0,1}.
        const auto r = validate(build_complex({{0, 1, 2, 3, 4}, {0, 1, 5, 6, 7}}));
        CHECK_FALSE(r.valid);
    }
}

TEST_CASE("property: relabeling preserves counts, star lengths and cycle ranks") {
    std::mt19937 rng(7);
    const auto base_file = fixtures::boundary5();
    const auto base = boundary5();
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<VertexId> perm(20);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto tuples = base_file.simplices;
        for (auto& t : tuples)
            for (auto& v : t) v = perm[v];
        const auto c = build_complex(tuples);
        for (int d = 0; d <= 4; ++d) CHECK(c.count(d) == base.count(d));
        for (const auto& t : base.faces(2)) {
            const Simplex mapped{perm[t[0]], perm[t[1]], perm[t[2]]};
            CHECK(triangle_star(c, mapped).length() == triangle_star(base, t).length());
        }
        for (const auto& e : base.faces(1))
            CHECK(edge_star_graph(c, Simplex{perm[e[0]], perm[e[1]]}).cycle_rank() ==
                  edge_star_graph(base, e).cycle_rank());
    }
}

TEST_CASE("property: Euler identity and arc count on closed complexes") {
    for (const auto& file : {fixtures::boundary5()}) {
        const auto c = build_complex(file.simplices);
        std::size_t arcs = 0;
        for (std::size_t e = 0; e < c.count(1); ++e) {
            const auto g = edge_star_graph(c, c.faces(1)[e]);
            arcs += g.arcs.size();
            CHECK(g.cycle_rank() == static_cast<std::ptrdiff_t>(c.cofacets(1, e).size()) - 1);
        }
        CHECK(arcs == 6 * c.interior_three_faces().size());
    }
    // The arc-count identity also holds with boundary.
    for (const auto& file : {fixtures::glued_pair(), fixtures::chain(5), fixtures::flat_subdivision()}) {
        const auto c = build_complex(file.simplices);
        std::size_t arcs = 0;
        for (const auto& e : c.faces(1)) arcs += edge_star_graph(c, e).arcs.size();
        CHECK(arcs == 6 * c.interior_three_faces().size());
    }
}
