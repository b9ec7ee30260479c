#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "simgrav/constraints.hpp"
#include "simgrav/io.hpp"

using namespace simgrav;

namespace {

// Oracle: each row is x_a - x_b, an incidence matrix of a graph on the
// columns, whose rank is columns - connected components.
std::size_t incidence_rank(const ConstraintMatrix& m) {
    std::vector<std::size_t> parent(m.columns);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t merges = 0;
    for (const auto& row : m.rows) {
        REQUIRE(row.size() == 2);
        const auto a = find(row[0].column), b = find(row[1].column);
        if (a != b) {
            parent[a] = b;
            ++merges;
        }
    }
    return merges;
}

}  // namespace

TEST_CASE("enumerate_constraints counts") {
    SUBCASE("boundary of the 5-simplex") {
        const auto c = build_complex(fixtures::boundary5().simplices);
        const ExtendedVariables vars(c);
        const auto all = enumerate_constraints(c);
        CHECK(vars.size() == 60);
        CHECK(all.size() == 90);
        const auto m = constraint_matrix(all, vars);
        CHECK(constraint_rank(m) == 45);
        CHECK(incidence_rank(m) == 45);
        CHECK(floating_rank(m) == 45);
        CHECK(45 == vars.size() - c.count(1));
    }
    SUBCASE("glued pair") {
        const auto c = build_complex(fixtures::glued_pair().simplices);
        const auto all = enumerate_constraints(c);
        CHECK(all.size() == 6);
        for (const auto& k : all) {
            CHECK(k.face == Simplex{1, 2, 3, 4});
            CHECK(k.plus_simplex < k.minus_simplex);
        }
        CHECK(constraint_rank(constraint_matrix(all, ExtendedVariables(c))) == 6);
        CHECK(c.count(1) == 14);
    }
    SUBCASE("chains") {
        for (std::size_t k = 1; k <= 6; ++k) {
            const auto c = build_complex(fixtures::chain(k).simplices);
            const ExtendedVariables vars(c);
            const auto all = enumerate_constraints(c);
            CHECK(vars.size() == 10 * k);
            CHECK(all.size() == 6 * (k - 1));
            const auto kept = select_kept(c);
            CHECK(kept.kept.size() == all.size());
            for (const auto& k2 : kept.kept) CHECK(std::find(all.begin(), all.end(), k2) != all.end());
            CHECK(kept.redundant.empty());
            CHECK(constraint_rank(constraint_matrix(kept.kept, vars)) == 6 * (k - 1));
        }
        CHECK(build_complex(fixtures::chain(3).simplices).count(1) == 18);
    }
}

TEST_CASE("constraint residuals") {
    const auto c = build_complex(fixtures::boundary5().simplices);
    const auto lengths = SquaredLengthMap::uniform(c, 1.0);
    auto per = PerSimplexLengths::conformed(c, lengths);
    const auto all = enumerate_constraints(c);
    for (double r : constraint_residuals(all, per)) CHECK(r == 0.0);

    per.set(0, Simplex{0, 1}, 1.25);
    const auto res = constraint_residuals(all, per);
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (res[i] == 0.0) continue;
        ++nonzero;
        CHECK(all[i].edge == Simplex{0, 1});
        CHECK(std::abs(res[i]) == doctest::Approx(0.25));
    }
    // Top simplex 0 has three interior 3-faces holding {0,1}.
    CHECK(nonzero == 3);
}

TEST_CASE("select_kept") {
    const auto c = build_complex(fixtures::boundary5().simplices);
    const auto kept = select_kept(c);
    CHECK(kept.kept.size() == 45);
    CHECK(kept.redundant.size() == 45);
    CHECK(kept.complex_fingerprint == c.fingerprint());
    REQUIRE(kept.per_edge.size() == 15);
    for (const auto& sel : kept.per_edge) {
        CHECK(sel.forest_arcs.size() == 3);
        CHECK(sel.redundant_arcs.size() == 3);
    }

    const ExtendedVariables vars(c);
    SUBCASE("kept rows are independent and span the full row space") {
        const auto km = constraint_matrix(kept.kept, vars);
        CHECK(constraint_rank(km) == kept.kept.size());
        CHECK(incidence_rank(km) == kept.kept.size());
        auto both = kept.kept;
        for (const auto& r : kept.redundant) {
            both.push_back(r);
            CHECK(constraint_rank(constraint_matrix(both, vars)) == 45);
            both.pop_back();
        }
    }
    SUBCASE("deterministic") {
        const auto again = select_kept(build_complex(fixtures::boundary5().simplices));
        CHECK(again.kept == kept.kept);
    }
    SUBCASE("property: rank is relabeling invariant") {
        std::mt19937 rng(9);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<VertexId> perm(6);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            auto tuples = fixtures::boundary5().simplices;
            for (auto& t : tuples)
                for (auto& v : t) v = perm[v] + 10;
            const auto rc = build_complex(tuples);
            const auto rk = select_kept(rc);
            CHECK(rk.kept.size() == 45);
            CHECK(constraint_rank(constraint_matrix(rk.kept, ExtendedVariables(rc))) == 45);
        }
    }
}

TEST_CASE("exact_rank") {
    CHECK(exact_rank({}) == 0);
    CHECK(exact_rank({{0, 0}, {0, 0}}) == 0);
    CHECK(exact_rank({{1, 2}, {2, 4}}) == 1);
    CHECK(exact_rank({{2, 3, 5}, {7, 11, 13}, {9, 14, 18}}) == 2);
    CHECK(exact_rank({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}) == 3);
    // Entries whose products overflow 64 bits stay exact.
    const std::int64_t big = 3037000499LL;
    CHECK(exact_rank({{big, big + 1}, {big - 1, big}}) == 2);
    CHECK(exact_rank({{big, 2 * big}, {big + 7, 2 * big + 14}}) == 1);
}

TEST_CASE("delta_zero_ledger") {
    SUBCASE("boundary of the 5-simplex") {
        const auto c = build_complex(fixtures::boundary5().simplices);
        const auto l = delta_zero_ledger(c);
        CHECK(l.interior_faces.size() == 15);
        CHECK(l.closed_triangles.size() == 20);
        REQUIRE(l.edges.size() == 15);
        for (const auto& e : l.edges) {
            CHECK(e.closed_triangles == 4);
            CHECK(e.cycle_rank == 3);
            CHECK(e.excess == 1);
        }
        CHECK(DeltaZeroLedger::delta_zero_exponent(3) == -4);
        CHECK(DeltaZeroLedger::delta_zero_exponent(2) == -3);
        CHECK(DeltaZeroLedger::delta_zero_exponent(1) == -2);
    }
    SUBCASE("glued pair") {
        const auto l = delta_zero_ledger(build_complex(fixtures::glued_pair().simplices));
        CHECK(l.interior_faces.size() == 1);
        CHECK(l.closed_triangles.empty());
        for (const auto& e : l.edges) CHECK(e.excess == 0);
    }
    SUBCASE("flat subdivision") {
        const auto c = build_complex(fixtures::flat_subdivision().simplices);
        const auto l = delta_zero_ledger(c);
        CHECK(l.interior_faces.size() == 10);
        CHECK(l.closed_triangles.size() == 10);
        for (const auto& e : l.edges) {
            // Oracle: closed triangles on an edge counted directly.
            std::size_t closed = 0;
            for (const auto& t : c.faces(2))
                if (t.contains(e.edge) && triangle_star(c, t).closed) ++closed;
            CHECK(e.closed_triangles == closed);
            CHECK(e.excess == static_cast<std::ptrdiff_t>(closed) - e.cycle_rank);
        }
    }
}
