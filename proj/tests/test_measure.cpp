#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "simgrav/io.hpp"
#include "simgrav/measure.hpp"

using namespace simgrav;

namespace {

MeasureReport report_for(const SimplicialComplex& c) {
    return assemble_measure_report(c, select_kept(c), delta_zero_ledger(c), LocalMeasureSpec::product_of_squared_lengths());
}

std::map<std::pair<int, int>, int> tally(const MeasureReport& r) {
    std::map<std::pair<int, int>, int> t;
    for (const auto& v : r.volume_exponents) ++t[{v.simplex.dim(), v.exponent}];
    return t;
}

}  // namespace

TEST_CASE("boundary of the 5-simplex") {
    const auto c = build_complex(fixtures::boundary5().simplices);
    const auto r = report_for(c);
    const auto t = tally(r);
    CHECK(t.at({3, 4}) == 15);
    CHECK(t.at({2, -3}) == 20);
    CHECK(t.at({1, 2}) == 15);
    CHECK(t.size() == 3);
    CHECK(r.kept_deltas.size() == 45);
    CHECK(r.notes.empty());
    CHECK(r.local_measure.name == "product-dl2");
    CHECK(r.exponent_of(Simplex{0, 1, 2, 3}) == 4);
    CHECK(r.exponent_of(Simplex{0, 1, 2}) == -3);
    CHECK(r.exponent_of(Simplex{0, 1}) == 2);
    CHECK(r.exponent_of(Simplex{0, 1, 2, 3, 4}) == 0);

    SUBCASE("volume factor") {
        const auto lengths = SquaredLengthMap::uniform(c, 1.0);
        // Regular simplex volumes by the closed formulas sqrt(d+1) / (d! sqrt(2^d)).
        const double v3 = std::sqrt(2.0) / 12.0, v2 = std::sqrt(3.0) / 4.0;
        CHECK(evaluate_volume_factor(r, lengths) ==
              doctest::Approx(60.0 * std::log(v3) - 60.0 * std::log(v2)).epsilon(1e-12));
        CHECK(volume_factor_scaling_exponent(r) == 45.0);
        const double lam = 2.3;
        CHECK(evaluate_volume_factor(r, lengths.scaled(lam)) - evaluate_volume_factor(r, lengths) ==
              doctest::Approx(45.0 * std::log(lam)).epsilon(1e-12));
    }
    SUBCASE("degenerate face with nonzero exponent") {
        const auto lengths = SquaredLengthMap::uniform(c, 0.0);
        CHECK_THROWS_AS(evaluate_volume_factor(r, lengths), DivergenceError);
    }
}

TEST_CASE("open complexes carry notes") {
    const auto c = build_complex(fixtures::glued_pair().simplices);
    const auto r = report_for(c);
    REQUIRE(r.volume_exponents.size() == 1);
    CHECK(r.volume_exponents[0].simplex == Simplex{1, 2, 3, 4});
    CHECK(r.volume_exponents[0].exponent == 4);
    CHECK(r.kept_deltas.size() == 6);
    auto has = [&](const std::string& key) {
        return std::any_of(r.notes.begin(), r.notes.end(), [&](const std::string& n) { return n.find(key) != std::string::npos; });
    };
    CHECK(has("boundary"));
    CHECK(has("open-star"));
    CHECK(volume_factor_scaling_exponent(r) == 6.0);
}

TEST_CASE("flat subdivision") {
    const auto file = fixtures::flat_subdivision();
    const auto c = build_complex(file.simplices);
    const auto r = report_for(c);
    const auto t = tally(r);
    CHECK(t.at({3, 4}) == 10);
    CHECK(t.at({2, -3}) == 10);
    // Interior edges {i,5}: four closed triangles, the link is a tetrahedron boundary.
    for (VertexId i = 0; i < 5; ++i) CHECK(r.exponent_of(Simplex{i, 5}) == 2);
    const auto lengths = global_lengths(file, c);
    REQUIRE(lengths);
    CHECK(std::isfinite(evaluate_volume_factor(r, *lengths)));
}

TEST_CASE("mismatched inputs and registry") {
    const auto a = build_complex(fixtures::boundary5().simplices);
    const auto b = build_complex(fixtures::glued_pair().simplices);
    CHECK_THROWS_AS(assemble_measure_report(a, select_kept(b), delta_zero_ledger(a), LocalMeasureSpec::product_of_squared_lengths()),
                    MeasureError);
    auto& reg = LocalMeasureRegistry::instance();
    CHECK(reg.get("product-dl2").name == "product-dl2");
    CHECK_THROWS_AS(reg.get("nope"), MeasureError);
    reg.add({"unit", "constant local factor"});
    CHECK(reg.get("unit").description == "constant local factor");
    CHECK_THROWS_AS(reg.add({"", "x"}), MeasureError);
}
