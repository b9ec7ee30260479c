#include "simgrav/measure.hpp"

#include <algorithm>
#include <cmath>

namespace simgrav {

DivergenceError::DivergenceError(const Simplex& s, int exponent)
    : MeasureError("volume of " + s.to_string() + " vanishes but carries exponent " + std::to_string(exponent)),
      simplex_(s) {}

LocalMeasureSpec LocalMeasureSpec::product_of_squared_lengths() {
    return {"product-dl2", "product of dl^2 over the 10 edges of each 4-simplex (non-canonical default)"};
}

LocalMeasureRegistry& LocalMeasureRegistry::instance() {
    static LocalMeasureRegistry registry;
    return registry;
}

LocalMeasureRegistry::LocalMeasureRegistry() { add(LocalMeasureSpec::product_of_squared_lengths()); }

void LocalMeasureRegistry::add(LocalMeasureSpec spec) {
    if (spec.name.empty()) throw MeasureError("local measure needs a name");
    specs_[spec.name] = std::move(spec);
}

const LocalMeasureSpec& LocalMeasureRegistry::get(const std::string& name) const {
    auto it = specs_.find(name);
    if (it == specs_.end()) throw MeasureError("unknown local measure '" + name + "'");
    return it->second;
}

std::vector<std::string> LocalMeasureRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [name, spec] : specs_) out.push_back(name);
    return out;
}

int MeasureReport::exponent_of(const Simplex& s) const {
    for (const auto& v : volume_exponents)
        if (v.simplex == s) return v.exponent;
    return 0;
}

MeasureReport assemble_measure_report(const SimplicialComplex& complex, const KeptSet& kept,
                                      const DeltaZeroLedger& ledger, const LocalMeasureSpec& local) {
    if (kept.complex_fingerprint != complex.fingerprint() || ledger.complex_fingerprint != complex.fingerprint())
        throw MeasureError("kept set and ledger were computed for a different complex");

    MeasureReport r;
    r.local_measure = local;
    for (const auto& f : ledger.interior_faces) r.volume_exponents.push_back({f, 4});
    for (const auto& t : ledger.closed_triangles) r.volume_exponents.push_back({t, -3});
    for (const auto& e : ledger.edges)
        if (e.excess != 0) r.volume_exponents.push_back({e.edge, static_cast<int>(2 * e.excess)});
    r.kept_deltas = kept.kept;

    const auto boundary = complex.boundary_three_faces().size();
    if (boundary > 0)
        r.notes.push_back("boundary: " + std::to_string(boundary) +
                          " boundary 3-faces; products run over interior simplices only");
    const auto open = complex.count(2) - ledger.closed_triangles.size();
    if (open > 0) r.notes.push_back("open-star triangles: " + std::to_string(open) + " carry no delta-of-zero factor");
    std::size_t nonstandard = 0;
    for (const auto& e : ledger.edges) {
        if (e.excess < 0) r.notes.push_back("negative excess at edge " + e.edge.to_string());
        if (e.excess != 1) ++nonstandard;
    }
    if (nonstandard > 0)
        r.notes.push_back("edges with excess != 1: " + std::to_string(nonstandard) +
                          " (exponent differs from +2 of the closed case)");
    std::size_t nonmanifold = 0;
    for (std::size_t f = 0; f < complex.count(3); ++f)
        if (complex.cofacets(3, f).size() > 2) ++nonmanifold;
    if (nonmanifold > 0)
        r.notes.push_back("non-manifold: " + std::to_string(nonmanifold) + " 3-faces with more than two cofacets");
    return r;
}

double evaluate_volume_factor(const MeasureReport& report, const SquaredLengthMap& lengths) {
    double sum = 0.0;
    for (const auto& [s, exponent] : report.volume_exponents) {
        if (exponent == 0) continue;
        const double v = simplex_volume(s, lengths);
        if (v <= 0.0) throw DivergenceError(s, exponent);
        sum += exponent * std::log(v);
    }
    return sum;
}

double volume_factor_scaling_exponent(const MeasureReport& report) {
    double k = 0.0;
    for (const auto& [s, exponent] : report.volume_exponents) k += exponent * 0.5 * s.dim();
    return k;
}

}  // namespace simgrav
