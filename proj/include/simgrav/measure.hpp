#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "simgrav/constraints.hpp"

namespace simgrav {

class MeasureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A volume with nonzero exponent vanished.
class DivergenceError : public MeasureError {
public:
    DivergenceError(const Simplex& s, int exponent);
    const Simplex& simplex() const { return simplex_; }

private:
    Simplex simplex_;
};

/// Declared per-4-simplex factor of the measure. Not computed: the report
/// records which factorized choice is in force.
struct LocalMeasureSpec {
    std::string name;
    std::string description;

    /// Product of dl^2 over the ten edges of each 4-simplex.
    static LocalMeasureSpec product_of_squared_lengths();
};

/// Known local measure declarations; additional ones may be registered by name.
class LocalMeasureRegistry {
public:
    static LocalMeasureRegistry& instance();

    void add(LocalMeasureSpec spec);
    const LocalMeasureSpec& get(const std::string& name) const;
    std::vector<std::string> names() const;

private:
    LocalMeasureRegistry();
    std::map<std::string, LocalMeasureSpec> specs_;
};

struct VolumeExponent {
    Simplex simplex;
    int exponent = 0;
};

struct MeasureReport {
    std::vector<VolumeExponent> volume_exponents;  // nonzero only; 3-faces, then triangles, then edges
    std::vector<Constraint> kept_deltas;
    LocalMeasureSpec local_measure;
    std::vector<std::string> notes;

    int exponent_of(const Simplex& s) const;
};

MeasureReport assemble_measure_report(const SimplicialComplex& complex, const KeptSet& kept,
                                      const DeltaZeroLedger& ledger, const LocalMeasureSpec& local);

/// Sum over the report of exponent * ln V. Throws DivergenceError on a zero
/// volume that carries a nonzero exponent.
double evaluate_volume_factor(const MeasureReport& report, const SquaredLengthMap& lengths);

/// d ln(factor) / d ln(lambda) under l2 -> lambda l2: sum of exponent * dim / 2.
double volume_factor_scaling_exponent(const MeasureReport& report);

}  // namespace simgrav
