#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace simgrav::verify {

struct SuiteResult {
    std::string name;
    bool passed = true;
    double tolerance = 0.0;
    std::vector<std::pair<std::string, double>> metrics;
    std::vector<std::string> failures;

    void check(bool ok, const std::string& what);
    void metric(std::string key, double value) { metrics.emplace_back(std::move(key), value); }
};

/// 1000 random face metrics of both signs: det M against -(det g)^-4 / 4, plus
/// the identity-metric eigenvalues. Default tolerance 1e-9 (relative).
SuiteResult det_m(std::optional<double> tolerance = std::nullopt);

/// 1-D Gaussian-probe limit, its convergence order, and N-D prefactors.
/// Default tolerance 0.01 (1-D relative error at eps = 1e-3).
SuiteResult fresnel(std::optional<double> tolerance = std::nullopt);

/// Counts and exact ranks on the boundary of the 5-simplex.
SuiteResult rank();

/// Gluing integral for position-dependent mass in N = 1, 2. Default tolerance 1e-5.
SuiteResult glue(std::optional<double> tolerance = std::nullopt);

/// Deficit angles of the flat subdivision fixture. Default tolerance 1e-9.
SuiteResult flatness(std::optional<double> tolerance = std::nullopt);

std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, std::optional<double> tolerance = std::nullopt);

}  // namespace simgrav::verify
