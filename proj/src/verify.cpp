#include "simgrav/verify.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "simgrav/constraints.hpp"
#include "simgrav/geometry.hpp"
#include "simgrav/io.hpp"
#include "simgrav/oscillatory.hpp"
#include "simgrav/supermetric.hpp"

namespace simgrav::verify {

namespace {

// Random symmetric metric with |det| log-uniform in [0.1, 10] and the sign of
// the determinant chosen by the caller.
Eigen::Matrix3d random_metric(std::mt19937_64& rng, bool negative_det) {
    std::uniform_real_distribution<double> mag(0.3, 3.0);
    std::uniform_real_distribution<double> log_det(std::log(0.1), std::log(10.0));
    std::uniform_int_distribution<int> flip(0, 1);
    std::normal_distribution<double> normal;

    Eigen::Matrix3d a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a(i, j) = normal(rng);
    const Eigen::Matrix3d q = Eigen::HouseholderQR<Eigen::Matrix3d>(a).householderQ();

    Eigen::Vector3d lambda;
    int negatives = 0;
    for (int i = 0; i < 3; ++i) {
        lambda(i) = mag(rng) * (flip(rng) ? -1.0 : 1.0);
        if (lambda(i) < 0) ++negatives;
    }
    if ((negatives % 2 == 1) != negative_det) lambda(0) = -lambda(0);
    const double scale = std::cbrt(std::exp(log_det(rng)) / std::abs(lambda.prod()));
    Eigen::Matrix3d g = q * (scale * lambda).asDiagonal() * q.transpose();
    return 0.5 * (g + g.transpose());
}

}  // namespace

void SuiteResult::check(bool ok, const std::string& what) {
    if (!ok) {
        passed = false;
        failures.push_back(what);
    }
}

SuiteResult det_m(std::optional<double> tolerance) {
    SuiteResult r{"detM"};
    r.tolerance = tolerance.value_or(1e-9);
    std::mt19937_64 rng(20090142);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const Metric3 g(random_metric(rng, k % 2 == 1));
        const double expected = -std::pow(g.det(), -4.0) / 4.0;
        const double got = det_and_inertia(dewitt_supermetric(g)).det;
        worst = std::max(worst, std::abs(got - expected) / std::abs(expected));
    }
    r.metric("samples", 1000);
    r.metric("max_relative_deviation", worst);
    r.check(worst <= r.tolerance, "det M identity exceeds tolerance");

    const auto id = det_and_inertia(dewitt_supermetric(Metric3(Eigen::Matrix3d::Identity())));
    const std::array<double, 6> expected{-2.0, 0.5, 0.5, 0.5, 1.0, 1.0};
    double eig_dev = 0.0;
    for (int i = 0; i < 6; ++i) eig_dev = std::max(eig_dev, std::abs(id.eigenvalues(i) - expected[i]));
    r.metric("identity_det", id.det);
    r.metric("identity_negatives", id.negatives);
    r.metric("identity_eigenvalue_deviation", eig_dev);
    r.check(std::abs(id.det + 0.25) <= 1e-12, "det M at g = I differs from -1/4");
    r.check(eig_dev <= 1e-10, "eigenvalues at g = I differ from {-2, 1/2, 1/2, 1/2, 1, 1}");
    r.check(id.negatives == 1, "identity metric should give one negative eigenvalue");
    return r;
}

SuiteResult fresnel(std::optional<double> tolerance) {
    SuiteResult r{"fresnel"};
    r.tolerance = tolerance.value_or(0.01);
    const ProbeFunction probe{};

    const auto at3 = fresnel_1d(1e-3, probe);
    r.metric("1d_relative_error_eps_1e-3", at3.relative_error);
    r.check(at3.relative_error <= r.tolerance, "1-D Fresnel limit exceeds tolerance at eps = 1e-3");

    // Least-squares slope of log error against log eps.
    const std::array<double, 3> eps{1e-2, 1e-3, 1e-4};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double e : eps) {
        const double x = std::log(e), y = std::log(fresnel_1d(e, probe).relative_error);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double order = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
    r.metric("1d_convergence_order", order);
    r.check(order >= 0.9, "1-D convergence order below 0.9");

    const std::vector<Eigen::MatrixXd> forms{Eigen::MatrixXd::Identity(1, 1),
                                             Eigen::Vector2d(1.0, -1.0).asDiagonal().toDenseMatrix(),
                                             Eigen::MatrixXd::Identity(2, 2)};
    double worst_mag = 0.0, worst_phase = 0.0;
    for (const auto& m : forms) {
        const auto res = fresnel_nd(m, 1e-3, ProductProbe::standard(static_cast<int>(m.rows())));
        worst_mag = std::max(worst_mag, std::abs(res.magnitude_ratio() - 1.0));
        worst_phase = std::max(worst_phase, std::abs(res.phase_difference()));
    }
    r.metric("nd_max_magnitude_deviation", worst_mag);
    r.metric("nd_max_phase_deviation", worst_phase);
    r.check(worst_mag <= 0.02, "N-D prefactor magnitude off by more than 2%");
    r.check(worst_phase <= 0.05, "N-D prefactor phase off by more than 0.05 rad");
    return r;
}

SuiteResult rank() {
    SuiteResult r{"rank"};
    const auto file = fixtures::boundary5();
    const auto complex = build_complex(file.simplices);
    const ExtendedVariables vars(complex);
    const auto all = enumerate_constraints(complex);
    const auto kept = select_kept(complex);
    const auto full_rank = constraint_rank(constraint_matrix(all, vars));
    const auto kept_rank = constraint_rank(constraint_matrix(kept.kept, vars));
    r.metric("variables", static_cast<double>(vars.size()));
    r.metric("constraints", static_cast<double>(all.size()));
    r.metric("kept", static_cast<double>(kept.kept.size()));
    r.metric("rank_full", static_cast<double>(full_rank));
    r.metric("rank_kept", static_cast<double>(kept_rank));
    r.check(vars.size() == 60, "expected 60 extended variables");
    r.check(all.size() == 90, "expected 90 constraints");
    r.check(kept.kept.size() == 45, "expected 45 kept constraints");
    r.check(full_rank == 45 && kept_rank == 45, "expected rank 45 for full and kept matrices");
    r.check(full_rank == vars.size() - complex.count(1), "rank(full) != #variables - #edges");
    return r;
}

SuiteResult glue(std::optional<double> tolerance) {
    SuiteResult r{"glue"};
    r.tolerance = tolerance.value_or(1e-5);
    const MassField one_d = [](const Eigen::VectorXd& x) {
        return Eigen::MatrixXd::Constant(1, 1, 1.0 + 0.1 * x(0) * x(0));
    };
    const MassField two_d = [](const Eigen::VectorXd& x) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
        m(0, 0) = 1.0 + 0.1 * x(0) * x(0) + 0.05 * x(1);
        m(1, 1) = 2.0 + std::sin(x(0)) * 0.3 + 0.2 * x(1) * x(1);
        return m;
    };
    const double v1 = glue_consistency_check(one_d, Eigen::VectorXd::Constant(1, 0.7), 1e-3);
    const double v2 = glue_consistency_check(two_d, Eigen::Vector2d(0.4, -0.3), 1e-3);
    r.metric("n1_value", v1);
    r.metric("n2_value", v2);
    r.check(std::abs(v1 - 1.0) <= r.tolerance, "N = 1 gluing integral differs from 1");
    r.check(std::abs(v2 - 1.0) <= r.tolerance, "N = 2 gluing integral differs from 1");
    return r;
}

SuiteResult flatness(std::optional<double> tolerance) {
    SuiteResult r{"flatness"};
    r.tolerance = tolerance.value_or(1e-9);
    const auto file = fixtures::flat_subdivision();
    const auto complex = build_complex(file.simplices);
    const auto lengths = global_lengths(file, complex);
    if (!lengths) throw std::logic_error("flat fixture lacks lengths");
    double worst = 0.0;
    std::size_t interior = 0;
    for (const auto& tri : complex.faces(2)) {
        if (!triangle_star(complex, tri).closed) continue;
        ++interior;
        worst = std::max(worst, std::abs(deficit_angle(complex, tri, *lengths)));
    }
    r.metric("interior_triangles", static_cast<double>(interior));
    r.metric("max_abs_deficit", worst);
    r.check(interior == 10, "expected 10 interior triangles");
    r.check(worst <= r.tolerance, "deficit angle of a flat subdivision exceeds tolerance");
    return r;
}

std::vector<std::string> suite_names() { return {"detM", "fresnel", "rank", "glue", "flatness"}; }

SuiteResult run_suite(const std::string& name, std::optional<double> tolerance) {
    if (name == "detM") return det_m(tolerance);
    if (name == "fresnel") return fresnel(tolerance);
    if (name == "rank") return rank();
    if (name == "glue") return glue(tolerance);
    if (name == "flatness") return flatness(tolerance);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace simgrav::verify
