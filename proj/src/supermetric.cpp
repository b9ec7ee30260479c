#include "simgrav/supermetric.hpp"

#include <cmath>
#include <numbers>

#include "simgrav/detail/quadrature.hpp"

namespace simgrav {

namespace {

constexpr std::size_t kPanelsPerHalf = 16;

double sign_consistent_ratio(double det, double gnn) {
    const double r = -det / gnn;
    if (!(r > 0.0) || !std::isfinite(r))
        throw SupermetricError("-det g / g_nn must be positive along the jump (got " + std::to_string(r) + ")");
    return r;
}

}  // namespace

Metric3::Metric3(const Eigen::Matrix3d& g) : g_(g) {
    if (!g_.isApprox(g_.transpose(), 1e-14)) throw SupermetricError("face metric must be symmetric");
    const double scale = g_.cwiseAbs().maxCoeff();
    if (scale == 0.0 || std::abs(g_.determinant()) <= 1e-14 * scale * scale * scale)
        throw SupermetricError("face metric is singular");
}

Metric3 Metric3::from_components(const PairVector& c) {
    Eigen::Matrix3d g;
    for (int k = 0; k < 6; ++k) {
        auto [a, b] = kPairOrder[k];
        g(a, b) = g(b, a) = c(k);
    }
    return Metric3(g);
}

PairVector Metric3::components() const { return to_pair_vector(g_); }

PairVector to_pair_vector(const Eigen::Matrix3d& h) {
    PairVector v;
    for (int k = 0; k < 6; ++k) v(k) = h(kPairOrder[k].first, kPairOrder[k].second);
    return v;
}

SuperMetric dewitt_supermetric(const Metric3& g) {
    const Eigen::Matrix3d inv = g.matrix().inverse();
    SuperMetric m;
    for (int i = 0; i < 6; ++i) {
        auto [a, b] = kPairOrder[i];
        for (int j = 0; j < 6; ++j) {
            auto [c, d] = kPairOrder[j];
            m(i, j) = 0.5 * (inv(a, c) * inv(b, d) + inv(a, d) * inv(b, c)) - inv(a, b) * inv(c, d);
        }
    }
    return m;
}

Inertia det_and_inertia(const SuperMetric& m) {
    Inertia r;
    r.det = m.fullPivLu().determinant();
    Eigen::SelfAdjointEigenSolver<SuperMetric> solver(m, Eigen::EigenvaluesOnly);
    r.eigenvalues = solver.eigenvalues();
    const double cutoff = 1e-12 * std::max(1.0, r.eigenvalues.cwiseAbs().maxCoeff());
    for (int i = 0; i < 6; ++i) {
        if (r.eigenvalues(i) < -cutoff)
            ++r.negatives;
        else if (r.eigenvalues(i) > cutoff)
            ++r.positives;
        else
            ++r.zeros;
    }
    return r;
}

double quadratic_form(const SuperMetric& m, const Eigen::Matrix3d& dg) {
    const PairVector v = to_pair_vector(dg);
    return v.dot(m * v);
}

Profile Profile::linear() {
    Profile p;
    p.kind = Kind::Linear;
    p.name = "linear";
    p.value = [](double t) { return t + 0.5; };
    p.derivative = [](double) { return 1.0; };
    return p;
}

Profile Profile::smoothstep() {
    Profile p;
    p.kind = Kind::Smoothstep;
    p.name = "smoothstep";
    p.value = [](double t) { return 0.5 + 1.5 * t - 2.0 * t * t * t; };
    p.derivative = [](double t) { return 1.5 - 6.0 * t * t; };
    return p;
}

Profile Profile::custom(std::string name, std::function<double(double)> f, std::function<double(double)> df,
                        bool symmetric) {
    if (!f || !df) throw SupermetricError("profile needs a value and a derivative");
    if (std::abs(f(-0.5)) > 1e-12 || std::abs(f(0.5) - 1.0) > 1e-12)
        throw SupermetricError("profile " + name + " violates f(-1/2) = 0, f(1/2) = 1");
    if (symmetric) {
        for (int i = 0; i <= 64; ++i) {
            const double t = -0.5 + i / 64.0;
            if (std::abs(f(t) - (1.0 - f(-t))) > 1e-12)
                throw SupermetricError("profile " + name + " is not symmetric: f(t) != 1 - f(-t)");
        }
    }
    Profile p;
    p.kind = Kind::Custom;
    p.name = std::move(name);
    p.value = std::move(f);
    p.derivative = std::move(df);
    p.symmetric = symmetric;
    return p;
}

double profile_integral_quadrature(const Profile& f) {
    auto sq = [&](double t) {
        const double d = f.derivative(t);
        return d * d;
    };
    const double v = detail::composite_gauss(sq, -0.5, 0.0, kPanelsPerHalf) +
                     detail::composite_gauss(sq, 0.0, 0.5, kPanelsPerHalf);
    if (!std::isfinite(v)) throw SupermetricError("profile integral is not finite");
    return v;
}

double profile_integral(const Profile& f) {
    switch (f.kind) {
        case Profile::Kind::Linear:
            return 1.0;
        case Profile::Kind::Smoothstep:
            return 6.0 / 5.0;
        case Profile::Kind::Custom:
            break;
    }
    return profile_integral_quadrature(f);
}

double JumpProfile::step(double t) const {
    if (theta == Step::Profile) return f.value(t);
    return t < 0.0 ? 0.0 : 1.0;
}

void JumpProfile::check(const Metric3& face_metric) const {
    if (!(normal_thickness > 0.0)) throw SupermetricError("normal thickness must be positive");
    if (!(gnn_1 * gnn_2 > 0.0)) throw SupermetricError("g_nn must keep its sign across the face");
    const double det = face_metric.det();
    const bool timelike = face == FaceType::Timelike;
    if (timelike ? !(gnn_1 > 0.0 && det < 0.0) : !(gnn_1 < 0.0 && det > 0.0))
        throw SupermetricError(std::string("face metric sign does not match a ") +
                               (timelike ? "timelike" : "spacelike") + " face: det g = " + std::to_string(det) +
                               ", g_nn = " + std::to_string(gnn_1));
}

SuperMetric tilM_integral(const Metric3& g1, const Metric3& g2, const JumpProfile& jump) {
    jump.check(g1);
    const Eigen::Matrix3d dg = g2.matrix() - g1.matrix();
    auto integrand = [&](double t) -> SuperMetric {
        const Eigen::Matrix3d g = jump.f.value(t) * dg + g1.matrix();
        const double scale = g.cwiseAbs().maxCoeff();
        const double det = g.determinant();
        if (std::abs(det) <= 1e-14 * scale * scale * scale)
            throw SupermetricError("interpolated face metric degenerates along the jump");
        const double root = std::sqrt(sign_consistent_ratio(det, jump.gnn(t)));
        const double df = jump.f.derivative(t);
        return (root * df * df) * dewitt_supermetric(Metric3(g));
    };
    // Split at t = 0 where the Heaviside step for g_nn jumps.
    SuperMetric m = detail::composite_gauss(integrand, -0.5, 0.0, kPanelsPerHalf) +
                    detail::composite_gauss(integrand, 0.0, 0.5, kPanelsPerHalf);
    return m;
}

namespace {

EpsilonParams epsilon_with_weight(const JumpProfile& jump, double weighted_volume, double newton_constant) {
    if (!(newton_constant > 0.0)) throw SupermetricError("Newton constant must be positive");
    if (!(jump.normal_thickness > 0.0)) throw SupermetricError("normal thickness must be positive");
    EpsilonParams e;
    e.transverse_volume = jump.transverse_volume;
    e.mean_inv_sqrt_gnn = 0.5 / std::sqrt(std::abs(jump.gnn_1)) + 0.5 / std::sqrt(std::abs(jump.gnn_2));
    e.profile_integral = profile_integral(jump.f);
    e.newton_constant = newton_constant;
    e.normal_thickness = jump.normal_thickness;
    e.inverse_epsilon = -weighted_volume / (64.0 * std::numbers::pi * newton_constant * jump.normal_thickness) *
                        e.mean_inv_sqrt_gnn * e.profile_integral;
    e.epsilon = 1.0 / e.inverse_epsilon;
    return e;
}

}  // namespace

EpsilonParams epsilon_parameter(const JumpProfile& jump, const Metric3& g1, double newton_constant) {
    jump.check(g1);
    auto e = epsilon_with_weight(jump, jump.transverse_volume * std::sqrt(std::abs(g1.det())), newton_constant);
    e.det_g1 = g1.det();
    return e;
}

EpsilonParams epsilon_from_face_volume(const JumpProfile& jump, double face_volume, double newton_constant) {
    if (!(face_volume > 0.0)) throw SupermetricError("face volume must be positive");
    return epsilon_with_weight(jump, 6.0 * face_volume, newton_constant);
}

double singular_action(const Eigen::Matrix3d& dg, const SuperMetric& tilM, const JumpProfile& jump,
                       double newton_constant) {
    if (!(newton_constant > 0.0)) throw SupermetricError("Newton constant must be positive");
    return -jump.transverse_volume / (64.0 * std::numbers::pi * newton_constant * jump.normal_thickness) *
           quadratic_form(tilM, dg);
}

}  // namespace simgrav
