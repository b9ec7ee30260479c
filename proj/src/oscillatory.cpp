#include "simgrav/oscillatory.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

#include "simgrav/detail/quadrature.hpp"

namespace simgrav {

namespace {

using std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

// Probes are negligible (below e^-64) beyond this many widths from the centre.
constexpr double kProbeReach = 8.0;

int count_negative(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    int n = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) == 0.0) throw OscillatoryError("quadratic form is degenerate");
        if (ev(i) < 0.0) ++n;
    }
    return n;
}

void check_symmetric(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols() || m.rows() == 0) throw OscillatoryError("quadratic form must be square");
    if (!m.isApprox(m.transpose(), 1e-14)) throw OscillatoryError("quadratic form must be symmetric");
}

double relative_error(Complex numeric, Complex predicted) {
    return std::abs(numeric - predicted) / std::abs(predicted);
}

}  // namespace

double ProbeFunction::operator()(double x) const {
    const double u = (x - center) / width;
    return amplitude * std::exp(-u * u);
}

ProductProbe ProductProbe::standard(int n) {
    return ProductProbe{std::vector<ProbeFunction>(static_cast<std::size_t>(n), ProbeFunction{})};
}

double ProductProbe::operator()(const Eigen::VectorXd& x) const {
    double v = 1.0;
    for (std::size_t k = 0; k < factors.size(); ++k) v *= factors[k](x(static_cast<Eigen::Index>(k)));
    return v;
}

FresnelResult fresnel_1d(double epsilon, const ProbeFunction& probe) {
    if (!(epsilon > 0.0)) throw OscillatoryError("epsilon must be positive");
    if (!(probe.width > 0.0)) throw OscillatoryError("probe width must be positive");
    // Complex Gaussian: exp(-A x^2 + b x - mu^2 / s^2).
    const double inv_s2 = 1.0 / (probe.width * probe.width);
    const Complex a = inv_s2 - kI / epsilon;
    const double b = 2.0 * probe.center * inv_s2;
    const Complex value =
        probe.amplitude * std::sqrt(pi / a) * std::exp(b * b / (4.0 * a) - probe.center * probe.center * inv_s2);

    FresnelResult r;
    r.epsilon = epsilon;
    r.numeric = value;
    r.predicted = std::sqrt(pi * epsilon) * std::exp(kI * (pi / 4.0)) * probe(0.0);
    r.relative_error = relative_error(r.numeric, r.predicted);
    return r;
}

Complex fresnel_1d_quadrature(double epsilon, const ProbeFunction& probe) {
    if (!(epsilon > 0.0)) throw OscillatoryError("epsilon must be positive");
    const double lo = probe.center - kProbeReach * probe.width;
    const double hi = probe.center + kProbeReach * probe.width;
    const double reach = std::max(std::abs(lo), std::abs(hi));
    // About one local wavelength pi eps / |x| per panel at the far end.
    const auto panels = static_cast<std::size_t>(std::ceil((hi - lo) * reach / (pi * epsilon))) + 64;
    auto integrand = [&](double x) { return std::exp(kI * (x * x / epsilon)) * probe(x); };
    return detail::composite_gauss(integrand, lo, hi, panels);
}

FresnelResult fresnel_nd(const Eigen::MatrixXd& m, double epsilon, const ProductProbe& probe) {
    check_symmetric(m);
    const auto n = m.rows();
    if (n > 3) throw OscillatoryError("numerical Fresnel integrals are limited to N <= 3");
    if (probe.dim() != n) throw OscillatoryError("probe dimension does not match the quadratic form");
    if (!(epsilon > 0.0)) throw OscillatoryError("epsilon must be positive");

    // exp(-1/2 x^T A x + b^T x + c), A = 2 D - (i / eps) M, D = diag(1 / s^2).
    Eigen::MatrixXcd a = (-kI / epsilon) * m.cast<Complex>();
    Eigen::VectorXcd b(n);
    Complex c = 0.0;
    double amplitude = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto& p = probe.factors[static_cast<std::size_t>(k)];
        const double inv_s2 = 1.0 / (p.width * p.width);
        a(k, k) += 2.0 * inv_s2;
        b(k) = 2.0 * p.center * inv_s2;
        c -= p.center * p.center * inv_s2;
        amplitude *= p.amplitude;
    }
    // Re A is positive definite, so every eigenvalue of A has positive real part
    // and the principal square roots multiply to the continuous branch.
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, false);
    Complex inv_sqrt_det = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) inv_sqrt_det /= std::sqrt(solver.eigenvalues()(k));
    const Complex quad = b.dot(a.partialPivLu().solve(b));  // conjugates b, which is real
    const Complex value =
        amplitude * std::pow(2.0 * pi, 0.5 * static_cast<double>(n)) * inv_sqrt_det * std::exp(0.5 * quad + c);

    const int negatives = count_negative(m);
    const double dn = static_cast<double>(n);
    FresnelResult r;
    r.epsilon = epsilon;
    r.numeric = value;
    r.predicted = std::pow(2.0 * pi * epsilon, 0.5 * dn) * std::exp(kI * (pi * dn / 4.0)) /
                  std::sqrt(std::abs(m.determinant())) * std::exp(-kI * (pi * negatives / 2.0)) *
                  probe(Eigen::VectorXd::Zero(n));
    r.relative_error = relative_error(r.numeric, r.predicted);
    return r;
}

Complex fresnel_nd_quadrature(const Eigen::MatrixXd& m, double epsilon, const ProductProbe& probe,
                              std::size_t panels_per_dim) {
    check_symmetric(m);
    const auto n = m.rows();
    if (n > 3) throw OscillatoryError("numerical Fresnel integrals are limited to N <= 3");
    if (probe.dim() != n) throw OscillatoryError("probe dimension does not match the quadratic form");

    Eigen::VectorXd x(n);
    std::function<Complex(Eigen::Index)> nest = [&](Eigen::Index k) -> Complex {
        if (k == n) return std::exp(kI * (0.5 * x.dot(m * x) / epsilon)) * probe(x);
        const auto& p = probe.factors[static_cast<std::size_t>(k)];
        auto slice = [&](double xk) {
            x(k) = xk;
            return nest(k + 1);
        };
        return detail::composite_gauss(slice, p.center - kProbeReach * p.width, p.center + kProbeReach * p.width,
                                       panels_per_dim);
    };
    return nest(0);
}

Complex stationary_phase_prefactor(const Eigen::MatrixXd& m, double epsilon, double coefficient) {
    check_symmetric(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    Complex r = 1.0;
    for (Eigen::Index k = 0; k < m.rows(); ++k) {
        const double lambda = solver.eigenvalues()(k);
        if (lambda == 0.0) throw OscillatoryError("quadratic form is degenerate");
        r *= std::sqrt(pi * epsilon / (coefficient * std::abs(lambda))) *
             std::exp(kI * (lambda > 0.0 ? pi / 4.0 : -pi / 4.0));
    }
    return r;
}

Complex stationary_phase_prefactor(const Inertia& inertia, double epsilon, double coefficient) {
    if (inertia.zeros != 0 || inertia.det == 0.0) throw OscillatoryError("quadratic form is degenerate");
    const double n = inertia.negatives + inertia.positives;
    return std::pow(pi * epsilon / coefficient, 0.5 * n) / std::sqrt(std::abs(inertia.det)) *
           std::exp(kI * (pi * (inertia.positives - inertia.negatives) / 4.0));
}

ToySplit toy_jump_split(const ToyTrajectory& traj, double epsilon) {
    if (!(epsilon > 0.0)) throw OscillatoryError("epsilon must be positive");
    if (!traj.mass) throw OscillatoryError("trajectory needs a mass matrix field");
    const Eigen::VectorXd dx = traj.x2 - traj.x1;

    auto jump_density = [&](double t) {
        const double df = traj.f.derivative(t);
        const Eigen::MatrixXd mass = traj.mass(traj.f.value(t) * dx + traj.x1);
        return dx.dot(mass * dx) * df * df;
    };
    ToySplit s;
    s.singular = 0.5 / epsilon * detail::composite_gauss(jump_density, -0.5, 0.5, 16);

    auto kinetic = [&](const Eigen::VectorXd& start, const Eigen::VectorXd& v) {
        auto density = [&](double u) {
            const Eigen::MatrixXd mass = traj.mass(start + u * v);
            return v.dot(mass * v);
        };
        return 0.5 * detail::composite_gauss(density, 0.0, traj.duration, 16);
    };
    // Left piece runs backwards from x1, right piece forwards from x2.
    s.independent = kinetic(traj.x1, -traj.v_left) + kinetic(traj.x2, traj.v_right);
    return s;
}

double glue_consistency_check(const MassField& mass, const Eigen::VectorXd& x_minus, double width) {
    if (!(width > 0.0)) throw OscillatoryError("regulator width must be positive");
    const auto n = x_minus.size();
    if (n < 1 || n > 3) throw OscillatoryError("gluing check supports N in 1..3");
    const double det_minus = mass(x_minus).determinant();
    if (det_minus == 0.0) throw OscillatoryError("det M(x-) vanishes");

    const double norm = 1.0 / (std::sqrt(2.0 * pi) * width);
    const double reach = 10.0 * width;
    Eigen::VectorXd y(n);
    std::function<double(Eigen::Index)> nest = [&](Eigen::Index k) -> double {
        if (k == n) {
            const double ratio = mass(x_minus + y).determinant() / det_minus;
            if (!(ratio > 0.0)) throw OscillatoryError("det M changes sign inside the regulator");
            const double gauss = std::pow(norm, static_cast<double>(n)) * std::exp(-0.5 * y.squaredNorm() / (width * width));
            return gauss * std::sqrt(ratio);
        }
        auto slice = [&](double yk) {
            y(k) = yk;
            return nest(k + 1);
        };
        return detail::composite_gauss(slice, -reach, reach, 8);
    };
    return nest(0);
}

}  // namespace simgrav
