#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "simgrav/supermetric.hpp"

namespace simgrav {

using Complex = std::complex<double>;

class OscillatoryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// a * exp(-((x - center) / width)^2).
struct ProbeFunction {
    double center = 0.0;
    double width = 1.0;
    double amplitude = 1.0;

    double operator()(double x) const;
};

/// Product of one-dimensional Gaussian probes.
struct ProductProbe {
    std::vector<ProbeFunction> factors;

    static ProductProbe standard(int n);
    double operator()(const Eigen::VectorXd& x) const;
    int dim() const { return static_cast<int>(factors.size()); }
};

struct FresnelResult {
    Complex numeric;
    Complex predicted;
    double relative_error = 0.0;
    double epsilon = 0.0;

    double magnitude_ratio() const { return std::abs(numeric) / std::abs(predicted); }
    /// Phase of numeric / predicted in (-pi, pi].
    double phase_difference() const { return std::arg(numeric / predicted); }
};

/// Integral of exp(i x^2 / eps) phi(x) against sqrt(pi eps) e^{i pi/4} phi(0).
FresnelResult fresnel_1d(double epsilon, const ProbeFunction& probe);

/// The same integral by brute-force composite quadrature on the real line.
Complex fresnel_1d_quadrature(double epsilon, const ProbeFunction& probe);

/// Integral of exp((i / 2 eps) x^T M x) phi(x) d^N x against
/// (2 pi eps)^{N/2} e^{i pi N/4} [det M]^{-1/2} phi(0), arg det M = N_- pi.
FresnelResult fresnel_nd(const Eigen::MatrixXd& m, double epsilon, const ProductProbe& probe);

/// Tensor-product quadrature of the N-D integral, N <= 3.
Complex fresnel_nd_quadrature(const Eigen::MatrixXd& m, double epsilon, const ProductProbe& probe,
                              std::size_t panels_per_dim);

/// Closed-form stationary-phase factor of exp(i c x^T M x / eps) over R^N:
/// (pi eps / c)^{N/2} |det M|^{-1/2} exp(i pi (N_+ - N_-) / 4).
Complex stationary_phase_prefactor(const Eigen::MatrixXd& m, double epsilon, double coefficient);

/// Same factor from a precomputed determinant and inertia of a supermetric.
Complex stationary_phase_prefactor(const Inertia& inertia, double epsilon, double coefficient);

using MassField = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

/// x(t) = x1 + v_left (t + eps/2) for t in [-eps/2 - T, -eps/2], the smoothed
/// jump x1 + f(t/eps) (x2 - x1) inside [-eps/2, eps/2], and x2 + v_right (t - eps/2)
/// for t in [eps/2, eps/2 + T].
struct ToyTrajectory {
    Eigen::VectorXd x1;
    Eigen::VectorXd x2;
    Eigen::VectorXd v_left;
    Eigen::VectorXd v_right;
    double duration = 1.0;  // T, each side
    Profile f = Profile::linear();
    MassField mass;
};

struct ToySplit {
    double singular = 0.0;     // (1 / 2 eps) dx^A dx^B int M_AB[f dx + x1] f'^2
    double independent = 0.0;  // action of the two pieces outside the jump
};

ToySplit toy_jump_split(const ToyTrajectory& trajectory, double epsilon);

/// Integral over x+ of delta_w(x+ - x-) det M(x-)^{-1/2} det M(x+)^{1/2}, delta_w
/// a normalized Gaussian of standard deviation `width`. Equals 1 when the
/// measure glues consistently.
double glue_consistency_check(const MassField& mass, const Eigen::VectorXd& x_minus, double width = 1e-3);

}  // namespace simgrav
