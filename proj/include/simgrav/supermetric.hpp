#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace simgrav {

class SupermetricError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Index pairs of the six independent components of a symmetric 3x3 matrix,
/// in the order (11, 22, 33, 12, 13, 23).
inline constexpr std::array<std::pair<int, int>, 6> kPairOrder{{{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}}};

using PairVector = Eigen::Matrix<double, 6, 1>;
using SuperMetric = Eigen::Matrix<double, 6, 6>;

/// Symmetric, nonsingular 3x3 metric induced on a 3-face. Either signature is
/// accepted.
class Metric3 {
public:
    explicit Metric3(const Eigen::Matrix3d& g);
    /// Components in pair order (11, 22, 33, 12, 13, 23).
    static Metric3 from_components(const PairVector& c);

    const Eigen::Matrix3d& matrix() const { return g_; }
    double det() const { return g_.determinant(); }
    PairVector components() const;

private:
    Eigen::Matrix3d g_;
};

PairVector to_pair_vector(const Eigen::Matrix3d& h);

/// M^{(ab)(cd)} = 1/2 (g^{ac} g^{bd} + g^{ad} g^{bc}) - g^{ab} g^{cd}, evaluated
/// at unordered index pairs. With this convention det M = -(det g)^-4 / 4.
SuperMetric dewitt_supermetric(const Metric3& g);

struct Inertia {
    double det = 0.0;
    int negatives = 0;
    int positives = 0;
    int zeros = 0;
    Eigen::Matrix<double, 6, 1> eigenvalues;  // ascending
};

Inertia det_and_inertia(const SuperMetric& m);

/// v^T M v on the pair-ordered components of `dg`.
double quadratic_form(const SuperMetric& m, const Eigen::Matrix3d& dg);

/// Profile f on [-1/2, 1/2] with f(-1/2) = 0 and f(1/2) = 1.
struct Profile {
    enum class Kind { Linear, Smoothstep, Custom };

    Kind kind = Kind::Smoothstep;
    std::string name = "smoothstep";
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    bool symmetric = true;

    static Profile linear();
    /// f = 1/2 + 3/2 t - 2 t^3.
    static Profile smoothstep();
    /// Validates the boundary conditions, and f(t) = 1 - f(-t) when `symmetric`.
    static Profile custom(std::string name, std::function<double(double)> f, std::function<double(double)> df,
                          bool symmetric);
};

/// Integral of f'(t)^2 over [-1/2, 1/2]; closed form for the built-in profiles.
double profile_integral(const Profile& f);
double profile_integral_quadrature(const Profile& f);

enum class FaceType {
    Timelike,   // det g_face < 0, g_nn > 0
    Spacelike,  // det g_face > 0, g_nn < 0
};

/// Smoothing of a metric jump across a 3-face of normal thickness Δx^n.
struct JumpProfile {
    enum class Step { Heaviside, Profile };

    Profile f = Profile::smoothstep();
    Step theta = Step::Heaviside;
    double normal_thickness = 1.0;   // Δx^n
    double transverse_volume = 1.0;  // Δ^3 x
    double gnn_1 = 1.0;
    double gnn_2 = 1.0;
    FaceType face = FaceType::Timelike;

    /// Value of the step profile used to interpolate g_nn.
    double step(double t) const;
    double gnn(double t) const { return step(t) * (gnn_2 - gnn_1) + gnn_1; }
    /// Checks sign conventions against the declared face type and `face_metric`.
    void check(const Metric3& face_metric) const;
};

/// Integral over t of sqrt(-det[f dg + g1] / g_nn(t)) M[f dg + g1] f'^2.
SuperMetric tilM_integral(const Metric3& g1, const Metric3& g2, const JumpProfile& jump);

struct EpsilonParams {
    double epsilon = 0.0;          // signed, as fixed by the overall minus sign
    double inverse_epsilon = 0.0;
    double transverse_volume = 0.0;
    double det_g1 = 0.0;
    double mean_inv_sqrt_gnn = 0.0;  // 1/2 (|g_nn^(1)|^-1/2 + |g_nn^(2)|^-1/2)
    double profile_integral = 0.0;
    double newton_constant = 0.0;
    double normal_thickness = 0.0;
};

/// 1/eps = -(Δ^3x sqrt(-det g1) / (64 pi G Δx^n)) mean(g_nn^-1/2) int f'^2,
/// with the product sqrt(-det g1) g_nn^-1/2 taken on the branch where it is real.
EpsilonParams epsilon_parameter(const JumpProfile& jump, const Metric3& g1, double newton_constant);

/// Same parameter with Δ^3x sqrt|det g| replaced by 6 V, V the 3-face volume.
EpsilonParams epsilon_from_face_volume(const JumpProfile& jump, double face_volume, double newton_constant);

/// S_sing = -(Δ^3x / (64 pi G Δx^n)) (dg tilM dg).
double singular_action(const Eigen::Matrix3d& dg, const SuperMetric& tilM, const JumpProfile& jump,
                       double newton_constant);

}  // namespace simgrav
