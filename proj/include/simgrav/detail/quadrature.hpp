#pragma once

#include <boost/math/quadrature/gauss.hpp>

#include <cstddef>
#include <type_traits>

namespace simgrav::detail {

// Composite 20-point Gauss-Legendre rule on `panels` equal subintervals of
// [a, b]. Works for any value type with `+` and scalar `*` (Eigen matrices,
// std::complex, double).
template <class F>
auto composite_gauss(F&& f, double a, double b, std::size_t panels) {
    using Rule = boost::math::quadrature::gauss<double, 20>;
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    const double h = (b - a) / static_cast<double>(panels);

    using Value = std::decay_t<decltype(f(a))>;
    Value sum = f(a + 0.5 * h) * 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = a + (static_cast<double>(p) + 0.5) * h;
        const double half = 0.5 * h;
        // Stored abscissae are the non-negative half; index 0 is the centre when the order is odd.
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0.0) {
                sum = sum + f(mid) * (w[i] * half);
            } else {
                sum = sum + f(mid - half * x[i]) * (w[i] * half);
                sum = sum + f(mid + half * x[i]) * (w[i] * half);
            }
        }
    }
    return sum;
}

}  // namespace simgrav::detail
