#pragma once

#include <functional>

#include "mswave/types.hpp"

namespace mswave::quad {

struct Options {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    // Interval-split budget. The recursion aborts with QuadratureError once
    // the subdivision count would exceed this.
    std::size_t max_subdivisions = 1'000'000;
};

struct Result {
    Complex value;
    double error_estimate;   // accumulated local error bound
    std::size_t evaluations; // integrand calls
};

using Integrand = std::function<Complex(double)>;

// Adaptive Simpson on [a, b]. Accepts a < b or a > b (sign flips).
Result integrate(const Integrand& f, double a, double b, const Options& opts = {});

// Fixed-grid trapezoid with one Richardson extrapolation step (h and h/2).
// Used as an independent cross-check of the adaptive rule.
Result trapezoid_richardson(const Integrand& f, double a, double b, std::size_t intervals);

}  // namespace mswave::quad
