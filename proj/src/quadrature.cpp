#include "mswave/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace mswave::quad {

namespace {

struct Workspace {
    const Integrand& f;
    const Options& opts;
    std::size_t subdivisions = 0;
    std::size_t evaluations = 0;
    double error_estimate = 0.0;

    Complex eval(double x) {
        ++evaluations;
        return f(x);
    }

    // Adaptive Simpson with the standard 1/15 error bound. `whole` is the
    // Simpson estimate over [a, b] with midpoint value fm already computed.
    Complex simpson_adaptive(double a, double b, Complex fa, Complex fm, Complex fb,
                             Complex whole, double tol, int depth) {
        const double m = 0.5 * (a + b);
        const Complex fl = eval(0.5 * (a + m));
        const Complex fr = eval(0.5 * (m + b));
        const Complex left = (m - a) / 6.0 * (fa + 4.0 * fl + fm);
        const Complex right = (b - m) / 6.0 * (fm + 4.0 * fr + fb);
        const Complex delta = left + right - whole;
        const double err = std::abs(delta) / 15.0;
        if (err <= tol || depth > 48) {
            error_estimate += err;
            return left + right + delta / 15.0;
        }
        if (++subdivisions > opts.max_subdivisions) {
            throw QuadratureError("quadrature: subdivision budget exhausted",
                                  error_estimate + err);
        }
        return simpson_adaptive(a, m, fa, fl, fm, left, 0.5 * tol, depth + 1) +
               simpson_adaptive(m, b, fm, fr, fb, right, 0.5 * tol, depth + 1);
    }
};

}  // namespace

Result integrate(const Integrand& f, double a, double b, const Options& opts) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw std::invalid_argument("quadrature: bounds must be finite");
    }
    if (a == b) {
        return {Complex{0.0, 0.0}, 0.0, 0};
    }
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    Workspace ws{f, opts};

    // Coarse magnitude scan to seed the relative tolerance.
    const double m = 0.5 * (a + b);
    const Complex fa = ws.eval(a);
    const Complex fm = ws.eval(m);
    const Complex fb = ws.eval(b);
    const Complex whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double scale = std::max({std::abs(fa), std::abs(fm), std::abs(fb)}) * (b - a);
    const double tol = std::max(opts.abs_tol, opts.rel_tol * scale);

    const Complex value = ws.simpson_adaptive(a, b, fa, fm, fb, whole, tol, 0);
    return {sign * value, ws.error_estimate, ws.evaluations};
}

Result trapezoid_richardson(const Integrand& f, double a, double b, std::size_t intervals) {
    if (intervals < 2) {
        throw std::invalid_argument("trapezoid_richardson: need at least 2 intervals");
    }
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw std::invalid_argument("quadrature: bounds must be finite");
    }
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    // Build the fine grid (2n intervals); the coarse sum reuses every other node.
    const std::size_t n2 = 2 * intervals;
    const double h = (b - a) / static_cast<double>(n2);
    Complex fine = 0.5 * (f(a) + f(b));
    Complex coarse = fine;
    for (std::size_t i = 1; i < n2; ++i) {
        const Complex fi = f(a + h * static_cast<double>(i));
        fine += fi;
        if (i % 2 == 0) {
            coarse += fi;
        }
    }
    fine *= h;
    coarse *= 2.0 * h;
    const Complex richardson = (4.0 * fine - coarse) / 3.0;
    return {sign * richardson, std::abs(fine - coarse) / 3.0, n2 + 1};
}

}  // namespace mswave::quad
