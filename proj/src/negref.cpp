#include "mswave/negref.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace mswave::negref {

namespace {

// Left side of the refraction condition at one field point x.
Complex condition_lhs(const AlphaField& alpha, Complex f, const greens::GreenKind& green, double k,
                      double x, const quad::Options& opts) {
    if (const auto* pm = std::get_if<PointMassAlpha>(&alpha)) {
        return f * greens::green1d(green, k, x - pm->position) * pm->weight;
    }
    if (const auto* ga = std::get_if<GaussianAlpha>(&alpha)) {
        const double window = 8.0 * ga->sigma;
        auto integrand = [&](double xp) {
            return f * greens::green1d(green, k, x - xp) * gaussian_alpha(ga->sigma, ga->k, xp);
        };
        return quad::integrate(integrand, -window, window, opts).value;
    }
    throw std::invalid_argument("negref: 3D alpha in the 1D residual; use example3d_field");
}

}  // namespace

ResidualReport negref_residual_1d(const AlphaField& alpha, Complex f,
                                  const greens::GreenKind& green, Complex g, double k,
                                  const std::vector<double>& grid, std::optional<int> force_sign,
                                  const quad::Options& opts) {
    if (grid.empty()) {
        throw std::invalid_argument("negref: empty grid");
    }
    if (k == 0.0) {
        throw std::domain_error("negref: k must be nonzero");
    }
    if (force_sign && *force_sign != 1 && *force_sign != -1) {
        throw std::invalid_argument("negref: sign toggle must be +1 or -1");
    }
    double res_plus = 0.0;
    double res_minus = 0.0;
    for (double x : grid) {
        const Complex lhs = condition_lhs(alpha, f, green, k, x, opts);
        const Complex target = 2.0 * I * g * std::sin(k * x);
        res_plus = std::max(res_plus, std::abs(lhs - target));
        res_minus = std::max(res_minus, std::abs(lhs + target));
    }
    if (force_sign) {
        const double res = *force_sign == 1 ? res_plus : res_minus;
        return {res, *force_sign, grid.size()};
    }
    if (res_minus < res_plus) {
        return {res_minus, -1, grid.size()};
    }
    return {res_plus, 1, grid.size()};
}

std::vector<Complex> example1_field(double k, Complex g, const std::vector<double>& grid) {
    if (k == 0.0) {
        throw std::domain_error("negref: k must be nonzero");
    }
    const auto kind = greens::make_kind(1, greens::Variant::E1Anisotropic);
    const Complex f = -2.0 * std::abs(k) * g;
    std::vector<Complex> out;
    out.reserve(grid.size());
    for (double x : grid) {
        out.push_back(f * greens::green1d(kind, k, x));
    }
    return out;
}

Complex gaussian_alpha(double sigma, double k, double x) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("negref: sigma must be positive");
    }
    const double envelope =
        std::exp(-x * x / (sigma * sigma)) / (std::sqrt(4.0 * std::numbers::pi) * sigma);
    return envelope * std::exp(I * k * x);
}

ExtendedDomainResult extended_domain_integral(double k, double sigma, double x_prime, Complex f,
                                              const quad::Options& opts) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("negref: sigma must be positive");
    }
    if (k == 0.0) {
        throw std::domain_error("negref: k must be nonzero");
    }
    const double ka = std::abs(k);
    // Integrand as printed: sin(-|k|x) against the Gaussian kernel centered
    // at x', integrated over x. The Gaussian tail past 8 sigma is < 1e-28.
    auto integrand = [&](double x) {
        return std::sin(-ka * x) * gaussian_alpha(sigma, k, x - x_prime);
    };
    const quad::Result q =
        quad::integrate(integrand, x_prime - 8.0 * sigma, x_prime + 8.0 * sigma, opts);
    const Complex numeric = f / ka * q.value;

    const Complex arg{k * x_prime, 0.5 * k * k * sigma * sigma};
    const Complex closed = f / ka * (I * std::sqrt(std::numbers::pi) / 4.0) *
                           std::exp(-0.5 * k * k * sigma * sigma) * std::sin(arg);
    return {numeric, closed, numeric / closed, q.error_estimate};
}

Example3DResult example3d_field(double k_x, Complex f, const Vec3& r) {
    if (k_x == 0.0) {
        throw std::domain_error("negref: k_x must be nonzero");
    }
    const double ka = std::abs(k_x);
    const Complex exact = -I * f * std::sin(ka * r.norm());
    const Complex paraxial = -I * f * std::sin(ka * r.x);
    const Complex g = 0.5 * f;
    const Complex target = -2.0 * I * g * std::sin(k_x * r.x);
    const double transverse = r.y * r.y + r.z * r.z;
    const bool valid = r.x != 0.0 && std::abs(transverse / (2.0 * r.x)) <= 1.0;
    const double bound =
        r.x == 0.0 ? std::numeric_limits<double>::infinity()
                   : std::abs(f) * ka * transverse / (2.0 * std::abs(r.x));
    return {exact, paraxial, std::abs(exact - target), bound, valid};
}

}  // namespace mswave::negref
