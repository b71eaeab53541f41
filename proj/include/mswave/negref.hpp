#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "mswave/greens.hpp"
#include "mswave/quadrature.hpp"
#include "mswave/types.hpp"

namespace mswave::negref {

// Source strength alpha = rho * xi entering the refraction condition.
struct PointMassAlpha {
    double position{0.0};
    Complex weight{1.0, 0.0};
};

// Normalized envelope exp(-x^2/sigma^2)/(sqrt(4 pi) sigma) carrying the plane
// phase exp(ikx) of the effective field.
struct GaussianAlpha {
    double sigma;
    double k;
};

// Delta at the origin weighted by 4 pi |r|, so the sifted 3D kernel loses its
// 1/(4 pi |r|) denominator.
struct RadialPointMass3D {};

using AlphaField = std::variant<PointMassAlpha, GaussianAlpha, RadialPointMass3D>;

struct ResidualReport {
    double max_residual;
    int matched_sign;  // the s in s * 2ig sin(kx) that the field matched
    std::size_t grid_size;
};

// Max-over-grid residual of the 1D refraction condition
// integral f G(x - x') alpha(x') dx' = s * 2ig sin(kx), s in {+1, -1}.
// Both signs are tried unless force_sign pins one; the smaller residual wins.
ResidualReport negref_residual_1d(const AlphaField& alpha, Complex f,
                                  const greens::GreenKind& green, Complex g, double k,
                                  const std::vector<double>& grid,
                                  std::optional<int> force_sign = std::nullopt,
                                  const quad::Options& opts = {});

// The delta-at-origin construction with the anisotropic kernel and
// f = -2|k| g; identically -2ig sin(kx).
std::vector<Complex> example1_field(double k, Complex g, const std::vector<double>& grid);

Complex gaussian_alpha(double sigma, double k, double x);

struct ExtendedDomainResult {
    Complex numeric;       // adaptive quadrature of the printed integral
    Complex closed_form;   // the printed right-hand side
    Complex ratio;         // numeric / closed_form
    double quad_error;
};

// Gaussian-smeared refraction integral against its printed closed form. The
// two disagree by a constant prefactor, so the ratio is the stable output.
ExtendedDomainResult extended_domain_integral(double k, double sigma, double x_prime, Complex f,
                                              const quad::Options& opts = {});

struct Example3DResult {
    Complex exact;       // -i f sin(|k_x| |r|)
    Complex paraxial;    // -i f sin(|k_x| x)
    double residual;     // |exact - (-2ig sin(k_x x))| with g = f/2
    double mean_value_bound;  // |f| |k_x| (y^2 + z^2) / (2|x|)
    bool paraxial_valid;      // |(y^2 + z^2)/(2x)| <= 1
};

Example3DResult example3d_field(double k_x, Complex f, const Vec3& r);

}  // namespace mswave::negref
