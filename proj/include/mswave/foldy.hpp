#pragma once

#include <functional>
#include <utility>
#include <variant>
#include <vector>

#include "mswave/greens.hpp"
#include "mswave/quadrature.hpp"
#include "mswave/types.hpp"

namespace mswave::foldy {

// f independent of k.
struct ConstantAmplitude {
    Complex f;
};

// Low-energy expansion f(k) = -b + i k b^2, b a real scattering length.
struct NuclearAmplitude {
    double b;
};

// Piecewise-linear f(k) over sorted sample points; evaluation outside the
// sampled range is a domain error.
struct TabulatedAmplitude {
    std::vector<std::pair<double, Complex>> samples;
};

using AmplitudeModel = std::variant<ConstantAmplitude, NuclearAmplitude, TabulatedAmplitude>;

Complex amplitude_expansion(double b, double k);
Complex evaluate_amplitude(const AmplitudeModel& model, double k);

struct Scatterer {
    Vec3 position;
    AmplitudeModel amplitude;
    greens::GreenKind green;
};

struct PlaneWave {
    Vec3 wave_vector;
    Complex amplitude{1.0, 0.0};

    Complex operator()(const Vec3& r) const;
};

using ExcitingFields = std::vector<Complex>;

// Closed Foldy-Lax system: xi_i - sum_{j != i} G_j(r_i - r_j) f_j xi_j = psi0(r_i),
// solved by dense partial-pivot factorization. Throws SolverError with the
// reciprocal-condition estimate when the system is numerically singular.
ExcitingFields solve_exciting_fields(const std::vector<Scatterer>& scatterers,
                                     const PlaneWave& incident, double k);

struct LiteralIterationResult {
    ExcitingFields xi;
    std::size_t iterations;
    double last_delta;
    bool converged;
};

// Fixed-point iteration on the uncollapsed form, where the interaction term
// carries the total field at the scatterer positions. 1D kernels only: the
// total field at a scatterer includes G(0), which diverges in 3D.
LiteralIterationResult solve_exciting_fields_literal(const std::vector<Scatterer>& scatterers,
                                                     const PlaneWave& incident, double k,
                                                     double tol = 1e-12,
                                                     std::size_t max_iterations = 10'000);

// Truncated Born/Neumann series sum_{n<=order} M^n psi0 for checking the
// direct solve, plus a power-iteration estimate of the spectral radius of M.
ExcitingFields neumann_series(const std::vector<Scatterer>& scatterers,
                              const PlaneWave& incident, double k, std::size_t order);
double interaction_spectral_radius(const std::vector<Scatterer>& scatterers, double k,
                                   std::size_t iterations = 200);

Complex total_field(const Vec3& r, const std::vector<Scatterer>& scatterers,
                    const ExcitingFields& xi, const PlaneWave& incident, double k);

std::vector<Complex> total_field_grid(const std::vector<Vec3>& points,
                                      const std::vector<Scatterer>& scatterers,
                                      const ExcitingFields& xi, const PlaneWave& incident,
                                      double k);
std::vector<Complex> total_field_grid_serial(const std::vector<Vec3>& points,
                                             const std::vector<Scatterer>& scatterers,
                                             const ExcitingFields& xi, const PlaneWave& incident,
                                             double k);

// Number density of scatterers. Point masses stay symbolic so delta integrals
// sift exactly instead of being sampled.
struct PointMassDensity {
    Vec3 position;
    double weight;
};

struct ContinuousDensity1D {
    std::function<double(double)> rho;
    double lo;
    double hi;
};

using DensityField = std::variant<PointMassDensity, ContinuousDensity1D>;

struct FieldEstimate {
    Complex value;
    double error_estimate;
};

// Averaged (coherent) field psi_c(r) = psi0(r) + integral over the density
// support of G(r - r') f rho(r') xi(r').
FieldEstimate coherent_field(const Vec3& r, const DensityField& density,
                             const AmplitudeModel& f,
                             const std::function<Complex(const Vec3&)>& xi_field,
                             const greens::GreenKind& green, const PlaneWave& incident, double k,
                             const quad::Options& opts = {});

// Effective one-body potential of the averaged medium: -2 pi hbar^2 rho f c / m
// inside the support, 0 outside. c is the proportionality xi = c psi.
Complex optical_potential(double rho, Complex f, Complex c, bool inside, double m = 1.0,
                          double hbar = 1.0);

struct IndexResult {
    Complex n;
    Complex K;
};

// K'^2 = k^2 + 4 pi rho f c, n = K'/k with the principal square root.
IndexResult positive_index(double k, double rho, Complex f, Complex c);

}  // namespace mswave::foldy
