#include "mswave/foldy.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mswave::foldy {

namespace {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

void validate_ensemble(const std::vector<Scatterer>& scatterers) {
    if (scatterers.empty()) {
        throw std::invalid_argument("foldy: need at least one scatterer");
    }
    const int dim = scatterers.front().green.dimension;
    for (const auto& s : scatterers) {
        if (s.green.dimension != dim) {
            throw std::invalid_argument("foldy: scatterers mix 1D and 3D kernels");
        }
    }
    for (std::size_t i = 0; i < scatterers.size(); ++i) {
        for (std::size_t j = i + 1; j < scatterers.size(); ++j) {
            if (scatterers[i].position == scatterers[j].position) {
                throw std::invalid_argument("foldy: scatterer positions must be pairwise distinct");
            }
        }
    }
}

// Interaction matrix M with M_ij = G_j(r_i - r_j) f_j(k) off the diagonal.
Matrix interaction_matrix(const std::vector<Scatterer>& scatterers, double k) {
    const auto n = static_cast<Eigen::Index>(scatterers.size());
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            const auto& si = scatterers[static_cast<std::size_t>(i)];
            const auto& sj = scatterers[static_cast<std::size_t>(j)];
            m(i, j) = greens::green(sj.green, k, si.position - sj.position) *
                      evaluate_amplitude(sj.amplitude, k);
        }
    }
    return m;
}

Vector incident_at_scatterers(const std::vector<Scatterer>& scatterers, const PlaneWave& incident) {
    Vector psi0(static_cast<Eigen::Index>(scatterers.size()));
    for (std::size_t i = 0; i < scatterers.size(); ++i) {
        psi0(static_cast<Eigen::Index>(i)) = incident(scatterers[i].position);
    }
    return psi0;
}

}  // namespace

Complex amplitude_expansion(double b, double k) {
    return Complex{-b, k * b * b};
}

Complex evaluate_amplitude(const AmplitudeModel& model, double k) {
    return std::visit(
        [k](const auto& m) -> Complex {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ConstantAmplitude>) {
                return m.f;
            } else if constexpr (std::is_same_v<T, NuclearAmplitude>) {
                return amplitude_expansion(m.b, k);
            } else {
                if (m.samples.size() < 2) {
                    throw std::invalid_argument("foldy: tabulated amplitude needs >= 2 samples");
                }
                if (k < m.samples.front().first || k > m.samples.back().first) {
                    throw std::domain_error("foldy: k outside tabulated amplitude range");
                }
                auto hi = std::lower_bound(
                    m.samples.begin(), m.samples.end(), k,
                    [](const auto& sample, double kk) { return sample.first < kk; });
                if (hi == m.samples.begin()) {
                    return hi->second;
                }
                auto lo = std::prev(hi);
                if (hi == m.samples.end()) {
                    return lo->second;
                }
                const double w = (k - lo->first) / (hi->first - lo->first);
                return lo->second + w * (hi->second - lo->second);
            }
        },
        model);
}

Complex PlaneWave::operator()(const Vec3& r) const {
    return amplitude * std::exp(I * dot(wave_vector, r));
}

ExcitingFields solve_exciting_fields(const std::vector<Scatterer>& scatterers,
                                     const PlaneWave& incident, double k) {
    validate_ensemble(scatterers);
    const auto n = static_cast<Eigen::Index>(scatterers.size());
    Matrix a = Matrix::Identity(n, n) - interaction_matrix(scatterers, k);
    Eigen::PartialPivLU<Matrix> lu(a);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-14)) {
        throw SolverError("foldy: exciting-field system is numerically singular", rcond);
    }
    Vector xi = lu.solve(incident_at_scatterers(scatterers, incident));
    return {xi.data(), xi.data() + xi.size()};
}

LiteralIterationResult solve_exciting_fields_literal(const std::vector<Scatterer>& scatterers,
                                                     const PlaneWave& incident, double k,
                                                     double tol, std::size_t max_iterations) {
    validate_ensemble(scatterers);
    if (scatterers.front().green.dimension != 1) {
        throw std::invalid_argument(
            "foldy: literal iteration needs 1D kernels (total field diverges at a 3D scatterer)");
    }
    const std::size_t n = scatterers.size();
    const Vector psi0 = incident_at_scatterers(scatterers, incident);
    ExcitingFields xi(psi0.data(), psi0.data() + psi0.size());
    ExcitingFields next(n);
    std::vector<Complex> f(n);
    for (std::size_t i = 0; i < n; ++i) {
        f[i] = evaluate_amplitude(scatterers[i].amplitude, k);
    }
    double delta = 0.0;
    for (std::size_t iter = 1; iter <= max_iterations; ++iter) {
        // Total field at every scatterer position from the current xi,
        // including each scatterer's own (finite, 1D) self term.
        std::vector<Complex> psi(n);
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc = psi0(static_cast<Eigen::Index>(j));
            for (std::size_t l = 0; l < n; ++l) {
                acc += greens::green(scatterers[l].green, k,
                                     scatterers[j].position - scatterers[l].position) *
                       f[l] * xi[l];
            }
            psi[j] = acc;
        }
        delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            Complex acc = psi0(static_cast<Eigen::Index>(i));
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) {
                    continue;
                }
                acc += greens::green(scatterers[j].green, k,
                                     scatterers[i].position - scatterers[j].position) *
                       f[j] * psi[j];
            }
            next[i] = acc;
            delta = std::max(delta, std::abs(next[i] - xi[i]));
        }
        xi.swap(next);
        if (delta <= tol) {
            return {std::move(xi), iter, delta, true};
        }
    }
    return {std::move(xi), max_iterations, delta, false};
}

ExcitingFields neumann_series(const std::vector<Scatterer>& scatterers, const PlaneWave& incident,
                              double k, std::size_t order) {
    validate_ensemble(scatterers);
    const Matrix m = interaction_matrix(scatterers, k);
    const Vector psi0 = incident_at_scatterers(scatterers, incident);
    Vector sum = psi0;
    Vector term = psi0;
    for (std::size_t n = 1; n <= order; ++n) {
        term = m * term;
        sum += term;
    }
    return {sum.data(), sum.data() + sum.size()};
}

double interaction_spectral_radius(const std::vector<Scatterer>& scatterers, double k,
                                   std::size_t iterations) {
    validate_ensemble(scatterers);
    const Matrix m = interaction_matrix(scatterers, k);
    if (m.rows() == 1) {
        return 0.0;
    }
    Vector v = Vector::Ones(m.rows());
    v.normalize();
    double radius = 0.0;
    for (std::size_t i = 0; i < iterations; ++i) {
        Vector w = m * v;
        const double norm = w.norm();
        if (norm == 0.0) {
            return 0.0;
        }
        radius = norm;
        v = w / norm;
    }
    return radius;
}

Complex total_field(const Vec3& r, const std::vector<Scatterer>& scatterers,
                    const ExcitingFields& xi, const PlaneWave& incident, double k) {
    if (xi.size() != scatterers.size()) {
        throw std::invalid_argument("foldy: xi length does not match scatterer count");
    }
    Complex acc = incident(r);
    for (std::size_t i = 0; i < scatterers.size(); ++i) {
        const Vec3 sep = r - scatterers[i].position;
        if (scatterers[i].green.dimension == 3 && sep.norm() == 0.0) {
            throw std::domain_error("foldy: total field evaluated at a 3D scatterer position");
        }
        acc += greens::green(scatterers[i].green, k, sep) *
               evaluate_amplitude(scatterers[i].amplitude, k) * xi[i];
    }
    return acc;
}

std::vector<Complex> total_field_grid(const std::vector<Vec3>& points,
                                      const std::vector<Scatterer>& scatterers,
                                      const ExcitingFields& xi, const PlaneWave& incident,
                                      double k) {
    std::vector<Complex> out(points.size());
    const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] =
            total_field(points[static_cast<std::size_t>(i)], scatterers, xi, incident, k);
    }
    return out;
}

std::vector<Complex> total_field_grid_serial(const std::vector<Vec3>& points,
                                             const std::vector<Scatterer>& scatterers,
                                             const ExcitingFields& xi, const PlaneWave& incident,
                                             double k) {
    std::vector<Complex> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        out.push_back(total_field(p, scatterers, xi, incident, k));
    }
    return out;
}

FieldEstimate coherent_field(const Vec3& r, const DensityField& density, const AmplitudeModel& f,
                             const std::function<Complex(const Vec3&)>& xi_field,
                             const greens::GreenKind& green, const PlaneWave& incident, double k,
                             const quad::Options& opts) {
    const Complex fk = evaluate_amplitude(f, k);
    if (const auto* pm = std::get_if<PointMassDensity>(&density)) {
        if (pm->weight < 0.0) {
            throw std::invalid_argument("foldy: density weight must be nonnegative");
        }
        const Complex value = incident(r) + greens::green(green, k, r - pm->position) * fk *
                                                pm->weight * xi_field(pm->position);
        return {value, 0.0};
    }
    const auto& cont = std::get<ContinuousDensity1D>(density);
    if (green.dimension != 1) {
        throw std::invalid_argument("foldy: continuous density quadrature is 1D");
    }
    if (!(cont.lo < cont.hi)) {
        throw std::invalid_argument("foldy: density support must have lo < hi");
    }
    auto integrand = [&](double xp) {
        const double rho = cont.rho(xp);
        if (rho < 0.0) {
            throw std::invalid_argument("foldy: density must be nonnegative");
        }
        const Vec3 src{xp, 0.0, 0.0};
        return greens::green(green, k, r - src) * fk * rho * xi_field(src);
    };
    const quad::Result q = quad::integrate(integrand, cont.lo, cont.hi, opts);
    return {incident(r) + q.value, q.error_estimate};
}

Complex optical_potential(double rho, Complex f, Complex c, bool inside, double m, double hbar) {
    if (!(m > 0.0)) {
        throw std::invalid_argument("foldy: mass must be positive");
    }
    if (!inside) {
        return Complex{0.0, 0.0};
    }
    return -2.0 * std::numbers::pi * hbar * hbar * rho * f * c / m;
}

IndexResult positive_index(double k, double rho, Complex f, Complex c) {
    if (k == 0.0) {
        throw std::domain_error("foldy: positive_index needs k != 0");
    }
    const Complex K = std::sqrt(Complex{k * k, 0.0} + 4.0 * std::numbers::pi * rho * f * c);
    return {K / k, K};
}

}  // namespace mswave::foldy
