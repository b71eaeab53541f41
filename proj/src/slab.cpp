#include "mswave/slab.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

namespace mswave::slab {

namespace {

void validate(const SlabParams& p) {
    if (!(p.L > 0.0)) {
        throw std::invalid_argument("slab: length must be positive");
    }
    if (p.k == 0.0) {
        throw std::domain_error("slab: k must be nonzero");
    }
}

Complex denominator(const SlabParams& p) {
    const Complex cn = p.c() * p.n;
    return 2.0 * p.n * std::cos(cn) - I * (1.0 + p.n * p.n) * std::sin(cn);
}

}  // namespace

SlabParams SlabParams::from_index(Complex n, double k, double L) {
    SlabParams p{n, k, L};
    validate(p);
    return p;
}

SlabParams SlabParams::from_phase(double phi, double sigma, double k, double L) {
    if (k == 0.0) {
        throw std::domain_error("slab: k must be nonzero");
    }
    if (sigma < 0.0) {
        throw std::invalid_argument("slab: attenuation must be nonnegative");
    }
    return from_index(1.0 + Complex{phi, sigma} / k, k, L);
}

SlabSolution slab_match(const SlabParams& p) {
    validate(p);
    const Complex kappa1 = I * p.n * p.k;
    const Complex ik{0.0, p.k};
    const Complex epl = std::exp(kappa1 * p.L);
    const Complex eml = std::exp(-kappa1 * p.L);
    const Complex eikl = std::exp(ik * p.L);

    // Unknowns (r, A, B, t):
    //   value at 0:       1 + r = A + B
    //   derivative at 0:  ik(1 - r) = kappa1 (A - B)
    //   value at L:       A e^{k1 L} + B e^{-k1 L} = t e^{ikL}
    //   derivative at L:  kappa1 (A e^{k1 L} - B e^{-k1 L}) = ik t e^{ikL}
    Eigen::Matrix4cd m;
    Eigen::Vector4cd rhs;
    m << -1.0, 1.0, 1.0, 0.0,
         ik, kappa1, -kappa1, 0.0,
         0.0, epl, eml, -eikl,
         0.0, kappa1 * epl, -kappa1 * eml, -ik * eikl;
    rhs << 1.0, ik, 0.0, 0.0;

    Eigen::PartialPivLU<Eigen::Matrix4cd> lu(m);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-300)) {
        throw SolverError("slab: continuity system is singular (resonance)", rcond);
    }
    const Eigen::Vector4cd sol = lu.solve(rhs);
    SlabSolution out{sol(0), sol(1), sol(2), sol(3), 0.0};

    const double r1 = std::abs((1.0 + out.r) - (out.A + out.B));
    const double r2 = std::abs(ik * (1.0 - out.r) - kappa1 * (out.A - out.B));
    const double r3 = std::abs(out.A * epl + out.B * eml - out.t * eikl);
    const double r4 = std::abs(kappa1 * (out.A * epl - out.B * eml) - ik * out.t * eikl);
    out.continuity_residual = std::max({r1, r2, r3, r4});
    return out;
}

Complex transmission_amplitude(const SlabParams& p) {
    validate(p);
    const Complex den = denominator(p);
    if (std::abs(den) < 1e-300) {
        throw PoleError("slab: transmission amplitude pole");
    }
    return 2.0 * p.n * std::exp(-I * p.c()) / den;
}

double transmittance(const SlabParams& p) {
    validate(p);
    const Complex den = denominator(p);
    if (std::abs(den) < 1e-300) {
        throw PoleError("slab: transmittance pole");
    }
    return 4.0 * std::norm(p.n) / std::norm(den);
}

namespace {

std::vector<double> scan_grid(const ScanRequest& req) {
    if (!(req.step > 0.0)) {
        throw std::invalid_argument("slab: scan step must be positive");
    }
    if (req.sigma < 0.0) {
        throw std::invalid_argument("slab: attenuation sigma must be nonnegative");
    }
    if (req.re_hi < req.re_lo) {
        throw std::invalid_argument("slab: scan range is empty");
    }
    if (req.c == 0.0) {
        throw std::domain_error("slab: c = kL must be nonzero");
    }
    std::vector<double> grid;
    const auto count = static_cast<std::size_t>(
        std::floor((req.re_hi - req.re_lo) / req.step + 0.5));
    grid.reserve(count + 1);
    for (std::size_t i = 0; i <= count; ++i) {
        grid.push_back(req.re_lo + req.step * static_cast<double>(i));
    }
    return grid;
}

ScanRow scan_row(const ScanRequest& req, double re_n) {
    // L = 1 convention: k = c, so Im(n) = sigma / k = sigma / c.
    const double k = req.c;
    const double im_n = req.sigma / k;
    const SlabParams p{Complex{re_n, im_n}, k, 1.0};
    const Complex den = denominator(p);
    const double dabs = std::abs(den);
    ScanRow row{re_n, im_n, 0.0, dabs < 1e-12};
    row.T = dabs == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                        : 4.0 * std::norm(p.n) / (dabs * dabs);
    return row;
}

}  // namespace

std::vector<ScanRow> scan_transmittance(const ScanRequest& req) {
    const std::vector<double> grid = scan_grid(req);
    std::vector<ScanRow> rows(grid.size());
    const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        rows[static_cast<std::size_t>(i)] = scan_row(req, grid[static_cast<std::size_t>(i)]);
    }
    return rows;
}

std::vector<ScanRow> scan_transmittance_serial(const ScanRequest& req) {
    const std::vector<double> grid = scan_grid(req);
    std::vector<ScanRow> rows;
    rows.reserve(grid.size());
    for (double re_n : grid) {
        rows.push_back(scan_row(req, re_n));
    }
    return rows;
}

}  // namespace mswave::slab
