#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "mswave/quadrature.hpp"
#include "mswave/types.hpp"

namespace mswave::packet {

// Spectral weight g(k) over scalar k (packets are synthesized along one axis).
struct PointSpectrum {
    double k0;
    Complex weight{1.0, 0.0};
};

struct GaussianSpectrum {
    double center;
    double width;  // > 0
    Complex amplitude{1.0, 0.0};
};

// Sorted (k, g) samples with linear interpolation; zero outside the range.
struct SampledSpectrum {
    std::vector<std::pair<double, Complex>> samples;
};

using SpectrumWeight = std::variant<PointSpectrum, GaussianSpectrum, SampledSpectrum>;

Complex evaluate_spectrum(const SpectrumWeight& g, double k);

// Interval where |g| is above 1e-12 of its peak; quadrature window.
std::pair<double, double> spectral_window(const SpectrumWeight& g);

struct PacketSpec {
    SpectrumWeight g;
    double mass = 1.0;
    double hbar = 1.0;

    // Dispersion omega(k) = hbar k^2 / (2 m); k^2/2 in nondimensional units.
    double omega(double k) const { return hbar * k * k / (2.0 * mass); }
};

struct FieldEstimate {
    Complex value;
    double error_estimate;
};

// psi(r, t) = integral g(k) e^{i(-k r - omega(k) t)} dk. Point spectra sift
// exactly; continuous spectra go through adaptive quadrature.
FieldEstimate synthesize(const PacketSpec& spec, double r, double t,
                         const quad::Options& opts = {});

struct InOutPair {
    FieldEstimate psi_in;   // integral g(k) e^{-ikr} dk
    FieldEstimate psi_out;  // integral g(k) e^{+ikr} dk
};

InOutPair inout_pair(const PacketSpec& spec, double r, const quad::Options& opts = {});

std::vector<Complex> synthesize_grid(const PacketSpec& spec, const std::vector<double>& points,
                                     double t, const quad::Options& opts = {});
std::vector<Complex> synthesize_grid_serial(const PacketSpec& spec,
                                            const std::vector<double>& points, double t,
                                            const quad::Options& opts = {});

}  // namespace mswave::packet
