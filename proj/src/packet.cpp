#include "mswave/packet.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace mswave::packet {

namespace {

// |g| threshold relative to the peak that bounds the quadrature window.
constexpr double WINDOW_CUT = 1e-12;

double gaussian_cut_halfwidth(double width) {
    // exp(-x^2 / (2 w^2)) = 1e-12  =>  x = w sqrt(-2 ln 1e-12)
    return width * std::sqrt(-2.0 * std::log(WINDOW_CUT));
}

}  // namespace

Complex evaluate_spectrum(const SpectrumWeight& g, double k) {
    return std::visit(
        [k](const auto& s) -> Complex {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, PointSpectrum>) {
                throw std::invalid_argument(
                    "packet: point spectra are symbolic; evaluate via synthesize");
            } else if constexpr (std::is_same_v<T, GaussianSpectrum>) {
                if (!(s.width > 0.0)) {
                    throw std::invalid_argument("packet: gaussian spectrum width must be > 0");
                }
                const double d = k - s.center;
                return s.amplitude * std::exp(-d * d / (2.0 * s.width * s.width));
            } else {
                if (s.samples.size() < 2) {
                    throw std::invalid_argument("packet: sampled spectrum needs >= 2 samples");
                }
                if (k <= s.samples.front().first || k >= s.samples.back().first) {
                    return Complex{0.0, 0.0};
                }
                auto hi = std::lower_bound(
                    s.samples.begin(), s.samples.end(), k,
                    [](const auto& sample, double kk) { return sample.first < kk; });
                auto lo = std::prev(hi);
                const double w = (k - lo->first) / (hi->first - lo->first);
                return lo->second + w * (hi->second - lo->second);
            }
        },
        g);
}

std::pair<double, double> spectral_window(const SpectrumWeight& g) {
    if (const auto* p = std::get_if<PointSpectrum>(&g)) {
        return {p->k0, p->k0};
    }
    if (const auto* gs = std::get_if<GaussianSpectrum>(&g)) {
        if (!(gs->width > 0.0)) {
            throw std::invalid_argument("packet: Gaussian width must be positive");
        }
        const double half = gaussian_cut_halfwidth(gs->width);
        return {gs->center - half, gs->center + half};
    }
    const auto& s = std::get<SampledSpectrum>(g);
    if (s.samples.size() < 2) {
        throw std::invalid_argument("packet: sampled spectrum needs >= 2 samples");
    }
    return {s.samples.front().first, s.samples.back().first};
}

namespace {

FieldEstimate transform(const SpectrumWeight& g, const std::function<Complex(double)>& phase,
                        const quad::Options& opts) {
    if (const auto* p = std::get_if<PointSpectrum>(&g)) {
        return {p->weight * phase(p->k0), 0.0};
    }
    const auto [lo, hi] = spectral_window(g);
    auto integrand = [&](double k) { return evaluate_spectrum(g, k) * phase(k); };
    const quad::Result q = quad::integrate(integrand, lo, hi, opts);
    return {q.value, q.error_estimate};
}

}  // namespace

FieldEstimate synthesize(const PacketSpec& spec, double r, double t, const quad::Options& opts) {
    auto phase = [&](double k) { return std::exp(I * (-k * r - spec.omega(k) * t)); };
    return transform(spec.g, phase, opts);
}

InOutPair inout_pair(const PacketSpec& spec, double r, const quad::Options& opts) {
    auto phase_in = [&](double k) { return std::exp(-I * k * r); };
    auto phase_out = [&](double k) { return std::exp(I * k * r); };
    return {transform(spec.g, phase_in, opts), transform(spec.g, phase_out, opts)};
}

std::vector<Complex> synthesize_grid(const PacketSpec& spec, const std::vector<double>& points,
                                     double t, const quad::Options& opts) {
    std::vector<Complex> out(points.size());
    const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] =
            synthesize(spec, points[static_cast<std::size_t>(i)], t, opts).value;
    }
    return out;
}

std::vector<Complex> synthesize_grid_serial(const PacketSpec& spec,
                                            const std::vector<double>& points, double t,
                                            const quad::Options& opts) {
    std::vector<Complex> out;
    out.reserve(points.size());
    for (double r : points) {
        out.push_back(synthesize(spec, r, t, opts).value);
    }
    return out;
}

}  // namespace mswave::packet
