#pragma once

#include <vector>

#include "mswave/types.hpp"

namespace mswave::slab {

// Finite slab on [0, L] with complex refraction index n; interior wave number
// kappa1 = i n k against exterior plane waves e^{+-ikx}.
struct SlabParams {
    Complex n;
    double k;
    double L;

    static SlabParams from_index(Complex n, double k, double L);
    // n(k) = 1 + (phi + i sigma)/k.
    static SlabParams from_phase(double phi, double sigma, double k, double L);

    double c() const { return k * L; }
};

struct SlabSolution {
    Complex r;
    Complex A;
    Complex B;
    Complex t;
    double continuity_residual;  // max violation of the four matching equations
};

// Match value and first derivative of e^{ikx} + r e^{-ikx} | A e^{kappa1 x} +
// B e^{-kappa1 x} | t e^{ikx} at x = 0 and x = L via a dense 4x4 solve.
SlabSolution slab_match(const SlabParams& p);

// Closed form t = 2n e^{-ikL} / (2n cos(knL) - i (1 + n^2) sin(knL)).
Complex transmission_amplitude(const SlabParams& p);

// T = 4|n|^2 / |2n cos(cn) - i(1+n^2) sin(cn)|^2 with c = kL.
double transmittance(const SlabParams& p);

struct ScanRequest {
    double re_lo;
    double re_hi;
    double step;
    double sigma;  // attenuation entering Im(n) = sigma / k
    double c;      // k L; with L = 1 this fixes k = c
};

struct ScanRow {
    double re_n;
    double im_n;
    double T;
    bool near_pole;  // |denominator| < 1e-12; T still finite unless exactly 0
};

// Transmittance versus Re(n) at fixed Im(n) = sigma / k, k = c under L = 1.
// Rows are ordered by re_n ascending.
std::vector<ScanRow> scan_transmittance(const ScanRequest& req);
std::vector<ScanRow> scan_transmittance_serial(const ScanRequest& req);

}  // namespace mswave::slab
