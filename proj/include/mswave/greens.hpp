#ifndef MSWAVE_GREENS_HPP
#define MSWAVE_GREENS_HPP

#include "mswave/types.hpp"

namespace mswave::greens {

// Closed-form Green's functions of the Helmholtz operator with a point
// source, in 1D and 3D. All lengths are in units of a reference 1/k0, so
// only the wave number k and coordinates enter.
enum class Variant {
    Outgoing,       // 1D: e^{+i|k||x|}/(2|k|)        3D: e^{+i|k||r|}/(4π|r|)
    Ingoing,        // 1D: e^{-i|k||x|}/(2|k|)        3D: e^{-i|k||r|}/(4π|r|)
    CosStationary,  // 1D: cos(-|k||x|)/|k|           3D: -cos(|k||r|)/(4π|r|)
    SinStationary,  // 1D: -i sin(-|k||x|)/|k|        3D: -i sin(|k||r|)/(4π|r|)
    E1Anisotropic,  // 1D only, piecewise: ∓i sin(-|k||x|)/|k| on x ≥ 0 / x < 0
    E2Anisotropic,  // 1D only, two-species superposition φ₊ + φ₋ (see green_e2)
};

struct GreenKind {
    int dimension = 1;  // 1 or 3
    Variant variant = Variant::Outgoing;
};

// Validates the (dimension, variant) pair; the anisotropic variants exist
// only in 1D.
GreenKind make_kind(int dimension, Variant variant);

bool is_anisotropic(Variant v);
const char* variant_name(Variant v);

Complex green1d(const GreenKind& kind, double k, double x);
Complex green3d(const GreenKind& kind, double k, const Vec3& r);

// Dimension dispatch on the separation vector (1D reads .x).
Complex green(const GreenKind& kind, double k, const Vec3& separation);

// |∇²G + k²G| by central second differences at `point` (1D coordinate, or
// radius for 3D kinds, where the radial form (rG)''/r is used). The point
// must stay at least 10h away from the source so the stencil never crosses
// x = 0. Scales as O(h²) for every variant; the E2 superposition is checked
// component-wise against its own anisotropic operator C±(x)∂² + k².
double helmholtz_residual(const GreenKind& kind, double k, double point, double h = 1e-3);

// Anisotropic Helmholtz solutions of Example-2 type. On the branch
// half-line {±x ≥ 0} (the boundary point belongs to the branch) the
// solution is ±G^1D_out(x); on the other half-line it is the exponential
// tail c1 e^{x|k|} + c2 e^{-x|k|}.
enum class Branch { Plus, Minus };

// Which tail coefficient the continuity constructor zeroes. ZeroC1 is the
// paper's choice; on the Plus branch that tail grows toward -∞, so ZeroC2
// is the decaying alternative there.
enum class TailChoice { ZeroC1, ZeroC2 };

struct TailConstants {
    Complex c1;
    Complex c2;
};

// Determines (c1, c2) from value continuity at x = 0 with the named
// coefficient fixed to zero: c1 + c2 = ±G^1D_out(0) = ±1/(2|k|).
TailConstants continuity_constants(Branch branch, double k, TailChoice zeroed);

Complex anisotropic_phi(Branch branch, double k, double x, Complex c1, Complex c2);

// Superposed two-species Green's function φ₊(x) + φ₋(x) with
// continuity-determined constants.
Complex green_e2(double k, double x, TailChoice zeroed = TailChoice::ZeroC1);

// Exponential-tail part of green_e2 at x (the deviation from the ±G
// on-branch form). For |k| ≫ 1 this is the only difference between the
// superposition and a purely anisotropic response.
Complex green_e2_tail(double k, double x, TailChoice zeroed = TailChoice::ZeroC1);

}  // namespace mswave::greens

#endif
