#include "mswave/greens.hpp"

#include <cmath>
#include <numbers>
#include <string_view>

namespace mswave::greens {

namespace {

constexpr double FOUR_PI = 4.0 * std::numbers::pi;

void require_nonzero_k(double k) {
    if (k == 0.0 || !std::isfinite(k)) {
        throw std::domain_error("greens: wave number k must be nonzero and finite");
    }
}

}  // namespace

bool is_anisotropic(Variant v) {
    return v == Variant::E1Anisotropic || v == Variant::E2Anisotropic;
}

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::Outgoing: return "outgoing";
        case Variant::Ingoing: return "ingoing";
        case Variant::CosStationary: return "cos";
        case Variant::SinStationary: return "sin";
        case Variant::E1Anisotropic: return "e1";
        case Variant::E2Anisotropic: return "e2";
    }
    return "?";
}

GreenKind make_kind(int dimension, Variant variant) {
    if (dimension != 1 && dimension != 3) {
        throw std::invalid_argument("greens: dimension must be 1 or 3");
    }
    if (std::string_view(variant_name(variant)) == "?") {
        throw std::invalid_argument("greens: unknown variant");
    }
    if (dimension == 3 && is_anisotropic(variant)) {
        throw std::invalid_argument("greens: anisotropic variants exist only in 1D");
    }
    return GreenKind{dimension, variant};
}

Complex green1d(const GreenKind& kind, double k, double x) {
    if (kind.dimension != 1) {
        throw std::invalid_argument("green1d: kind has dimension 3");
    }
    require_nonzero_k(k);
    const double ka = std::abs(k);
    const double ax = std::abs(x);
    switch (kind.variant) {
        case Variant::Outgoing:
            return std::exp(I * ka * ax) / (2.0 * ka);
        case Variant::Ingoing:
            return std::exp(-I * ka * ax) / (2.0 * ka);
        case Variant::CosStationary:
            return Complex{std::cos(-ka * ax) / ka, 0.0};
        case Variant::SinStationary:
            return -I * std::sin(-ka * ax) / ka;
        case Variant::E1Anisotropic:
            // x ≥ 0 owns the boundary point. Both branches reduce to
            // i sin(|k|x)/|k|, odd and smooth.
            if (x >= 0.0) {
                return -I * std::sin(-ka * ax) / ka;
            }
            return I * std::sin(-ka * ax) / ka;
        case Variant::E2Anisotropic:
            return green_e2(k, x);
    }
    throw std::invalid_argument("green1d: unknown variant");
}

Complex green3d(const GreenKind& kind, double k, const Vec3& r) {
    if (kind.dimension != 3) {
        throw std::invalid_argument("green3d: kind has dimension 1");
    }
    require_nonzero_k(k);
    const double rn = r.norm();
    if (rn == 0.0) {
        throw std::domain_error("green3d: evaluation at the source point (|r| = 0)");
    }
    const double ka = std::abs(k);
    switch (kind.variant) {
        case Variant::Outgoing:
            return std::exp(I * ka * rn) / (FOUR_PI * rn);
        case Variant::Ingoing:
            return std::exp(-I * ka * rn) / (FOUR_PI * rn);
        case Variant::CosStationary:
            return Complex{-std::cos(ka * rn) / (FOUR_PI * rn), 0.0};
        case Variant::SinStationary:
            return -I * std::sin(ka * rn) / (FOUR_PI * rn);
        default:
            throw std::invalid_argument("green3d: anisotropic variants exist only in 1D");
    }
}

Complex green(const GreenKind& kind, double k, const Vec3& separation) {
    return kind.dimension == 1 ? green1d(kind, k, separation.x) : green3d(kind, k, separation);
}

TailConstants continuity_constants(Branch branch, double k, TailChoice zeroed) {
    require_nonzero_k(k);
    const double sign = branch == Branch::Plus ? 1.0 : -1.0;
    const Complex boundary = sign / (2.0 * std::abs(k));  // ±G_out(0)
    if (zeroed == TailChoice::ZeroC1) {
        return {Complex{0.0, 0.0}, boundary};
    }
    return {boundary, Complex{0.0, 0.0}};
}

Complex anisotropic_phi(Branch branch, double k, double x, Complex c1, Complex c2) {
    require_nonzero_k(k);
    const double ka = std::abs(k);
    const double sign = branch == Branch::Plus ? 1.0 : -1.0;
    if (sign * x >= 0.0) {
        return sign * std::exp(I * ka * std::abs(x)) / (2.0 * ka);
    }
    return c1 * std::exp(x * ka) + c2 * std::exp(-x * ka);
}

Complex green_e2(double k, double x, TailChoice zeroed) {
    const TailConstants plus = continuity_constants(Branch::Plus, k, zeroed);
    // The minus-branch tail lives on x > 0 where e^{-x|k|} decays, so the
    // paper's c1 = 0 is already the decaying choice there.
    const TailConstants minus = continuity_constants(Branch::Minus, k, TailChoice::ZeroC1);
    return anisotropic_phi(Branch::Plus, k, x, plus.c1, plus.c2) +
           anisotropic_phi(Branch::Minus, k, x, minus.c1, minus.c2);
}

Complex green_e2_tail(double k, double x, TailChoice zeroed) {
    if (x >= 0.0) {
        const TailConstants minus = continuity_constants(Branch::Minus, k, TailChoice::ZeroC1);
        return anisotropic_phi(Branch::Minus, k, x, minus.c1, minus.c2);
    }
    const TailConstants plus = continuity_constants(Branch::Plus, k, zeroed);
    return anisotropic_phi(Branch::Plus, k, x, plus.c1, plus.c2);
}

namespace {

// Central second difference of a complex-valued function sampled at ±h.
Complex second_difference(const Complex& fm, const Complex& f0, const Complex& fp, double h) {
    return (fm - 2.0 * f0 + fp) / (h * h);
}

double residual_1d_isotropic(const GreenKind& kind, double k, double x, double h) {
    const Complex fm = green1d(kind, k, x - h);
    const Complex f0 = green1d(kind, k, x);
    const Complex fp = green1d(kind, k, x + h);
    return std::abs(second_difference(fm, f0, fp, h) + k * k * f0);
}

// One Example-2 species against its own operator C±(x)∂² + k².
double residual_e2_species(Branch branch, double k, double x, double h) {
    const TailConstants tc = continuity_constants(branch, k, TailChoice::ZeroC1);
    auto phi = [&](double xx) { return anisotropic_phi(branch, k, xx, tc.c1, tc.c2); };
    const double sign = branch == Branch::Plus ? 1.0 : -1.0;
    const double c = sign * x >= 0.0 ? 1.0 : -1.0;
    const Complex d2 = second_difference(phi(x - h), phi(x), phi(x + h), h);
    return std::abs(c * d2 + k * k * phi(x));
}

double residual_3d(const GreenKind& kind, double k, double r, double h) {
    auto u = [&](double s) { return s * green3d(kind, k, Vec3{s, 0.0, 0.0}); };
    const Complex d2 = second_difference(u(r - h), u(r), u(r + h), h);
    return std::abs(d2 / r + k * k * green3d(kind, k, Vec3{r, 0.0, 0.0}));
}

}  // namespace

double helmholtz_residual(const GreenKind& kind, double k, double point, double h) {
    require_nonzero_k(k);
    if (!(h > 0.0)) {
        throw std::invalid_argument("helmholtz_residual: step h must be positive");
    }
    if (std::abs(point) < 10.0 * h) {
        throw std::domain_error("helmholtz_residual: point must stay >= 10h away from the source");
    }
    if (kind.dimension == 3) {
        if (point <= 0.0) {
            throw std::invalid_argument("helmholtz_residual: 3D point is a radius, must be > 0");
        }
        return residual_3d(kind, k, point, h);
    }
    if (kind.variant == Variant::E2Anisotropic) {
        return std::max(residual_e2_species(Branch::Plus, k, point, h),
                        residual_e2_species(Branch::Minus, k, point, h));
    }
    return residual_1d_isotropic(kind, k, point, h);
}

}  // namespace mswave::greens
