#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mswave/types.hpp"

namespace mswave::chain {

// Reflection/transmission response of one scatterer, from the left (L) and
// from the right (R).
struct ScattererRT {
    Complex rL{0.0, 0.0};
    Complex rR{0.0, 0.0};
    Complex tL{1.0, 0.0};
    Complex tR{1.0, 0.0};
};

struct UnitarityDeficit {
    double left;   // |rL|^2 + |tL|^2 - 1
    double right;  // |rR|^2 + |tR|^2 - 1
};

UnitarityDeficit unitarity_deficit(const ScattererRT& s);

struct ChainSpec {
    std::vector<ScattererRT> scatterers;  // ordered left to right
    std::vector<double> positions;        // strictly increasing
    double k{1.0};
};

void validate_chain(const ChainSpec& chain, std::size_t min_scatterers);

struct WaveCoefficients {
    Complex forward;   // coefficient of e^{ikx}
    Complex backward;  // coefficient of e^{-ikx}

    Complex at(double k, double x) const;
};

// Field between the first two scatterers, truncated at second-order
// reflections. The coefficients do not depend on the positions.
WaveCoefficients phi_between_coefficients(const ChainSpec& chain);
Complex phi_between(const ChainSpec& chain, double x);

// Incident-side field e^{ikx} + (rLA + tLA rLB tRA) e^{-ikx} for x left of the
// first scatterer.
WaveCoefficients effective_incident_coefficients(const ChainSpec& chain);
Complex effective_incident(const ChainSpec& chain, double x);

struct ConditionResiduals {
    double residual1;  // |(rLA + tLA rLB tRA) - tLA (1 + rRA rLB)|
    double residual2;  // |1 - tLA (rLB + tRB tLB rLC)|
};

ConditionResiduals negref_conditions(const ChainSpec& chain);

// Partially fixed coefficient set for the design search; unset entries are
// free parameters.
struct PartialRT {
    std::optional<Complex> rL;
    std::optional<Complex> rR;
    std::optional<Complex> tL;
    std::optional<Complex> tR;
};

struct DesignOptions {
    double tol = 1e-10;
    std::size_t starts = 64;
    std::uint64_t seed = 0;
    double bound_radius = 1.0;      // free parameters start inside this disk
    bool strict_unitarity = false;  // post-check fully specified pairs
    double unitarity_weight = 1.0;  // soft-penalty weight during descent
    std::size_t max_iterations = 200;
    bool parallel = true;
};

struct DesignResult {
    bool converged;
    std::vector<ScattererRT> coefficients;
    double residual1;
    double residual2;
    double worst_unitarity;  // largest |deficit| over fully fixed pairs
    std::size_t best_start;
    std::size_t free_parameters;
};

// Damped least-squares search for coefficients driving both condition
// residuals to zero, from seeded random starts. Never throws on
// non-convergence; the report carries the best residuals found.
DesignResult design_search(const std::vector<PartialRT>& fixed, const DesignOptions& opts = {});

// SI helper: k = m v / hbar.
double de_broglie_k(double mass_kg, double velocity_m_per_s);

}  // namespace mswave::chain
