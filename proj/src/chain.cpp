#include "mswave/chain.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace mswave::chain {

UnitarityDeficit unitarity_deficit(const ScattererRT& s) {
    return {std::norm(s.rL) + std::norm(s.tL) - 1.0, std::norm(s.rR) + std::norm(s.tR) - 1.0};
}

void validate_chain(const ChainSpec& chain, std::size_t min_scatterers) {
    if (chain.scatterers.size() < min_scatterers) {
        throw std::invalid_argument("chain: too few scatterers for this operation");
    }
    if (chain.positions.size() != chain.scatterers.size()) {
        throw std::invalid_argument("chain: positions/scatterers length mismatch");
    }
    for (std::size_t i = 1; i < chain.positions.size(); ++i) {
        if (!(chain.positions[i - 1] < chain.positions[i])) {
            throw std::invalid_argument("chain: positions must be strictly increasing");
        }
    }
    if (chain.k == 0.0) {
        throw std::domain_error("chain: k must be nonzero");
    }
}

Complex WaveCoefficients::at(double k, double x) const {
    return forward * std::exp(I * k * x) + backward * std::exp(-I * k * x);
}

namespace {

// Second-order coefficient algebra for the first three scatterers A, B, C.
struct ConditionTerms {
    Complex forward;    // tLA (1 + rLB rRA)
    Complex backward;   // tLA rLB + tLA tLB rLC tRB
    Complex reflected;  // rLA + tLA rLB tRA
};

ConditionTerms condition_terms(const ScattererRT& A, const ScattererRT& B, const ScattererRT& C) {
    return {A.tL * (1.0 + B.rL * A.rR), A.tL * B.rL + A.tL * B.tL * C.rL * B.tR,
            A.rL + A.tL * B.rL * A.tR};
}

ConditionResiduals condition_residuals(const std::vector<ScattererRT>& rts) {
    const ConditionTerms t = condition_terms(rts[0], rts[1], rts[2]);
    return {std::abs(t.reflected - t.forward), std::abs(1.0 - t.backward)};
}

}  // namespace

WaveCoefficients phi_between_coefficients(const ChainSpec& chain) {
    validate_chain(chain, 3);
    const ConditionTerms t =
        condition_terms(chain.scatterers[0], chain.scatterers[1], chain.scatterers[2]);
    return {t.forward, t.backward};
}

Complex phi_between(const ChainSpec& chain, double x) {
    const WaveCoefficients c = phi_between_coefficients(chain);
    if (!(chain.positions[0] < x && x < chain.positions[1])) {
        throw std::domain_error("chain: phi_between is defined strictly between A and B");
    }
    return c.at(chain.k, x);
}

WaveCoefficients effective_incident_coefficients(const ChainSpec& chain) {
    validate_chain(chain, 2);
    const auto& A = chain.scatterers[0];
    const auto& B = chain.scatterers[1];
    return {Complex{1.0, 0.0}, A.rL + A.tL * B.rL * A.tR};
}

Complex effective_incident(const ChainSpec& chain, double x) {
    const WaveCoefficients c = effective_incident_coefficients(chain);
    if (!(x < chain.positions[0])) {
        throw std::domain_error("chain: effective incident wave lives left of the first scatterer");
    }
    return c.at(chain.k, x);
}

ConditionResiduals negref_conditions(const ChainSpec& chain) {
    validate_chain(chain, 3);
    return condition_residuals(chain.scatterers);
}

double de_broglie_k(double mass_kg, double velocity_m_per_s) {
    if (!(mass_kg > 0.0)) {
        throw std::invalid_argument("chain: mass must be positive");
    }
    return mass_kg * velocity_m_per_s / HBAR_SI;
}

namespace {

// Free-parameter bookkeeping: each unset coefficient contributes one complex
// slot, packed as (re, im) into the real parameter vector.
struct ParamLayout {
    std::vector<std::array<int, 4>> slot;  // per scatterer, {rL,rR,tL,tR}; -1 = fixed
    std::vector<std::array<bool, 2>> movable_pair;  // {left, right} has a free member
    std::size_t complex_count = 0;
};

ParamLayout make_layout(const std::vector<PartialRT>& fixed) {
    ParamLayout layout;
    layout.slot.resize(fixed.size());
    layout.movable_pair.resize(fixed.size());
    int next = 0;
    for (std::size_t i = 0; i < fixed.size(); ++i) {
        const std::array<const std::optional<Complex>*, 4> members{&fixed[i].rL, &fixed[i].rR,
                                                                   &fixed[i].tL, &fixed[i].tR};
        for (std::size_t m = 0; m < 4; ++m) {
            layout.slot[i][m] = members[m]->has_value() ? -1 : next++;
        }
        layout.movable_pair[i] = {!(fixed[i].rL && fixed[i].tL), !(fixed[i].rR && fixed[i].tR)};
    }
    layout.complex_count = static_cast<std::size_t>(next);
    return layout;
}

std::vector<ScattererRT> unpack(const std::vector<PartialRT>& fixed, const ParamLayout& layout,
                                const Eigen::VectorXd& p) {
    std::vector<ScattererRT> out(fixed.size());
    for (std::size_t i = 0; i < fixed.size(); ++i) {
        const std::array<const std::optional<Complex>*, 4> members{&fixed[i].rL, &fixed[i].rR,
                                                                   &fixed[i].tL, &fixed[i].tR};
        std::array<Complex, 4> values;
        for (std::size_t m = 0; m < 4; ++m) {
            const int s = layout.slot[i][m];
            values[m] = s < 0 ? **members[m] : Complex{p(2 * s), p(2 * s + 1)};
        }
        out[i] = {values[0], values[1], values[2], values[3]};
    }
    return out;
}

// Stacked real residual: both condition components plus weighted unitarity
// deficits of every pair.
Eigen::VectorXd residual_vector(const std::vector<ScattererRT>& rts, double weight) {
    const ConditionTerms t = condition_terms(rts[0], rts[1], rts[2]);
    const Complex c1 = t.reflected - t.forward;
    const Complex c2 = 1.0 - t.backward;
    Eigen::VectorXd f(4 + 2 * static_cast<Eigen::Index>(rts.size()));
    f(0) = c1.real();
    f(1) = c1.imag();
    f(2) = c2.real();
    f(3) = c2.imag();
    Eigen::Index row = 4;
    for (const auto& s : rts) {
        const UnitarityDeficit d = unitarity_deficit(s);
        f(row++) = weight * d.left;
        f(row++) = weight * d.right;
    }
    return f;
}

double worst_movable_deficit(const std::vector<ScattererRT>& rts, const ParamLayout& layout) {
    double worst = 0.0;
    for (std::size_t i = 0; i < rts.size(); ++i) {
        const UnitarityDeficit d = unitarity_deficit(rts[i]);
        if (layout.movable_pair[i][0]) {
            worst = std::max(worst, std::abs(d.left));
        }
        if (layout.movable_pair[i][1]) {
            worst = std::max(worst, std::abs(d.right));
        }
    }
    return worst;
}

struct StartOutcome {
    Eigen::VectorXd p;
    double residual1 = std::numeric_limits<double>::infinity();
    double residual2 = std::numeric_limits<double>::infinity();
};

// Levenberg-Marquardt refinement of one start. The search never throws on
// non-convergence; the caller keeps the best point reached.
StartOutcome refine_start(const std::vector<PartialRT>& fixed, const ParamLayout& layout,
                          Eigen::VectorXd p, const DesignOptions& opts) {
    auto eval = [&](const Eigen::VectorXd& q) {
        return residual_vector(unpack(fixed, layout, q), opts.unitarity_weight);
    };

    const Eigen::Index np = p.size();
    Eigen::VectorXd f = eval(p);
    double cost = f.squaredNorm();
    double lambda = 1e-3;
    const double jac_step = 1e-6;
    const double deficit_goal = std::max(opts.tol, 1e-12);

    for (std::size_t iter = 0; iter < opts.max_iterations && np > 0; ++iter) {
        const std::vector<ScattererRT> rts = unpack(fixed, layout, p);
        const ConditionResiduals r = condition_residuals(rts);
        if (r.residual1 <= opts.tol && r.residual2 <= opts.tol &&
            (opts.unitarity_weight == 0.0 ||
             worst_movable_deficit(rts, layout) <= deficit_goal)) {
            break;
        }
        // Central-difference Jacobian.
        Eigen::MatrixXd jac(f.size(), np);
        for (Eigen::Index j = 0; j < np; ++j) {
            Eigen::VectorXd q = p;
            q(j) = p(j) + jac_step;
            const Eigen::VectorXd fp = eval(q);
            q(j) = p(j) - jac_step;
            const Eigen::VectorXd fm = eval(q);
            jac.col(j) = (fp - fm) / (2.0 * jac_step);
        }
        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        const Eigen::VectorXd jtf = jac.transpose() * f;
        bool accepted = false;
        for (int tries = 0; tries < 10; ++tries) {
            Eigen::MatrixXd damped = jtj;
            damped.diagonal().array() += lambda;
            const Eigen::VectorXd step = damped.ldlt().solve(-jtf);
            const Eigen::VectorXd q = p + step;
            const Eigen::VectorXd fq = eval(q);
            const double cq = fq.squaredNorm();
            if (cq < cost) {
                p = q;
                f = fq;
                cost = cq;
                lambda = std::max(lambda / 3.0, 1e-12);
                accepted = true;
                break;
            }
            lambda *= 4.0;
        }
        if (!accepted) {
            break;  // stalled; report the best point reached
        }
    }
    const ConditionResiduals r = condition_residuals(unpack(fixed, layout, p));
    return {std::move(p), r.residual1, r.residual2};
}

}  // namespace

DesignResult design_search(const std::vector<PartialRT>& fixed, const DesignOptions& opts) {
    if (fixed.size() < 3) {
        throw std::invalid_argument("chain: design search needs at least three scatterers");
    }
    if (!(opts.bound_radius > 0.0)) {
        throw std::invalid_argument("chain: start bound radius must be positive");
    }
    if (opts.starts == 0) {
        throw std::invalid_argument("chain: need at least one start");
    }
    const ParamLayout layout = make_layout(fixed);
    const auto np = 2 * static_cast<Eigen::Index>(layout.complex_count);

    // Starts are drawn up front from one seeded stream so the start set does
    // not depend on how the refinement is scheduled.
    const std::size_t n_starts = layout.complex_count == 0 ? 1 : opts.starts;
    std::vector<Eigen::VectorXd> starts(n_starts, Eigen::VectorXd::Zero(np));
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto& s : starts) {
        for (std::size_t c = 0; c < layout.complex_count; ++c) {
            // Uniform over the disk of radius bound_radius.
            const double radius = opts.bound_radius * std::sqrt(unit(rng));
            const double angle = 2.0 * std::numbers::pi * unit(rng);
            s(2 * static_cast<Eigen::Index>(c)) = radius * std::cos(angle);
            s(2 * static_cast<Eigen::Index>(c) + 1) = radius * std::sin(angle);
        }
    }

    std::vector<StartOutcome> outcomes(n_starts);
    const auto nn = static_cast<std::ptrdiff_t>(n_starts);
    if (opts.parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < nn; ++i) {
            outcomes[static_cast<std::size_t>(i)] =
                refine_start(fixed, layout, starts[static_cast<std::size_t>(i)], opts);
        }
    } else {
        for (std::ptrdiff_t i = 0; i < nn; ++i) {
            outcomes[static_cast<std::size_t>(i)] =
                refine_start(fixed, layout, starts[static_cast<std::size_t>(i)], opts);
        }
    }

    // Lowest worst-case residual wins; ties go to the earlier start.
    std::size_t best = 0;
    double best_key = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_starts; ++i) {
        const double key = std::max(outcomes[i].residual1, outcomes[i].residual2);
        if (key < best_key) {
            best_key = key;
            best = i;
        }
    }

    const std::vector<ScattererRT> coeffs = unpack(fixed, layout, outcomes[best].p);
    double worst_fixed_deficit = 0.0;
    for (std::size_t i = 0; i < fixed.size(); ++i) {
        const UnitarityDeficit d = unitarity_deficit(coeffs[i]);
        if (!layout.movable_pair[i][0]) {
            worst_fixed_deficit = std::max(worst_fixed_deficit, std::abs(d.left));
        }
        if (!layout.movable_pair[i][1]) {
            worst_fixed_deficit = std::max(worst_fixed_deficit, std::abs(d.right));
        }
    }

    bool converged = outcomes[best].residual1 <= opts.tol && outcomes[best].residual2 <= opts.tol;
    if (opts.strict_unitarity && worst_fixed_deficit > opts.tol) {
        converged = false;
    }
    return {converged,
            coeffs,
            outcomes[best].residual1,
            outcomes[best].residual2,
            worst_fixed_deficit,
            best,
            layout.complex_count * 2};
}

}  // namespace mswave::chain
