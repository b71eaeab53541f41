#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mswave/chain.hpp"

using namespace mswave;
using chain::ChainSpec;
using chain::PartialRT;
using chain::ScattererRT;

namespace {

// reference three-scatterer chain used throughout: the asymmetric lossy
// triple whose between-field coefficients land near (0.73, 1)
ChainSpec reference_chain() {
    const double s3 = std::sqrt(3.0) / 2.0;
    ChainSpec spec;
    spec.scatterers = {{{0.5, 0.0}, {-0.5, 0.0}, {s3, 0.0}, {s3, 0.0}},
                       {{0.31, 0.0}, {0.0, 0.0}, {0.95, 0.0}, {1.0, 0.0}},
                       {{0.89, 0.0}, {0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}}};
    spec.positions = {0.0, 1.0, 2.0};
    spec.k = 8.7;
    return spec;
}

}  // namespace

TEST_CASE("between-field coefficients of the reference chain") {
    const auto spec = reference_chain();
    const auto phi = chain::phi_between_coefficients(spec);
    // frozen from the closed second-order expressions:
    // fwd = tLA (1 + rLB rRA), bwd = tLA rLB + tLA tLB rLC tRB
    CHECK(phi.forward.real() == doctest::Approx(0.7317914661978506).epsilon(1e-14));
    CHECK(std::abs(phi.forward.imag()) < 1e-15);
    CHECK(phi.backward.real() == doctest::Approx(1.0006923540729189).epsilon(1e-14));
    CHECK(std::abs(phi.backward.imag()) < 1e-15);
}

TEST_CASE("reflected effective-incident coefficient of the reference chain") {
    const auto spec = reference_chain();
    const auto eff = chain::effective_incident_coefficients(spec);
    CHECK(std::abs(eff.forward - Complex{1.0, 0.0}) < 1e-15);
    // rLA + tLA rLB tRA = 1/2 + (3/4)(0.31) = 0.7325 exactly
    CHECK(eff.backward.real() == doctest::Approx(0.7325).epsilon(1e-14));
    CHECK(std::abs(eff.backward.imag()) < 1e-15);
}

TEST_CASE("condition residuals of the reference chain") {
    const auto res = chain::negref_conditions(reference_chain());
    CHECK(res.residual1 == doctest::Approx(7.0853380215e-4).epsilon(1e-6));
    CHECK(res.residual2 == doctest::Approx(6.9235407292e-4).epsilon(1e-6));
}

TEST_CASE("field evaluation uses the e^{+-ikx} basis") {
    const auto spec = reference_chain();
    const auto phi = chain::phi_between_coefficients(spec);
    const double x = 0.4;
    const Complex expected = phi.forward * std::exp(I * spec.k * x) +
                             phi.backward * std::exp(-I * spec.k * x);
    CHECK(std::abs(chain::phi_between(spec, x) - expected) < 1e-14);

    const auto eff = chain::effective_incident_coefficients(spec);
    const double xl = -1.3;
    const Complex expected_l = eff.forward * std::exp(I * spec.k * xl) +
                               eff.backward * std::exp(-I * spec.k * xl);
    CHECK(std::abs(chain::effective_incident(spec, xl) - expected_l) < 1e-14);

    // evaluation windows are enforced
    CHECK_THROWS_AS((void)chain::phi_between(spec, -0.5), std::domain_error);
    CHECK_THROWS_AS((void)chain::phi_between(spec, 1.5), std::domain_error);
    CHECK_THROWS_AS((void)chain::effective_incident(spec, 0.5), std::domain_error);
}

TEST_CASE("chain validation") {
    ChainSpec bad = reference_chain();
    bad.positions = {0.0, 1.0};  // size mismatch
    CHECK_THROWS_AS(chain::validate_chain(bad, 3), std::invalid_argument);
    bad = reference_chain();
    bad.positions = {0.0, 2.0, 2.0};  // not strictly increasing
    CHECK_THROWS_AS(chain::validate_chain(bad, 3), std::invalid_argument);
    bad = reference_chain();
    bad.k = 0.0;
    CHECK_THROWS_AS(chain::validate_chain(bad, 3), std::domain_error);
    CHECK_THROWS_AS(chain::validate_chain(ChainSpec{}, 1), std::invalid_argument);
    CHECK_NOTHROW(chain::validate_chain(reference_chain(), 3));
    // conditions need three scatterers
    ChainSpec two = reference_chain();
    two.scatterers.pop_back();
    two.positions.pop_back();
    CHECK_THROWS_AS((void)chain::negref_conditions(two), std::invalid_argument);
}

TEST_CASE("unitarity deficit is signed") {
    const ScattererRT lossless{{0.6, 0.0}, {0.6, 0.0}, {0.8, 0.0}, {0.8, 0.0}};
    const auto d0 = chain::unitarity_deficit(lossless);
    CHECK(std::abs(d0.left) < 1e-15);
    CHECK(std::abs(d0.right) < 1e-15);
    const ScattererRT lossy{{0.5, 0.0}, {0.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}};
    const auto d1 = chain::unitarity_deficit(lossy);
    CHECK(d1.left == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(d1.right == doctest::Approx(0.0).epsilon(1e-14));
    const ScattererRT gainy{{1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}};
    CHECK(chain::unitarity_deficit(gainy).left == doctest::Approx(1.0));
}

TEST_CASE("de Broglie wave number for an electron at walking-speed 1 m/s") {
    const double me = 9.1093837015e-31;
    const double k = chain::de_broglie_k(me, 1.0);
    CHECK(k == doctest::Approx(9.1093837015e-31 / 1.054571817e-34).epsilon(1e-12));
    CHECK(k == doctest::Approx(8637.9927).epsilon(1e-7));
    // within 1% of 8.7 mm^-1
    CHECK(std::abs(k / 1000.0 - 8.7) / 8.7 < 0.01);
    CHECK_THROWS_AS((void)chain::de_broglie_k(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("design search recovers the single free reflection coefficient") {
    const double s3 = std::sqrt(3.0) / 2.0;
    std::vector<PartialRT> fixed(3);
    fixed[0] = {Complex{0.5, 0.0}, Complex{-0.5, 0.0}, Complex{s3, 0.0}, Complex{s3, 0.0}};
    fixed[1] = {Complex{0.31, 0.0}, Complex{0.0, 0.0}, Complex{0.95, 0.0}, Complex{1.0, 0.0}};
    fixed[2] = {std::nullopt, std::nullopt, std::nullopt, std::nullopt};

    chain::DesignOptions opts;
    opts.seed = 0;
    const auto r = chain::design_search(fixed, opts);

    // residual2 has an exact root in rLC; residual1 is pinned by the fixed
    // first-scatterer coefficients and cannot vanish, so converged stays false
    CHECK_FALSE(r.converged);
    CHECK(r.residual2 < 1e-10);
    CHECK(r.residual1 == doctest::Approx(7.0853380215e-4).epsilon(1e-6));
    CHECK(r.coefficients[2].rL.real() == doctest::Approx(0.8891584614518439).epsilon(1e-9));
    CHECK(std::abs(r.coefficients[2].rL.imag()) < 1e-9);
    CHECK(r.free_parameters == 8);  // four free complex entries
    // fixed entries are passed through untouched
    CHECK(r.coefficients[0].rL == Complex{0.5, 0.0});
    CHECK(r.coefficients[1].tL == Complex{0.95, 0.0});
}

TEST_CASE("design search finds an exact solution when everything is free") {
    std::vector<PartialRT> allfree(3);
    chain::DesignOptions opts;
    opts.seed = 0;
    const auto r = chain::design_search(allfree, opts);
    CHECK(r.converged);
    CHECK(r.residual1 <= 1e-10);
    CHECK(r.residual2 <= 1e-10);
    CHECK(r.free_parameters == 24);

    // swap identity: with both conditions satisfied, the between-field pair
    // equals the effective-incident pair with roles exchanged
    ChainSpec spec{r.coefficients, {0.0, 1.0, 2.0}, 1.0};
    const auto phi = chain::phi_between_coefficients(spec);
    const auto eff = chain::effective_incident_coefficients(spec);
    CHECK(std::abs(phi.forward - eff.backward) < 1e-9);
    CHECK(std::abs(phi.backward - eff.forward) < 1e-9);
}

TEST_CASE("design search is deterministic for a given seed") {
    std::vector<PartialRT> allfree(3);
    chain::DesignOptions opts;
    opts.seed = 7;
    opts.starts = 16;
    const auto a = chain::design_search(allfree, opts);
    const auto b = chain::design_search(allfree, opts);
    CHECK(a.best_start == b.best_start);
    CHECK(a.residual1 == b.residual1);
    CHECK(a.residual2 == b.residual2);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(a.coefficients[i].rL == b.coefficients[i].rL);
        CHECK(a.coefficients[i].tR == b.coefficients[i].tR);
    }
}

TEST_CASE("design search with everything fixed reduces to evaluation") {
    const double s3 = std::sqrt(3.0) / 2.0;
    std::vector<PartialRT> fixed(3);
    fixed[0] = {Complex{0.5, 0.0}, Complex{-0.5, 0.0}, Complex{s3, 0.0}, Complex{s3, 0.0}};
    fixed[1] = {Complex{0.31, 0.0}, Complex{0.0, 0.0}, Complex{0.95, 0.0}, Complex{1.0, 0.0}};
    fixed[2] = {Complex{0.89, 0.0}, Complex{0.0, 0.0}, Complex{1.0, 0.0}, Complex{1.0, 0.0}};
    const auto r = chain::design_search(fixed);
    CHECK(r.free_parameters == 0);
    CHECK_FALSE(r.converged);
    CHECK(r.residual1 == doctest::Approx(7.0853380215e-4).epsilon(1e-6));
    CHECK(r.residual2 == doctest::Approx(6.9235407292e-4).epsilon(1e-6));
}

TEST_CASE("design search option validation") {
    std::vector<PartialRT> allfree(3);
    chain::DesignOptions opts;
    opts.starts = 0;
    CHECK_THROWS_AS((void)chain::design_search(allfree, opts), std::invalid_argument);
    opts = {};
    opts.bound_radius = 0.0;
    CHECK_THROWS_AS((void)chain::design_search(allfree, opts), std::invalid_argument);
    CHECK_THROWS_AS((void)chain::design_search(std::vector<PartialRT>(2)),
                    std::invalid_argument);
}
