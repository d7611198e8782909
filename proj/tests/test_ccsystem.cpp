#include "trapcc/ccsystem.hpp"

#include "trapcc/error.hpp"
#include "trapcc/geometry.hpp"
#include "trapcc/golden.hpp"
#include "trapcc/verify.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace trapcc;

namespace {

double rel(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

const DistanceVector kSquare = golden_lookup("SQ")->distances();
const DistanceVector kIso = golden_lookup("ISO")->distances();
const DistanceVector kE1 = golden_lookup("E1")->distances();
const DistanceVector kE2 = golden_lookup("E2")->distances();
const DistanceVector kTetra{1, 1, 1, 1, 1, 1};

// Closed-form Dziobek multiplier of the unit square.
const double kSquareLambda = (1.0 - 1.0 / 8.0) / (2.0 - 2.0 * std::pow(2.0, -1.5));

} // namespace

TEST_CASE("relation_residual on the named configurations") {
    CHECK(relation_residual(kSquare).raw == 0.0);
    CHECK(std::abs(relation_residual(kE1).normalized) < 1e-10);
    CHECK(std::abs(relation_residual(kE2).normalized) < 1e-10);
    // (2,1,1,1) with sqrt(3) diagonals: lhs vanishes, rhs = 7 (3 sqrt(3) - 1)^2.
    const double want = -7.0 * std::pow(3.0 * std::sqrt(3.0) - 1.0, 2.0);
    CHECK(rel(relation_residual(kIso).raw, want) < 1e-14);
}

TEST_CASE("lambda_dziobek") {
    const auto sq = lambda_dziobek(kSquare);
    CHECK(rel(sq.lambda, kSquareLambda) < 1e-14);
    CHECK(sq.lambda_spread < 1e-14);

    CHECK(lambda_dziobek(kE1).lambda_spread < 1e-10);
    CHECK(lambda_dziobek(kE2).lambda_spread < 1e-10);

    CHECK_THROWS_AS((void)lambda_dziobek(kTetra), Error);
    try {
        (void)lambda_dziobek(kTetra);
    } catch (const Error& e) {
        CHECK(e.code() == errc::degenerate_denominator);
    }
}

TEST_CASE("mass_ratios reproduces the printed ratios of E1 and E2") {
    const auto m1 = mass_ratios(kE1);
    CHECK(rel(m1.m1 / m1.m2, 1.0194571510769873907) < 1e-9);
    CHECK(rel(m1.m1 / m1.m4, 7.9942119368105807422) < 1e-9);
    CHECK(m1.consistency < 1e-10);

    const auto m2 = mass_ratios(kE2);
    CHECK(rel(m2.m1 / m2.m2, 0.69074480337446980353) < 1e-9);
    CHECK(rel(m2.m1 / m2.m4, 0.87696321790891338292) < 1e-9);
    CHECK(m2.consistency < 1e-10);
}

TEST_CASE("mass_ratios: full symmetry of the square") {
    const auto m = mass_ratios(kSquare);
    CHECK(m.m1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.m2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.m3 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.m4 == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sigma_recover at the square and at E1") {
    const auto lam = lambda_dziobek(kSquare);
    const auto mult = sigma_recover(kSquare, mass_ratios(kSquare), lam);
    CHECK(rel(mult.sigma, 1.0 - kSquareLambda) < 1e-12);
    CHECK(mult.sigma_spread < 1e-12);

    const auto m1 = mass_ratios(kE1);
    const auto s1 = sigma_recover(kE1, m1, lambda_dziobek(kE1));
    CHECK(s1.sigma_spread < 1e-9);
    CHECK(s1.sigma > 0.0);
}

TEST_CASE("dziobek_residual") {
    const auto sq = dziobek_residual(kSquare);
    CHECK(std::abs(sq.first) < 1e-14);
    CHECK(std::abs(sq.second) < 1e-14);

    const auto e2 = dziobek_residual(kE2);
    CHECK(std::abs(e2.first) < 1e-10);
    CHECK(std::abs(e2.second) < 1e-10);

    const auto iso = dziobek_residual(kIso);
    CHECK(std::max(std::abs(iso.first), std::abs(iso.second)) > 1e-3);

    // Degenerate lambda falls back to comparing the raw products.
    const auto tet = dziobek_residual(kTetra);
    CHECK(std::abs(tet.first) < 1e-14);
    CHECK(std::abs(tet.second) < 1e-14);
}

TEST_CASE("grad_parallel_check against finite differences") {
    for (const auto& r : {kE1, kE2, kSquare, kIso}) {
        const auto res = grad_parallel_check(r);
        CHECK(res.max_dev < 1e-6);
    }
    CHECK(grad_parallel_check(kSquare).factor == doctest::Approx(8.0).epsilon(1e-12));
    // The identity is geometric: it holds on trapezoids that are not
    // central configurations (ISO included above).
}

TEST_CASE("potential_inertia") {
    const MassVector unit{1, 1, 1, 1, 0};
    const auto [u, moment] = potential_inertia(kSquare, unit);
    CHECK(rel(u, 4.0 + std::sqrt(2.0)) < 1e-14);
    CHECK(rel(moment, 1.0) < 1e-14);

    // Homogeneity: doubling every distance halves U and quadruples I.
    const auto masses = mass_ratios(kE1);
    const auto [u1, i1] = potential_inertia(kE1, masses);
    auto doubled = kE1.to_array();
    for (auto& v : doubled) v *= 2.0;
    const auto [u2, i2] = potential_inertia(DistanceVector::from_array(doubled), masses);
    CHECK(rel(u2, 0.5 * u1) < 1e-14);
    CHECK(rel(i2, 4.0 * i1) < 1e-14);
}

TEST_CASE("relabeling (1<->2, 3<->4) maps solutions to solutions") {
    const DistanceVector swapped = kE1.swapped_12_34();
    CHECK(std::abs(relation_residual(swapped).normalized) < 1e-10);
    const auto m = mass_ratios(kE1);
    const auto ms = mass_ratios(swapped);
    // Masses permute: normalized to m1 = 1, so compare the ratios.
    CHECK(rel(ms.m2 / ms.m1, m.m1 / m.m2) < 1e-10);
    CHECK(rel(ms.m4 / ms.m3, m.m3 / m.m4) < 1e-10);
    CHECK(rel(ms.m3 / ms.m1, m.m4 / m.m2) < 1e-10);
}

TEST_CASE("lambda lies between the inverse-cube extremes at solutions") {
    for (const auto& r : {kE1, kE2}) {
        const double lambda = lambda_dziobek(r).lambda;
        CHECK(lambda > std::pow(r.r13, -3.0));
        CHECK(lambda < std::pow(r.r34, -3.0));
    }
}

TEST_CASE("make_solution assembles a consistent report for E1") {
    const auto sol = make_solution(kE1);
    CHECK(sol.residuals.relation < 1e-10);
    CHECK(sol.residuals.trapezoid < 1e-12);
    CHECK(sol.residuals.cayley_menger < 1e-10);
    CHECK(sol.in_omega);
    CHECK(sol.shape == ShapeTag::GenericTrapezoid);
    CHECK(sol.masses.all_positive());
    CHECK(sol.potential > 0.0);
    CHECK(sol.inertia > 0.0);
    CHECK(sol.multipliers.lambda_spread < 1e-10);
    CHECK(sol.multipliers.sigma_spread < 1e-9);
}
