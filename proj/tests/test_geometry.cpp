#include "trapcc/geometry.hpp"

#include "trapcc/error.hpp"
#include "trapcc/golden.hpp"
#include "trapcc/verify.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace trapcc;

namespace {

double rel(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

const DistanceVector kSquare = golden_lookup("SQ")->distances();
const DistanceVector kIso = golden_lookup("ISO")->distances();
const DistanceVector kE1 = golden_lookup("E1")->distances();
const DistanceVector kTetra{1, 1, 1, 1, 1, 1};

} // namespace

TEST_CASE("cayley_menger: unit square is planar") {
    CHECK(std::abs(cayley_menger(kSquare)) < 1e-12);
}

TEST_CASE("cayley_menger: regular tetrahedron equals 288 V^2 = 4") {
    const double h = cayley_menger(kTetra);
    CHECK(std::abs(h - 4.0) < 1e-12);
    // Independent route: cofactor expansion of the bordered determinant.
    CHECK(std::abs(oracles::cayley_menger_laplace(kTetra) - 4.0) < 1e-12);
}

TEST_CASE("cayley_menger: E1 is planar to 1e-10 r13^8") {
    CHECK(std::abs(cayley_menger(kE1)) < 1e-10 * std::pow(kE1.r13, 8.0));
}

TEST_CASE("cayley_menger matches the Laplace-expansion oracle") {
    std::mt19937 rng(321);
    std::uniform_real_distribution<double> len(0.2, 5.0);
    for (int k = 0; k < 200; ++k) {
        const DistanceVector r{len(rng), len(rng), len(rng),
                               len(rng), len(rng), len(rng)};
        const double got = cayley_menger(r);
        const double want = oracles::cayley_menger_laplace(r);
        const double scale = std::pow(r.max_distance(), 8.0);
        CHECK(std::abs(got - want) <= 1e-12 * scale);
    }
}

TEST_CASE("realizability verdicts") {
    CHECK(realizability(kTetra).verdict == Realizability::Realizable3D);
    CHECK(realizability(kSquare).verdict == Realizability::Planar);
    const DistanceVector bad{10, 1, 1, 1, 1, 1};
    const auto report = realizability(bad);
    CHECK(report.verdict == Realizability::NotRealizable);
    CHECK(report.violation == "triangle 1-2-3");
}

TEST_CASE("delta_squared on the named configurations") {
    CHECK(std::abs(delta_squared(kSquare)) < 1e-15);
    CHECK(delta_squared(kTetra) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(delta_squared(kE1)) < 1e-10 * std::pow(kE1.r13, 4.0));
}

TEST_CASE("delta_squared equals the coordinate cross product on convex quadrilaterals") {
    std::mt19937 rng(98765);
    for (int k = 0; k < 1000; ++k) {
        const auto q = oracles::random_convex_quad(rng);
        const double want = oracles::four_delta_squared(q);
        const double got = delta_squared(oracles::distances_of(q));
        CHECK(std::abs(got - want) <= 1e-10 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("delta_squared factorization: 4F = (2ac + e2 + f2 - b2 - d2) * T") {
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> len(0.3, 4.0);
    for (int k = 0; k < 1000; ++k) {
        const DistanceVector r{len(rng), len(rng), len(rng),
                               len(rng), len(rng), len(rng)};
        const double a = r.a(), b = r.b(), c = r.c(), d = r.d(), e = r.e(), f = r.f();
        const double other = 2 * a * c + e * e + f * f - b * b - d * d;
        const double t = trapezoid_residual(r).raw;
        const double lhs = 4.0 * delta_squared(r);
        CHECK(std::abs(lhs - other * t) <= 1e-10 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("trapezoid_residual on the named configurations") {
    CHECK(std::abs(trapezoid_residual(kSquare).raw) < 1e-15);
    CHECK(std::abs(trapezoid_residual(kIso).raw) < 1e-14);
    CHECK(trapezoid_residual(kTetra).raw == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("diagonals_from_sides: symmetric trapezoid (2,1,1,1)") {
    // Coordinate oracle: bottom (0,0),(2,0), top (0.5,h),(1.5,h), h^2 = 3/4.
    const auto pts = oracles::trapezoid_points(2.0, 1.0, 0.5, std::sqrt(0.75));
    const auto want = oracles::distances_of(pts);
    const auto [e, f] = diagonals_from_sides({2, 1, 1, 1});
    CHECK(rel(e, want.r13) < 1e-14);
    CHECK(rel(f, want.r24) < 1e-14);
    CHECK(rel(e, std::sqrt(3.0)) < 1e-14);
    CHECK(rel(f, std::sqrt(3.0)) < 1e-14);
}

TEST_CASE("diagonals_from_sides reproduces the printed diagonals of E1") {
    const auto [e, f] = diagonals_from_sides({kE1.r12, kE1.r23, kE1.r34, kE1.r14});
    CHECK(rel(e, kE1.r13) < 1e-12);
    CHECK(rel(f, kE1.r24) < 1e-12);
}

TEST_CASE("diagonals_from_sides rejects parallelograms") {
    CHECK_THROWS_WITH_AS(diagonals_from_sides({1, 1, 1, 1}), doctest::Contains("parallel"),
                         Error);
    try {
        diagonals_from_sides({1, 1, 1, 1});
    } catch (const Error& e) {
        CHECK(e.code() == errc::parallelogram_degenerate);
    }
}

TEST_CASE("assembled trapezoids satisfy the residual and planarity identities") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int checked = 0;
    while (checked < 300) {
        const double a = 8.0;
        const double c = a * (0.3 + 0.6 * unit(rng));
        const double d = c + (a - c) * unit(rng);
        const double lo = std::max(c, d - (a - c));
        if (!(lo < d)) continue;
        const double b = lo + (d - lo) * unit(rng);
        DistanceVector r;
        try {
            r = distances_from_sides({a, b, c, d});
        } catch (const Error&) {
            continue;
        }
        ++checked;
        CHECK(std::abs(trapezoid_residual(r).normalized) < 1e-12);
        if (realizability(r).verdict != Realizability::NotRealizable) {
            CHECK(std::abs(cayley_menger(r)) < 1e-10 * std::pow(r.r13, 8.0));
        }
        // Diagonal-gap identity for non-parallelogram trapezoids.
        const double lhs = r.r13 * r.r13 - r.r24 * r.r24;
        const double rhs =
            (r.r14 * r.r14 - r.r23 * r.r23) * (r.r34 + r.r12) / (r.r12 - r.r34);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("height of the named configurations") {
    CHECK(rel(height(kSquare), 1.0) < 1e-14);
    CHECK(rel(height(kIso), std::sqrt(3.0) / 2.0) < 1e-14);
    // E1: the height must equal the y-gap of the embedding.
    CHECK(rel(height(kE1), embed(kE1).height) < 1e-10);
}

TEST_CASE("height rejects impossible configurations") {
    // Legs far too short to bridge the base gap.
    const DistanceVector r{4, 2, 0.5, 0.5, 2, 1};
    CHECK_THROWS_AS((void)height(r), Error);
    try {
        (void)height(r);
    } catch (const Error& e) {
        CHECK(e.code() == errc::degenerate_configuration);
    }
}

TEST_CASE("oriented_areas signs and magnitudes") {
    const auto sq_areas = oriented_areas(kSquare);
    CHECK(sq_areas[0] == doctest::Approx(0.5));
    CHECK(sq_areas[1] == doctest::Approx(-0.5));
    CHECK(sq_areas[2] == doctest::Approx(0.5));
    CHECK(sq_areas[3] == doctest::Approx(-0.5));

    const auto iso_areas = oriented_areas(kIso);
    CHECK(std::abs(iso_areas[0]) == doctest::Approx(std::sqrt(3.0) / 4.0));
    CHECK(std::abs(iso_areas[2]) == doctest::Approx(std::sqrt(3.0) / 2.0));

    // E1: triangle areas from the embedding must match.
    const auto emb = embed(kE1);
    const std::array<oracles::Point, 4> q{emb.p1, emb.p2, emb.p3, emb.p4};
    const auto areas = oriented_areas(kE1);
    CHECK(rel(std::abs(areas[0]), oracles::triangle_area(q[1], q[2], q[3])) < 1e-9);
    CHECK(rel(std::abs(areas[1]), oracles::triangle_area(q[0], q[2], q[3])) < 1e-9);
    CHECK(rel(std::abs(areas[2]), oracles::triangle_area(q[0], q[1], q[3])) < 1e-9);
    CHECK(rel(std::abs(areas[3]), oracles::triangle_area(q[0], q[1], q[2])) < 1e-9);
}

TEST_CASE("embed places the named configurations under the fixed convention") {
    const auto sq = embed(kSquare);
    CHECK(sq.p1[0] == doctest::Approx(0.0));
    CHECK(sq.p2[0] == doctest::Approx(1.0));
    CHECK(sq.p3[0] == doctest::Approx(1.0));
    CHECK(sq.p3[1] == doctest::Approx(1.0));
    CHECK(sq.p4[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sq.p4[1] == doctest::Approx(1.0));

    const auto iso = embed(kIso);
    CHECK(iso.p3[0] == doctest::Approx(1.5));
    CHECK(iso.p3[1] == doctest::Approx(std::sqrt(3.0) / 2.0));
    CHECK(iso.p4[0] == doctest::Approx(0.5));
}

TEST_CASE("embed round-trips distances on sampled Omega trapezoids") {
    for (const auto& r : sample_omega_trapezoids(200, 1234)) {
        const auto emb = embed(r);
        const auto got = emb.distances().to_array();
        const auto want = r.to_array();
        for (int k = 0; k < 6; ++k) CHECK(rel(got[k], want[k]) < 1e-9);
        // Euler's quadrilateral inequality on the embedded quadrilateral.
        const double diag2 = r.r13 * r.r13 + r.r24 * r.r24;
        const double side2 = r.r12 * r.r12 + r.r14 * r.r14 +
                             r.r23 * r.r23 + r.r34 * r.r34;
        CHECK(diag2 <= side2 * (1.0 + 1e-12));
    }
}

TEST_CASE("embed rejects non-planar input") {
    CHECK_THROWS_AS((void)embed(kTetra), Error);
}

TEST_CASE("classify_shape") {
    CHECK(classify_shape(kSquare).tag == ShapeTag::Square);
    CHECK(classify_shape(kIso).tag == ShapeTag::IsoscelesTrapezoid);
    CHECK(classify_shape(kE1).tag == ShapeTag::GenericTrapezoid);
    const DistanceVector tiny{1, 1, 1, 1, 1, 1e-9};
    CHECK(classify_shape(tiny).tag == ShapeTag::Degenerate);
    // Parallelogram: equal opposite sides, unequal diagonals.
    const DistanceVector par{2, std::sqrt(7.25), 1, 1, std::sqrt(1.25), 2};
    CHECK(classify_shape(par).tag == ShapeTag::Parallelogram);
}

TEST_CASE("ptolemy_residual") {
    CHECK(std::abs(ptolemy_residual(kSquare)) < 1e-15);
    CHECK(std::abs(ptolemy_residual(kIso)) < 1e-14);
    // E1 is strictly non-cocircular; direct evaluation of the product sum.
    const double want =
        kE1.r12 * kE1.r34 + kE1.r14 * kE1.r23 - kE1.r13 * kE1.r24;
    CHECK(ptolemy_residual(kE1) == want);
    CHECK(ptolemy_residual(kE1) > 0.4);
    CHECK(ptolemy_residual(kE1) < 0.41);
}

TEST_CASE("DistanceVector validation") {
    CHECK_THROWS_AS(DistanceVector{}.validate(), Error);
    CHECK_THROWS_AS((DistanceVector{1, 1, 1, 1, 1, -2}.validate()), Error);
    CHECK_THROWS_AS(
        (DistanceVector{1, 1, 1, 1, 1, std::nan("")}.validate()), Error);
    CHECK_NOTHROW(kE1.validate());
}
