#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace trapcc {

// Six mutual distances of a labeled four-point configuration. Component
// order everywhere in the library is (r12, r13, r14, r23, r24, r34).
//
// For a sequentially ordered quadrilateral the side/diagonal aliases are
//   a = r12, b = r23, c = r34, d = r14 (sides),  e = r13, f = r24 (diagonals),
// with r12 and r34 the parallel sides (bases) of a trapezoid.
struct DistanceVector {
    double r12 = 0.0;
    double r13 = 0.0;
    double r14 = 0.0;
    double r23 = 0.0;
    double r24 = 0.0;
    double r34 = 0.0;

    double a() const { return r12; }
    double b() const { return r23; }
    double c() const { return r34; }
    double d() const { return r14; }
    double e() const { return r13; }
    double f() const { return r24; }

    std::array<double, 6> to_array() const { return {r12, r13, r14, r23, r24, r34}; }
    static DistanceVector from_array(const std::array<double, 6>& v) {
        return {v[0], v[1], v[2], v[3], v[4], v[5]};
    }

    double max_distance() const;
    bool is_valid() const;

    // Throws errc::invalid_distance unless all six entries are finite and > 0.
    void validate() const;

    // Relabeling (1<->2, 3<->4): swaps r13<->r24 and r14<->r23.
    DistanceVector swapped_12_34() const {
        return {r12, r24, r23, r14, r13, r34};
    }
};

// Four consecutive side lengths of a trapezoid: bases a = r12, c = r34,
// legs b = r23, d = r14.
struct TrapezoidShape {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;

    void validate() const;
};

// A planar realization of a trapezoidal DistanceVector under the fixed
// convention: p1 = (0,0), p2 = (r12, 0), p3 and p4 on the line y = h,
// vertices in sequential convex order.
struct PlanarEmbedding {
    std::array<double, 2> p1{}, p2{}, p3{}, p4{};
    double height = 0.0;

    DistanceVector distances() const;
};

enum class ShapeTag {
    GenericTrapezoid,
    IsoscelesTrapezoid,
    Parallelogram,
    Rhombus,
    Square,
    Degenerate,
};

const char* shape_tag_name(ShapeTag tag);

struct ShapeClass {
    ShapeTag tag = ShapeTag::GenericTrapezoid;
    // Quantities the classification was decided on, for reporting.
    std::vector<std::pair<std::string, double>> witnesses;
};

enum class Realizability {
    Realizable3D,
    Planar,
    NotRealizable,
};

const char* realizability_name(Realizability verdict);

struct RealizabilityReport {
    Realizability verdict = Realizability::NotRealizable;
    // Violated subconfiguration (e.g. "triangle 1-2-3"), empty when realizable.
    std::string violation;
    // Bordered determinant of the full four-point configuration.
    double four_point_det = 0.0;
};

// Masses normalized to m1 = 1. `consistency` is the largest relative
// disagreement among the six mass-ratio formulas at these values.
struct MassVector {
    double m1 = 1.0;
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    double consistency = 0.0;

    bool all_positive() const { return m1 > 0 && m2 > 0 && m3 > 0 && m4 > 0; }
    std::array<double, 4> to_array() const { return {m1, m2, m3, m4}; }
};

struct Multipliers {
    double lambda = 0.0;
    double sigma = 0.0;
    // Max relative disagreement among the pairwise lambda solutions.
    double lambda_spread = 0.0;
    // Max normalized residual of the six stationarity equations.
    double sigma_spread = 0.0;
};

// Normalized residuals of the constraints a central configuration must satisfy.
struct ResidualSet {
    double relation = 0.0;       // sextic relation, normalized
    double trapezoid = 0.0;      // trapezoid condition, normalized
    double cayley_menger = 0.0;  // |H| / r13^8
    double dziobek = 0.0;        // worst normalized Dziobek product gap
};

struct CCSolution {
    DistanceVector distances;
    MassVector masses;
    Multipliers multipliers;
    ResidualSet residuals;
    ShapeTag shape = ShapeTag::GenericTrapezoid;
    bool in_omega = false;
    double potential = 0.0;      // U
    double inertia = 0.0;        // I
};

// Tolerances used across the library; every check is overridable via config.
struct Tolerances {
    double root = 1e-13;               // relative, solve_b bisection width
    double relation = 1e-10;           // normalized sextic relation
    double trapezoid = 1e-12;          // normalized trapezoid condition
    double cayley_menger = 1e-10;      // |H| <= this * r13^8
    double mass_consistency = 1e-8;    // mass-ratio overdetermination
    double lambda_spread = 1e-8;
    double sigma_spread = 1e-8;
    double classify = 1e-7;            // relative, shape classification
    double embed = 1e-9;               // relative, embedding round-trip
    double omega_band = 1e-10;         // * r12, slack band on Omega inequalities
    double parallelogram = 1e-9;       // * r12, routes to the parallelogram branch
};

} // namespace trapcc
