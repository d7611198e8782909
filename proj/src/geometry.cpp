#include "trapcc/geometry.hpp"

#include "trapcc/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace trapcc {

namespace {

double sq(double x) { return x * x; }

// Determinant of an n x n matrix (n <= 5) by Gaussian elimination with
// partial pivoting.
template <std::size_t N>
double det(std::array<std::array<double, N>, N> m) {
    double result = 1.0;
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < N; ++row) {
            if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
        }
        if (m[pivot][col] == 0.0) return 0.0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            result = -result;
        }
        result *= m[col][col];
        for (std::size_t row = col + 1; row < N; ++row) {
            const double factor = m[row][col] / m[col][col];
            for (std::size_t k = col; k < N; ++k) m[row][k] -= factor * m[col][k];
        }
    }
    return result;
}

// Bordered three-point Cayley-Menger determinant; equals -16 A^2 for a
// triangle with sides (p, q, r) and area A.
double cayley_menger_3(double p, double q, double r) {
    return det<4>({{{0, 1, 1, 1},
                    {1, 0, sq(p), sq(q)},
                    {1, sq(p), 0, sq(r)},
                    {1, sq(q), sq(r), 0}}});
}

} // namespace

double DistanceVector::max_distance() const {
    return std::max({r12, r13, r14, r23, r24, r34});
}

bool DistanceVector::is_valid() const {
    for (double v : to_array()) {
        if (!std::isfinite(v) || v <= 0.0) return false;
    }
    return true;
}

void DistanceVector::validate() const {
    if (!is_valid())
        throw Error(errc::invalid_distance,
                    "all six mutual distances must be finite and positive");
}

void TrapezoidShape::validate() const {
    for (double v : {a, b, c, d}) {
        if (!std::isfinite(v) || v <= 0.0)
            throw Error(errc::invalid_distance,
                        "trapezoid sides must be finite and positive");
    }
    if (std::abs(a - c) >= b + d)
        throw Error(errc::not_a_trapezoid,
                    "sides cannot close a trapezoid: |a - c| >= b + d");
}

DistanceVector PlanarEmbedding::distances() const {
    auto dist = [](const std::array<double, 2>& u, const std::array<double, 2>& v) {
        return std::hypot(u[0] - v[0], u[1] - v[1]);
    };
    return {dist(p1, p2), dist(p1, p3), dist(p1, p4),
            dist(p2, p3), dist(p2, p4), dist(p3, p4)};
}

const char* shape_tag_name(ShapeTag tag) {
    switch (tag) {
        case ShapeTag::GenericTrapezoid: return "GenericTrapezoid";
        case ShapeTag::IsoscelesTrapezoid: return "IsoscelesTrapezoid";
        case ShapeTag::Parallelogram: return "Parallelogram";
        case ShapeTag::Rhombus: return "Rhombus";
        case ShapeTag::Square: return "Square";
        case ShapeTag::Degenerate: return "Degenerate";
    }
    return "?";
}

const char* realizability_name(Realizability verdict) {
    switch (verdict) {
        case Realizability::Realizable3D: return "Realizable3D";
        case Realizability::Planar: return "Planar";
        case Realizability::NotRealizable: return "NotRealizable";
    }
    return "?";
}

const char* errc_name(errc code) {
    switch (code) {
        case errc::invalid_distance: return "InvalidDistance";
        case errc::parallelogram_degenerate: return "ParallelogramDegenerate";
        case errc::not_a_trapezoid: return "NotATrapezoid";
        case errc::degenerate_configuration: return "DegenerateConfiguration";
        case errc::embedding_inconsistent: return "EmbeddingInconsistent";
        case errc::degenerate_denominator: return "DegenerateDenominator";
        case errc::singular_ratio: return "SingularRatio";
        case errc::not_realizable: return "NotRealizable";
        case errc::no_sign_change: return "NoSignChange";
        case errc::infeasible_geometry: return "InfeasibleGeometry";
        case errc::multiple_roots: return "MultipleRoots";
        case errc::no_convergence: return "NoConvergence";
        case errc::converged_outside_omega: return "ConvergedOutsideOmega";
        case errc::no_positive_masses: return "NoPositiveMasses";
        case errc::parse_error: return "ParseError";
        case errc::config_error: return "ConfigError";
    }
    return "?";
}

double cayley_menger(const DistanceVector& r) {
    r.validate();
    const double s12 = sq(r.r12), s13 = sq(r.r13), s14 = sq(r.r14);
    const double s23 = sq(r.r23), s24 = sq(r.r24), s34 = sq(r.r34);
    return det<5>({{{0, 1, 1, 1, 1},
                    {1, 0, s12, s13, s14},
                    {1, s12, 0, s23, s24},
                    {1, s13, s23, 0, s34},
                    {1, s14, s24, s34, 0}}});
}

RealizabilityReport realizability(const DistanceVector& r, double tol) {
    r.validate();
    struct Triangle {
        const char* label;
        double p, q, s;
    };
    const Triangle triangles[] = {
        {"triangle 1-2-3", r.r12, r.r13, r.r23},
        {"triangle 1-2-4", r.r12, r.r14, r.r24},
        {"triangle 1-3-4", r.r13, r.r14, r.r34},
        {"triangle 2-3-4", r.r23, r.r24, r.r34},
    };
    RealizabilityReport report;
    report.four_point_det = cayley_menger(r);
    for (const auto& t : triangles) {
        const double scale = std::max({t.p, t.q, t.s});
        if (cayley_menger_3(t.p, t.q, t.s) > tol * std::pow(scale, 4.0)) {
            report.verdict = Realizability::NotRealizable;
            report.violation = t.label;
            return report;
        }
    }
    const double scale8 = std::pow(r.max_distance(), 8.0);
    if (report.four_point_det < -tol * scale8) {
        report.verdict = Realizability::NotRealizable;
        report.violation = "four-point determinant negative";
    } else if (std::abs(report.four_point_det) <= tol * scale8) {
        report.verdict = Realizability::Planar;
    } else {
        report.verdict = Realizability::Realizable3D;
    }
    return report;
}

double delta_squared(const DistanceVector& r) {
    r.validate();
    const double gap = sq(r.b()) + sq(r.d()) - sq(r.e()) - sq(r.f());
    return sq(r.a()) * sq(r.c()) - 0.25 * sq(gap);
}

TrapezoidResidual trapezoid_residual(const DistanceVector& r) {
    r.validate();
    const double a = r.a(), b = r.b(), c = r.c(), d = r.d(), e = r.e(), f = r.f();
    TrapezoidResidual out;
    out.raw = 2.0 * a * c - sq(e) - sq(f) + sq(b) + sq(d);
    out.normalized = out.raw / (2.0 * a * c + sq(b) + sq(d));
    return out;
}

std::pair<double, double> diagonals_from_sides(const TrapezoidShape& s,
                                               double tol_parallelogram) {
    s.validate();
    const double a = s.a, b = s.b, c = s.c, d = s.d;
    if (std::abs(a - c) <= tol_parallelogram * std::max(a, c))
        throw Error(errc::parallelogram_degenerate,
                    "parallel sides coincide; diagonals are not determined by the sides");
    const double e2 = a * c - (c * sq(b) - a * sq(d)) / (a - c);
    const double f2 = a * c - (c * sq(d) - a * sq(b)) / (a - c);
    if (e2 <= 0.0 || f2 <= 0.0)
        throw Error(errc::not_a_trapezoid,
                    "diagonal radicand non-positive; sides do not form a trapezoid");
    return {std::sqrt(e2), std::sqrt(f2)};
}

DistanceVector distances_from_sides(const TrapezoidShape& s, double tol_parallelogram) {
    const auto [e, f] = diagonals_from_sides(s, tol_parallelogram);
    return {s.a, e, s.d, s.b, f, s.c};
}

double height(const DistanceVector& r, double tol_parallelogram) {
    r.validate();
    const double a = r.a(), b = r.b(), c = r.c(), d = r.d();
    if (std::abs(a - c) <= tol_parallelogram * std::max(a, c)) {
        // Parallelogram branch: h = A / r12 with A from Bretschneider's formula.
        const double e = r.e(), f = r.f();
        const double radicand = sq(e) * sq(f) - 0.25 * sq(sq(b) + sq(d) - sq(a) - sq(c));
        if (radicand <= 0.0)
            throw Error(errc::degenerate_configuration,
                        "degenerate parallelogram: area radicand non-positive");
        return 0.5 * std::sqrt(radicand) / a;
    }
    // Heron's formula on the triangle with sides (|a - c|, b, d); its height
    // over the |a - c| side is the distance between the parallel lines.
    const double u = std::abs(a - c);
    const double radicand = (u + b + d) * (-u + b + d) * (u - b + d) * (u + b - d);
    if (radicand <= 0.0)
        throw Error(errc::degenerate_configuration,
                    "degenerate trapezoid: height radicand non-positive");
    return std::sqrt(radicand) / (2.0 * u);
}

std::array<double, 4> oriented_areas(const DistanceVector& r) {
    const double h = height(r);
    const double base_area = 0.5 * r.c() * h;  // triangles omitting body 1 or 2
    const double top_area = 0.5 * r.a() * h;   // triangles omitting body 3 or 4
    return {base_area, -base_area, top_area, -top_area};
}

PlanarEmbedding embed(const DistanceVector& r, double tol) {
    r.validate();
    const double a = r.a(), b = r.b(), d = r.d(), e = r.e(), f = r.f();
    const double h = height(r);
    PlanarEmbedding emb;
    emb.height = h;
    emb.p1 = {0.0, 0.0};
    emb.p2 = {a, 0.0};
    emb.p3 = {(sq(a) + sq(e) - sq(b)) / (2.0 * a), h};
    emb.p4 = {(sq(a) + sq(d) - sq(f)) / (2.0 * a), h};

    const auto target = r.to_array();
    const auto actual = emb.distances().to_array();
    for (std::size_t i = 0; i < 6; ++i) {
        if (std::abs(actual[i] - target[i]) > tol * target[i])
            throw Error(errc::embedding_inconsistent,
                        "no planar placement reproduces all six distances");
    }
    if (emb.p3[0] <= emb.p4[0])
        throw Error(errc::embedding_inconsistent,
                    "vertices are not in sequential convex order");
    return emb;
}

ShapeClass classify_shape(const DistanceVector& r, double tol) {
    r.validate();
    ShapeClass cls;
    const double a = r.a(), b = r.b(), c = r.c(), d = r.d(), e = r.e(), f = r.f();
    const double band = tol * a;
    cls.witnesses = {{"|a-c|", std::abs(a - c)},
                     {"|a-b|", std::abs(a - b)},
                     {"|b-d|", std::abs(b - d)},
                     {"|e-f|", std::abs(e - f)}};
    const double largest = r.max_distance();
    for (double v : r.to_array()) {
        if (v < tol * largest) {
            cls.tag = ShapeTag::Degenerate;
            return cls;
        }
    }
    const bool parallelogram = std::abs(a - c) < band;
    const bool rhombus = parallelogram && std::abs(a - b) < band;
    const bool equal_diagonals = std::abs(e - f) < band;
    if (rhombus && equal_diagonals)
        cls.tag = ShapeTag::Square;
    else if (rhombus)
        cls.tag = ShapeTag::Rhombus;
    else if (parallelogram)
        cls.tag = ShapeTag::Parallelogram;
    else if (std::abs(b - d) < band && equal_diagonals)
        cls.tag = ShapeTag::IsoscelesTrapezoid;
    else
        cls.tag = ShapeTag::GenericTrapezoid;
    return cls;
}

double ptolemy_residual(const DistanceVector& r) {
    r.validate();
    return r.r12 * r.r34 + r.r14 * r.r23 - r.r13 * r.r24;
}

} // namespace trapcc
