#pragma once

#include "trapcc/types.hpp"

namespace trapcc {

// Bordered 5x5 Cayley-Menger determinant H(r) of the four points.
// Vanishes exactly on planar configurations; degree 8 in the distances.
double cayley_menger(const DistanceVector& r);

// Realizability of the distance vector in Euclidean space: every three-point
// subdeterminant must be <= 0 (triangle inequalities) and the four-point
// determinant >= 0; Planar when the latter vanishes within tol * scale^8.
RealizabilityReport realizability(const DistanceVector& r, double tol = 1e-10);

// F = 4*Delta^2 = a^2 c^2 - (b^2 + d^2 - e^2 - f^2)^2 / 4.
// Zero iff the sides r12, r34 are parallel (and the configuration planar).
double delta_squared(const DistanceVector& r);

struct TrapezoidResidual {
    double raw = 0.0;         // 2ac - e^2 - f^2 + b^2 + d^2
    double normalized = 0.0;  // raw / (2ac + b^2 + d^2)
};

// Necessary and sufficient condition for a convex quadrilateral with
// consecutive sides a,b,c,d and diagonals e,f to be a trapezoid with
// parallel sides a and c.
TrapezoidResidual trapezoid_residual(const DistanceVector& r);

// Diagonals (e, f) = (r13, r24) of the trapezoid with consecutive sides
// (a, b, c, d), bases a and c. Throws parallelogram_degenerate when
// |a - c| <= tol_parallelogram * a and not_a_trapezoid when a radicand
// is non-positive.
std::pair<double, double> diagonals_from_sides(const TrapezoidShape& s,
                                               double tol_parallelogram = 1e-9);

// Full DistanceVector for the trapezoid with the given sides; diagonals
// from diagonals_from_sides. The result satisfies trapezoid_residual = 0
// identically.
DistanceVector distances_from_sides(const TrapezoidShape& s,
                                    double tol_parallelogram = 1e-9);

// Height of the trapezoid (distance between the parallel sides). The a != c
// branch evaluates the radical formula on the triangle (|a-c|, b, d); the
// parallelogram branch uses h = A / r12 with A from Bretschneider's formula.
double height(const DistanceVector& r, double tol_parallelogram = 1e-9);

// Signed triangle areas (Delta_1, Delta_2, Delta_3, Delta_4), Delta_i the
// oriented area of the triangle omitting body i. Sign pattern (+,-,+,-) for
// a sequentially ordered trapezoid; |Delta_1| = |Delta_2| = r34*h/2 and
// |Delta_3| = |Delta_4| = r12*h/2.
std::array<double, 4> oriented_areas(const DistanceVector& r);

// Planar embedding under the fixed placement convention. Throws
// embedding_inconsistent when no placement reproduces all six distances
// within tol (relative).
PlanarEmbedding embed(const DistanceVector& r, double tol = 1e-9);

// Shape classification with relative tolerance tol (witnesses attached).
ShapeClass classify_shape(const DistanceVector& r, double tol = 1e-7);

// Ptolemy quantity P = r12*r34 + r14*r23 - r13*r24; zero exactly for a
// co-circular (cyclic) quadrilateral.
double ptolemy_residual(const DistanceVector& r);

} // namespace trapcc
