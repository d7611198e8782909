#pragma once

#include "trapcc/types.hpp"

namespace trapcc {

struct RelationResidual {
    double raw = 0.0;
    double normalized = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
};

// The sextic relation between the mutual distances:
//   (r13^3 - r12^3)(r23^3 - r34^3)(r24^3 - r14^3)
//     = (r12^3 - r14^3)(r24^3 - r34^3)(r13^3 - r23^3).
// Necessary and sufficient (on realizable planar configurations) for a
// four-body central configuration. normalized = raw / max(|lhs|, |rhs|, guard).
RelationResidual relation_residual(const DistanceVector& r);

// Dziobek multiplier lambda solved from the pairwise equalities of
//   (r12^-3 - L)(r34^-3 - L) = (r13^-3 - L)(r24^-3 - L) = (r14^-3 - L)(r23^-3 - L),
// each linear in L. Returns the mean over the well-conditioned pairs and the
// max relative disagreement as lambda_spread. Throws degenerate_denominator
// when every pair is indeterminate (e.g. the regular tetrahedron).
Multipliers lambda_dziobek(const DistanceVector& r);

// Gaps between the three Dziobek products at the fitted lambda, each
// normalized by the largest product magnitude. (0, 0) on any planar central
// configuration; if lambda itself is indeterminate the products are compared
// at lambda = 0, where indeterminacy makes them equal anyway.
std::pair<double, double> dziobek_residual(const DistanceVector& r);

// Masses from the six ratio formulas, gauge m1 = 1. A spanning set of three
// formulas is selected by largest denominator magnitude; `consistency` is the
// worst relative violation of the remaining formulas. Throws singular_ratio
// when no spanning set of nonsingular formulas exists (fully symmetric
// configurations).
MassVector mass_ratios(const DistanceVector& r);

// Constraint multiplier sigma from m1*m2*(r12^-3 - lambda) = sigma * r34^2,
// plus sigma_spread = worst normalized residual over all six stationarity
// equations at (masses, lambda, sigma).
Multipliers sigma_recover(const DistanceVector& r, const MassVector& m,
                          const Multipliers& mult);

struct GradParallelResult {
    double factor = 0.0;   // 8 h^2
    double max_dev = 0.0;  // max componentwise relative deviation
};

// Checks the gradient identity grad H = 8 h^2 grad F at a trapezoidal
// configuration: analytic grad F = 2 r12 r34 (r34, -r13, r14, r23, -r24, r12)
// against central finite differences of cayley_menger.
GradParallelResult grad_parallel_check(const DistanceVector& r);

// Newtonian potential U = sum m_i m_j / r_ij and normalized moment of
// inertia I = (1 / 2M) sum m_i m_j r_ij^2.
std::pair<double, double> potential_inertia(const DistanceVector& r,
                                            const MassVector& m);

// Full solution assembly: masses, multipliers, residuals, shape, Omega
// membership, U and I. Falls back to the rhombus mass balance when the ratio
// formulas are singular on a rhombus/square.
CCSolution make_solution(const DistanceVector& r, const Tolerances& tol = {});

} // namespace trapcc
