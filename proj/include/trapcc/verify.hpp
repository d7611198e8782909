#pragma once

#include "trapcc/solver.hpp"
#include "trapcc/types.hpp"

#include <string>
#include <vector>

namespace trapcc {

// Membership in the canonical ordering region
//   Omega = { r : r13 >= r24 > r12 >= r14 >= r23 >= r34 }
// plus the positivity feasibility conditions (every side shorter than either
// diagonal). Strict inequalities are checked with a slack band.
struct OmegaVerdict {
    bool in_omega = false;
    struct Violation {
        std::string inequality;
        double slack;  // negative when violated
    };
    std::vector<Violation> violations;
};

OmegaVerdict check_omega(const DistanceVector& r, double band_rel = 1e-10);

struct TheoremReport {
    std::string theorem;
    int cases_checked = 0;
    std::vector<CCSolution> failures;
    std::vector<std::string> failure_notes;
    double max_slack_violation = 0.0;  // most negative slack observed, as >= 0 magnitude
    bool passed() const { return failures.empty() && failure_notes.empty(); }
};

// Mass partial order m3 <= m4 <= m2 and m3 <= m1 over a solution corpus.
TheoremReport verify_mass_ordering(const std::vector<CCSolution>& corpus,
                                   double tol = 1e-10);

// r23^2 / r14^2 >= r34 / r12 on Omega trapezoids, equality exactly for
// parallelograms. Central configurations are not required.
TheoremReport verify_lemma_r3412(const std::vector<DistanceVector>& corpus,
                                 double slack_tol = 1e-12,
                                 double classify_tol = 1e-7);

// For phi(x) = x^-3 decreasing and x1 <= x2 <= x3 <= x4:
// (phi(x2) - phi(x3)) / (phi(x1) - phi(x4)) <= 1.
// Throws degenerate_denominator when x1 = x4.
bool verify_decreasing_ratio(double x1, double x2, double x3, double x4,
                             double* ratio_out = nullptr);

// Numeric instantiation of the equal-mass symmetry statements:
//  - m3 = m4 forces an isosceles trapezoid with m1 = m2;
//  - m1 = m3 or m2 = m4 forces the rhombus limit with the other pair equal;
//  - the converse on constructed isosceles inputs (m1 = m2 and m3 = m4);
//  - m1 = m2 does NOT force symmetry (asymmetric witness).
TheoremReport verify_symmetry_propositions(double tol = 1e-6,
                                           const ScanConfig& cfg = {});

// grad H = 8 h^2 grad F against finite differences, over a distance corpus
// (central configurations not required; the identity is geometric).
TheoremReport verify_gradient_identity(const std::vector<DistanceVector>& corpus,
                                       double tol = 1e-6);

// Lemma 5.4 instantiated with phi(x) = x^-3 on the ordered tuple
// (r23, r14, r24, r13) of every corpus member.
TheoremReport verify_decreasing_ratio_corpus(
    const std::vector<DistanceVector>& corpus);

// Deterministic rejection sampler for valid Omega trapezoids with base
// a_fixed: draws (c, d, b), assembles the diagonals, and keeps realizable
// in-Omega configurations.
std::vector<DistanceVector> sample_omega_trapezoids(int count, unsigned seed,
                                                    double a_fixed = 8.0);

} // namespace trapcc
