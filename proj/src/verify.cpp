#include "trapcc/verify.hpp"

#include "trapcc/ccsystem.hpp"
#include "trapcc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace trapcc {

OmegaVerdict check_omega(const DistanceVector& r, double band_rel) {
    r.validate();
    const double band = band_rel * r.r12;
    OmegaVerdict verdict;
    struct Check {
        const char* name;
        double slack;
    };
    const Check checks[] = {
        // Ordering chain; strict links share the same slack band.
        {"r13 >= r24", r.r13 - r.r24},
        {"r24 > r12", r.r24 - r.r12},
        {"r12 >= r14", r.r12 - r.r14},
        {"r14 >= r23", r.r14 - r.r23},
        {"r23 >= r34", r.r23 - r.r34},
        {"r12 >= r34", r.r12 - r.r34},
        // Positivity feasibility: every side shorter than either diagonal.
        {"r13 > r12", r.r13 - r.r12},
        {"r13 > r14", r.r13 - r.r14},
        {"r13 > r23", r.r13 - r.r23},
        {"r13 > r34", r.r13 - r.r34},
        {"r24 > r14", r.r24 - r.r14},
        {"r24 > r23", r.r24 - r.r23},
        {"r24 > r34", r.r24 - r.r34},
    };
    for (const auto& check : checks) {
        if (check.slack < -band)
            verdict.violations.push_back({check.name, check.slack});
    }
    verdict.in_omega = verdict.violations.empty();
    return verdict;
}

TheoremReport verify_mass_ordering(const std::vector<CCSolution>& corpus, double tol) {
    TheoremReport report;
    report.theorem = "mass partial order: m3 <= m4 <= m2 and m3 <= m1";
    for (const auto& sol : corpus) {
        ++report.cases_checked;
        const auto& m = sol.masses;
        const double scale = std::max({1.0, m.m1, m.m2, m.m3, m.m4});
        const double slacks[] = {m.m4 - m.m3, m.m2 - m.m4, m.m1 - m.m3};
        const char* names[] = {"m4 >= m3", "m2 >= m4", "m1 >= m3"};
        for (int k = 0; k < 3; ++k) {
            if (slacks[k] < -tol * scale) {
                report.failures.push_back(sol);
                report.failure_notes.push_back(std::string("violation: ") + names[k]);
                report.max_slack_violation =
                    std::max(report.max_slack_violation, -slacks[k]);
            }
        }
    }
    return report;
}

namespace {

CCSolution distance_witness(const DistanceVector& r) {
    CCSolution sol;
    sol.distances = r;
    return sol;
}

} // namespace

TheoremReport verify_lemma_r3412(const std::vector<DistanceVector>& corpus,
                                 double slack_tol, double classify_tol) {
    TheoremReport report;
    report.theorem = "r23^2 / r14^2 >= r34 / r12, equality iff parallelogram";
    for (const auto& r : corpus) {
        ++report.cases_checked;
        const double slack =
            (r.r23 * r.r23) / (r.r14 * r.r14) - r.r34 / r.r12;
        const ShapeTag tag = classify_shape(r, classify_tol).tag;
        const bool parallelogram = tag == ShapeTag::Parallelogram ||
                                   tag == ShapeTag::Rhombus ||
                                   tag == ShapeTag::Square;
        if (slack < -slack_tol) {
            report.failures.push_back(distance_witness(r));
            report.failure_notes.push_back("violation: inequality, slack " +
                                           std::to_string(slack));
            report.max_slack_violation = std::max(report.max_slack_violation, -slack);
        } else if (parallelogram && std::abs(slack) > 10.0 * classify_tol) {
            report.failures.push_back(distance_witness(r));
            report.failure_notes.push_back("violation: parallelogram without equality");
        } else if (!parallelogram && std::abs(slack) <= slack_tol) {
            report.failures.push_back(distance_witness(r));
            report.failure_notes.push_back("violation: equality without parallelogram");
        }
    }
    return report;
}

bool verify_decreasing_ratio(double x1, double x2, double x3, double x4,
                             double* ratio_out) {
    if (!(x1 > 0.0) || !(x1 <= x2 && x2 <= x3 && x3 <= x4))
        throw Error(errc::invalid_distance,
                    "inputs must be positive and ordered x1 <= x2 <= x3 <= x4");
    if (x1 == x4)
        throw Error(errc::degenerate_denominator, "x1 = x4 makes the ratio indeterminate");
    auto phi = [](double x) { return 1.0 / (x * x * x); };
    const double ratio = (phi(x2) - phi(x3)) / (phi(x1) - phi(x4));
    if (ratio_out) *ratio_out = ratio;
    return ratio <= 1.0 + 1e-14;
}

namespace {

void note_solver_failure(TheoremReport& report, const std::string& where,
                         const Error& e) {
    report.failure_notes.push_back("solver: " + where + ": " + e.what());
}

// Isosceles trapezoid central configuration at given (a, c): with d = b and
// e = f = sqrt(b^2 + ac) the sextic relation reduces to a scalar equation in
// b, solved here by bisection. An independent route to the solutions
// solve_equal_mass(3, 4) converges to.
DistanceVector isosceles_cc(double a, double c, double b_tol = 1e-14) {
    auto inner = [&](double b) {
        const double e3 = std::pow(b * b + a * c, 1.5);
        const double a3 = a * a * a, b3 = b * b * b, c3 = c * c * c;
        return (e3 - a3) * (b3 - c3) - (a3 - b3) * (e3 - c3);
    };
    double lo = c, hi = a;
    double glo = inner(lo), ghi = inner(hi);
    if (glo * ghi > 0.0)
        throw Error(errc::no_sign_change, "no isosceles solution between b = c and b = a");
    while (hi - lo > b_tol * a) {
        const double mid = 0.5 * (lo + hi);
        const double gm = inner(mid);
        if (gm == 0.0) {
            lo = hi = mid;
            break;
        }
        (glo * gm < 0.0 ? hi : lo) = mid;
        (glo * gm < 0.0 ? ghi : glo) = gm;
    }
    const double b = 0.5 * (lo + hi);
    const double e = std::sqrt(b * b + a * c);
    return {a, e, b, b, e, c};
}

} // namespace

TheoremReport verify_symmetry_propositions(double tol, const ScanConfig& cfg) {
    TheoremReport report;
    report.theorem = "equal-mass symmetry propositions";
    const double a = cfg.a_fixed;

    auto check = [&](bool ok, const CCSolution& witness, const std::string& what) {
        ++report.cases_checked;
        if (!ok) {
            report.failures.push_back(witness);
            report.failure_notes.push_back("violation: " + what);
        }
    };

    // m3 = m4 forces an isosceles trapezoid and m1 = m2.
    try {
        const EqualMassResult res =
            solve_equal_mass(3, 4, {5.2, 7.6}, a, cfg);
        const auto& r = res.solution.distances;
        const auto& m = res.solution.masses;
        check(std::abs(r.r14 - r.r23) < tol * a, res.solution,
              "m3 = m4 but legs differ");
        check(std::abs(r.r13 - r.r24) < tol * a, res.solution,
              "m3 = m4 but diagonals differ");
        check(std::abs(m.m1 - m.m2) < tol, res.solution,
              "m3 = m4 but m1 != m2");
    } catch (const Error& e) {
        note_solver_failure(report, "solve_equal_mass(3,4)", e);
    }

    // m1 = m3 and m2 = m4 each force the rhombus limit (the parallelogram
    // boundary of Omega, where the scan parameterization is singular; only
    // boundary witnesses are numerically reachable, so these checks carry a
    // boundary tolerance).
    const double rh_tol = std::max(tol, 2e-5);
    for (const auto& [mi, mj] : {std::pair{1, 3}, std::pair{2, 4}}) {
        try {
            const EqualMassResult res =
                solve_equal_mass(mi, mj, {6.8, 7.7}, a, cfg);
            const auto& r = res.solution.distances;
            const auto& m = res.solution.masses;
            const double side_gap = std::max({std::abs(r.r12 - r.r34),
                                              std::abs(r.r14 - r.r23),
                                              std::abs(r.r12 - r.r23)});
            const std::string label =
                "m" + std::to_string(mi) + " = m" + std::to_string(mj);
            check(side_gap < rh_tol * a, res.solution,
                  label + " limit is not a rhombus (side gap " +
                      std::to_string(side_gap) + ")");
            const double other_gap =
                mi == 1 ? std::abs(m.m2 - m.m4) : std::abs(m.m1 - m.m3);
            check(other_gap < rh_tol * std::max(1.0, m.m2), res.solution,
                  label + " but the opposite pair is unequal");
        } catch (const Error& e) {
            note_solver_failure(report,
                                "solve_equal_mass(" + std::to_string(mi) + "," +
                                    std::to_string(mj) + ")", e);
        }
    }

    // m1 = m2 does NOT force symmetry: the asymmetric witness.
    try {
        const EqualMassResult res = solve_equal_mass(1, 2, {4.4, 7.6}, a, cfg);
        const auto& r = res.solution.distances;
        check(std::abs(r.r14 - r.r23) > 0.5, res.solution,
              "m1 = m2 witness unexpectedly symmetric");
        check(res.solution.in_omega, res.solution,
              "m1 = m2 witness left Omega");
    } catch (const Error& e) {
        note_solver_failure(report, "solve_equal_mass(1,2)", e);
    }

    // Dedicated rhombus family: equal opposite masses by construction.
    try {
        const CCSolution square = rhombus_branch(1.0, 1.0);
        check(square.shape == ShapeTag::Square, square, "unit diagonal ratio is not a square");
        check(std::abs(square.masses.m2 - 1.0) < tol, square,
              "square masses are not all equal");
        const CCSolution rhombus = rhombus_branch(1.25, 1.0);
        check(rhombus.shape == ShapeTag::Rhombus, rhombus, "rhombus branch shape");
        check(rhombus.masses.m2 > 0.0 && std::abs(rhombus.masses.m2 - 1.0) > tol,
              rhombus, "rhombus with unequal diagonals has equal masses");
        check(rhombus.residuals.relation == 0.0, rhombus,
              "relation residual nonzero on a rhombus");
    } catch (const Error& e) {
        note_solver_failure(report, "rhombus_branch", e);
    }

    // Converse direction on constructed isosceles inputs: the masses must
    // pair up as m1 = m2 and m3 = m4.
    for (double c : {4.5, 6.0}) {
        try {
            const CCSolution sol = make_solution(isosceles_cc(a, c), cfg.tol);
            check(std::abs(sol.masses.m1 - sol.masses.m2) < tol, sol,
                  "isosceles c.c. with m1 != m2");
            check(std::abs(sol.masses.m3 - sol.masses.m4) < tol, sol,
                  "isosceles c.c. with m3 != m4");
        } catch (const Error& e) {
            note_solver_failure(report, "isosceles_cc(c=" + std::to_string(c) + ")", e);
        }
    }

    return report;
}

TheoremReport verify_gradient_identity(const std::vector<DistanceVector>& corpus,
                                       double tol) {
    TheoremReport report;
    report.theorem = "grad H = 8 h^2 grad F on trapezoids";
    for (const auto& r : corpus) {
        ++report.cases_checked;
        try {
            const GradParallelResult res = grad_parallel_check(r);
            if (res.max_dev > tol) {
                report.failures.push_back(distance_witness(r));
                report.failure_notes.push_back("violation: deviation " +
                                               std::to_string(res.max_dev));
                report.max_slack_violation =
                    std::max(report.max_slack_violation, res.max_dev - tol);
            }
        } catch (const Error& e) {
            report.failures.push_back(distance_witness(r));
            report.failure_notes.push_back(std::string("solver: ") + e.what());
        }
    }
    return report;
}

TheoremReport verify_decreasing_ratio_corpus(
    const std::vector<DistanceVector>& corpus) {
    TheoremReport report;
    report.theorem = "decreasing-function ratio bound on (r23, r14, r24, r13)";
    for (const auto& r : corpus) {
        ++report.cases_checked;
        try {
            double ratio = 0.0;
            if (!verify_decreasing_ratio(r.r23, r.r14, r.r24, r.r13, &ratio)) {
                report.failures.push_back(distance_witness(r));
                report.failure_notes.push_back("violation: ratio " +
                                               std::to_string(ratio));
                report.max_slack_violation =
                    std::max(report.max_slack_violation, ratio - 1.0);
            }
        } catch (const Error& e) {
            report.failures.push_back(distance_witness(r));
            report.failure_notes.push_back(std::string("solver: ") + e.what());
        }
    }
    return report;
}

std::vector<DistanceVector> sample_omega_trapezoids(int count, unsigned seed,
                                                    double a_fixed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double a = a_fixed;
    std::vector<DistanceVector> out;
    out.reserve(count);
    long budget = 20000L * std::max(count, 1);
    while (static_cast<int>(out.size()) < count && budget-- > 0) {
        const double c = a * (0.30 + 0.63 * unit(rng));
        const double d = c + (a - c) * unit(rng);
        const double b_lo = std::max(c, d - (a - c));
        if (!(b_lo < d)) continue;
        const double b = b_lo + (d - b_lo) * unit(rng);
        try {
            const DistanceVector r = distances_from_sides({a, b, c, d});
            if (realizability(r).verdict == Realizability::NotRealizable) continue;
            if (!check_omega(r).in_omega) continue;
            out.push_back(r);
        } catch (const Error&) {
        }
    }
    if (static_cast<int>(out.size()) < count)
        throw Error(errc::no_convergence, "Omega trapezoid sampler exhausted its budget");
    return out;
}

} // namespace trapcc
