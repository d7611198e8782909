#pragma once

#include "trapcc/ccsystem.hpp"
#include "trapcc/error.hpp"
#include "trapcc/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace trapcc {

// Parameters of the (c, d) family scan with the base a fixed. Omega pins the
// leg b between c and d, so each grid cell reduces to a scalar root-find.
struct ScanConfig {
    double a_fixed = 8.0;
    double c_min = 4.0;
    double c_max = 7.4;
    int c_steps = 50;
    double d_min = 7.2;
    double d_max = 7.95;
    int d_steps = 50;
    int panels = 48;      // bracket subdivisions used to isolate sign changes
    int threads = 1;
    Tolerances tol;

    void validate() const;
};

struct RootResult {
    double b = 0.0;
    int iterations = 0;
    double residual_at_root = 0.0;  // normalized relation residual
    std::pair<double, double> bracket_used{0.0, 0.0};
};

class MultipleRootsError : public Error {
public:
    MultipleRootsError(std::vector<RootResult> roots)
        : Error(errc::multiple_roots, "multiple roots isolated in the bracket"),
          roots_(std::move(roots)) {}

    const std::vector<RootResult>& roots() const { return roots_; }

private:
    std::vector<RootResult> roots_;
};

// Solves the sextic relation for the leg b at fixed (a, c, d), with the
// diagonals eliminated through the trapezoid diagonal formulas. The root is
// isolated by sign-change bracketing on [max(c, d - (a - c)), d], refined by
// bisection to cfg.tol.root relative and polished with a safeguarded Newton
// step. Throws no_sign_change, infeasible_geometry, or MultipleRootsError
// (carrying every refined root) as appropriate.
RootResult solve_b(double a, double c, double d, const ScanConfig& cfg = {});

// All roots found in the bracket, in increasing b order.
std::vector<RootResult> find_b_roots(double a, double c, double d,
                                     const ScanConfig& cfg = {});

// Why a grid cell produced no accepted solution.
enum class CellFailure {
    NoSignChange,
    InfeasibleGeometry,
    NotRealizable,
    OutsideOmega,
    NonPositiveMass,
    ResidualGate,
    SolverError,
};

const char* cell_failure_name(CellFailure f);

struct ScanCell {
    int ci = 0;
    int di = 0;
    double c = 0.0;
    double d = 0.0;
    std::vector<CCSolution> accepted;
    std::vector<CellFailure> failures;
};

struct ScanResult {
    std::vector<ScanCell> cells;  // ordered lexicographically by (c, d) index
    std::vector<CCSolution> accepted() const;
};

// Runs solve_b over the (c, d) grid and assembles full solutions. Cells are
// independent; with cfg.threads > 1 they are evaluated concurrently, and the
// output ordering (by grid index) does not depend on the thread count.
ScanResult scan_family(const ScanConfig& cfg);

enum class EqualMassStatus {
    Converged,
    ConvergedOutsideOmega,
};

struct EqualMassResult {
    CCSolution solution;
    EqualMassStatus status = EqualMassStatus::Converged;
    int iterations = 0;
    double mass_gap = 0.0;  // |m_i - m_j| at the returned point
};

// Drives m_i = m_j over the (c, d) family by damped Gauss-Newton with the
// leg b re-solved at every iterate (solve_b nested inside the outer loop; the
// 2x2 outer Jacobian comes from finite differences). Throws no_convergence;
// returns ConvergedOutsideOmega with the boundary witness when the equal-mass
// set only touches the parallelogram limit of Omega.
EqualMassResult solve_equal_mass(int mass_i, int mass_j,
                                 std::pair<double, double> init,
                                 double a_fixed, const ScanConfig& cfg = {});

// Rhombus central configurations with m1 = m3 = 1, m2 = m4 = q: solves the
// stationarity equations specialized by the symmetry for (lambda, sigma, q)
// given the diagonal ratio e/f >= 1. Throws no_positive_masses when the
// ratio leaves the admissible window.
CCSolution rhombus_branch(double diag_ratio, double side,
                          const Tolerances& tol = {});

} // namespace trapcc
