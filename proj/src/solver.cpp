#include "trapcc/solver.hpp"

#include "trapcc/geometry.hpp"
#include "trapcc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <thread>

namespace trapcc {

namespace {

double relation_at(double a, double b, double c, double d, const Tolerances& tol,
                   double* normalized = nullptr) {
    const DistanceVector r = distances_from_sides({a, b, c, d}, tol.parallelogram);
    const RelationResidual res = relation_residual(r);
    if (normalized) *normalized = res.normalized;
    return res.raw;
}

} // namespace

void ScanConfig::validate() const {
    auto fail = [](const std::string& what) { throw Error(errc::config_error, what); };
    if (!(a_fixed > 0.0)) fail("a_fixed must be positive");
    if (!(c_min > 0.0) || !(c_max >= c_min)) fail("c range must be positive and ordered");
    if (!(d_min > 0.0) || !(d_max >= d_min)) fail("d range must be positive and ordered");
    if (!(c_max < a_fixed)) fail("c range must stay below a_fixed (r12 > r34 in Omega)");
    if (!(d_max <= a_fixed)) fail("d range must not exceed a_fixed (r12 >= r14 in Omega)");
    if (c_steps < 1 || d_steps < 1) fail("step counts must be at least 1");
    if (panels < 2) fail("panels must be at least 2");
    if (threads < 1) fail("threads must be at least 1");
}

const char* cell_failure_name(CellFailure f) {
    switch (f) {
        case CellFailure::NoSignChange: return "no_sign_change";
        case CellFailure::InfeasibleGeometry: return "infeasible_geometry";
        case CellFailure::NotRealizable: return "not_realizable";
        case CellFailure::OutsideOmega: return "outside_omega";
        case CellFailure::NonPositiveMass: return "non_positive_mass";
        case CellFailure::ResidualGate: return "residual_gate";
        case CellFailure::SolverError: return "solver_error";
    }
    return "?";
}

namespace {

std::vector<RootResult> find_b_roots_impl(double a, double c, double d, double b_hi,
                                          const ScanConfig& cfg);

} // namespace

std::vector<RootResult> find_b_roots(double a, double c, double d,
                                     const ScanConfig& cfg) {
    return find_b_roots_impl(a, c, d, d, cfg);
}

namespace {

std::vector<RootResult> find_b_roots_impl(double a, double c, double d, double b_hi,
                                          const ScanConfig& cfg) {
    if (!(c > 0.0 && c <= a) || !(d <= a))
        throw Error(errc::config_error, "find_b_roots requires a >= c > 0 and d <= a");
    if (std::abs(a - c) <= cfg.tol.parallelogram * a)
        throw Error(errc::parallelogram_degenerate,
                    "equal bases: use the rhombus branch instead of the side scan");
    // Omega pins c <= b <= d; the closing triangle (|a-c|, b, d) additionally
    // needs b > d - (a - c).
    const double lo = std::max(c, d - (a - c));
    const double hi = b_hi;
    if (!(lo < hi))
        throw Error(errc::infeasible_geometry, "empty bracket for the leg b");

    const int n = cfg.panels;
    std::vector<double> bs(n + 1), gs(n + 1);
    std::vector<bool> ok(n + 1, false);
    int valid = 0;
    for (int k = 0; k <= n; ++k) {
        bs[k] = lo + (hi - lo) * k / n;
        try {
            gs[k] = relation_at(a, bs[k], c, d, cfg.tol);
            ok[k] = true;
            ++valid;
        } catch (const Error&) {
            ok[k] = false;
        }
    }
    if (valid == 0)
        throw Error(errc::infeasible_geometry,
                    "diagonal radicand fails everywhere inside the bracket");

    std::vector<RootResult> roots;
    for (int k = 0; k < n; ++k) {
        if (!ok[k] || !ok[k + 1]) continue;
        double bl = bs[k], gl = gs[k];
        double br = bs[k + 1], gr = gs[k + 1];
        if (gl == 0.0) {
            // Exact hit on a panel point: count it once, at the left endpoint.
            RootResult root;
            root.b = bl;
            root.bracket_used = {bl, br};
            relation_at(a, bl, c, d, cfg.tol, &root.residual_at_root);
            roots.push_back(root);
            continue;
        }
        if (gl * gr >= 0.0) continue;

        RootResult root;
        root.bracket_used = {bl, br};
        int iters = 0;
        while ((br - bl) > cfg.tol.root * hi && iters < 200) {
            const double mid = 0.5 * (bl + br);
            const double gm = relation_at(a, mid, c, d, cfg.tol);
            ++iters;
            if (gm == 0.0) {
                bl = br = mid;
                break;
            }
            if (gl * gm < 0.0) {
                br = mid;
                gr = gm;
            } else {
                bl = mid;
                gl = gm;
            }
        }
        double b = 0.5 * (bl + br);
        double g_best = relation_at(a, b, c, d, cfg.tol);
        ++iters;
        // Safeguarded Newton polish: finite-difference slope, step accepted
        // only while it stays in the bracket and reduces the residual.
        for (int polish = 0; polish < 3; ++polish) {
            const double fd = 1e-7 * b;
            const double slope =
                (relation_at(a, b + fd, c, d, cfg.tol) -
                 relation_at(a, b - fd, c, d, cfg.tol)) / (2.0 * fd);
            iters += 2;
            if (slope == 0.0) break;
            const double b_next = b - g_best / slope;
            if (!(b_next > root.bracket_used.first && b_next < root.bracket_used.second))
                break;
            const double g_next = relation_at(a, b_next, c, d, cfg.tol);
            ++iters;
            if (std::abs(g_next) >= std::abs(g_best)) break;
            b = b_next;
            g_best = g_next;
        }
        root.b = b;
        root.iterations = iters;
        relation_at(a, b, c, d, cfg.tol, &root.residual_at_root);
        roots.push_back(root);
    }
    if (roots.empty())
        throw Error(errc::no_sign_change, "no sign change of the relation in the bracket");
    return roots;
}

} // namespace

RootResult solve_b(double a, double c, double d, const ScanConfig& cfg) {
    auto roots = find_b_roots(a, c, d, cfg);
    if (roots.size() == 1) return roots.front();
    // Several sign changes: keep the admissible ones (Omega membership and
    // positive masses); the relation has spurious branches whose diagonals
    // are shorter than the sides.
    std::vector<RootResult> admissible;
    for (const auto& root : roots) {
        try {
            const DistanceVector r =
                distances_from_sides({a, root.b, c, d}, cfg.tol.parallelogram);
            if (realizability(r).verdict == Realizability::NotRealizable) continue;
            const CCSolution sol = make_solution(r, cfg.tol);
            if (sol.in_omega && sol.masses.all_positive()) admissible.push_back(root);
        } catch (const Error&) {
        }
    }
    if (admissible.size() == 1) return admissible.front();
    throw MultipleRootsError(admissible.empty() ? std::move(roots)
                                                : std::move(admissible));
}

namespace {

// Residual gates every accepted solution must pass.
bool passes_gates(const CCSolution& sol, const Tolerances& tol, CellFailure* why) {
    if (!sol.masses.all_positive()) {
        *why = CellFailure::NonPositiveMass;
        return false;
    }
    if (!sol.in_omega) {
        *why = CellFailure::OutsideOmega;
        return false;
    }
    if (sol.residuals.relation > tol.relation ||
        sol.residuals.trapezoid > tol.trapezoid ||
        sol.residuals.cayley_menger > tol.cayley_menger ||
        sol.multipliers.lambda_spread > tol.lambda_spread ||
        sol.multipliers.sigma_spread > tol.sigma_spread ||
        sol.masses.consistency > tol.mass_consistency) {
        *why = CellFailure::ResidualGate;
        return false;
    }
    return true;
}

void scan_cell(ScanCell& cell, const ScanConfig& cfg) {
    std::vector<RootResult> roots;
    try {
        roots = find_b_roots(cfg.a_fixed, cell.c, cell.d, cfg);
    } catch (const Error& e) {
        switch (e.code()) {
            case errc::no_sign_change:
                cell.failures.push_back(CellFailure::NoSignChange);
                return;
            case errc::infeasible_geometry:
            case errc::not_a_trapezoid:
            case errc::parallelogram_degenerate:
            case errc::config_error:
                cell.failures.push_back(CellFailure::InfeasibleGeometry);
                return;
            default:
                cell.failures.push_back(CellFailure::SolverError);
                return;
        }
    }
    for (const auto& root : roots) {
        try {
            const DistanceVector r = distances_from_sides(
                {cfg.a_fixed, root.b, cell.c, cell.d}, cfg.tol.parallelogram);
            if (realizability(r).verdict == Realizability::NotRealizable) {
                cell.failures.push_back(CellFailure::NotRealizable);
                continue;
            }
            CCSolution sol = make_solution(r, cfg.tol);
            CellFailure why;
            if (passes_gates(sol, cfg.tol, &why)) {
                cell.accepted.push_back(std::move(sol));
            } else {
                cell.failures.push_back(why);
            }
        } catch (const Error&) {
            cell.failures.push_back(CellFailure::SolverError);
        }
    }
}

std::vector<double> linspace(double lo, double hi, int steps) {
    std::vector<double> out(steps);
    if (steps == 1) {
        out[0] = lo;
        return out;
    }
    for (int i = 0; i < steps; ++i) out[i] = lo + (hi - lo) * i / (steps - 1);
    return out;
}

} // namespace

std::vector<CCSolution> ScanResult::accepted() const {
    std::vector<CCSolution> out;
    for (const auto& cell : cells)
        out.insert(out.end(), cell.accepted.begin(), cell.accepted.end());
    return out;
}

ScanResult scan_family(const ScanConfig& cfg) {
    cfg.validate();
    const auto cs = linspace(cfg.c_min, cfg.c_max, cfg.c_steps);
    const auto ds = linspace(cfg.d_min, cfg.d_max, cfg.d_steps);

    ScanResult result;
    result.cells.resize(cs.size() * ds.size());
    for (std::size_t ci = 0; ci < cs.size(); ++ci) {
        for (std::size_t di = 0; di < ds.size(); ++di) {
            ScanCell& cell = result.cells[ci * ds.size() + di];
            cell.ci = static_cast<int>(ci);
            cell.di = static_cast<int>(di);
            cell.c = cs[ci];
            cell.d = ds[di];
        }
    }

    // Cells are independent and written at disjoint indices, so the result is
    // identical for any worker count.
    const std::size_t total = result.cells.size();
    const int workers = std::min<int>(cfg.threads, static_cast<int>(total));
    if (workers <= 1) {
        for (auto& cell : result.cells) scan_cell(cell, cfg);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                for (std::size_t i = w; i < total; i += workers)
                    scan_cell(result.cells[i], cfg);
            });
        }
        for (auto& t : pool) t.join();
    }
    return result;
}

namespace {

struct FamilyPoint {
    double c, d, b;
    CCSolution sol;
};

// Evaluates the solution family at (c, d). With several isolated roots the
// one closest to the previous leg is tracked; on the first evaluation the
// admissible branch (Omega membership, positive masses) is preferred.
std::optional<FamilyPoint> eval_family(double a, double c, double d, double prev_b,
                                       const ScanConfig& cfg) {
    if (!(c > 0.0 && c < a && d > 0.0 && d <= a)) return std::nullopt;
    std::vector<RootResult> roots;
    try {
        // The bracket is widened a little past b = d so that branches crossing
        // the isosceles locus (where the root sits exactly at b = d) stay
        // smooth; Omega filtering happens downstream.
        const double b_hi = std::min(a, d + std::min(0.5 * (a - c), 0.02 * a));
        roots = find_b_roots_impl(a, c, d, b_hi, cfg);
    } catch (const Error&) {
        return std::nullopt;
    }
    auto solve_at = [&](double b) -> std::optional<FamilyPoint> {
        try {
            const DistanceVector r =
                distances_from_sides({a, b, c, d}, cfg.tol.parallelogram);
            return FamilyPoint{c, d, b, make_solution(r, cfg.tol)};
        } catch (const Error&) {
            return std::nullopt;
        }
    };
    if (std::isfinite(prev_b)) {
        const RootResult* best = &roots.front();
        for (const auto& root : roots) {
            if (std::abs(root.b - prev_b) < std::abs(best->b - prev_b)) best = &root;
        }
        return solve_at(best->b);
    }
    std::optional<FamilyPoint> fallback;
    for (const auto& root : roots) {
        auto point = solve_at(root.b);
        if (!point) continue;
        if (point->sol.in_omega && point->sol.masses.all_positive()) return point;
        if (!fallback) fallback = point;
    }
    return fallback;
}

double mass_gap(const CCSolution& sol, int i, int j) {
    const auto m = sol.masses.to_array();
    return m[i - 1] - m[j - 1];
}

} // namespace

EqualMassResult solve_equal_mass(int mass_i, int mass_j,
                                 std::pair<double, double> init, double a_fixed,
                                 const ScanConfig& cfg) {
    if (mass_i < 1 || mass_i > 4 || mass_j < 1 || mass_j > 4 || mass_i == mass_j)
        throw Error(errc::config_error, "mass pair must be two distinct indices in 1..4");

    const double a = a_fixed;
    double c = init.first, d = init.second;
    double prev_b = std::numeric_limits<double>::quiet_NaN();

    auto point = eval_family(a, c, d, prev_b, cfg);
    if (!point)
        throw Error(errc::no_convergence, "initial point is outside the solution family");
    prev_b = point->b;

    const double gap_tol = 1e-11;
    const double fd = 1e-7 * a;
    const int max_iter = 60;

    for (int iter = 0; iter < max_iter; ++iter) {
        const double g0 = mass_gap(point->sol, mass_i, mass_j);
        if (std::abs(g0) <= gap_tol) {
            EqualMassResult out;
            out.solution = point->sol;
            out.iterations = iter;
            out.mass_gap = std::abs(g0);
            out.status = point->sol.in_omega ? EqualMassStatus::Converged
                                             : EqualMassStatus::ConvergedOutsideOmega;
            return out;
        }

        // Finite-difference gradient of the gap over (c, d); fall back to
        // one-sided differences at the family's edge.
        auto fd_slope = [&](int coord) -> std::optional<double> {
            const double cc = coord == 0 ? c + fd : c;
            const double dd = coord == 1 ? d + fd : d;
            const double cm = coord == 0 ? c - fd : c;
            const double dm = coord == 1 ? d - fd : d;
            const auto plus = eval_family(a, cc, dd, prev_b, cfg);
            const auto minus = eval_family(a, cm, dm, prev_b, cfg);
            if (plus && minus)
                return (mass_gap(plus->sol, mass_i, mass_j) -
                        mass_gap(minus->sol, mass_i, mass_j)) / (2.0 * fd);
            if (plus)
                return (mass_gap(plus->sol, mass_i, mass_j) - g0) / fd;
            if (minus)
                return (g0 - mass_gap(minus->sol, mass_i, mass_j)) / fd;
            return std::nullopt;
        };
        const auto jc = fd_slope(0), jd = fd_slope(1);
        if (!jc || !jd) break;
        const double norm2 = *jc * *jc + *jd * *jd;
        if (norm2 == 0.0) break;

        // Minimum-norm Gauss-Newton step for the underdetermined residual,
        // damped until the gap decreases.
        const double step_c = -g0 * *jc / norm2;
        const double step_d = -g0 * *jd / norm2;
        bool advanced = false;
        for (double damp = 1.0; damp > 1e-10; damp *= 0.5) {
            const auto trial = eval_family(a, c + damp * step_c, d + damp * step_d,
                                           prev_b, cfg);
            if (!trial) continue;
            if (std::abs(mass_gap(trial->sol, mass_i, mass_j)) < std::abs(g0)) {
                c = trial->c;
                d = trial->d;
                prev_b = trial->b;
                point = trial;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }

    // Gauss-Newton stalled: the equal-mass set may only touch the
    // parallelogram boundary of Omega (the rhombus limit), where the family
    // parameterization is singular and steps keep leaving the feasible
    // wedge. Continue toward the corner (c, d) -> (a, a), halving the
    // boundary distance while the gap keeps shrinking.
    double eps = a - point->c;
    for (int k = 0; k < 60 && eps > 1e-8 * a; ++k) {
        eps *= 0.5;
        std::optional<FamilyPoint> best;
        for (double frac : {0.1, 0.2, 0.3, 0.45, 0.6}) {
            const auto trial =
                eval_family(a, a - eps, a - frac * eps, prev_b, cfg);
            if (!trial) continue;
            if (!best || std::abs(mass_gap(trial->sol, mass_i, mass_j)) <
                             std::abs(mass_gap(best->sol, mass_i, mass_j)))
                best = trial;
        }
        if (!best || std::abs(mass_gap(best->sol, mass_i, mass_j)) >=
                         std::abs(mass_gap(point->sol, mass_i, mass_j)))
            break;
        point = best;
        prev_b = point->b;
    }

    const double g_final = std::abs(mass_gap(point->sol, mass_i, mass_j));
    const bool near_boundary = (a - point->c) <= 1e-4 * a &&
                               std::abs(point->sol.distances.r14 -
                                        point->sol.distances.r23) <= 1e-3 * a;
    if (g_final <= 1e-4 && near_boundary) {
        EqualMassResult out;
        out.solution = point->sol;
        out.iterations = max_iter;
        out.mass_gap = g_final;
        out.status = EqualMassStatus::ConvergedOutsideOmega;
        return out;
    }
    throw Error(errc::no_convergence, "equal-mass iteration stalled at gap " +
                                          std::to_string(g_final));
}

CCSolution rhombus_branch(double diag_ratio, double side, const Tolerances& tol) {
    if (!(diag_ratio >= 1.0) || !std::isfinite(diag_ratio))
        throw Error(errc::config_error, "diagonal ratio must be >= 1");
    if (!(side > 0.0) || !std::isfinite(side))
        throw Error(errc::config_error, "side length must be positive");

    // e^2 + f^2 = 4 side^2 fixes the diagonals from their ratio.
    const double f = 2.0 * side / std::sqrt(1.0 + diag_ratio * diag_ratio);
    const double e = diag_ratio * f;
    const DistanceVector r{side, e, side, side, f, side};

    const Multipliers lam = lambda_dziobek(r);
    const double ss = 1.0 / (side * side * side);
    const double se = 1.0 / (e * e * e);
    const double q = (lam.lambda - se) / (ss - lam.lambda);
    if (!std::isfinite(q) || !(q > 0.0))
        throw Error(errc::no_positive_masses,
                    "diagonal ratio outside the positive-mass window");

    CCSolution sol;
    sol.distances = r;
    sol.masses.m1 = sol.masses.m3 = 1.0;
    sol.masses.m2 = sol.masses.m4 = q;
    const double sf = 1.0 / (f * f * f);
    sol.masses.consistency =
        std::abs(q * q * (sf - lam.lambda) + (lam.lambda - se)) /
        std::max(std::abs(q * q * (sf - lam.lambda)), std::abs(lam.lambda - se));
    sol.multipliers = sigma_recover(r, sol.masses, lam);
    sol.residuals.trapezoid = std::abs(trapezoid_residual(r).normalized);
    sol.residuals.cayley_menger = std::abs(cayley_menger(r)) / std::pow(r.r13, 8.0);
    sol.residuals.relation = std::abs(relation_residual(r).normalized);
    const auto dz = dziobek_residual(r);
    sol.residuals.dziobek = std::max(std::abs(dz.first), std::abs(dz.second));
    sol.shape = classify_shape(r, tol.classify).tag;
    sol.in_omega = check_omega(r, tol.omega_band).in_omega;
    std::tie(sol.potential, sol.inertia) = potential_inertia(r, sol.masses);
    return sol;
}

} // namespace trapcc
