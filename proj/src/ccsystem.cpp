#include "trapcc/ccsystem.hpp"

#include "trapcc/error.hpp"
#include "trapcc/geometry.hpp"
#include "trapcc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace trapcc {

namespace {

constexpr double kTiny = 1e-300;

double cube(double x) { return x * x * x; }
double inv_cube(double x) { return 1.0 / (x * x * x); }

struct InverseCubes {
    double s12, s13, s14, s23, s24, s34;
    double max() const { return std::max({s12, s13, s14, s23, s24, s34}); }
};

InverseCubes inverse_cubes(const DistanceVector& r) {
    return {inv_cube(r.r12), inv_cube(r.r13), inv_cube(r.r14),
            inv_cube(r.r23), inv_cube(r.r24), inv_cube(r.r34)};
}

double rel_gap(double x, double y) {
    return std::abs(x - y) / std::max({std::abs(x), std::abs(y), kTiny});
}

} // namespace

RelationResidual relation_residual(const DistanceVector& r) {
    r.validate();
    const double t12 = cube(r.r12), t13 = cube(r.r13), t14 = cube(r.r14);
    const double t23 = cube(r.r23), t24 = cube(r.r24), t34 = cube(r.r34);
    RelationResidual out;
    out.lhs = (t13 - t12) * (t23 - t34) * (t24 - t14);
    out.rhs = (t12 - t14) * (t24 - t34) * (t13 - t23);
    out.raw = out.lhs - out.rhs;
    const double guard = std::max(std::pow(r.r13, 9.0) * 1e-300, kTiny);
    out.normalized = out.raw / std::max({std::abs(out.lhs), std::abs(out.rhs), guard});
    return out;
}

Multipliers lambda_dziobek(const DistanceVector& r) {
    r.validate();
    const auto s = inverse_cubes(r);
    // Products paired over opposite sides/diagonals; each pairwise equality of
    // the Dziobek relation is linear in lambda.
    struct Pair {
        double num, den;
    };
    const Pair pairs[] = {
        {s.s12 * s.s34 - s.s13 * s.s24, (s.s12 + s.s34) - (s.s13 + s.s24)},
        {s.s12 * s.s34 - s.s14 * s.s23, (s.s12 + s.s34) - (s.s14 + s.s23)},
        {s.s13 * s.s24 - s.s14 * s.s23, (s.s13 + s.s24) - (s.s14 + s.s23)},
    };
    // Pairs with a tiny denominator carry no information about lambda and
    // would only amplify rounding noise.
    const double den_cutoff = 1e-6 * s.max();
    double sum = 0.0, lo = 0.0, hi = 0.0;
    int used = 0;
    for (const auto& p : pairs) {
        if (std::abs(p.den) <= den_cutoff) continue;
        const double lambda = p.num / p.den;
        if (used == 0) {
            lo = hi = lambda;
        } else {
            lo = std::min(lo, lambda);
            hi = std::max(hi, lambda);
        }
        sum += lambda;
        ++used;
    }
    if (used == 0)
        throw Error(errc::degenerate_denominator,
                    "lambda is indeterminate: every pairwise equation is degenerate");
    Multipliers out;
    out.lambda = sum / used;
    out.lambda_spread = (hi - lo) / std::max(std::abs(out.lambda), kTiny);
    return out;
}

std::pair<double, double> dziobek_residual(const DistanceVector& r) {
    r.validate();
    double lambda = 0.0;
    try {
        lambda = lambda_dziobek(r).lambda;
    } catch (const Error& e) {
        if (e.code() != errc::degenerate_denominator) throw;
        // All pairwise equations degenerate: the products differ by a
        // lambda-independent amount, measured at lambda = 0.
    }
    const auto s = inverse_cubes(r);
    const double pa = (s.s12 - lambda) * (s.s34 - lambda);
    const double pb = (s.s13 - lambda) * (s.s24 - lambda);
    const double pc = (s.s14 - lambda) * (s.s23 - lambda);
    const double scale = std::max({std::abs(pa), std::abs(pb), std::abs(pc), kTiny});
    return {(pa - pb) / scale, (pb - pc) / scale};
}

MassVector mass_ratios(const DistanceVector& r) {
    r.validate();
    const auto s = inverse_cubes(r);
    const double a = r.r12, c = r.r34;

    // The six ratio formulas, in the order they appear on the page. `den` is
    // the denominator as printed; formulas with a vanishing inverse-cube gap
    // are singular and excluded.
    struct Formula {
        int i, j;       // value = m_i / m_j
        double value;
        double den;
        bool singular;
    };
    const double sing_cutoff = 1e-12 * s.max();
    auto make = [&](int i, int j, double num, double den, double gap) {
        return Formula{i, j, num / den, den, std::abs(gap) <= sing_cutoff};
    };
    const Formula formulas[6] = {
        make(1, 2, -(s.s23 - s.s24), s.s13 - s.s14, s.s13 - s.s14),
        make(1, 3, c * (s.s23 - s.s34), a * (s.s12 - s.s14), s.s12 - s.s14),
        make(1, 4, -c * (s.s24 - s.s34), a * (s.s12 - s.s13), s.s12 - s.s13),
        make(2, 3, -c * (s.s13 - s.s34), a * (s.s12 - s.s24), s.s12 - s.s24),
        make(2, 4, c * (s.s14 - s.s34), a * (s.s12 - s.s23), s.s12 - s.s23),
        make(3, 4, -(s.s14 - s.s24), s.s13 - s.s23, s.s13 - s.s23),
    };

    // Spanning-tree selection: largest |den| first, lexicographic tie-break.
    std::array<int, 6> order{0, 1, 2, 3, 4, 5};
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return std::abs(formulas[x].den) > std::abs(formulas[y].den);
    });
    std::array<int, 5> parent{0, 1, 2, 3, 4};
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::array<bool, 6> in_tree{};
    int edges = 0;
    for (int k : order) {
        const Formula& fm = formulas[k];
        if (fm.singular || !std::isfinite(fm.value) || fm.value == 0.0) continue;
        const int ri = find(fm.i), rj = find(fm.j);
        if (ri == rj) continue;
        parent[ri] = rj;
        in_tree[k] = true;
        if (++edges == 3) break;
    }
    if (edges < 3)
        throw Error(errc::singular_ratio,
                    "mass ratios are singular: no spanning set of formulas");

    // Propagate masses from the gauge m1 = 1 along tree edges.
    std::array<double, 5> mass{0.0, 1.0, 0.0, 0.0, 0.0};
    std::array<bool, 5> known{false, true, false, false, false};
    for (int pass = 0; pass < 3; ++pass) {
        for (int k = 0; k < 6; ++k) {
            if (!in_tree[k]) continue;
            const Formula& fm = formulas[k];
            if (known[fm.i] && !known[fm.j]) {
                mass[fm.j] = mass[fm.i] / fm.value;
                known[fm.j] = true;
            } else if (known[fm.j] && !known[fm.i]) {
                mass[fm.i] = mass[fm.j] * fm.value;
                known[fm.i] = true;
            }
        }
    }

    MassVector out;
    out.m1 = mass[1];
    out.m2 = mass[2];
    out.m3 = mass[3];
    out.m4 = mass[4];
    double consistency = 0.0;
    for (int k = 0; k < 6; ++k) {
        if (in_tree[k] || formulas[k].singular) continue;
        const double actual = mass[formulas[k].i] / mass[formulas[k].j];
        consistency = std::max(consistency, rel_gap(formulas[k].value, actual));
    }
    out.consistency = consistency;
    return out;
}

Multipliers sigma_recover(const DistanceVector& r, const MassVector& m,
                          const Multipliers& mult) {
    r.validate();
    const auto s = inverse_cubes(r);
    const double a = r.r12, c = r.r34;
    const double lambda = mult.lambda;
    Multipliers out = mult;
    out.sigma = m.m1 * m.m2 * (s.s12 - lambda) / (c * c);

    // Normalized residuals of all six stationarity equations at
    // (masses, lambda, sigma).
    struct Eq {
        double lhs, rhs;
    };
    const Eq eqs[] = {
        {m.m1 * m.m2 * (s.s12 - lambda), out.sigma * c * c},
        {m.m3 * m.m4 * (s.s34 - lambda), out.sigma * a * a},
        {m.m1 * m.m3 * (s.s13 - lambda), -out.sigma * a * c},
        {m.m2 * m.m4 * (s.s24 - lambda), -out.sigma * a * c},
        {m.m1 * m.m4 * (s.s14 - lambda), out.sigma * a * c},
        {m.m2 * m.m3 * (s.s23 - lambda), out.sigma * a * c},
    };
    double spread = 0.0;
    for (const auto& eq : eqs) spread = std::max(spread, rel_gap(eq.lhs, eq.rhs));
    out.sigma_spread = spread;
    return out;
}

GradParallelResult grad_parallel_check(const DistanceVector& r) {
    r.validate();
    const double h = height(r);
    const double factor = 8.0 * h * h;
    const double scale = 2.0 * r.r12 * r.r34;
    const std::array<double, 6> grad_f = {scale * r.r34,  -scale * r.r13,
                                          scale * r.r14,  scale * r.r23,
                                          -scale * r.r24, scale * r.r12};
    GradParallelResult out;
    out.factor = factor;
    auto coords = r.to_array();
    for (std::size_t i = 0; i < 6; ++i) {
        const double step = 1e-6 * coords[i];
        auto plus = coords, minus = coords;
        plus[i] += step;
        minus[i] -= step;
        const double grad_h = (cayley_menger(DistanceVector::from_array(plus)) -
                               cayley_menger(DistanceVector::from_array(minus))) /
                              (2.0 * step);
        const double expected = factor * grad_f[i];
        const double dev = std::abs(grad_h - expected) /
                           std::max({std::abs(grad_h), std::abs(expected), kTiny});
        out.max_dev = std::max(out.max_dev, dev);
    }
    return out;
}

std::pair<double, double> potential_inertia(const DistanceVector& r,
                                            const MassVector& m) {
    r.validate();
    const double pair_mass[6] = {m.m1 * m.m2, m.m1 * m.m3, m.m1 * m.m4,
                                 m.m2 * m.m3, m.m2 * m.m4, m.m3 * m.m4};
    const auto dist = r.to_array();
    double u = 0.0, moment = 0.0;
    for (int k = 0; k < 6; ++k) {
        u += pair_mass[k] / dist[k];
        moment += pair_mass[k] * dist[k] * dist[k];
    }
    const double total = m.m1 + m.m2 + m.m3 + m.m4;
    return {u, moment / (2.0 * total)};
}

CCSolution make_solution(const DistanceVector& r, const Tolerances& tol) {
    r.validate();
    CCSolution sol;
    sol.distances = r;
    sol.residuals.trapezoid = std::abs(trapezoid_residual(r).normalized);
    sol.residuals.cayley_menger =
        std::abs(cayley_menger(r)) / std::pow(r.r13, 8.0);
    sol.residuals.relation = std::abs(relation_residual(r).normalized);
    const auto dz = dziobek_residual(r);
    sol.residuals.dziobek = std::max(std::abs(dz.first), std::abs(dz.second));

    Multipliers mult = lambda_dziobek(r);
    MassVector masses;
    try {
        masses = mass_ratios(r);
    } catch (const Error& e) {
        if (e.code() != errc::singular_ratio) throw;
        const ShapeTag tag = classify_shape(r, tol.classify).tag;
        if (tag != ShapeTag::Rhombus && tag != ShapeTag::Square) throw;
        // Rhombus balance: m1 = m3 = 1, m2 = m4 = q with
        // q (side^-3 - lambda) = lambda - r13^-3.
        const double ss = inv_cube(r.r12), se = inv_cube(r.r13), sf = inv_cube(r.r24);
        const double q = (mult.lambda - se) / (ss - mult.lambda);
        masses.m1 = masses.m3 = 1.0;
        masses.m2 = masses.m4 = q;
        masses.consistency = rel_gap(q * q * (sf - mult.lambda), -(mult.lambda - se));
    }
    mult = sigma_recover(r, masses, mult);

    sol.masses = masses;
    sol.multipliers = mult;
    sol.shape = classify_shape(r, tol.classify).tag;
    sol.in_omega = check_omega(r, tol.omega_band).in_omega;
    std::tie(sol.potential, sol.inertia) = potential_inertia(r, masses);
    return sol;
}

} // namespace trapcc
