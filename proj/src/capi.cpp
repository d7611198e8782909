#include "trapcc/trapcc.h"

#include "trapcc/ccsystem.hpp"
#include "trapcc/error.hpp"
#include "trapcc/geometry.hpp"
#include "trapcc/golden.hpp"
#include "trapcc/io.hpp"
#include "trapcc/solver.hpp"
#include "trapcc/verify.hpp"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <string>

struct trapcc_distances {
    trapcc::DistanceVector value;
};

struct trapcc_solution {
    trapcc::CCSolution value;
};

namespace {

thread_local std::string t_last_error;

trapcc_status map_errc(trapcc::errc code) {
    using trapcc::errc;
    switch (code) {
        case errc::invalid_distance: return TRAPCC_ERR_INVALID_DISTANCE;
        case errc::parallelogram_degenerate: return TRAPCC_ERR_PARALLELOGRAM_DEGENERATE;
        case errc::not_a_trapezoid: return TRAPCC_ERR_NOT_A_TRAPEZOID;
        case errc::degenerate_configuration: return TRAPCC_ERR_DEGENERATE_CONFIGURATION;
        case errc::embedding_inconsistent: return TRAPCC_ERR_EMBEDDING_INCONSISTENT;
        case errc::degenerate_denominator: return TRAPCC_ERR_DEGENERATE_DENOMINATOR;
        case errc::singular_ratio: return TRAPCC_ERR_SINGULAR_RATIO;
        case errc::not_realizable: return TRAPCC_ERR_NOT_REALIZABLE;
        case errc::no_sign_change: return TRAPCC_ERR_NO_SIGN_CHANGE;
        case errc::infeasible_geometry: return TRAPCC_ERR_INFEASIBLE_GEOMETRY;
        case errc::multiple_roots: return TRAPCC_ERR_MULTIPLE_ROOTS;
        case errc::no_convergence: return TRAPCC_ERR_NO_CONVERGENCE;
        case errc::converged_outside_omega: return TRAPCC_ERR_CONVERGED_OUTSIDE_OMEGA;
        case errc::no_positive_masses: return TRAPCC_ERR_NO_POSITIVE_MASSES;
        case errc::parse_error: return TRAPCC_ERR_PARSE;
        case errc::config_error: return TRAPCC_ERR_CONFIG;
    }
    return TRAPCC_ERR_UNKNOWN;
}

template <typename Fn>
trapcc_status guarded(Fn&& fn) {
    try {
        fn();
        return TRAPCC_OK;
    } catch (const trapcc::Error& e) {
        t_last_error = e.what();
        return map_errc(e.code());
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return TRAPCC_ERR_UNKNOWN;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

trapcc_status require(bool ok, const char* what) {
    if (ok) return TRAPCC_OK;
    t_last_error = what;
    return TRAPCC_ERR_INVALID_ARGUMENT;
}

trapcc::ScanConfig config_from(const char* config_or_null) {
    if (!config_or_null || !*config_or_null) return {};
    return trapcc::parse_run_config(config_or_null).scan;
}

} // namespace

extern "C" {

const char* trapcc_version(void) { return "1.0.0"; }

const char* trapcc_last_error(void) { return t_last_error.c_str(); }

void trapcc_string_free(char* text) { std::free(text); }

trapcc_status trapcc_distances_create(const double r[6], trapcc_distances** out) {
    if (auto bad = require(r && out, "null argument")) return bad;
    return guarded([&] {
        trapcc::DistanceVector v = trapcc::DistanceVector::from_array(
            {r[0], r[1], r[2], r[3], r[4], r[5]});
        v.validate();
        *out = new trapcc_distances{v};
    });
}

trapcc_status trapcc_distances_parse_json(const char* json, trapcc_distances** out) {
    if (auto bad = require(json && out, "null argument")) return bad;
    return guarded([&] {
        *out = new trapcc_distances{trapcc::distances_from_json(json)};
    });
}

trapcc_status trapcc_distances_golden(const char* name, trapcc_distances** out) {
    if (auto bad = require(name && out, "null argument")) return bad;
    return guarded([&] {
        const auto entry = trapcc::golden_lookup(name);
        if (!entry)
            throw trapcc::Error(trapcc::errc::parse_error,
                                std::string("unknown golden configuration '") + name +
                                    "'");
        *out = new trapcc_distances{entry->distances()};
    });
}

trapcc_status trapcc_distances_from_sides(double a, double b, double c, double d,
                                          trapcc_distances** out) {
    if (auto bad = require(out != nullptr, "null argument")) return bad;
    return guarded([&] {
        *out = new trapcc_distances{trapcc::distances_from_sides({a, b, c, d})};
    });
}

trapcc_status trapcc_distances_get(const trapcc_distances* dv, double out_r[6]) {
    if (auto bad = require(dv && out_r, "null argument")) return bad;
    const auto arr = dv->value.to_array();
    for (int i = 0; i < 6; ++i) out_r[i] = arr[i];
    return TRAPCC_OK;
}

trapcc_status trapcc_distances_to_json(const trapcc_distances* dv, char** out_json) {
    if (auto bad = require(dv && out_json, "null argument")) return bad;
    return guarded([&] { *out_json = dup_string(trapcc::distances_to_json(dv->value)); });
}

void trapcc_distances_free(trapcc_distances* dv) { delete dv; }

trapcc_status trapcc_cayley_menger(const trapcc_distances* dv, double* out) {
    if (auto bad = require(dv && out, "null argument")) return bad;
    return guarded([&] { *out = trapcc::cayley_menger(dv->value); });
}

trapcc_status trapcc_delta_squared(const trapcc_distances* dv, double* out) {
    if (auto bad = require(dv && out, "null argument")) return bad;
    return guarded([&] { *out = trapcc::delta_squared(dv->value); });
}

trapcc_status trapcc_trapezoid_residual(const trapcc_distances* dv, double* raw,
                                        double* normalized) {
    if (auto bad = require(dv && raw && normalized, "null argument")) return bad;
    return guarded([&] {
        const auto res = trapcc::trapezoid_residual(dv->value);
        *raw = res.raw;
        *normalized = res.normalized;
    });
}

trapcc_status trapcc_ptolemy_residual(const trapcc_distances* dv, double* out) {
    if (auto bad = require(dv && out, "null argument")) return bad;
    return guarded([&] { *out = trapcc::ptolemy_residual(dv->value); });
}

trapcc_status trapcc_height(const trapcc_distances* dv, double* out) {
    if (auto bad = require(dv && out, "null argument")) return bad;
    return guarded([&] { *out = trapcc::height(dv->value); });
}

trapcc_status trapcc_oriented_areas(const trapcc_distances* dv, double out_areas[4]) {
    if (auto bad = require(dv && out_areas, "null argument")) return bad;
    return guarded([&] {
        const auto areas = trapcc::oriented_areas(dv->value);
        for (int i = 0; i < 4; ++i) out_areas[i] = areas[i];
    });
}

trapcc_status trapcc_check_realizability(const trapcc_distances* dv, int* verdict,
                                   char** violation_or_null) {
    if (auto bad = require(dv && verdict, "null argument")) return bad;
    return guarded([&] {
        const auto report = trapcc::realizability(dv->value);
        *verdict = static_cast<int>(report.verdict);
        if (violation_or_null) *violation_or_null = dup_string(report.violation);
    });
}

trapcc_status trapcc_embed(const trapcc_distances* dv, double out_xy[8],
                           double* out_height) {
    if (auto bad = require(dv && out_xy && out_height, "null argument")) return bad;
    return guarded([&] {
        const auto emb = trapcc::embed(dv->value);
        const std::array<double, 2>* points[4] = {&emb.p1, &emb.p2, &emb.p3, &emb.p4};
        for (int i = 0; i < 4; ++i) {
            out_xy[2 * i] = (*points[i])[0];
            out_xy[2 * i + 1] = (*points[i])[1];
        }
        *out_height = emb.height;
    });
}

trapcc_status trapcc_classify(const trapcc_distances* dv, double tol, int* out_shape) {
    if (auto bad = require(dv && out_shape, "null argument")) return bad;
    return guarded([&] {
        *out_shape = static_cast<int>(trapcc::classify_shape(dv->value, tol).tag);
    });
}

const char* trapcc_shape_name(int shape) {
    return trapcc::shape_tag_name(static_cast<trapcc::ShapeTag>(shape));
}

trapcc_status trapcc_relation_residual(const trapcc_distances* dv, double* raw,
                                       double* normalized) {
    if (auto bad = require(dv && raw && normalized, "null argument")) return bad;
    return guarded([&] {
        const auto res = trapcc::relation_residual(dv->value);
        *raw = res.raw;
        *normalized = res.normalized;
    });
}

trapcc_status trapcc_dziobek_residual(const trapcc_distances* dv, double* gap_ab,
                                      double* gap_bc) {
    if (auto bad = require(dv && gap_ab && gap_bc, "null argument")) return bad;
    return guarded([&] {
        const auto res = trapcc::dziobek_residual(dv->value);
        *gap_ab = res.first;
        *gap_bc = res.second;
    });
}

trapcc_status trapcc_lambda(const trapcc_distances* dv, double* lambda,
                            double* spread) {
    if (auto bad = require(dv && lambda && spread, "null argument")) return bad;
    return guarded([&] {
        const auto mult = trapcc::lambda_dziobek(dv->value);
        *lambda = mult.lambda;
        *spread = mult.lambda_spread;
    });
}

trapcc_status trapcc_grad_parallel_check(const trapcc_distances* dv, double* factor,
                                         double* max_dev) {
    if (auto bad = require(dv && factor && max_dev, "null argument")) return bad;
    return guarded([&] {
        const auto res = trapcc::grad_parallel_check(dv->value);
        *factor = res.factor;
        *max_dev = res.max_dev;
    });
}

trapcc_status trapcc_check_omega(const trapcc_distances* dv, int* in_omega,
                                 char** verdict_json) {
    if (auto bad = require(dv && in_omega, "null argument")) return bad;
    return guarded([&] {
        const auto verdict = trapcc::check_omega(dv->value);
        *in_omega = verdict.in_omega ? 1 : 0;
        if (verdict_json) *verdict_json = dup_string(trapcc::omega_to_json(verdict));
    });
}

trapcc_status trapcc_solve_masses(const trapcc_distances* dv, trapcc_solution** out) {
    if (auto bad = require(dv && out, "null argument")) return bad;
    return guarded([&] {
        *out = new trapcc_solution{trapcc::make_solution(dv->value)};
    });
}

trapcc_status trapcc_solution_masses(const trapcc_solution* sol, double out_m[4]) {
    if (auto bad = require(sol && out_m, "null argument")) return bad;
    const auto m = sol->value.masses.to_array();
    for (int i = 0; i < 4; ++i) out_m[i] = m[i];
    return TRAPCC_OK;
}

trapcc_status trapcc_solution_multipliers(const trapcc_solution* sol, double* lambda,
                                          double* sigma) {
    if (auto bad = require(sol && lambda && sigma, "null argument")) return bad;
    *lambda = sol->value.multipliers.lambda;
    *sigma = sol->value.multipliers.sigma;
    return TRAPCC_OK;
}

trapcc_status trapcc_solution_residuals(const trapcc_solution* sol, double* relation,
                                        double* trapezoid, double* cayley_menger,
                                        double* dziobek) {
    if (auto bad = require(sol && relation && trapezoid && cayley_menger && dziobek,
                           "null argument"))
        return bad;
    *relation = sol->value.residuals.relation;
    *trapezoid = sol->value.residuals.trapezoid;
    *cayley_menger = sol->value.residuals.cayley_menger;
    *dziobek = sol->value.residuals.dziobek;
    return TRAPCC_OK;
}

trapcc_status trapcc_solution_distances(const trapcc_solution* sol, double out_r[6]) {
    if (auto bad = require(sol && out_r, "null argument")) return bad;
    const auto arr = sol->value.distances.to_array();
    for (int i = 0; i < 6; ++i) out_r[i] = arr[i];
    return TRAPCC_OK;
}

trapcc_status trapcc_solution_in_omega(const trapcc_solution* sol, int* in_omega) {
    if (auto bad = require(sol && in_omega, "null argument")) return bad;
    *in_omega = sol->value.in_omega ? 1 : 0;
    return TRAPCC_OK;
}

trapcc_status trapcc_solution_to_json(const trapcc_solution* sol, char** out_json) {
    if (auto bad = require(sol && out_json, "null argument")) return bad;
    return guarded([&] { *out_json = dup_string(trapcc::solution_to_json(sol->value)); });
}

void trapcc_solution_free(trapcc_solution* sol) { delete sol; }

trapcc_status trapcc_solve_b(double a, double c, double d,
                             const char* config_or_null, double* out_b,
                             double* out_residual) {
    if (auto bad = require(out_b != nullptr, "null argument")) return bad;
    return guarded([&] {
        const auto cfg = config_from(config_or_null);
        const auto root = trapcc::solve_b(a, c, d, cfg);
        *out_b = root.b;
        if (out_residual) *out_residual = root.residual_at_root;
    });
}

trapcc_status trapcc_scan(const char* config_text, char** out_csv,
                          char** out_summary_json) {
    if (auto bad = require(out_csv || out_summary_json, "null argument")) return bad;
    return guarded([&] {
        const auto cfg = config_from(config_text);
        const auto result = trapcc::scan_family(cfg);
        if (out_csv) *out_csv = dup_string(trapcc::scan_to_csv(result));
        if (out_summary_json)
            *out_summary_json = dup_string(trapcc::scan_summary_json(result, cfg));
    });
}

trapcc_status trapcc_solve_equal_mass(int mass_i, int mass_j, double c0, double d0,
                                      double a_fixed, const char* config_or_null,
                                      trapcc_solution** out, int* out_boundary) {
    if (auto bad = require(out != nullptr, "null argument")) return bad;
    return guarded([&] {
        auto cfg = config_from(config_or_null);
        cfg.a_fixed = a_fixed;
        const auto res =
            trapcc::solve_equal_mass(mass_i, mass_j, {c0, d0}, a_fixed, cfg);
        *out = new trapcc_solution{res.solution};
        if (out_boundary)
            *out_boundary =
                res.status == trapcc::EqualMassStatus::ConvergedOutsideOmega ? 1 : 0;
    });
}

trapcc_status trapcc_rhombus_branch(double diag_ratio, double side,
                                    trapcc_solution** out) {
    if (auto bad = require(out != nullptr, "null argument")) return bad;
    return guarded([&] {
        *out = new trapcc_solution{trapcc::rhombus_branch(diag_ratio, side)};
    });
}

trapcc_status trapcc_verify_suite(const char* suite, const char* config_or_null,
                                  int* out_passed, char** out_report_json) {
    if (auto bad = require(suite && out_passed, "null argument")) return bad;
    return guarded([&] {
        const std::string which = suite;
        const auto cfg = config_from(config_or_null);
        std::vector<trapcc::TheoremReport> reports;

        const auto corpus_solutions = [&]() {
            return trapcc::scan_family(cfg).accepted();
        };
        const auto golden_distances = [&]() {
            std::vector<trapcc::DistanceVector> out;
            for (const auto& entry : trapcc::golden_registry())
                out.push_back(entry.distances());
            return out;
        };

        if (which == "mass-ordering" || which == "all")
            reports.push_back(trapcc::verify_mass_ordering(corpus_solutions()));
        if (which == "lemma-r3412" || which == "all")
            reports.push_back(trapcc::verify_lemma_r3412(
                trapcc::sample_omega_trapezoids(1000, 20240817, cfg.a_fixed)));
        if (which == "decreasing-ratio" || which == "all")
            reports.push_back(trapcc::verify_decreasing_ratio_corpus(
                trapcc::sample_omega_trapezoids(1000, 20240817, cfg.a_fixed)));
        if (which == "symmetry" || which == "all")
            reports.push_back(trapcc::verify_symmetry_propositions(1e-6, cfg));
        if (which == "gradcheck" || which == "all") {
            auto corpus = golden_distances();
            const auto sampled =
                trapcc::sample_omega_trapezoids(100, 7151, cfg.a_fixed);
            corpus.insert(corpus.end(), sampled.begin(), sampled.end());
            reports.push_back(trapcc::verify_gradient_identity(corpus));
        }
        if (reports.empty())
            throw trapcc::Error(trapcc::errc::config_error,
                                "unknown suite '" + which + "'");

        bool passed = true;
        nlohmann::json bundle = nlohmann::json::array();
        for (const auto& report : reports) {
            passed = passed && report.passed();
            bundle.push_back(nlohmann::json::parse(trapcc::report_to_json(report)));
        }
        *out_passed = passed ? 1 : 0;
        if (out_report_json) *out_report_json = dup_string(bundle.dump(2));
    });
}

} // extern "C"
