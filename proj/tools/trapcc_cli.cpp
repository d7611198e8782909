// Command-line front end for the trapezoidal central-configuration library.
// Talks to the core exclusively through the C API in trapcc/trapcc.h.

#include <trapcc/trapcc.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct DistancesDeleter {
    void operator()(trapcc_distances* p) const { trapcc_distances_free(p); }
};
struct SolutionDeleter {
    void operator()(trapcc_solution* p) const { trapcc_solution_free(p); }
};
using DistancesPtr = std::unique_ptr<trapcc_distances, DistancesDeleter>;
using SolutionPtr = std::unique_ptr<trapcc_solution, SolutionDeleter>;

std::string take_string(char* owned) {
    if (!owned) return {};
    std::string out = owned;
    trapcc_string_free(owned);
    return out;
}

[[noreturn]] void fail(int code, const std::string& message) {
    std::cerr << "error: " << message << "\n";
    std::exit(code);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(kExitUsage, "cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Shared input/config options.
struct CommonOpts {
    std::string golden;
    std::string input_file;
    std::string inline_json;
    std::string config_file;
    std::string format = "table";
    int threads = 0;  // 0 = leave default
    // --tol-NAME overrides, forwarded to the config as tol_NAME lines.
    std::map<std::string, double> tol_values;
    std::map<std::string, CLI::Option*> tol_options;

    void attach_input(CLI::App* cmd) {
        auto* group = cmd->add_option_group("input");
        group->add_option("--golden", golden, "named configuration (E1, E2, E3, SQ, ISO)");
        group->add_option("--input", input_file, "path to a DistanceVector JSON file");
        group->add_option("--json", inline_json, "inline DistanceVector JSON");
        group->require_option(1);
    }
    void attach_config(CLI::App* cmd) {
        cmd->add_option("--config", config_file, "flat key = value config file");
        static const char* keys[] = {"root",         "relation",     "trapezoid",
                                     "cayley_menger", "mass",        "lambda_spread",
                                     "sigma_spread", "classify",     "embed",
                                     "omega_band",   "parallelogram"};
        for (const char* key : keys) {
            std::string flag = std::string("--tol-") + key;
            std::replace(flag.begin(), flag.end(), '_', '-');
            tol_options[key] =
                cmd->add_option(flag, tol_values[key], "override tol_" + std::string(key));
        }
        cmd->add_option("--threads", threads, "scan worker threads");
    }
    void attach_format(CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "csv", "table"}));
    }

    std::string config_text() const {
        std::string text;
        if (!config_file.empty()) text = read_file(config_file) + "\n";
        for (const auto& [key, option] : tol_options) {
            if (option->count() > 0) {
                std::ostringstream line;
                line.precision(17);
                line << "tol_" << key << " = " << tol_values.at(key) << "\n";
                text += line.str();
            }
        }
        if (threads > 0) text += "threads = " + std::to_string(threads) + "\n";
        return text;
    }

    DistancesPtr distances() const {
        trapcc_distances* raw = nullptr;
        trapcc_status status = TRAPCC_ERR_INVALID_ARGUMENT;
        if (!golden.empty())
            status = trapcc_distances_golden(golden.c_str(), &raw);
        else if (!input_file.empty())
            status = trapcc_distances_parse_json(read_file(input_file).c_str(), &raw);
        else if (!inline_json.empty())
            status = trapcc_distances_parse_json(inline_json.c_str(), &raw);
        if (status != TRAPCC_OK) fail(kExitUsage, trapcc_last_error());
        return DistancesPtr(raw);
    }
};

// Tolerances the CLI applies to pass/fail decisions; these mirror the library
// defaults and follow the same config keys.
struct GateTols {
    double relation = 1e-10;
    double trapezoid = 1e-12;
    double cayley_menger = 1e-10;
    double grad = 1e-6;

    void load(const std::string& config_text) {
        std::istringstream in(config_text);
        std::string line;
        while (std::getline(in, line)) {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            auto trim = [](std::string s) {
                const auto b = s.find_first_not_of(" \t\r");
                const auto e = s.find_last_not_of(" \t\r");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key == "tol_relation") relation = std::strtod(value.c_str(), nullptr);
            if (key == "tol_trapezoid") trapezoid = std::strtod(value.c_str(), nullptr);
            if (key == "tol_cayley_menger")
                cayley_menger = std::strtod(value.c_str(), nullptr);
        }
    }
};

void print_kv(const json& obj) {
    for (const auto& item : obj.items()) {
        std::ostringstream value;
        if (item.value().is_number_float())
            value << std::setprecision(17) << item.value().get<double>();
        else
            value << item.value();
        std::printf("  %-24s %s\n", item.key().c_str(), value.str().c_str());
    }
}

void emit(const std::string& format, const json& obj) {
    if (format == "json")
        std::cout << obj.dump(2) << "\n";
    else
        print_kv(obj);
}

int cmd_validate(const CommonOpts& opts) {
    const auto dv = opts.distances();
    GateTols tols;
    tols.load(opts.config_text());

    double r[6];
    trapcc_distances_get(dv.get(), r);
    int verdict = 0;
    char* violation = nullptr;
    trapcc_check_realizability(dv.get(), &verdict, &violation);
    const std::string violation_text = take_string(violation);

    double h = 0.0, traw = 0.0, tnorm = 0.0, rraw = 0.0, rnorm = 0.0;
    double dz1 = 0.0, dz2 = 0.0, ptolemy = 0.0, d2 = 0.0;
    trapcc_cayley_menger(dv.get(), &h);
    trapcc_trapezoid_residual(dv.get(), &traw, &tnorm);
    trapcc_relation_residual(dv.get(), &rraw, &rnorm);
    trapcc_dziobek_residual(dv.get(), &dz1, &dz2);
    trapcc_ptolemy_residual(dv.get(), &ptolemy);
    trapcc_delta_squared(dv.get(), &d2);
    int in_omega = 0;
    char* omega_json = nullptr;
    trapcc_check_omega(dv.get(), &in_omega, &omega_json);
    int shape = 0;
    trapcc_classify(dv.get(), 1e-7, &shape);

    const double cm_scaled = std::abs(h) / std::pow(r[1], 8.0);
    const bool planar = verdict == TRAPCC_PLANAR;
    const bool trapezoid_ok = std::abs(tnorm) <= tols.trapezoid;
    const bool cm_ok = cm_scaled <= tols.cayley_menger;
    const bool relation_ok = std::abs(rnorm) <= tols.relation;
    const bool pass = planar && trapezoid_ok && cm_ok && relation_ok && in_omega;

    json out = {
        {"realizability", verdict == TRAPCC_REALIZABLE_3D ? "Realizable3D"
                          : verdict == TRAPCC_PLANAR      ? "Planar"
                                                          : "NotRealizable"},
        {"cayley_menger", h},
        {"cayley_menger_scaled", cm_scaled},
        {"trapezoid_raw", traw},
        {"trapezoid_normalized", tnorm},
        {"relation_raw", rraw},
        {"relation_normalized", rnorm},
        {"dziobek_gap_ab", dz1},
        {"dziobek_gap_bc", dz2},
        {"delta_squared", d2},
        {"ptolemy", ptolemy},
        {"shape", trapcc_shape_name(shape)},
        {"in_omega", in_omega != 0},
        {"omega", json::parse(take_string(omega_json))},
        {"pass", pass},
    };
    if (!violation_text.empty()) out["violation"] = violation_text;
    emit(opts.format, out);
    return pass ? kExitOk : kExitCheckFailed;
}

int cmd_masses(const CommonOpts& opts, bool force) {
    const auto dv = opts.distances();
    GateTols tols;
    tols.load(opts.config_text());
    double rraw = 0.0, rnorm = 0.0;
    trapcc_relation_residual(dv.get(), &rraw, &rnorm);
    if (std::abs(rnorm) > tols.relation && !force) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3e", rnorm);
        fail(kExitCheckFailed,
             std::string("relation residual ") + buf +
                 " exceeds tolerance; not a central configuration (use --force)");
    }
    trapcc_solution* raw = nullptr;
    if (trapcc_solve_masses(dv.get(), &raw) != TRAPCC_OK)
        fail(kExitCheckFailed, trapcc_last_error());
    SolutionPtr sol(raw);
    char* text = nullptr;
    trapcc_solution_to_json(sol.get(), &text);
    emit(opts.format, json::parse(take_string(text)));
    return kExitOk;
}

int cmd_scan(const CommonOpts& opts, const std::string& output,
             const std::string& summary_path) {
    char* csv = nullptr;
    char* summary = nullptr;
    if (trapcc_scan(opts.config_text().c_str(), &csv, &summary) != TRAPCC_OK)
        fail(kExitUsage, trapcc_last_error());
    const std::string csv_text = take_string(csv);
    const std::string summary_text = take_string(summary);
    if (output.empty()) {
        std::cout << csv_text;
    } else {
        std::ofstream out(output);
        if (!out) fail(kExitUsage, "cannot write " + output);
        out << csv_text;
    }
    if (summary_path.empty()) {
        std::cerr << summary_text << "\n";
    } else {
        std::ofstream out(summary_path);
        if (!out) fail(kExitUsage, "cannot write " + summary_path);
        out << summary_text << "\n";
    }
    return kExitOk;
}

int cmd_solve_equal_mass(const CommonOpts& opts, std::pair<int, int> pair,
                         std::pair<double, double> init, double a_fixed) {
    trapcc_solution* raw = nullptr;
    int boundary = 0;
    const auto status =
        trapcc_solve_equal_mass(pair.first, pair.second, init.first, init.second,
                                a_fixed, opts.config_text().c_str(), &raw, &boundary);
    if (status != TRAPCC_OK) fail(kExitCheckFailed, trapcc_last_error());
    SolutionPtr sol(raw);
    char* text = nullptr;
    trapcc_solution_to_json(sol.get(), &text);
    json out = json::parse(take_string(text));
    out["status"] = boundary ? "converged_outside_omega" : "converged";
    emit(opts.format, out);
    return kExitOk;
}

int cmd_verify(const CommonOpts& opts, const std::string& suite) {
    int passed = 0;
    char* report = nullptr;
    if (trapcc_verify_suite(suite.c_str(), opts.config_text().c_str(), &passed,
                            &report) != TRAPCC_OK)
        fail(kExitUsage, trapcc_last_error());
    const json bundle = json::parse(take_string(report));
    if (opts.format == "json") {
        std::cout << bundle.dump(2) << "\n";
    } else {
        for (const auto& item : bundle) {
            std::printf("%s %s  (cases: %d)\n",
                        item.at("passed").get<bool>() ? "[PASS]" : "[FAIL]",
                        item.at("theorem").get<std::string>().c_str(),
                        item.at("cases_checked").get<int>());
            for (const auto& note : item.at("failure_notes"))
                std::printf("    %s\n", note.get<std::string>().c_str());
        }
    }
    return passed ? kExitOk : kExitCheckFailed;
}

int cmd_gradcheck(const CommonOpts& opts, double tol) {
    const auto dv = opts.distances();
    double factor = 0.0, max_dev = 0.0;
    if (trapcc_grad_parallel_check(dv.get(), &factor, &max_dev) != TRAPCC_OK)
        fail(kExitCheckFailed, trapcc_last_error());
    emit(opts.format, {{"factor_8h2", factor},
                       {"max_deviation", max_dev},
                       {"tolerance", tol},
                       {"pass", max_dev <= tol}});
    return max_dev <= tol ? kExitOk : kExitCheckFailed;
}

int cmd_embed(const CommonOpts& opts, const std::string& output, bool check) {
    const auto dv = opts.distances();
    double xy[8];
    double h = 0.0;
    if (trapcc_embed(dv.get(), xy, &h) != TRAPCC_OK)
        fail(kExitCheckFailed, trapcc_last_error());

    std::ostringstream csv;
    csv << "label,x,y\n";
    csv.precision(17);
    for (int i = 0; i < 4; ++i)
        csv << 'p' << i + 1 << ',' << xy[2 * i] << ',' << xy[2 * i + 1] << '\n';
    if (output.empty()) {
        std::cout << csv.str();
    } else {
        std::ofstream out(output);
        if (!out) fail(kExitUsage, "cannot write " + output);
        out << csv.str();
    }

    if (check) {
        double r[6];
        trapcc_distances_get(dv.get(), r);
        auto dist = [&](int i, int j) {
            return std::hypot(xy[2 * i] - xy[2 * j], xy[2 * i + 1] - xy[2 * j + 1]);
        };
        const double got[6] = {dist(0, 1), dist(0, 2), dist(0, 3),
                               dist(1, 2), dist(1, 3), dist(2, 3)};
        double worst = 0.0;
        for (int k = 0; k < 6; ++k)
            worst = std::max(worst, std::abs(got[k] - r[k]) / r[k]);
        std::cerr << "round-trip max relative error: " << worst << "\n";
        if (worst > 1e-9) return kExitCheckFailed;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"four-body trapezoidal central configurations on mutual distances"};
    app.set_version_flag("--version", trapcc_version());
    app.require_subcommand(1);

    CommonOpts validate_opts, masses_opts, scan_opts, eqm_opts, verify_opts,
        grad_opts, embed_opts;
    bool force = false;
    std::string scan_output, scan_summary, verify_suite = "all", embed_output;
    bool embed_check = false;
    double grad_tol = 1e-6;
    std::vector<int> pair{3, 4};
    std::vector<double> init{5.2, 7.6};
    double a_fixed = 8.0;

    auto* validate = app.add_subcommand("validate", "run every residual and verdict");
    validate_opts.attach_input(validate);
    validate_opts.attach_config(validate);
    validate_opts.attach_format(validate);

    auto* masses = app.add_subcommand("masses", "masses and multipliers (m1 = 1)");
    masses_opts.attach_input(masses);
    masses_opts.attach_config(masses);
    masses_opts.attach_format(masses);
    masses->add_flag("--force", force, "emit masses even if the relation fails");

    auto* scan = app.add_subcommand("scan", "scan the (c, d) family; CSV + summary");
    scan_opts.attach_config(scan);
    scan->add_option("--output", scan_output, "CSV output path (default stdout)");
    scan->add_option("--summary", scan_summary, "summary JSON path (default stderr)");

    auto* eqm = app.add_subcommand("solve-equal-mass", "equal-mass constrained solve");
    eqm_opts.attach_config(eqm);
    eqm_opts.attach_format(eqm);
    eqm->add_option("--pair", pair, "mass indices, e.g. --pair 3 4")->expected(2);
    eqm->add_option("--init", init, "initial (c, d)")->expected(2);
    eqm->add_option("--a", a_fixed, "fixed base length");

    auto* verify = app.add_subcommand("verify", "theorem verification suites");
    verify_opts.attach_config(verify);
    verify_opts.attach_format(verify);
    verify->add_option("--suite", verify_suite,
                       "all | mass-ordering | lemma-r3412 | decreasing-ratio | "
                       "symmetry | gradcheck");

    auto* gradcheck = app.add_subcommand("gradcheck", "gradient-parallelism check");
    grad_opts.attach_input(gradcheck);
    grad_opts.attach_format(gradcheck);
    gradcheck->add_option("--tol-grad", grad_tol, "max allowed deviation");

    auto* embed = app.add_subcommand("embed", "planar coordinates as label,x,y CSV");
    embed_opts.attach_input(embed);
    embed->add_option("--output", embed_output, "output path (default stdout)");
    embed->add_flag("--check", embed_check, "re-validate distances from coordinates");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (validate->parsed()) return cmd_validate(validate_opts);
    if (masses->parsed()) return cmd_masses(masses_opts, force);
    if (scan->parsed()) return cmd_scan(scan_opts, scan_output, scan_summary);
    if (eqm->parsed())
        return cmd_solve_equal_mass(eqm_opts, {pair[0], pair[1]}, {init[0], init[1]},
                                    a_fixed);
    if (verify->parsed()) return cmd_verify(verify_opts, verify_suite);
    if (gradcheck->parsed()) return cmd_gradcheck(grad_opts, grad_tol);
    if (embed->parsed()) return cmd_embed(embed_opts, embed_output, embed_check);
    return kExitUsage;
}
