#include "trapcc/io.hpp"

#include "trapcc/error.hpp"
#include "trapcc/geometry.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

namespace trapcc {

namespace {

using nlohmann::json;

double number_from(const json& value, const std::string& key) {
    if (value.is_number()) return value.get<double>();
    if (value.is_string()) {
        const std::string text = value.get<std::string>();
        char* end = nullptr;
        const double parsed = std::strtod(text.c_str(), &end);
        if (end == text.c_str() || *end != '\0')
            throw Error(errc::parse_error, "key '" + key + "': not a decimal number");
        return parsed;
    }
    throw Error(errc::parse_error, "key '" + key + "': expected number or string");
}

json parse_object(const std::string& text) {
    json parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded())
        throw Error(errc::parse_error, "malformed JSON input");
    if (!parsed.is_object())
        throw Error(errc::parse_error, "expected a JSON object");
    return parsed;
}

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

DistanceVector distances_from_json(const std::string& text) {
    const json obj = parse_object(text);
    static const char* keys[6] = {"r12", "r13", "r14", "r23", "r24", "r34"};
    for (const auto& item : obj.items()) {
        if (std::find_if(std::begin(keys), std::end(keys), [&](const char* k) {
                return item.key() == k;
            }) == std::end(keys))
            throw Error(errc::parse_error, "unknown key '" + item.key() + "'");
    }
    std::array<double, 6> values{};
    for (int i = 0; i < 6; ++i) {
        if (!obj.contains(keys[i]))
            throw Error(errc::parse_error, std::string("missing key '") + keys[i] + "'");
        values[i] = number_from(obj.at(keys[i]), keys[i]);
    }
    const DistanceVector r = DistanceVector::from_array(values);
    r.validate();
    return r;
}

std::string distances_to_json(const DistanceVector& r) {
    const json obj = {{"r12", r.r12}, {"r13", r.r13}, {"r14", r.r14},
                      {"r23", r.r23}, {"r24", r.r24}, {"r34", r.r34}};
    return obj.dump();
}

TrapezoidShape shape_from_json(const std::string& text) {
    const json obj = parse_object(text);
    static const char* keys[4] = {"a", "b", "c", "d"};
    for (const auto& item : obj.items()) {
        if (std::find_if(std::begin(keys), std::end(keys), [&](const char* k) {
                return item.key() == k;
            }) == std::end(keys))
            throw Error(errc::parse_error, "unknown key '" + item.key() + "'");
    }
    TrapezoidShape s;
    double* fields[4] = {&s.a, &s.b, &s.c, &s.d};
    for (int i = 0; i < 4; ++i) {
        if (!obj.contains(keys[i]))
            throw Error(errc::parse_error, std::string("missing key '") + keys[i] + "'");
        *fields[i] = number_from(obj.at(keys[i]), keys[i]);
    }
    s.validate();
    return s;
}

std::string solution_to_json(const CCSolution& sol) {
    const auto& r = sol.distances;
    const auto& m = sol.masses;
    const json obj = {
        {"r12", r.r12}, {"r13", r.r13}, {"r14", r.r14},
        {"r23", r.r23}, {"r24", r.r24}, {"r34", r.r34},
        {"m1", m.m1}, {"m2", m.m2}, {"m3", m.m3}, {"m4", m.m4},
        {"mass_consistency", m.consistency},
        {"lambda", sol.multipliers.lambda},
        {"sigma", sol.multipliers.sigma},
        {"lambda_spread", sol.multipliers.lambda_spread},
        {"sigma_spread", sol.multipliers.sigma_spread},
        {"residual_relation", sol.residuals.relation},
        {"residual_trapezoid", sol.residuals.trapezoid},
        {"residual_cayley_menger", sol.residuals.cayley_menger},
        {"residual_dziobek", sol.residuals.dziobek},
        {"shape", shape_tag_name(sol.shape)},
        {"in_omega", sol.in_omega},
        {"potential", sol.potential},
        {"inertia", sol.inertia},
    };
    return obj.dump();
}

std::string scan_to_csv(const ScanResult& result) {
    std::string out = "c,d,b,e,f,m2,m3,m4,lambda,sigma,shape,in_omega\n";
    for (const auto& cell : result.cells) {
        for (const auto& sol : cell.accepted) {
            const auto& r = sol.distances;
            out += g17(r.r34);
            out += ',';
            out += g17(r.r14);
            out += ',';
            out += g17(r.r23);
            out += ',';
            out += g17(r.r13);
            out += ',';
            out += g17(r.r24);
            out += ',';
            out += g17(sol.masses.m2);
            out += ',';
            out += g17(sol.masses.m3);
            out += ',';
            out += g17(sol.masses.m4);
            out += ',';
            out += g17(sol.multipliers.lambda);
            out += ',';
            out += g17(sol.multipliers.sigma);
            out += ',';
            out += shape_tag_name(sol.shape);
            out += ',';
            out += sol.in_omega ? '1' : '0';
            out += '\n';
        }
    }
    return out;
}

std::string scan_summary_json(const ScanResult& result, const ScanConfig& cfg) {
    std::map<std::string, int> failures;
    int accepted = 0, cells_with_solutions = 0;
    double mass_min[4], mass_max[4];
    for (int k = 0; k < 4; ++k) {
        mass_min[k] = 0.0;
        mass_max[k] = 0.0;
    }
    bool first = true;
    for (const auto& cell : result.cells) {
        if (!cell.accepted.empty()) ++cells_with_solutions;
        for (const auto& f : cell.failures) ++failures[cell_failure_name(f)];
        for (const auto& sol : cell.accepted) {
            ++accepted;
            const auto m = sol.masses.to_array();
            for (int k = 0; k < 4; ++k) {
                if (first || m[k] < mass_min[k]) mass_min[k] = m[k];
                if (first || m[k] > mass_max[k]) mass_max[k] = m[k];
            }
            first = false;
        }
    }
    json summary = {
        {"a_fixed", cfg.a_fixed},
        {"grid", {{"c_min", cfg.c_min},
                  {"c_max", cfg.c_max},
                  {"c_steps", cfg.c_steps},
                  {"d_min", cfg.d_min},
                  {"d_max", cfg.d_max},
                  {"d_steps", cfg.d_steps}}},
        {"cells_total", result.cells.size()},
        {"cells_with_solutions", cells_with_solutions},
        {"accepted", accepted},
        {"failures", failures},
    };
    if (accepted > 0) {
        summary["mass_ranges"] = {
            {"m1", {mass_min[0], mass_max[0]}},
            {"m2", {mass_min[1], mass_max[1]}},
            {"m3", {mass_min[2], mass_max[2]}},
            {"m4", {mass_min[3], mass_max[3]}},
        };
    } else {
        summary["note"] = "no cell passed the acceptance gates; the configured "
                          "region contains no admissible solutions";
    }
    return summary.dump(2);
}

std::string report_to_json(const TheoremReport& report) {
    json failures = json::array();
    for (std::size_t k = 0; k < report.failures.size(); ++k)
        failures.push_back(json::parse(solution_to_json(report.failures[k])));
    const json obj = {
        {"theorem", report.theorem},
        {"cases_checked", report.cases_checked},
        {"passed", report.passed()},
        {"failures", failures},
        {"failure_notes", report.failure_notes},
        {"max_slack_violation", report.max_slack_violation},
    };
    return obj.dump(2);
}

std::string report_to_table(const TheoremReport& report) {
    std::ostringstream out;
    out << (report.passed() ? "[PASS] " : "[FAIL] ") << report.theorem
        << "  (cases: " << report.cases_checked << ")\n";
    for (std::size_t k = 0; k < report.failure_notes.size(); ++k) {
        out << "    " << report.failure_notes[k] << "\n";
        if (k < report.failures.size())
            out << "      witness: " << solution_to_json(report.failures[k]) << "\n";
    }
    return out.str();
}

std::string omega_to_json(const OmegaVerdict& verdict) {
    json violations = json::array();
    for (const auto& v : verdict.violations)
        violations.push_back({{"inequality", v.inequality}, {"slack", v.slack}});
    const json obj = {{"in_omega", verdict.in_omega}, {"violations", violations}};
    return obj.dump();
}

RunConfig parse_run_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream stream(text);
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto begin = s.find_first_not_of(" \t\r");
        const auto end = s.find_last_not_of(" \t\r");
        return begin == std::string::npos ? std::string() : s.substr(begin, end - begin + 1);
    };
    while (std::getline(stream, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(errc::config_error,
                        "line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        auto as_number = [&]() {
            char* end = nullptr;
            const double parsed = std::strtod(value.c_str(), &end);
            if (end == value.c_str() || *end != '\0')
                throw Error(errc::config_error, "line " + std::to_string(lineno) +
                                                    ": bad number '" + value + "'");
            return parsed;
        };
        auto as_int = [&]() {
            const double parsed = as_number();
            const int n = static_cast<int>(parsed);
            if (parsed != n)
                throw Error(errc::config_error, "line " + std::to_string(lineno) +
                                                    ": expected an integer");
            return n;
        };
        ScanConfig& scan = cfg.scan;
        if (key == "a_fixed") scan.a_fixed = as_number();
        else if (key == "c_min") scan.c_min = as_number();
        else if (key == "c_max") scan.c_max = as_number();
        else if (key == "c_steps") scan.c_steps = as_int();
        else if (key == "d_min") scan.d_min = as_number();
        else if (key == "d_max") scan.d_max = as_number();
        else if (key == "d_steps") scan.d_steps = as_int();
        else if (key == "panels") scan.panels = as_int();
        else if (key == "threads") scan.threads = as_int();
        else if (key == "tol_root") scan.tol.root = as_number();
        else if (key == "tol_relation") scan.tol.relation = as_number();
        else if (key == "tol_trapezoid") scan.tol.trapezoid = as_number();
        else if (key == "tol_cayley_menger") scan.tol.cayley_menger = as_number();
        else if (key == "tol_mass") scan.tol.mass_consistency = as_number();
        else if (key == "tol_lambda_spread") scan.tol.lambda_spread = as_number();
        else if (key == "tol_sigma_spread") scan.tol.sigma_spread = as_number();
        else if (key == "tol_classify") scan.tol.classify = as_number();
        else if (key == "tol_embed") scan.tol.embed = as_number();
        else if (key == "tol_omega_band") scan.tol.omega_band = as_number();
        else if (key == "tol_parallelogram") scan.tol.parallelogram = as_number();
        else if (key == "format") {
            if (value != "json" && value != "csv" && value != "table")
                throw Error(errc::config_error, "line " + std::to_string(lineno) +
                                                    ": format must be json, csv or table");
            cfg.format = value;
        } else {
            throw Error(errc::config_error,
                        "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    return cfg;
}

} // namespace trapcc
