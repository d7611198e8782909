#pragma once

#include "trapcc/solver.hpp"
#include "trapcc/types.hpp"
#include "trapcc/verify.hpp"

#include <string>

namespace trapcc {

// DistanceVector JSON object with keys r12, r13, r14, r23, r24, r34; values
// may be numbers or decimal strings (strings preserve printed precision up to
// nearest-double rounding). TrapezoidShape uses keys a, b, c, d.
DistanceVector distances_from_json(const std::string& text);
std::string distances_to_json(const DistanceVector& r);

TrapezoidShape shape_from_json(const std::string& text);

// CCSolution as a flat JSON object: distances, masses, multipliers, spreads,
// residuals, shape tag, Omega flag, U and I.
std::string solution_to_json(const CCSolution& sol);

// Scan output: CSV rows (c, d, b, e, f, m2, m3, m4, lambda, sigma, shape,
// in_omega) and a JSON summary with counts, failure taxonomy, and the mass
// ranges over the accepted set. Numbers are printed with %.17g so repeated
// runs compare byte-for-byte.
std::string scan_to_csv(const ScanResult& result);
std::string scan_summary_json(const ScanResult& result, const ScanConfig& cfg);

std::string report_to_json(const TheoremReport& report);
std::string report_to_table(const TheoremReport& report);

std::string omega_to_json(const OmegaVerdict& verdict);

// Flat "key = value" run configuration. Unknown keys are rejected; '#' starts
// a comment. Later assignments override earlier ones, so command-line
// overrides can simply be appended to the file text.
struct RunConfig {
    ScanConfig scan;
    std::string format = "table";  // json | csv | table
};

RunConfig parse_run_config(const std::string& text);

} // namespace trapcc
