// Exercises the shared-library C interface end to end.

#include <trapcc/trapcc.h>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstring>
#include <string>

namespace {

double rel(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

std::string take(char* owned) {
    std::string out = owned ? owned : "";
    trapcc_string_free(owned);
    return out;
}

} // namespace

TEST_CASE("golden lookup and mass solve through the C API") {
    trapcc_distances* dv = nullptr;
    REQUIRE(trapcc_distances_golden("E1", &dv) == TRAPCC_OK);

    double r[6];
    REQUIRE(trapcc_distances_get(dv, r) == TRAPCC_OK);
    CHECK(r[0] == 8.0);
    CHECK(r[4] == 8.75);

    trapcc_solution* sol = nullptr;
    REQUIRE(trapcc_solve_masses(dv, &sol) == TRAPCC_OK);
    double m[4];
    REQUIRE(trapcc_solution_masses(sol, m) == TRAPCC_OK);
    CHECK(rel(m[0] / m[1], 1.0194571510769873907) < 1e-9);
    CHECK(rel(m[0] / m[3], 7.9942119368105807422) < 1e-9);

    double relation = 0, trapezoid = 0, cm = 0, dz = 0;
    REQUIRE(trapcc_solution_residuals(sol, &relation, &trapezoid, &cm, &dz) ==
            TRAPCC_OK);
    CHECK(relation < 1e-10);
    CHECK(trapezoid < 1e-12);

    int in_omega = 0;
    REQUIRE(trapcc_solution_in_omega(sol, &in_omega) == TRAPCC_OK);
    CHECK(in_omega == 1);

    char* json_text = nullptr;
    REQUIRE(trapcc_solution_to_json(sol, &json_text) == TRAPCC_OK);
    const auto parsed = nlohmann::json::parse(take(json_text));
    CHECK(parsed["shape"] == "GenericTrapezoid");

    trapcc_solution_free(sol);
    trapcc_distances_free(dv);
}

TEST_CASE("error paths set status and message") {
    trapcc_distances* dv = nullptr;
    CHECK(trapcc_distances_golden("E9", &dv) == TRAPCC_ERR_PARSE);
    CHECK(std::strlen(trapcc_last_error()) > 0);

    CHECK(trapcc_distances_parse_json("{", &dv) == TRAPCC_ERR_PARSE);
    CHECK(trapcc_distances_create(nullptr, &dv) == TRAPCC_ERR_INVALID_ARGUMENT);

    const double bad[6] = {1, 1, 1, 1, 1, -1};
    CHECK(trapcc_distances_create(bad, &dv) == TRAPCC_ERR_INVALID_DISTANCE);

    trapcc_distances* sides = nullptr;
    CHECK(trapcc_distances_from_sides(1, 1, 1, 1, &sides) ==
          TRAPCC_ERR_PARALLELOGRAM_DEGENERATE);
}

TEST_CASE("geometry scalars and embedding through the C API") {
    trapcc_distances* dv = nullptr;
    REQUIRE(trapcc_distances_golden("SQ", &dv) == TRAPCC_OK);

    double value = 1.0;
    REQUIRE(trapcc_cayley_menger(dv, &value) == TRAPCC_OK);
    CHECK(std::abs(value) < 1e-12);

    double raw = 0, norm = 0;
    REQUIRE(trapcc_trapezoid_residual(dv, &raw, &norm) == TRAPCC_OK);
    CHECK(std::abs(raw) < 1e-14);

    REQUIRE(trapcc_height(dv, &value) == TRAPCC_OK);
    CHECK(rel(value, 1.0) < 1e-14);

    double xy[8];
    double h = 0;
    REQUIRE(trapcc_embed(dv, xy, &h) == TRAPCC_OK);
    CHECK(xy[0] == 0.0);
    CHECK(rel(xy[2], 1.0) < 1e-14);
    CHECK(rel(h, 1.0) < 1e-14);

    int shape = -1;
    REQUIRE(trapcc_classify(dv, 1e-7, &shape) == TRAPCC_OK);
    CHECK(shape == TRAPCC_SHAPE_SQUARE);
    CHECK(std::string(trapcc_shape_name(shape)) == "Square");

    int verdict = -1;
    REQUIRE(trapcc_check_realizability(dv, &verdict, nullptr) == TRAPCC_OK);
    CHECK(verdict == TRAPCC_PLANAR);

    double areas[4];
    REQUIRE(trapcc_oriented_areas(dv, areas) == TRAPCC_OK);
    CHECK(rel(areas[0], 0.5) < 1e-14);
    CHECK(rel(areas[1], -0.5) < 1e-14);

    trapcc_distances_free(dv);
}

TEST_CASE("solver entry points through the C API") {
    trapcc_distances* e1 = nullptr;
    REQUIRE(trapcc_distances_golden("E1", &e1) == TRAPCC_OK);
    double r[6];
    trapcc_distances_get(e1, r);

    double b = 0, residual = 0;
    REQUIRE(trapcc_solve_b(8.0, r[5], r[2], nullptr, &b, &residual) == TRAPCC_OK);
    CHECK(rel(b, r[3]) < 1e-9);

    char* csv = nullptr;
    char* summary = nullptr;
    const char* config =
        "c_min = 4.0\nc_max = 4.3\nc_steps = 3\n"
        "d_min = 7.4\nd_max = 7.6\nd_steps = 3\n";
    REQUIRE(trapcc_scan(config, &csv, &summary) == TRAPCC_OK);
    const std::string csv_text = take(csv);
    CHECK(csv_text.rfind("c,d,b,", 0) == 0);
    const auto parsed = nlohmann::json::parse(take(summary));
    CHECK(parsed["cells_total"] == 9);

    trapcc_solution* iso = nullptr;
    int boundary = -1;
    REQUIRE(trapcc_solve_equal_mass(3, 4, 5.2, 7.6, 8.0, nullptr, &iso,
                                    &boundary) == TRAPCC_OK);
    CHECK(boundary == 0);
    double m[4];
    trapcc_solution_masses(iso, m);
    CHECK(std::abs(m[0] - m[1]) < 1e-8);
    trapcc_solution_free(iso);

    trapcc_solution* rhombus = nullptr;
    REQUIRE(trapcc_solve_equal_mass(2, 4, 6.8, 7.7, 8.0, nullptr, &rhombus,
                                    &boundary) == TRAPCC_OK);
    CHECK(boundary == 1);
    double rr[6];
    trapcc_solution_distances(rhombus, rr);
    CHECK(std::abs(rr[0] - rr[5]) < 2e-5 * 8.0);
    trapcc_solution_free(rhombus);

    trapcc_solution* branch = nullptr;
    REQUIRE(trapcc_rhombus_branch(1.0, 1.0, &branch) == TRAPCC_OK);
    trapcc_solution_masses(branch, m);
    CHECK(rel(m[1], 1.0) < 1e-14);
    trapcc_solution_free(branch);
    CHECK(trapcc_rhombus_branch(3.0, 1.0, &branch) ==
          TRAPCC_ERR_NO_POSITIVE_MASSES);

    trapcc_distances_free(e1);
}

TEST_CASE("verification suite through the C API") {
    int passed = -1;
    char* report = nullptr;
    REQUIRE(trapcc_verify_suite("decreasing-ratio", nullptr, &passed, &report) ==
            TRAPCC_OK);
    CHECK(passed == 1);
    const auto parsed = nlohmann::json::parse(take(report));
    REQUIRE(parsed.is_array());
    CHECK(parsed[0]["cases_checked"] == 1000);

    CHECK(trapcc_verify_suite("bogus", nullptr, &passed, nullptr) ==
          TRAPCC_ERR_CONFIG);
}

TEST_CASE("omega and gradient checks through the C API") {
    trapcc_distances* e2 = nullptr;
    REQUIRE(trapcc_distances_golden("E2", &e2) == TRAPCC_OK);

    int in_omega = 0;
    char* verdict = nullptr;
    REQUIRE(trapcc_check_omega(e2, &in_omega, &verdict) == TRAPCC_OK);
    CHECK(in_omega == 1);
    CHECK(nlohmann::json::parse(take(verdict))["violations"].empty());

    double factor = 0, dev = 0;
    REQUIRE(trapcc_grad_parallel_check(e2, &factor, &dev) == TRAPCC_OK);
    CHECK(dev < 1e-6);
    CHECK(rel(factor, 8.0 * 7.5 * 7.5) < 1e-9);

    double lambda = 0, spread = 0;
    REQUIRE(trapcc_lambda(e2, &lambda, &spread) == TRAPCC_OK);
    CHECK(spread < 1e-10);

    trapcc_distances_free(e2);
}
