/* C interface to the trapezoidal central-configuration library.
 *
 * All functions return trapcc_status; TRAPCC_OK means the out-parameters are
 * valid. On failure trapcc_last_error() returns a message for the calling
 * thread. Objects returned through handle out-parameters are owned by the
 * caller and released with the matching *_free function; strings returned
 * through char** out-parameters are released with trapcc_string_free.
 *
 * Distance components are always ordered (r12, r13, r14, r23, r24, r34).
 */

#ifndef TRAPCC_H
#define TRAPCC_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum trapcc_status {
    TRAPCC_OK = 0,
    TRAPCC_ERR_INVALID_ARGUMENT,
    TRAPCC_ERR_INVALID_DISTANCE,
    TRAPCC_ERR_PARALLELOGRAM_DEGENERATE,
    TRAPCC_ERR_NOT_A_TRAPEZOID,
    TRAPCC_ERR_DEGENERATE_CONFIGURATION,
    TRAPCC_ERR_EMBEDDING_INCONSISTENT,
    TRAPCC_ERR_DEGENERATE_DENOMINATOR,
    TRAPCC_ERR_SINGULAR_RATIO,
    TRAPCC_ERR_NOT_REALIZABLE,
    TRAPCC_ERR_NO_SIGN_CHANGE,
    TRAPCC_ERR_INFEASIBLE_GEOMETRY,
    TRAPCC_ERR_MULTIPLE_ROOTS,
    TRAPCC_ERR_NO_CONVERGENCE,
    TRAPCC_ERR_CONVERGED_OUTSIDE_OMEGA,
    TRAPCC_ERR_NO_POSITIVE_MASSES,
    TRAPCC_ERR_PARSE,
    TRAPCC_ERR_CONFIG,
    TRAPCC_ERR_UNKNOWN
} trapcc_status;

typedef enum trapcc_realizability {
    TRAPCC_REALIZABLE_3D = 0,
    TRAPCC_PLANAR = 1,
    TRAPCC_NOT_REALIZABLE = 2
} trapcc_realizability;

typedef enum trapcc_shape {
    TRAPCC_SHAPE_GENERIC_TRAPEZOID = 0,
    TRAPCC_SHAPE_ISOSCELES_TRAPEZOID = 1,
    TRAPCC_SHAPE_PARALLELOGRAM = 2,
    TRAPCC_SHAPE_RHOMBUS = 3,
    TRAPCC_SHAPE_SQUARE = 4,
    TRAPCC_SHAPE_DEGENERATE = 5
} trapcc_shape;

typedef struct trapcc_distances trapcc_distances; /* opaque */
typedef struct trapcc_solution trapcc_solution;   /* opaque */

const char* trapcc_version(void);

/* Message for the most recent failure on the calling thread. */
const char* trapcc_last_error(void);

void trapcc_string_free(char* text);

/* ---- distance vectors -------------------------------------------------- */

trapcc_status trapcc_distances_create(const double r[6], trapcc_distances** out);

/* JSON object with keys r12..r34; values may be numbers or decimal strings. */
trapcc_status trapcc_distances_parse_json(const char* json, trapcc_distances** out);

/* Named reference configurations: E1, E2, E3, SQ, ISO. */
trapcc_status trapcc_distances_golden(const char* name, trapcc_distances** out);

/* Trapezoid from consecutive sides (a, b, c, d); diagonals from the
 * closed-form trapezoid formulas. */
trapcc_status trapcc_distances_from_sides(double a, double b, double c, double d,
                                          trapcc_distances** out);

trapcc_status trapcc_distances_get(const trapcc_distances* dv, double out_r[6]);
trapcc_status trapcc_distances_to_json(const trapcc_distances* dv, char** out_json);
void trapcc_distances_free(trapcc_distances* dv);

/* ---- geometry ----------------------------------------------------------- */

trapcc_status trapcc_cayley_menger(const trapcc_distances* dv, double* out);
trapcc_status trapcc_delta_squared(const trapcc_distances* dv, double* out);
trapcc_status trapcc_trapezoid_residual(const trapcc_distances* dv, double* raw,
                                        double* normalized);
trapcc_status trapcc_ptolemy_residual(const trapcc_distances* dv, double* out);
trapcc_status trapcc_height(const trapcc_distances* dv, double* out);
trapcc_status trapcc_oriented_areas(const trapcc_distances* dv, double out_areas[4]);
trapcc_status trapcc_check_realizability(const trapcc_distances* dv, int* verdict,
                                   char** violation_or_null);

/* Coordinates (x1,y1,...,x4,y4) under the fixed placement convention. */
trapcc_status trapcc_embed(const trapcc_distances* dv, double out_xy[8],
                           double* out_height);
trapcc_status trapcc_classify(const trapcc_distances* dv, double tol, int* out_shape);
const char* trapcc_shape_name(int shape);

/* ---- central-configuration algebra -------------------------------------- */

trapcc_status trapcc_relation_residual(const trapcc_distances* dv, double* raw,
                                       double* normalized);
trapcc_status trapcc_dziobek_residual(const trapcc_distances* dv, double* gap_ab,
                                      double* gap_bc);
trapcc_status trapcc_lambda(const trapcc_distances* dv, double* lambda,
                            double* spread);
trapcc_status trapcc_grad_parallel_check(const trapcc_distances* dv, double* factor,
                                         double* max_dev);
trapcc_status trapcc_check_omega(const trapcc_distances* dv, int* in_omega,
                                 char** verdict_json);

/* Full solution (masses, multipliers, residuals, shape, Omega flag). */
trapcc_status trapcc_solve_masses(const trapcc_distances* dv, trapcc_solution** out);

/* ---- solutions ----------------------------------------------------------- */

trapcc_status trapcc_solution_masses(const trapcc_solution* sol, double out_m[4]);
trapcc_status trapcc_solution_multipliers(const trapcc_solution* sol, double* lambda,
                                          double* sigma);
trapcc_status trapcc_solution_residuals(const trapcc_solution* sol,
                                        double* relation, double* trapezoid,
                                        double* cayley_menger, double* dziobek);
trapcc_status trapcc_solution_distances(const trapcc_solution* sol, double out_r[6]);
trapcc_status trapcc_solution_in_omega(const trapcc_solution* sol, int* in_omega);
trapcc_status trapcc_solution_to_json(const trapcc_solution* sol, char** out_json);
void trapcc_solution_free(trapcc_solution* sol);

/* ---- solver -------------------------------------------------------------- */

/* Leg b from the relation at fixed (a, c, d); config text may be NULL. */
trapcc_status trapcc_solve_b(double a, double c, double d,
                             const char* config_or_null, double* out_b,
                             double* out_residual);

/* Scan over the (c, d) grid described by the flat key = value config text.
 * Returns the CSV rows and a JSON summary. */
trapcc_status trapcc_scan(const char* config_text, char** out_csv,
                          char** out_summary_json);

/* Equal-mass solve for masses (i, j) from initial guess (c0, d0).
 * out_boundary is set to 1 when the iteration converged onto the rhombus
 * (parallelogram) boundary of the ordering region instead of its interior. */
trapcc_status trapcc_solve_equal_mass(int mass_i, int mass_j, double c0, double d0,
                                      double a_fixed, const char* config_or_null,
                                      trapcc_solution** out, int* out_boundary);

/* Rhombus family with m1 = m3 = 1, m2 = m4 solved from the diagonal ratio. */
trapcc_status trapcc_rhombus_branch(double diag_ratio, double side,
                                    trapcc_solution** out);

/* ---- verification suites -------------------------------------------------- */

/* suite: "all", "mass-ordering", "lemma-r3412", "decreasing-ratio",
 * "symmetry" or "gradcheck". Runs over a scan corpus built from the config
 * (NULL for defaults) plus the golden set where applicable. out_passed is 1
 * when every case passed; the JSON bundle carries per-suite reports. */
trapcc_status trapcc_verify_suite(const char* suite, const char* config_or_null,
                                  int* out_passed, char** out_report_json);

#ifdef __cplusplus
}
#endif

#endif /* TRAPCC_H */
