#ifndef FRACTAL_LAB_H
#define FRACTAL_LAB_H

/* C interface of the fractal-lab shared library.
 *
 * All entry points return an fl_status; every other result travels through
 * out-parameters. Objects are opaque handles with create/destroy pairs, and
 * strings returned by the library must be released with fl_string_free.
 * On failure the thread-local message from fl_last_error() describes what
 * went wrong.
 */

#include <stdint.h>

#if defined(_WIN32)
#  if defined(FL_BUILD_SHARED)
#    define FL_API __declspec(dllexport)
#  else
#    define FL_API __declspec(dllimport)
#  endif
#else
#  define FL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef int fl_status;

enum {
    FL_OK = 0,
    FL_ERR_INVALID = 1,  /* bad argument or malformed input file */
    FL_ERR_PARSE = 2,    /* unparseable input */
    FL_ERR_NUMERIC = 3,  /* numerical failure (e.g. no convergence) */
    FL_ERR_INTERNAL = 4  /* violated internal invariant */
};

typedef struct fl_function fl_function; /* sampled complex function on a uniform grid */
typedef struct fl_problem fl_problem;   /* validated interpolation problem */

FL_API const char* fl_version(void);

/* Thread-local message for the most recent failure in this thread. */
FL_API const char* fl_last_error(void);

FL_API void fl_string_free(char* s);
FL_API void fl_function_free(fl_function* f);
FL_API void fl_problem_free(fl_problem* p);

/* --- sampled functions --------------------------------------------------- */

/* spec_text is the generator text form: "kind:p1,p2,..." or a weighted sum
 * such as "weierstrass:2,0.5 + (0,1)*takagi:0.5". */
FL_API fl_status fl_function_from_generator(const char* spec_text, double x0, double x1,
                                            int64_t m, fl_function** out);
FL_API fl_status fl_function_from_csv(const char* path, fl_function** out);
FL_API fl_status fl_function_write_csv(const fl_function* f, const char* path);
FL_API fl_status fl_function_size(const fl_function* f, int64_t* out);
FL_API fl_status fl_function_domain(const fl_function* f, double* x0, double* x1);
/* re/im must hold fl_function_size entries each. */
FL_API fl_status fl_function_values(const fl_function* f, double* re, double* im);

/* --- problems and interpolants ------------------------------------------- */

FL_API fl_status fl_problem_parse(const char* json_text, fl_problem** out);
FL_API fl_status fl_problem_load(const char* path, fl_problem** out);
FL_API fl_status fl_problem_to_json(const fl_problem* p, char** out_json);
FL_API fl_status fl_problem_seed(const fl_problem* p, uint64_t* out);

/* Builds the interpolant. out_report_json receives the fixed-point report. */
FL_API fl_status fl_problem_build(const fl_problem* p, double tolerance, int max_iterations,
                                  fl_function** out_f, char** out_report_json);

/* --- dimension estimation ------------------------------------------------ */

/* component: 0 = real part, 1 = imaginary part. j_min/j_max select dyadic
 * scales delta = range * 2^-j; pass j_max = 0 for the density-derived
 * default. out_series_csv (optional) receives the per-scale counts. */
FL_API fl_status fl_dim_estimate_2d(const fl_function* f, int component, int j_min, int j_max,
                                    char** out_json, char** out_series_csv);
/* 3D estimate over the (t, Re, Im) graph cloud. */
FL_API fl_status fl_dim_estimate_3d(const fl_function* f, int j_min, int j_max, char** out_json,
                                    char** out_series_csv);

FL_API fl_status fl_moran_solve(const double* ratios, int n, double* out_exponent,
                                double* out_residual);
FL_API fl_status fl_moran_bounds(const double* lower, const double* upper, int n, double* out_r,
                                 double* out_big_r);

/* --- named checks -------------------------------------------------------- */

/* theorem_id: bounds-3.6 | holder-3.11 | mainthm-3.12 | bv | lemma-3.1 |
 * prop-3.2 | prop-3.3 | lemma-3.4 | lemma-3.5 | peano-remark.
 * options_json carries the per-check knobs (sigma, delta0, depth, g, h,
 * lower, upper, tolerance, max_iterations); problem may be NULL for checks
 * that do not need one. out_summary (optional) receives a short plain-text
 * verdict description. */
FL_API fl_status fl_verify(const char* theorem_id, const fl_problem* problem,
                           const char* options_json, char** out_report_json, char** out_summary);

/* --- plotting ------------------------------------------------------------ */

FL_API fl_status fl_plot_samples(const char* csv_path, const char* svg_path);
FL_API fl_status fl_plot_series(const char* csv_path, const char* svg_path);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FRACTAL_LAB_H */
