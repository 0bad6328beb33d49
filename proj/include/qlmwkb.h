/* C interface to the qlmwkb engines: formal series, spectra, numeric
 * iterates, verification.  All functions returning int yield a status from
 * the table below; 0 is success.  On failure qlmwkb_last_error() describes
 * the fault until the next call on the same thread.  Strings returned
 * through char** are heap-allocated; release them with qlmwkb_string_free.
 */
#ifndef QLMWKB_H
#define QLMWKB_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
    QLMWKB_OK = 0,
    QLMWKB_ERR_USAGE = 1,
    QLMWKB_ERR_SINGULAR_LEADING_TERM = 2,
    QLMWKB_ERR_MISSING_DERIVATIVE = 3,
    QLMWKB_ERR_SINGULAR_JET = 4,
    QLMWKB_ERR_DOMAIN = 5,
    QLMWKB_ERR_INTEGRATION = 6,
    QLMWKB_ERR_FIT_QUALITY = 7,
    QLMWKB_ERR_BRACKET = 8,
    QLMWKB_ERR_ORACLE = 9,
    QLMWKB_ERR_IO = 10,
    QLMWKB_ERR_VERIFICATION = 11,
    QLMWKB_ERR_INTERNAL = 12
};

typedef struct qlmwkb_series qlmwkb_series;
typedef struct qlmwkb_potential qlmwkb_potential;
typedef struct qlmwkb_solution qlmwkb_solution;

const char* qlmwkb_version(void);

/* Message for the most recent failing call on this thread; never NULL. */
const char* qlmwkb_last_error(void);

void qlmwkb_string_free(char* s);

/* ---- formal series ---------------------------------------------------- */

/* Zeroth-order expansion terms through g^(order_cap-1). */
int qlmwkb_wkb_series(int order_cap, qlmwkb_series** out);

/* p-th quasilinearization iterate expanded through g^(order_cap-1). */
int qlmwkb_qlm_series(int p, int order_cap, qlmwkb_series** out);

int qlmwkb_series_parse(const char* text, qlmwkb_series** out);

/* format: "text", "json", or "latex". */
int qlmwkb_series_emit(const qlmwkb_series* s, const char* format, char** out);

int qlmwkb_series_order_cap(const qlmwkb_series* s, int* out);

/* Count of leading orders on which the two series agree exactly. */
int qlmwkb_series_match_prefix(const qlmwkb_series* a, const qlmwkb_series* b, int* out);

void qlmwkb_series_free(qlmwkb_series* s);

/* ---- potentials and spectra ------------------------------------------- */

/* kind: ho1d, ho3d, coulomb, cotangent, pt_hole, modified_pt, hylleraas,
 * eckart1d, eckart3d, hulthen, morse.  names/values hold nparams entries. */
int qlmwkb_potential_create(const char* kind, const char* const* names, const double* values,
                            size_t nparams, qlmwkb_potential** out);

void qlmwkb_potential_free(qlmwkb_potential* p);

/* method: "exact", "wkb", or "qlm".  *status is 0 for a real level and 1
 * when level n does not exist (energy then undefined). */
int qlmwkb_level(const qlmwkb_potential* p, const char* method, int n, double* energy,
                 int* status);

/* *count = -1 encodes infinitely many levels. */
int qlmwkb_bound_state_count(const qlmwkb_potential* p, int* count);

/* Independent shooting eigenvalue, relative accuracy ~1e-8. */
int qlmwkb_shooting_level(const qlmwkb_potential* p, int n, double* energy);

/* ---- numeric iterates ------------------------------------------------- */

typedef struct {
    double z_min;
    double z_max; /* <= 0 picks the potential's default outer boundary */
    int grid_points;
    double delta; /* imaginary shift of the integration line */
    double ode_rel_tol;
    double ode_abs_tol;
    int quadrature_order;
} qlmwkb_solve_config;

void qlmwkb_solve_config_default(qlmwkb_solve_config* cfg);

/* Runs p_max linearized steps at the given energy.  cfg may be NULL. */
int qlmwkb_solve(const qlmwkb_potential* p, double energy, int p_max,
                 const qlmwkb_solve_config* cfg, qlmwkb_solution** out);

int qlmwkb_solution_iterates(const qlmwkb_solution* s, int* out);
int qlmwkb_solution_grid_points(const qlmwkb_solution* s, size_t* out);

/* Sample i of iterate p: real grid coordinate and the complex value. */
int qlmwkb_solution_sample(const qlmwkb_solution* s, int p, size_t i, double* z, double* re,
                           double* im);

/* Sup-norm distance between iterates p and p-1 (p >= 1). */
int qlmwkb_solution_sup_diff(const qlmwkb_solution* s, int p, double* out);

/* model: "oscillator_infinity", "coulomb_infinity", or "inner_pole". */
int qlmwkb_solution_residue_fit(const qlmwkb_solution* s, int p, const char* model, double energy,
                                double* out);

void qlmwkb_solution_free(qlmwkb_solution* s);

/* ---- verification ----------------------------------------------------- */

/* suite: "formal", "numeric", "spectra", or "all".  Writes a JSON report to
 * *report (caller frees); *all_passed is 1 when every criterion held. */
int qlmwkb_verify(const char* suite, char** report, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* QLMWKB_H */
