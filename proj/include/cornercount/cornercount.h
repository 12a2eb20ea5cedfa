/* cornercount: wedge-bipartition lattice counting, corner-term fitting,
 * analytic reference formulas, and PEPS entanglement-bound checks.
 *
 * Every function returns a cc_status; on any non-CC_OK return,
 * cc_last_error() yields a thread-local human-readable message.  Opaque
 * handles are created by *_run factories and released by the matching
 * *_free (safe on NULL).
 */
#ifndef CORNERCOUNT_H
#define CORNERCOUNT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cc_status {
  CC_OK = 0,
  CC_INVALID_ARGUMENT = 1,
  CC_DOMAIN_ERROR = 2,
  CC_RANK_DEFICIENT = 3,
  CC_CAPACITY_EXCEEDED = 4,
  CC_NUMERIC_ERROR = 5,
  CC_IO_ERROR = 6,
  CC_INTERNAL_ERROR = 7
} cc_status;

const char* cc_version(void);

/* Message for the most recent failing call on this thread; empty string if
 * none.  The pointer stays valid until the next failing call. */
const char* cc_last_error(void);

/* ---- wedge geometry and counting -------------------------------------- */

typedef struct cc_sector_config {
  double apex_u; /* apex offset within the unit cell, [0, 1) */
  double apex_v;
  double phi;    /* wedge orientation, radians */
  double theta;  /* wedge opening, radians, [0, 2*pi] */
  double radius; /* system disc radius, lattice units, > 0 */
} cc_sector_config;

/* *out = 1 if lattice site (x, y) lies in subsystem A. */
cc_status cc_site_in_sector(const cc_sector_config* cfg, int64_t x, int64_t y, int* out);

/* Cut-bond and corner-turn counts for one configuration. */
cc_status cc_count(const cc_sector_config* cfg, int64_t* n_legs, int64_t* n_corners);

typedef struct cc_bipartition cc_bipartition;
cc_status cc_bipartition_run(const cc_sector_config* cfg, cc_bipartition** out);
void cc_bipartition_free(cc_bipartition* bp);
int64_t cc_bipartition_n_legs(const cc_bipartition* bp);
int64_t cc_bipartition_n_corners(const cc_bipartition* bp);
int64_t cc_bipartition_a_sites(const cc_bipartition* bp);
int64_t cc_bipartition_b_sites(const cc_bipartition* bp);

/* Per-(orientation, apex) indicators on the apex's unit cell. */
cc_status cc_nearest_cell_skip_indicator(double theta, double phi, double apex_u, double apex_v,
                                         int* out);
cc_status cc_nearest_cell_corner_indicator(double theta, double phi, double apex_u, double apex_v,
                                           int* out);

/* ---- orientation/apex averaging sweeps --------------------------------- */

typedef struct cc_sweep_spec {
  const double* theta_grid; /* openings, radians, each in [0, pi] */
  size_t theta_count;
  const double* r_list; /* radii, each > 1 */
  size_t r_count;
  int phi_steps;  /* orientations 2*pi*k/phi_steps */
  int apex_steps; /* apex grid (i+0.5)/apex_steps per axis */
  int phi_quarter_turn_only; /* average one C4 fundamental domain */
  int threads;               /* 0 = hardware concurrency */
} cc_sweep_spec;

typedef struct cc_sweep_cell {
  double r;
  double theta;
  int64_t total_legs;
  int64_t total_corners;
  int64_t sample_count;
  double mean_legs;
  double mean_corners;
  double se_legs;
  double se_corners;
} cc_sweep_cell;

typedef struct cc_sweep cc_sweep;
cc_status cc_sweep_run(const cc_sweep_spec* spec, cc_sweep** out);
void cc_sweep_free(cc_sweep* sweep);
size_t cc_sweep_theta_count(const cc_sweep* sweep);
size_t cc_sweep_r_count(const cc_sweep* sweep);
/* Thetas come back sorted ascending regardless of input order. */
cc_status cc_sweep_theta_at(const cc_sweep* sweep, size_t theta_index, double* out);
cc_status cc_sweep_r_at(const cc_sweep* sweep, size_t r_index, double* out);
cc_status cc_sweep_cell_at(const cc_sweep* sweep, size_t r_index, size_t theta_index,
                           cc_sweep_cell* out);

/* Fractions of the (phi, apex) grid on which the cell indicators fire. */
cc_status cc_estimate_skip_probability(double theta, int phi_steps, int apex_steps, double* out);
cc_status cc_estimate_corner_rate(double theta, int phi_steps, int apex_steps, double* out);

/* ---- corner-model fitting ---------------------------------------------- */

/* (pi - theta) * cot(theta) with the limit value -1 at theta == pi. */
cc_status cc_regressor(double theta, double* out);

typedef struct cc_fit_result {
  double alpha;
  double beta;
  double nmse; /* mean squared residual / squared value range */
  int n_points;
} cc_fit_result;

cc_status cc_fit_corner_model(const double* thetas, const double* values, size_t count,
                              cc_fit_result* out);

typedef struct cc_radius_fit {
  double r;
  cc_fit_result legs;
  cc_fit_result corners;
} cc_radius_fit;

/* One row per radius, fitted over thetas in [theta_min, theta_max].  rows
 * must hold cc_sweep_r_count(sweep) entries. */
cc_status cc_fit_sweep(const cc_sweep* sweep, double theta_min, double theta_max,
                       cc_radius_fit* rows, size_t row_capacity, size_t* row_count);

/* Population std over mean of |beta|. */
cc_status cc_relative_spread(const double* betas, size_t count, double* out);

/* ---- analytic reference ------------------------------------------------ */

cc_status cc_theta_c(double* out); /* validity threshold 2*atan(1/2) */
cc_status cc_b_shape(double theta, double* out);
cc_status cc_pskip_phi(double theta, double phi, double* out);
cc_status cc_pskip_closed(double theta, double* out);
cc_status cc_pskip_closed_in_validity(double theta, int* out);
cc_status cc_pskip_quadrature(double theta, double tol, double* value, double* error_estimate,
                              int* converged);
cc_status cc_pcorner_phi(double theta, double phi, double* out);
cc_status cc_pcorner_closed(double theta, double* out);
cc_status cc_pcorner_approx(double theta, double* out);
cc_status cc_pcorner_quadrature(double theta, double tol, double* value, double* error_estimate,
                                int* converged);

typedef struct cc_analytic_row {
  double theta;
  double pskip_closed;
  double pskip_quad;
  double pskip_quad_err;
  double pcorner_closed;
  double pcorner_quad;
  double pcorner_approx;
  double b_shape;
  double mc_skip_freq;
  double mc_corner_rate;
  int complete; /* 0 when any cell in this row has no value (NaN) */
} cc_analytic_row;

/* Fills count rows, one per theta; cells without a value hold NaN. */
cc_status cc_compare_estimators(const double* thetas, size_t count, int phi_steps, int apex_steps,
                                double quad_tol, cc_analytic_row* rows);

/* ---- PEPS bound verification ------------------------------------------- */

typedef struct cc_peps_spec {
  int grid_size;    /* L <= 4 */
  int physical_dim; /* d, with d^(L*L) <= 65536 */
  int bond_dim;     /* chi >= 1 */
  uint64_t seed;
} cc_peps_spec;

/* Bonds of the lx-by-ly grid with exactly one endpoint in a_mask
 * (row-major, length lx*ly, nonzero = subsystem A). */
cc_status cc_peps_cut_bonds(const uint8_t* a_mask, int lx, int ly, int* out);

typedef struct cc_peps_report {
  int cut_bonds;
  double rank_bound;    /* chi^cut_bonds */
  double entropy_bound; /* cut_bonds * log(chi) */
  int schmidt_rank;
  double s_vn;
  double s2;
  double s3;
  int rank_ok;
  int entropy_ok;
  int ok;
} cc_peps_report;

/* Builds the seeded random PEPS, contracts it exactly, and checks the
 * Schmidt rank and entropy against the chi^cut_bonds bound.  a_mask has
 * length grid_size*grid_size; boundary_bonds must equal the mask's
 * cut-bond count; eigenvalues above rank_tol times the largest count
 * toward the Schmidt rank. */
cc_status cc_peps_verify(const cc_peps_spec* spec, const uint8_t* a_mask, int boundary_bonds,
                         double rank_tol, cc_peps_report* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CORNERCOUNT_H */
