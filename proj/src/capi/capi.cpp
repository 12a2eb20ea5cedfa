#include "cornercount/cornercount.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "core/analytic.hpp"
#include "core/counting.hpp"
#include "core/error.hpp"
#include "core/fit.hpp"
#include "core/peps.hpp"
#include "core/sector.hpp"
#include "core/sweep.hpp"

namespace cc = cornercount;

namespace {

thread_local std::string g_last_error;

cc_status to_status(cc::Errc code) {
  switch (code) {
    case cc::Errc::ok: return CC_OK;
    case cc::Errc::invalid_argument: return CC_INVALID_ARGUMENT;
    case cc::Errc::domain: return CC_DOMAIN_ERROR;
    case cc::Errc::rank_deficient: return CC_RANK_DEFICIENT;
    case cc::Errc::capacity: return CC_CAPACITY_EXCEEDED;
    case cc::Errc::numeric: return CC_NUMERIC_ERROR;
    case cc::Errc::io: return CC_IO_ERROR;
    case cc::Errc::internal: return CC_INTERNAL_ERROR;
  }
  return CC_INTERNAL_ERROR;
}

cc_status fail_status(cc_status code, const char* message) {
  g_last_error = message;
  return code;
}

template <typename F>
cc_status guarded(F&& body) {
  try {
    return body();
  } catch (const cc::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "allocation failure";
    return CC_CAPACITY_EXCEEDED;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CC_INTERNAL_ERROR;
  } catch (...) {
    g_last_error = "unknown error";
    return CC_INTERNAL_ERROR;
  }
}

cc::SectorConfig to_config(const cc_sector_config& c) {
  cc::SectorConfig out;
  out.apex_u = c.apex_u;
  out.apex_v = c.apex_v;
  out.phi = c.phi;
  out.theta = c.theta;
  out.radius = c.radius;
  return out;
}

cc_fit_result to_fit(const cc::FitResult& f) {
  return cc_fit_result{f.alpha, f.beta, f.nmse, f.n_points};
}

}  // namespace

struct cc_bipartition {
  cc::BipartitionResult result;
};

struct cc_sweep {
  cc::SweepResult result;
};

extern "C" {

const char* cc_version(void) { return "1.0.0"; }

const char* cc_last_error(void) { return g_last_error.c_str(); }

cc_status cc_site_in_sector(const cc_sector_config* cfg, int64_t x, int64_t y, int* out) {
  if (!cfg || !out) return fail_status(CC_INVALID_ARGUMENT, "cc_site_in_sector: null pointer");
  return guarded([&] {
    *out = cc::site_in_sector(to_config(*cfg), cc::Site{x, y}) ? 1 : 0;
    return CC_OK;
  });
}

cc_status cc_count(const cc_sector_config* cfg, int64_t* n_legs, int64_t* n_corners) {
  if (!cfg || !n_legs || !n_corners)
    return fail_status(CC_INVALID_ARGUMENT, "cc_count: null pointer");
  return guarded([&] {
    const cc::BipartitionResult r = cc::analyze_bipartition(to_config(*cfg));
    *n_legs = r.cut.n_legs;
    *n_corners = r.corners.n_corners;
    return CC_OK;
  });
}

cc_status cc_bipartition_run(const cc_sector_config* cfg, cc_bipartition** out) {
  if (!cfg || !out) return fail_status(CC_INVALID_ARGUMENT, "cc_bipartition_run: null pointer");
  *out = nullptr;
  return guarded([&] {
    auto handle = new cc_bipartition{cc::analyze_bipartition(to_config(*cfg))};
    *out = handle;
    return CC_OK;
  });
}

void cc_bipartition_free(cc_bipartition* bp) { delete bp; }

int64_t cc_bipartition_n_legs(const cc_bipartition* bp) { return bp ? bp->result.cut.n_legs : 0; }

int64_t cc_bipartition_n_corners(const cc_bipartition* bp) {
  return bp ? bp->result.corners.n_corners : 0;
}

int64_t cc_bipartition_a_sites(const cc_bipartition* bp) {
  return bp ? static_cast<int64_t>(bp->result.split.a_sites.size()) : 0;
}

int64_t cc_bipartition_b_sites(const cc_bipartition* bp) {
  return bp ? static_cast<int64_t>(bp->result.split.b_sites.size()) : 0;
}

cc_status cc_nearest_cell_skip_indicator(double theta, double phi, double apex_u, double apex_v,
                                         int* out) {
  if (!out) return fail_status(CC_INVALID_ARGUMENT, "cc_nearest_cell_skip_indicator: null pointer");
  return guarded([&] {
    *out = cc::nearest_cell_skip_indicator(theta, phi, apex_u, apex_v) ? 1 : 0;
    return CC_OK;
  });
}

cc_status cc_nearest_cell_corner_indicator(double theta, double phi, double apex_u, double apex_v,
                                           int* out) {
  if (!out)
    return fail_status(CC_INVALID_ARGUMENT, "cc_nearest_cell_corner_indicator: null pointer");
  return guarded([&] {
    *out = cc::nearest_cell_corner_indicator(theta, phi, apex_u, apex_v);
    return CC_OK;
  });
}

cc_status cc_sweep_run(const cc_sweep_spec* spec, cc_sweep** out) {
  if (!spec || !out) return fail_status(CC_INVALID_ARGUMENT, "cc_sweep_run: null pointer");
  if ((!spec->theta_grid && spec->theta_count) || (!spec->r_list && spec->r_count))
    return fail_status(CC_INVALID_ARGUMENT, "cc_sweep_run: null array with nonzero count");
  *out = nullptr;
  return guarded([&] {
    cc::SweepSpec s;
    s.theta_grid.assign(spec->theta_grid, spec->theta_grid + spec->theta_count);
    s.r_list.assign(spec->r_list, spec->r_list + spec->r_count);
    s.phi_steps = spec->phi_steps;
    s.apex_steps = spec->apex_steps;
    s.phi_quarter_turn_only = spec->phi_quarter_turn_only != 0;
    s.threads = spec->threads;
    auto handle = new cc_sweep{cc::run_sweep(s)};
    *out = handle;
    return CC_OK;
  });
}

void cc_sweep_free(cc_sweep* sweep) { delete sweep; }

size_t cc_sweep_theta_count(const cc_sweep* sweep) {
  return sweep ? sweep->result.theta_grid.size() : 0;
}

size_t cc_sweep_r_count(const cc_sweep* sweep) { return sweep ? sweep->result.r_list.size() : 0; }

cc_status cc_sweep_theta_at(const cc_sweep* sweep, size_t theta_index, double* out) {
  if (!sweep || !out) return fail_status(CC_INVALID_ARGUMENT, "cc_sweep_theta_at: null pointer");
  if (theta_index >= sweep->result.theta_grid.size())
    return fail_status(CC_INVALID_ARGUMENT, "cc_sweep_theta_at: index out of range");
  *out = sweep->result.theta_grid[theta_index];
  return CC_OK;
}

cc_status cc_sweep_r_at(const cc_sweep* sweep, size_t r_index, double* out) {
  if (!sweep || !out) return fail_status(CC_INVALID_ARGUMENT, "cc_sweep_r_at: null pointer");
  if (r_index >= sweep->result.r_list.size())
    return fail_status(CC_INVALID_ARGUMENT, "cc_sweep_r_at: index out of range");
  *out = sweep->result.r_list[r_index];
  return CC_OK;
}

cc_status cc_sweep_cell_at(const cc_sweep* sweep, size_t r_index, size_t theta_index,
                           cc_sweep_cell* out) {
  if (!sweep || !out) return fail_status(CC_INVALID_ARGUMENT, "cc_sweep_cell_at: null pointer");
  if (r_index >= sweep->result.r_list.size() ||
      theta_index >= sweep->result.theta_grid.size())
    return fail_status(CC_INVALID_ARGUMENT, "cc_sweep_cell_at: index out of range");
  const cc::SweepCell& c = sweep->result.cell(r_index, theta_index);
  out->r = c.r;
  out->theta = c.theta;
  out->total_legs = c.total_legs;
  out->total_corners = c.total_corners;
  out->sample_count = c.sample_count;
  out->mean_legs = c.mean_legs;
  out->mean_corners = c.mean_corners;
  out->se_legs = c.se_legs;
  out->se_corners = c.se_corners;
  return CC_OK;
}

cc_status cc_estimate_skip_probability(double theta, int phi_steps, int apex_steps, double* out) {
  if (!out) return fail_status(CC_INVALID_ARGUMENT, "cc_estimate_skip_probability: null pointer");
  return guarded([&] {
    *out = cc::estimate_skip_probability(theta, phi_steps, apex_steps);
    return CC_OK;
  });
}

cc_status cc_estimate_corner_rate(double theta, int phi_steps, int apex_steps, double* out) {
  if (!out) return fail_status(CC_INVALID_ARGUMENT, "cc_estimate_corner_rate: null pointer");
  return guarded([&] {
    *out = cc::estimate_corner_rate(theta, phi_steps, apex_steps);
    return CC_OK;
  });
}

cc_status cc_regressor(double theta, double* out) {
  if (!out) return fail_status(CC_INVALID_ARGUMENT, "cc_regressor: null pointer");
  return guarded([&] {
    *out = cc::corner_regressor(theta);
    return CC_OK;
  });
}

cc_status cc_fit_corner_model(const double* thetas, const double* values, size_t count,
                              cc_fit_result* out) {
  if (!thetas || !values || !out)
    return fail_status(CC_INVALID_ARGUMENT, "cc_fit_corner_model: null pointer");
  return guarded([&] {
    const std::vector<double> t(thetas, thetas + count);
    const std::vector<double> v(values, values + count);
    *out = to_fit(cc::fit_corner_model(t, v));
    return CC_OK;
  });
}

cc_status cc_fit_sweep(const cc_sweep* sweep, double theta_min, double theta_max,
                       cc_radius_fit* rows, size_t row_capacity, size_t* row_count) {
  if (!sweep || !rows || !row_count)
    return fail_status(CC_INVALID_ARGUMENT, "cc_fit_sweep: null pointer");
  if (row_capacity < sweep->result.r_list.size())
    return fail_status(CC_INVALID_ARGUMENT, "cc_fit_sweep: row buffer too small");
  return guarded([&] {
    const auto fits = cc::fit_sweep(sweep->result, theta_min, theta_max);
    for (size_t i = 0; i < fits.size(); ++i) {
      rows[i].r = fits[i].r;
      rows[i].legs = to_fit(fits[i].legs);
      rows[i].corners = to_fit(fits[i].corners);
    }
    *row_count = fits.size();
    return CC_OK;
  });
}

cc_status cc_relative_spread(const double* betas, size_t count, double* out) {
  if (!betas || !out) return fail_status(CC_INVALID_ARGUMENT, "cc_relative_spread: null pointer");
  return guarded([&] {
    *out = cc::relative_spread(std::vector<double>(betas, betas + count));
    return CC_OK;
  });
}

cc_status cc_theta_c(double* out) {
  if (!out) return fail_status(CC_INVALID_ARGUMENT, "cc_theta_c: null pointer");
  *out = cc::theta_c();
  return CC_OK;
}

cc_status cc_b_shape(double theta, double* out) {
  if (!out) return fail_status(CC_INVALID_ARGUMENT, "cc_b_shape: null pointer");
  return guarded([&] {
    *out = cc::b_shape(theta);
    return CC_OK;
  });
}

cc_status cc_pskip_phi(double theta, double phi, double* out) {
  if (!out) return fail_status(CC_INVALID_ARGUMENT, "cc_pskip_phi: null pointer");
  return guarded([&] {
    *out = cc::pskip_phi(theta, phi);
    return CC_OK;
  });
}

cc_status cc_pskip_closed(double theta, double* out) {
  if (!out) return fail_status(CC_INVALID_ARGUMENT, "cc_pskip_closed: null pointer");
  return guarded([&] {
    *out = cc::pskip_closed(theta);
    return CC_OK;
  });
}

cc_status cc_pskip_closed_in_validity(double theta, int* out) {
  if (!out) return fail_status(CC_INVALID_ARGUMENT, "cc_pskip_closed_in_validity: null pointer");
  *out = cc::pskip_closed_in_validity(theta) ? 1 : 0;
  return CC_OK;
}

cc_status cc_pskip_quadrature(double theta, double tol, double* value, double* error_estimate,
                              int* converged) {
  if (!value || !error_estimate || !converged)
    return fail_status(CC_INVALID_ARGUMENT, "cc_pskip_quadrature: null pointer");
  return guarded([&] {
    const cc::QuadResult q = cc::pskip_quadrature(theta, tol);
    *value = q.value;
    *error_estimate = q.error_estimate;
    *converged = q.converged ? 1 : 0;
    return CC_OK;
  });
}

cc_status cc_pcorner_phi(double theta, double phi, double* out) {
  if (!out) return fail_status(CC_INVALID_ARGUMENT, "cc_pcorner_phi: null pointer");
  return guarded([&] {
    *out = cc::pcorner_phi(theta, phi);
    return CC_OK;
  });
}

cc_status cc_pcorner_closed(double theta, double* out) {
  if (!out) return fail_status(CC_INVALID_ARGUMENT, "cc_pcorner_closed: null pointer");
  return guarded([&] {
    *out = cc::pcorner_closed(theta);
    return CC_OK;
  });
}

cc_status cc_pcorner_approx(double theta, double* out) {
  if (!out) return fail_status(CC_INVALID_ARGUMENT, "cc_pcorner_approx: null pointer");
  return guarded([&] {
    *out = cc::pcorner_approx(theta);
    return CC_OK;
  });
}

cc_status cc_pcorner_quadrature(double theta, double tol, double* value, double* error_estimate,
                                int* converged) {
  if (!value || !error_estimate || !converged)
    return fail_status(CC_INVALID_ARGUMENT, "cc_pcorner_quadrature: null pointer");
  return guarded([&] {
    const cc::QuadResult q = cc::pcorner_quadrature(theta, tol);
    *value = q.value;
    *error_estimate = q.error_estimate;
    *converged = q.converged ? 1 : 0;
    return CC_OK;
  });
}

cc_status cc_compare_estimators(const double* thetas, size_t count, int phi_steps, int apex_steps,
                                double quad_tol, cc_analytic_row* rows) {
  if (!thetas || !rows)
    return fail_status(CC_INVALID_ARGUMENT, "cc_compare_estimators: null pointer");
  return guarded([&] {
    const auto table = cc::compare_estimators(std::vector<double>(thetas, thetas + count),
                                              phi_steps, apex_steps, quad_tol);
    for (size_t i = 0; i < table.size(); ++i) {
      const cc::AnalyticRow& r = table[i];
      rows[i] = cc_analytic_row{r.theta,          r.pskip_closed, r.pskip_quad,
                                r.pskip_quad_err, r.pcorner_closed, r.pcorner_quad,
                                r.pcorner_approx, r.b_shape,        r.mc_skip_freq,
                                r.mc_corner_rate, r.complete ? 1 : 0};
    }
    return CC_OK;
  });
}

cc_status cc_peps_cut_bonds(const uint8_t* a_mask, int lx, int ly, int* out) {
  if (!a_mask || !out) return fail_status(CC_INVALID_ARGUMENT, "cc_peps_cut_bonds: null pointer");
  if (lx < 1 || lx > 64 || ly < 1 || ly > 64)
    return fail_status(CC_INVALID_ARGUMENT, "cc_peps_cut_bonds: grid shape out of range");
  return guarded([&] {
    const std::vector<std::uint8_t> mask(a_mask, a_mask + static_cast<size_t>(lx) * ly);
    *out = cc::mask_cut_bonds(mask, lx, ly);
    return CC_OK;
  });
}

cc_status cc_peps_verify(const cc_peps_spec* spec, const uint8_t* a_mask, int boundary_bonds,
                         double rank_tol, cc_peps_report* out) {
  if (!spec || !a_mask || !out)
    return fail_status(CC_INVALID_ARGUMENT, "cc_peps_verify: null pointer");
  if (spec->grid_size < 1 || spec->grid_size > 4)
    return fail_status(CC_INVALID_ARGUMENT, "cc_peps_verify: grid_size must lie in [1, 4]");
  return guarded([&] {
    cc::PepsSpec s;
    s.grid_size = spec->grid_size;
    s.physical_dim = spec->physical_dim;
    s.bond_dim = spec->bond_dim;
    s.seed = spec->seed;
    const std::vector<std::uint8_t> mask(
        a_mask, a_mask + static_cast<size_t>(spec->grid_size) * spec->grid_size);
    const cc::BoundReport r = cc::verify_bound(s, mask, boundary_bonds, rank_tol);
    out->cut_bonds = r.cut_bonds;
    out->rank_bound = r.rank_bound;
    out->entropy_bound = r.entropy_bound;
    out->schmidt_rank = r.spectrum.schmidt_rank;
    out->s_vn = r.spectrum.s_vn;
    out->s2 = r.spectrum.s2;
    out->s3 = r.spectrum.s3;
    out->rank_ok = r.rank_ok ? 1 : 0;
    out->entropy_ok = r.entropy_ok ? 1 : 0;
    out->ok = r.ok ? 1 : 0;
    return CC_OK;
  });
}

} /* extern "C" */
