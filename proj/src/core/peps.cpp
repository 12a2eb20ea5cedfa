#include "core/peps.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "core/angles.hpp"
#include "core/error.hpp"

namespace cornercount {
namespace {

constexpr std::int64_t kMaxStateSize = 1 << 16;
constexpr std::int64_t kMaxIntermediate = 4'000'000;  // doubles per contraction buffer

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > kMaxStateSize * kMaxIntermediate / std::max<std::int64_t>(base, 1)) return -1;
    out *= base;
  }
  return out;
}

void validate_spec(const PepsSpec& spec) {
  if (spec.grid_size < 1 || spec.grid_size > 4)
    fail(Errc::invalid_argument, "peps: grid_size must lie in [1, 4]");
  if (spec.physical_dim < 1) fail(Errc::invalid_argument, "peps: physical_dim must be >= 1");
  if (spec.bond_dim < 1) fail(Errc::invalid_argument, "peps: bond_dim must be >= 1");
  const int n_sites = spec.grid_size * spec.grid_size;
  const std::int64_t states = ipow(spec.physical_dim, n_sites);
  if (states < 0 || states > kMaxStateSize)
    fail(Errc::capacity, "peps: d^(L^2) exceeds the full-state-vector budget");
  // Row-chain intermediate: d^L * chi^(2L) doubles.
  const std::int64_t row = ipow(spec.physical_dim, spec.grid_size);
  const std::int64_t bonds = ipow(spec.bond_dim, 2 * spec.grid_size);
  if (row < 0 || bonds < 0 || row > kMaxIntermediate / std::max<std::int64_t>(bonds, 1))
    fail(Errc::capacity, "peps: contraction intermediates exceed the memory budget");
}

// Rank-3 work tensor (phys, down, up) used while assembling rows and
// stacking them; `right` is carried as an extra explicit index during the
// in-row chain.
struct Chain {
  std::int64_t np = 1, nr = 1, nd = 1, nu = 1;
  std::vector<double> v;

  double& at(std::int64_t p, std::int64_t r, std::int64_t d, std::int64_t u) {
    return v[static_cast<std::size_t>(((p * nr + r) * nd + d) * nu + u)];
  }
  double at(std::int64_t p, std::int64_t r, std::int64_t d, std::int64_t u) const {
    return v[static_cast<std::size_t>(((p * nr + r) * nd + d) * nu + u)];
  }
};

Chain contract_row(const TensorGrid& grid, int y) {
  const SiteTensor& first = grid.site(0, y);
  Chain acc;
  acc.np = first.dim_p;
  acc.nr = first.dim_r;
  acc.nd = first.dim_d;
  acc.nu = first.dim_u;
  acc.v.assign(static_cast<std::size_t>(acc.np * acc.nr * acc.nd * acc.nu), 0.0);
  for (int p = 0; p < first.dim_p; ++p)
    for (int r = 0; r < first.dim_r; ++r)
      for (int d = 0; d < first.dim_d; ++d)
        for (int u = 0; u < first.dim_u; ++u) acc.at(p, r, d, u) = first.at(p, 0, r, d, u);

  for (int x = 1; x < grid.lx; ++x) {
    const SiteTensor& t = grid.site(x, y);
    if (t.dim_l != acc.nr) fail(Errc::invalid_argument, "peps: mismatched horizontal bond dims");
    Chain next;
    next.np = acc.np * t.dim_p;
    next.nr = t.dim_r;
    next.nd = acc.nd * t.dim_d;
    next.nu = acc.nu * t.dim_u;
    const std::int64_t total = next.np * next.nr * next.nd * next.nu;
    if (total > kMaxIntermediate) fail(Errc::capacity, "peps: row intermediate too large");
    next.v.assign(static_cast<std::size_t>(total), 0.0);
    // Combined indices are little-endian in x, matching the amplitude layout.
    for (std::int64_t pa = 0; pa < acc.np; ++pa)
      for (std::int64_t k = 0; k < acc.nr; ++k)
        for (std::int64_t da = 0; da < acc.nd; ++da)
          for (std::int64_t ua = 0; ua < acc.nu; ++ua) {
            const double a = acc.at(pa, k, da, ua);
            if (a == 0.0) continue;
            for (int pb = 0; pb < t.dim_p; ++pb)
              for (int rb = 0; rb < t.dim_r; ++rb)
                for (int db = 0; db < t.dim_d; ++db)
                  for (int ub = 0; ub < t.dim_u; ++ub)
                    next.at(pa + acc.np * pb, rb, da + acc.nd * db, ua + acc.nu * ub) +=
                        a * t.at(pb, static_cast<int>(k), rb, db, ub);
          }
    acc = std::move(next);
  }
  if (acc.nr != 1) fail(Errc::invalid_argument, "peps: right boundary leg must have dimension 1");
  return acc;
}

}  // namespace

std::vector<double> seeded_normals(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; i += 2) {
    const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;  // (0, 1]
    const double u2 = static_cast<double>(rng() >> 11) * 0x1p-53;          // [0, 1)
    const double radius = std::sqrt(-2.0 * std::log(u1));
    out[i] = radius * std::cos(kTwoPi * u2);
    if (i + 1 < count) out[i + 1] = radius * std::sin(kTwoPi * u2);
  }
  return out;
}

TensorGrid build_peps(const PepsSpec& spec) {
  validate_spec(spec);
  const int L = spec.grid_size;
  const int d = spec.physical_dim;
  const int chi = spec.bond_dim;

  SiteTensor master;
  master.dim_p = d;
  master.dim_l = master.dim_r = master.dim_d = master.dim_u = chi;
  master.data = seeded_normals(spec.seed, master.size());

  TensorGrid grid;
  grid.lx = grid.ly = L;
  grid.phys_dim = d;
  grid.sites.resize(static_cast<std::size_t>(L) * L);
  for (int y = 0; y < L; ++y) {
    for (int x = 0; x < L; ++x) {
      SiteTensor& t = grid.site(x, y);
      t.dim_p = d;
      t.dim_l = (x == 0) ? 1 : chi;
      t.dim_r = (x == L - 1) ? 1 : chi;
      t.dim_d = (y == 0) ? 1 : chi;
      t.dim_u = (y == L - 1) ? 1 : chi;
      t.data.resize(t.size());
      for (int p = 0; p < t.dim_p; ++p)
        for (int l = 0; l < t.dim_l; ++l)
          for (int r = 0; r < t.dim_r; ++r)
            for (int dn = 0; dn < t.dim_d; ++dn)
              for (int u = 0; u < t.dim_u; ++u) t.at(p, l, r, dn, u) = master.at(p, l, r, dn, u);
    }
  }
  return grid;
}

std::vector<double> contract_to_state(const TensorGrid& grid) {
  if (grid.lx < 1 || grid.ly < 1 || grid.phys_dim < 1)
    fail(Errc::invalid_argument, "peps: empty grid");
  if (grid.sites.size() != static_cast<std::size_t>(grid.lx) * grid.ly)
    fail(Errc::invalid_argument, "peps: site count does not match grid shape");
  for (int y = 0; y < grid.ly; ++y)
    for (int x = 0; x < grid.lx; ++x) {
      const SiteTensor& t = grid.site(x, y);
      if (t.dim_p != grid.phys_dim || t.size() != t.data.size())
        fail(Errc::invalid_argument, "peps: inconsistent site tensor");
      if ((x == 0 && t.dim_l != 1) || (x == grid.lx - 1 && t.dim_r != 1) ||
          (y == 0 && t.dim_d != 1) || (y == grid.ly - 1 && t.dim_u != 1))
        fail(Errc::invalid_argument, "peps: boundary legs must have dimension 1");
      if (x + 1 < grid.lx && t.dim_r != grid.site(x + 1, y).dim_l)
        fail(Errc::invalid_argument, "peps: mismatched horizontal bond dims");
      if (y + 1 < grid.ly && t.dim_u != grid.site(x, y + 1).dim_d)
        fail(Errc::invalid_argument, "peps: mismatched vertical bond dims");
    }

  Chain state = contract_row(grid, 0);
  if (state.nd != 1) fail(Errc::invalid_argument, "peps: bottom boundary leg must have dimension 1");
  for (int y = 1; y < grid.ly; ++y) {
    Chain row = contract_row(grid, y);
    if (row.nd != state.nu) fail(Errc::invalid_argument, "peps: mismatched vertical bond dims");
    Chain next;
    next.np = state.np * row.np;
    next.nr = 1;
    next.nd = 1;
    next.nu = row.nu;
    const std::int64_t total = next.np * next.nu;
    if (total > kMaxIntermediate) fail(Errc::capacity, "peps: stacking intermediate too large");
    next.v.assign(static_cast<std::size_t>(total), 0.0);
    for (std::int64_t pa = 0; pa < state.np; ++pa)
      for (std::int64_t k = 0; k < state.nu; ++k) {
        const double a = state.at(pa, 0, 0, k);
        if (a == 0.0) continue;
        for (std::int64_t pb = 0; pb < row.np; ++pb)
          for (std::int64_t ub = 0; ub < row.nu; ++ub)
            next.at(pa + state.np * pb, 0, 0, ub) += a * row.at(pb, 0, k, ub);
      }
    state = std::move(next);
  }
  if (state.nu != 1) fail(Errc::invalid_argument, "peps: top boundary leg must have dimension 1");

  double norm2 = 0.0;
  for (double a : state.v) norm2 += a * a;
  if (!(norm2 > 0.0)) fail(Errc::numeric, "peps: contracted state has zero norm");
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& a : state.v) a *= inv;
  return std::move(state.v);
}

SpectrumResult rdm_spectrum(const std::vector<double>& state, int d,
                            const std::vector<std::uint8_t>& a_mask, double rank_tol) {
  if (d < 1) fail(Errc::invalid_argument, "rdm_spectrum: physical_dim must be >= 1");
  if (!(rank_tol > 0.0)) fail(Errc::invalid_argument, "rdm_spectrum: rank_tol must be positive");
  const int n_sites = static_cast<int>(a_mask.size());
  std::int64_t expected = 1;
  for (int i = 0; i < n_sites; ++i) {
    expected *= d;
    if (expected > kMaxStateSize) fail(Errc::capacity, "rdm_spectrum: state too large");
  }
  if (static_cast<std::int64_t>(state.size()) != expected)
    fail(Errc::invalid_argument, "rdm_spectrum: state length is not d^(mask length)");

  std::int64_t da = 1, db = 1;
  for (int i = 0; i < n_sites; ++i) (a_mask[i] ? da : db) *= d;
  if (da == 1 || db == 1)
    fail(Errc::invalid_argument, "rdm_spectrum: a_mask must be a nonempty proper subset");

  // Reshape amplitudes into the d^|A| x d^|B| matrix; digits keep their
  // little-endian site order within each side.
  Eigen::MatrixXd m(da, db);
  for (std::int64_t idx = 0; idx < expected; ++idx) {
    std::int64_t ia = 0, ib = 0, sa = 1, sb = 1, rest = idx;
    for (int i = 0; i < n_sites; ++i) {
      const std::int64_t digit = rest % d;
      rest /= d;
      if (a_mask[i]) {
        ia += digit * sa;
        sa *= d;
      } else {
        ib += digit * sb;
        sb *= d;
      }
    }
    m(ia, ib) = state[static_cast<std::size_t>(idx)];
  }

  // Gram matrix on the smaller side; its spectrum is the nonzero RDM
  // spectrum of either side.
  Eigen::MatrixXd gram;
  if (da <= db)
    gram.noalias() = m * m.transpose();
  else
    gram.noalias() = m.transpose() * m;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  if (solver.info() != Eigen::Success) fail(Errc::numeric, "rdm_spectrum: eigensolver failed");

  SpectrumResult out;
  out.eigenvalues.assign(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());

  const double lmax = out.eigenvalues.empty() ? 0.0 : std::max(out.eigenvalues.front(), 0.0);
  const double threshold = rank_tol * lmax;
  double p2 = 0.0, p3 = 0.0;
  for (double lam : out.eigenvalues) {
    if (lam > threshold) ++out.schmidt_rank;
    if (lam > 0.0) {
      out.s_vn -= lam * std::log(lam);
      p2 += lam * lam;
      p3 += lam * lam * lam;
    }
  }
  if (!(p2 > 0.0)) fail(Errc::numeric, "rdm_spectrum: degenerate spectrum");
  out.s2 = -std::log(p2);
  out.s3 = -std::log(p3);
  return out;
}

int mask_cut_bonds(const std::vector<std::uint8_t>& a_mask, int lx, int ly) {
  if (lx < 1 || ly < 1 || a_mask.size() != static_cast<std::size_t>(lx) * ly)
    fail(Errc::invalid_argument, "mask_cut_bonds: mask length must equal lx*ly");
  const auto in_a = [&](int x, int y) { return a_mask[static_cast<std::size_t>(y) * lx + x] != 0; };
  int cut = 0;
  for (int y = 0; y < ly; ++y)
    for (int x = 0; x < lx; ++x) {
      if (x + 1 < lx && in_a(x, y) != in_a(x + 1, y)) ++cut;
      if (y + 1 < ly && in_a(x, y) != in_a(x, y + 1)) ++cut;
    }
  return cut;
}

BoundReport verify_bound(const PepsSpec& spec, const std::vector<std::uint8_t>& a_mask,
                         int boundary_bonds, double rank_tol) {
  validate_spec(spec);
  const int actual = mask_cut_bonds(a_mask, spec.grid_size, spec.grid_size);
  if (boundary_bonds != actual)
    fail(Errc::invalid_argument, "verify_bound: boundary_bonds does not match the mask");

  const std::vector<double> state = contract_to_state(build_peps(spec));
  BoundReport report;
  report.cut_bonds = boundary_bonds;
  report.rank_bound = std::pow(static_cast<double>(spec.bond_dim), boundary_bonds);
  report.entropy_bound = boundary_bonds * std::log(static_cast<double>(spec.bond_dim));
  report.spectrum = rdm_spectrum(state, spec.physical_dim, a_mask, rank_tol);
  report.rank_ok = static_cast<double>(report.spectrum.schmidt_rank) <= report.rank_bound;
  // Entropy slack absorbs eigensolver noise on exact zeros.
  report.entropy_ok = report.spectrum.s_vn <= report.entropy_bound + 1e-9;
  report.ok = report.rank_ok && report.entropy_ok;
  return report;
}

}  // namespace cornercount
