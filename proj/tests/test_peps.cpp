#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "core/error.hpp"
#include "core/peps.hpp"
#include "doctest.h"

using namespace cornercount;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::ok;
}

// Independent Schmidt spectrum: reshape the little-endian state into the
// (A-sites) x (B-sites) matrix and take squared singular values.
std::vector<double> svd_spectrum(const std::vector<double>& state, int d,
                                 const std::vector<std::uint8_t>& a_mask) {
  const int n = static_cast<int>(a_mask.size());
  std::int64_t da = 1, db = 1;
  for (int s = 0; s < n; ++s) (a_mask[s] ? da : db) *= d;
  Eigen::MatrixXd m(da, db);
  for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(state.size()); ++idx) {
    std::int64_t rest = idx, a = 0, b = 0, wa = 1, wb = 1;
    for (int s = 0; s < n; ++s) {
      const std::int64_t digit = rest % d;
      rest /= d;
      if (a_mask[s]) {
        a += digit * wa;
        wa *= d;
      } else {
        b += digit * wb;
        wb *= d;
      }
    }
    m(a, b) = state[idx];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  std::vector<double> lambdas;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double s = svd.singularValues()(i);
    lambdas.push_back(s * s);
  }
  std::sort(lambdas.begin(), lambdas.end(), std::greater<double>());
  return lambdas;
}

}  // namespace

TEST_CASE("seeded normal deviates") {
  const std::vector<double> a = seeded_normals(42, 20000);
  const std::vector<double> b = seeded_normals(42, 20000);
  REQUIRE(a.size() == 20000);
  CHECK(a == b);  // bitwise reproducible
  CHECK(seeded_normals(43, 100) != seeded_normals(42, 100));

  double mean = 0.0;
  for (double x : a) mean += x;
  mean /= static_cast<double>(a.size());
  double var = 0.0;
  for (double x : a) var += (x - mean) * (x - mean);
  var /= static_cast<double>(a.size());
  CHECK(std::abs(mean) < 0.03);
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("grid construction slices boundary legs and is deterministic") {
  PepsSpec spec;
  spec.grid_size = 2;
  spec.physical_dim = 2;
  spec.bond_dim = 3;
  spec.seed = 5;
  const TensorGrid g = build_peps(spec);
  REQUIRE(g.lx == 2);
  REQUIRE(g.ly == 2);
  CHECK(g.phys_dim == 2);
  REQUIRE(g.sites.size() == 4);
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 2; ++x) {
      const SiteTensor& t = g.site(x, y);
      CHECK(t.dim_p == 2);
      CHECK(t.dim_l == (x == 0 ? 1 : 3));
      CHECK(t.dim_r == (x == 1 ? 1 : 3));
      CHECK(t.dim_d == (y == 0 ? 1 : 3));
      CHECK(t.dim_u == (y == 1 ? 1 : 3));
      CHECK(t.data.size() == t.size());
    }
  const TensorGrid g2 = build_peps(spec);
  for (std::size_t i = 0; i < g.sites.size(); ++i) CHECK(g.sites[i].data == g2.sites[i].data);
}

TEST_CASE("bond dimension one gives a product state") {
  PepsSpec spec;
  spec.grid_size = 2;
  spec.physical_dim = 2;
  spec.bond_dim = 1;
  spec.seed = 7;
  const TensorGrid g = build_peps(spec);
  const std::vector<double> state = contract_to_state(g);
  REQUIRE(state.size() == 16);

  // Manual outer product in little-endian site order.
  std::vector<double> manual(16);
  double norm2 = 0.0;
  for (int idx = 0; idx < 16; ++idx) {
    double amp = 1.0;
    int rest = idx;
    for (int y = 0; y < 2; ++y)
      for (int x = 0; x < 2; ++x) {
        amp *= g.site(x, y).at(rest % 2, 0, 0, 0, 0);
        rest /= 2;
      }
    manual[idx] = amp;
    norm2 += amp * amp;
  }
  for (int idx = 0; idx < 16; ++idx) {
    CHECK(state[idx] == doctest::Approx(manual[idx] / std::sqrt(norm2)).epsilon(1e-12));
  }

  // A product state has Schmidt rank 1 and no entanglement across any cut.
  const SpectrumResult spec1 = rdm_spectrum(state, 2, {1, 0, 0, 0}, 1e-10);
  CHECK(spec1.schmidt_rank == 1);
  CHECK(std::abs(spec1.s_vn) <= 1e-9);
}

TEST_CASE("hand-built two-site bond reproduces the maximally entangled pair") {
  TensorGrid g;
  g.lx = 1;
  g.ly = 2;
  g.phys_dim = 2;
  g.sites.resize(2);
  SiteTensor& bottom = g.site(0, 0);
  bottom.dim_p = 2;
  bottom.dim_u = 2;
  bottom.data.assign(bottom.size(), 0.0);
  bottom.at(0, 0, 0, 0, 0) = 1.0;  // physical copies onto the up leg
  bottom.at(1, 0, 0, 0, 1) = 1.0;
  SiteTensor& top = g.site(0, 1);
  top.dim_p = 2;
  top.dim_d = 2;
  top.data.assign(top.size(), 0.0);
  top.at(0, 0, 0, 0, 0) = 1.0;  // physical copies onto the down leg
  top.at(1, 0, 0, 1, 0) = 1.0;

  const std::vector<double> state = contract_to_state(g);
  REQUIRE(state.size() == 4);
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(state[0] == doctest::Approx(h).epsilon(1e-15));
  CHECK(state[1] == 0.0);
  CHECK(state[2] == 0.0);
  CHECK(state[3] == doctest::Approx(h).epsilon(1e-15));

  const SpectrumResult sp = rdm_spectrum(state, 2, {1, 0}, 1e-10);
  REQUIRE(sp.eigenvalues.size() == 2);
  CHECK(sp.eigenvalues[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sp.eigenvalues[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sp.schmidt_rank == 2);
  CHECK(sp.s_vn == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(sp.s2 == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(sp.s3 == doctest::Approx(-std::log(0.25)).epsilon(1e-12));
}

TEST_CASE("random grid spectrum against an independent SVD") {
  PepsSpec spec;
  spec.grid_size = 3;
  spec.physical_dim = 2;
  spec.bond_dim = 2;
  spec.seed = 91;
  const std::vector<double> state = contract_to_state(build_peps(spec));
  REQUIRE(state.size() == 512);

  // A = left column of the 3x3 grid.
  std::vector<std::uint8_t> mask(9, 0);
  mask[0] = mask[3] = mask[6] = 1;
  const SpectrumResult sp = rdm_spectrum(state, 2, mask, 1e-10);
  REQUIRE(sp.eigenvalues.size() == 8);  // min(2^3, 2^6)

  double sum = 0.0;
  for (std::size_t i = 0; i < sp.eigenvalues.size(); ++i) {
    sum += sp.eigenvalues[i];
    CHECK(sp.eigenvalues[i] >= -1e-9);
    if (i > 0) CHECK(sp.eigenvalues[i] <= sp.eigenvalues[i - 1]);
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));

  const std::vector<double> oracle = svd_spectrum(state, 2, mask);
  REQUIRE(oracle.size() == sp.eigenvalues.size());
  for (std::size_t i = 0; i < oracle.size(); ++i)
    CHECK(std::abs(sp.eigenvalues[i] - oracle[i]) <= 1e-10);

  // The two sides of a pure-state cut share their nonzero spectrum.
  std::vector<std::uint8_t> comp(9);
  for (int i = 0; i < 9; ++i) comp[i] = mask[i] ? 0 : 1;
  const SpectrumResult other = rdm_spectrum(state, 2, comp, 1e-10);
  REQUIRE(other.eigenvalues.size() == sp.eigenvalues.size());
  for (std::size_t i = 0; i < sp.eigenvalues.size(); ++i)
    CHECK(std::abs(sp.eigenvalues[i] - other.eigenvalues[i]) <= 1e-9);

  // Power sums order the entropies: sum l^3 <= sum l^2 <= 1.
  CHECK(sp.s2 <= sp.s_vn + 1e-12);
  CHECK(sp.s2 <= sp.s3 + 1e-12);
  CHECK(sp.s_vn >= -1e-12);
  CHECK(sp.s_vn <= std::log(8.0) + 1e-9);

  // Determinism end to end.
  const SpectrumResult again = rdm_spectrum(contract_to_state(build_peps(spec)), 2, mask, 1e-10);
  CHECK(again.eigenvalues == sp.eigenvalues);
}

TEST_CASE("mask cut-bond counts") {
  // 3x3, A = left column: three horizontal bonds cross.
  CHECK(mask_cut_bonds({1, 0, 0, 1, 0, 0, 1, 0, 0}, 3, 3) == 3);
  // 3x3, A = one corner site.
  CHECK(mask_cut_bonds({1, 0, 0, 0, 0, 0, 0, 0, 0}, 3, 3) == 2);
  // 3x3, A = the center site.
  CHECK(mask_cut_bonds({0, 0, 0, 0, 1, 0, 0, 0, 0}, 3, 3) == 4);
  // 2x2 checkerboard: every bond crosses.
  CHECK(mask_cut_bonds({1, 0, 0, 1}, 2, 2) == 4);
  // 3x1 chain.
  CHECK(mask_cut_bonds({1, 0, 0}, 3, 1) == 1);
  CHECK(mask_cut_bonds({0, 1, 0}, 3, 1) == 2);
  // Empty and full masks cut nothing.
  CHECK(mask_cut_bonds({0, 0, 0, 0}, 2, 2) == 0);
  CHECK(mask_cut_bonds({1, 1, 1, 1}, 2, 2) == 0);
  CHECK(code_of([] { mask_cut_bonds({1, 0}, 2, 2); }) == Errc::invalid_argument);
}

TEST_CASE("bound verification") {
  PepsSpec spec;
  spec.grid_size = 2;
  spec.physical_dim = 2;
  spec.bond_dim = 2;
  spec.seed = 11;
  const std::vector<std::uint8_t> left = {1, 0, 1, 0};

  const BoundReport rep = verify_bound(spec, left, 2);
  CHECK(rep.cut_bonds == 2);
  CHECK(rep.rank_bound == 4.0);
  CHECK(rep.entropy_bound == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
  CHECK(rep.spectrum.schmidt_rank <= 4);
  CHECK(rep.rank_ok);
  CHECK(rep.entropy_ok);
  CHECK(rep.ok);
  double sum = 0.0;
  for (double l : rep.spectrum.eigenvalues) sum += l;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));

  // Same spec and mask: bitwise identical spectrum.
  const BoundReport rep2 = verify_bound(spec, left, 2);
  CHECK(rep2.spectrum.eigenvalues == rep.spectrum.eigenvalues);

  // boundary_bonds must match the mask's actual cut.
  CHECK(code_of([&] { verify_bound(spec, left, 3); }) == Errc::invalid_argument);

  // chi = 1: rank bound is 1 and the state saturates it.
  PepsSpec prod = spec;
  prod.bond_dim = 1;
  const BoundReport trivial = verify_bound(prod, left, 2);
  CHECK(trivial.rank_bound == 1.0);
  CHECK(trivial.spectrum.schmidt_rank == 1);
  CHECK(trivial.entropy_bound == 0.0);
  CHECK(trivial.ok);

  CHECK(code_of([&] { verify_bound(spec, {0, 0, 0, 0}, 0); }) == Errc::invalid_argument);
  CHECK(code_of([&] { verify_bound(spec, {1, 1, 1, 1}, 0); }) == Errc::invalid_argument);
  CHECK(code_of([&] { verify_bound(spec, {1, 0}, 2); }) == Errc::invalid_argument);
  CHECK(code_of([&] { verify_bound(spec, left, 2, 0.0); }) == Errc::invalid_argument);
  CHECK(code_of([&] { verify_bound(spec, left, 2, -1.0); }) == Errc::invalid_argument);

  PepsSpec big = spec;
  big.grid_size = 5;
  CHECK(code_of([&] { verify_bound(big, left, 2); }) == Errc::invalid_argument);
  PepsSpec heavy = spec;
  heavy.grid_size = 4;
  heavy.physical_dim = 3;
  CHECK(code_of([&] { verify_bound(heavy, std::vector<std::uint8_t>(16, 0), 0); }) ==
        Errc::capacity);
}

TEST_CASE("zero tensors cannot be normalized") {
  TensorGrid g;
  g.lx = 1;
  g.ly = 1;
  g.phys_dim = 2;
  g.sites.resize(1);
  g.sites[0].dim_p = 2;
  g.sites[0].data.assign(2, 0.0);
  CHECK(code_of([&] { contract_to_state(g); }) == Errc::numeric);
}
