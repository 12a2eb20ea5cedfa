#pragma once

#include <cstdint>
#include <vector>

namespace cornercount {

struct PepsSpec {
  int grid_size = 2;    // L, sites per side
  int physical_dim = 2; // d
  int bond_dim = 2;     // chi
  std::uint64_t seed = 0;
};

// One site tensor, index order (phys, left, right, down, up), row-major with
// `up` fastest.
struct SiteTensor {
  int dim_p = 1, dim_l = 1, dim_r = 1, dim_d = 1, dim_u = 1;
  std::vector<double> data;

  std::size_t size() const {
    return static_cast<std::size_t>(dim_p) * dim_l * dim_r * dim_d * dim_u;
  }
  double& at(int p, int l, int r, int d, int u) {
    return data[static_cast<std::size_t>((((p * dim_l + l) * dim_r + r) * dim_d + d) * dim_u + u)];
  }
  double at(int p, int l, int r, int d, int u) const {
    return data[static_cast<std::size_t>((((p * dim_l + l) * dim_r + r) * dim_d + d) * dim_u + u)];
  }
};

// Open-boundary tensor grid; site (x, y) lives at sites[y*lx + x], y = 0 is
// the bottom row.  Amplitude indices are little-endian in site order: the
// digit of site (x, y) has stride d^(y*lx + x).
struct TensorGrid {
  int lx = 0, ly = 0;
  int phys_dim = 0;
  std::vector<SiteTensor> sites;

  const SiteTensor& site(int x, int y) const { return sites[static_cast<std::size_t>(y) * lx + x]; }
  SiteTensor& site(int x, int y) { return sites[static_cast<std::size_t>(y) * lx + x]; }
};

// count standard normal deviates from a seeded 64-bit Mersenne Twister via
// Box-Muller; bitwise reproducible for a given build.
std::vector<double> seeded_normals(std::uint64_t seed, std::size_t count);

// One seeded random (d, chi, chi, chi, chi) tensor replicated over the L x L
// grid, boundary-facing virtual legs sliced to dimension 1.
TensorGrid build_peps(const PepsSpec& spec);

// Exact row-by-row contraction to the d^(lx*ly) amplitude vector, normalized
// to unit 2-norm.
std::vector<double> contract_to_state(const TensorGrid& grid);

struct SpectrumResult {
  // Possibly-nonzero reduced-density-matrix eigenvalues, descending; length
  // is the smaller of d^|A| and d^|B| (the remaining eigenvalues of the
  // larger-side RDM are exact zeros).
  std::vector<double> eigenvalues;
  int schmidt_rank = 0;  // eigenvalues above rank_tol * largest
  double s_vn = 0.0;     // -sum lambda log lambda over positive lambda
  double s2 = 0.0;       // -log sum lambda^2
  double s3 = 0.0;       // -log sum lambda^3
};

// Spectrum of the reduced density matrix over the sites selected by a_mask
// (length lx*ly, nonzero = subsystem A, proper nonempty subset), for a unit
// vector of length d^(lx*ly).
SpectrumResult rdm_spectrum(const std::vector<double>& state, int d,
                            const std::vector<std::uint8_t>& a_mask, double rank_tol);

// Lattice bonds of the lx x ly grid with exactly one endpoint in a_mask.
int mask_cut_bonds(const std::vector<std::uint8_t>& a_mask, int lx, int ly);

struct BoundReport {
  int cut_bonds = 0;
  double rank_bound = 0.0;     // chi^cut_bonds
  double entropy_bound = 0.0;  // cut_bonds * log(chi)
  SpectrumResult spectrum;
  bool rank_ok = false;
  bool entropy_ok = false;
  bool ok = false;
};

// Builds the seeded state, takes the spectrum across a_mask, and checks
// schmidt_rank <= chi^boundary_bonds and s_vn <= boundary_bonds*log(chi).
// boundary_bonds must equal the mask's cut-bond count.
BoundReport verify_bound(const PepsSpec& spec, const std::vector<std::uint8_t>& a_mask,
                         int boundary_bonds, double rank_tol = 1e-10);

}  // namespace cornercount
