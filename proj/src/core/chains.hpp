#pragma once

// Thermal spin-1/2 chain physics on a periodic ring:
//   - XXZ chain in a longitudinal field and the XY/Ising family in a
//     transverse field,
//   - exact-diagonalization thermal correlators (full spectrum, symmetry
//     resolved: magnetization or spin-flip parity sectors, further split
//     by lattice momentum),
//   - thermodynamic-limit finite-T correlators for the XY family from
//     the free-fermion solution,
//   - the exact equations for the two XXZ critical points.

#include "core/teleport.hpp"

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace qcpd::chains {

using teleport::PairCorrelators;

struct ModelSpec {
  enum class Kind { XXZ, XY };
  Kind kind = Kind::XXZ;
  double delta = 0; // XXZ anisotropy
  double h = 0;     // XXZ longitudinal field
  double lambda = 0; // XY inverse field strength, >= 0
  double gamma = 0;  // XY anisotropy

  static ModelSpec xxz(double delta, double h);
  static ModelSpec xy(double lambda, double gamma);
  std::string key() const; // cache key, params rounded to 1e-12
};

struct ThermalPoint {
  ModelSpec model;
  double kT = 0; // kT = 0 means ground-space expectation values
};

inline constexpr int kMaxChainLength = 16;
inline constexpr int kDefaultChainLength = 12;

// Dense 2^L x 2^L matrix of the Hamiltonian, periodic wrap included.
// Basis index bit j (bit 0 = least significant) is site j; bit value 0
// is spin up (sigma^z = +1). L >= 2 (for L = 2 the periodic wrap double
// counts the single bond).
Eigen::MatrixXd hamiltonian_matrix(const ModelSpec &m, int L);

// Per-eigenstate energies and translation-averaged observables; the
// reusable part of a thermal-correlator computation.
struct MomentTable {
  std::vector<double> energy, z, xx, yy, zz;
};

// Full-spectrum symmetry-resolved ED of the chain. Heavy; cached by
// ed_correlators.
MomentTable ed_moments(const ModelSpec &m, int L);

// Canonical-ensemble average of a moment table; kT = 0 averages over the
// degenerate ground space with equal weights.
PairCorrelators boltzmann_average(const MomentTable &t, double kT);
double boltzmann_energy(const MomentTable &t, double kT);

// Thermal correlators {z, xx, yy, zz} from finite-L ED, L even in
// [4, kMaxChainLength]. Moment tables are cached in memory (and on disk
// when a cache directory is set).
PairCorrelators ed_correlators(const ThermalPoint &p, int L);

// Reference path for tests: dense ED of the full 2^L matrix with
// per-site observables (site j and bond (j, j+1)).
PairCorrelators ed_correlators_dense(const ThermalPoint &p, int L, int site = 0);

// Thermodynamic-limit correlators of the XY family via momentum-space
// quadrature over the Bogoliubov spectrum.
PairCorrelators xy_correlators(const ThermalPoint &p);

// Saturation critical point: h = 4(1 + Delta_1), J = 1.
double xxz_qcp_delta1(double h);
// Ising-like critical point: solves
// h = 4 sinh(eta) sum_j (-1)^j / cosh(j eta), Delta_2 = cosh(eta).
double xxz_qcp_delta2(double h);

enum class Strategy { ED, FreeFermion };
struct ProviderResult {
  PairCorrelators c;
  Strategy strategy = Strategy::ED;
  int L = 0; // 0 for FreeFermion
};
// Uniform dispatch; FreeFermion is only valid for the XY family.
ProviderResult correlator_provider(const ThermalPoint &p, Strategy s,
                                   int L = kDefaultChainLength);

// Optional on-disk cache for moment tables (empty string disables).
void set_spectrum_cache_dir(const std::string &dir);

} // namespace qcpd::chains
