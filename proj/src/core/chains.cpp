#include "core/chains.hpp"

#include "core/eigensolve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace qcpd::chains {

using std::complex;
using std::uint32_t;

ModelSpec ModelSpec::xxz(double delta, double h) {
  ModelSpec m;
  m.kind = Kind::XXZ;
  m.delta = delta;
  m.h = h;
  return m;
}

ModelSpec ModelSpec::xy(double lambda, double gamma) {
  if (lambda < 0) throw std::invalid_argument("ModelSpec: lambda must be >= 0");
  ModelSpec m;
  m.kind = Kind::XY;
  m.lambda = lambda;
  m.gamma = gamma;
  return m;
}

std::string ModelSpec::key() const {
  auto r = [](double x) { return static_cast<long long>(std::llround(x * 1e12)); };
  char buf[96];
  if (kind == Kind::XXZ)
    std::snprintf(buf, sizeof buf, "xxz_%lld_%lld", r(delta), r(h));
  else
    std::snprintf(buf, sizeof buf, "xy_%lld_%lld", r(lambda), r(gamma));
  return buf;
}

static void check_finite(const ModelSpec &m) {
  for (double x : {m.delta, m.h, m.lambda, m.gamma})
    if (!std::isfinite(x)) throw std::invalid_argument("ModelSpec: non-finite parameter");
  if (m.kind == ModelSpec::Kind::XY && m.lambda < 0)
    throw std::invalid_argument("ModelSpec: lambda must be >= 0");
}

// ---------------------------------------------------------------------------
// Local terms. Basis: bit j of the mask is site j, bit value 0 = spin up
// (sigma^z = +1). Bonds run j -> (j+1) mod L, so L=2 double counts its
// single bond, matching the periodic wrap of the Hamiltonian sum.

namespace {

inline int spin(uint32_t s, int j) { return 1 - 2 * static_cast<int>((s >> j) & 1u); }

template <class F>
void apply_hamiltonian(const ModelSpec &m, int L, uint32_t s, F &&emit) {
  double diag = 0;
  if (m.kind == ModelSpec::Kind::XXZ) {
    for (int j = 0; j < L; ++j) {
      const int jn = (j + 1) % L;
      diag += m.delta * spin(s, j) * spin(s, jn) - 0.5 * m.h * spin(s, j);
      if (((s >> j) & 1u) != ((s >> jn) & 1u))
        emit(s ^ ((1u << j) | (1u << jn)), 2.0); // sx.sx + sy.sy flip-flop
    }
  } else {
    for (int j = 0; j < L; ++j) {
      const int jn = (j + 1) % L;
      diag += -0.5 * spin(s, j);
      const uint32_t flip = (1u << j) | (1u << jn);
      if (((s >> j) & 1u) != ((s >> jn) & 1u)) {
        emit(s ^ flip, -0.5 * m.lambda);
      } else if (m.gamma != 0.0) {
        emit(s ^ flip, -0.5 * m.lambda * m.gamma);
      }
    }
  }
  emit(s, diag);
}

// Translation-averaged observables (1/L) sum_j O_j.
enum class Obs { Z, XX, YY, ZZ };

template <class F>
void apply_observable(Obs o, int L, uint32_t s, F &&emit) {
  const double inv = 1.0 / L;
  switch (o) {
  case Obs::Z: {
    double d = 0;
    for (int j = 0; j < L; ++j) d += spin(s, j);
    emit(s, d * inv);
    return;
  }
  case Obs::ZZ: {
    double d = 0;
    for (int j = 0; j < L; ++j) d += spin(s, j) * spin(s, (j + 1) % L);
    emit(s, d * inv);
    return;
  }
  case Obs::XX:
  case Obs::YY:
    for (int j = 0; j < L; ++j) {
      const int jn = (j + 1) % L;
      const bool differ = ((s >> j) & 1u) != ((s >> jn) & 1u);
      double amp = inv;
      if (o == Obs::YY && !differ) amp = -inv;
      emit(s ^ ((1u << j) | (1u << jn)), amp);
    }
    return;
  }
}

} // namespace

Eigen::MatrixXd hamiltonian_matrix(const ModelSpec &m, int L) {
  check_finite(m);
  if (L < 2 || L > kMaxChainLength)
    throw std::invalid_argument("hamiltonian_matrix: L out of range");
  const long dim = 1L << L;
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
  for (uint32_t s = 0; s < static_cast<uint32_t>(dim); ++s)
    apply_hamiltonian(m, L, s, [&](uint32_t t, double amp) { H(t, s) += amp; });
  return H;
}

// ---------------------------------------------------------------------------
// Symmetry-resolved ED: conserved-quantum-number sectors (total
// magnetization for XXZ and the XX line, spin-flip parity otherwise),
// each split into lattice-momentum blocks built from translation-orbit
// representatives.

namespace {

inline uint32_t cyc1(uint32_t s, int L) {
  return ((s << 1) | (s >> (L - 1))) & ((1u << L) - 1u);
}

void rep_and_shift(uint32_t s, int L, uint32_t &rep, int &shift) {
  rep = s;
  shift = 0;
  uint32_t cur = s;
  for (int t = 1; t < L; ++t) {
    cur = cyc1(cur, L);
    if (cur < rep) {
      rep = cur;
      shift = t;
    }
  }
}

int periodicity(uint32_t rep, int L) {
  uint32_t cur = rep;
  for (int t = 1; t <= L; ++t) {
    cur = cyc1(cur, L);
    if (cur == rep) return t;
  }
  return L;
}

struct Triplet {
  int row, col;
  complex<double> amp;
};

void solve_momentum_block(const ModelSpec &m, int L,
                          const std::vector<std::pair<uint32_t, int>> &reps,
                          int kindex, MomentTable &out) {
  std::vector<int> idx;        // into reps
  std::unordered_map<uint32_t, int> where;
  for (int i = 0; i < static_cast<int>(reps.size()); ++i) {
    if ((static_cast<long>(kindex) * reps[i].second) % L == 0) {
      where.emplace(reps[i].first, static_cast<int>(idx.size()));
      idx.push_back(i);
    }
  }
  const int n = static_cast<int>(idx.size());
  if (n == 0) return;

  const double k = 2.0 * M_PI * kindex / L;
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n, n);
  std::array<std::vector<Triplet>, 4> obs;

  for (int ia = 0; ia < n; ++ia) {
    const uint32_t a = reps[idx[ia]].first;
    const double ra = reps[idx[ia]].second;
    auto scatter = [&](auto &&sink, uint32_t b, double amp) {
      uint32_t rb;
      int l;
      rep_and_shift(b, L, rb, l);
      auto it = where.find(rb);
      if (it == where.end()) return; // incompatible with this momentum
      const double rbper = reps[idx[it->second]].second;
      const complex<double> phase(std::cos(k * l), -std::sin(k * l));
      sink(it->second, ia, amp * phase * std::sqrt(ra / rbper));
    };
    apply_hamiltonian(m, L, a, [&](uint32_t b, double amp) {
      scatter([&](int r, int c, complex<double> v) { H(r, c) += v; }, b, amp);
    });
    for (int o = 0; o < 4; ++o)
      apply_observable(static_cast<Obs>(o), L, a, [&](uint32_t b, double amp) {
        scatter([&](int r, int c, complex<double> v) {
          obs[o].push_back({r, c, v});
        }, b, amp);
      });
  }

  const double asym = (H - H.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-9)
    throw std::runtime_error("momentum block not Hermitian");
  H = ((H + H.adjoint()) / 2.0).eval();

  Eigen::VectorXd w;
  herm_eig(H, w); // H now holds eigenvectors

  std::array<std::vector<double>, 4> vals;
  for (auto &v : vals) v.assign(n, 0.0);
  for (int o = 0; o < 4; ++o)
    for (const Triplet &t : obs[o]) {
      for (int i = 0; i < n; ++i)
        vals[o][i] += std::real(std::conj(H(t.row, i)) * t.amp * H(t.col, i));
    }

  for (int i = 0; i < n; ++i) {
    out.energy.push_back(w(i));
    out.z.push_back(vals[0][i]);
    out.xx.push_back(vals[1][i]);
    out.yy.push_back(vals[2][i]);
    out.zz.push_back(vals[3][i]);
  }
}

} // namespace

MomentTable ed_moments(const ModelSpec &m, int L) {
  check_finite(m);
  if (L < 4 || L % 2 != 0 || L > kMaxChainLength)
    throw std::invalid_argument("ed_moments: L must be even, 4 <= L <= 16");

  const bool magnetization_conserved =
      m.kind == ModelSpec::Kind::XXZ || std::abs(m.gamma) < 1e-14;
  const uint32_t dim = 1u << L;

  // bucket masks by conserved quantum number, keep orbit representatives
  const int nsectors = magnetization_conserved ? L + 1 : 2;
  std::vector<std::vector<std::pair<uint32_t, int>>> reps(nsectors);
  for (uint32_t s = 0; s < dim; ++s) {
    uint32_t r;
    int l;
    rep_and_shift(s, L, r, l);
    if (r != s) continue;
    const int pc = __builtin_popcount(s);
    const int sector = magnetization_conserved ? pc : (pc & 1);
    reps[sector].push_back({s, periodicity(s, L)});
  }

  MomentTable out;
  out.energy.reserve(dim);
  for (const auto &sector : reps)
    for (int kindex = 0; kindex < L; ++kindex)
      solve_momentum_block(m, L, sector, kindex, out);

  if (out.energy.size() != dim)
    throw std::runtime_error("ed_moments: state count mismatch");
  return out;
}

PairCorrelators boltzmann_average(const MomentTable &t, double kT) {
  if (kT < 0 || !std::isfinite(kT))
    throw std::invalid_argument("boltzmann_average: kT must be >= 0");
  const size_t n = t.energy.size();
  if (n == 0) throw std::invalid_argument("boltzmann_average: empty table");
  double emin = t.energy[0], emax = t.energy[0];
  for (double e : t.energy) {
    emin = std::min(emin, e);
    emax = std::max(emax, e);
  }
  double zsum = 0, az = 0, axx = 0, ayy = 0, azz = 0;
  const double gs_tol = 1e-10 * std::max(emax - emin, 1.0);
  for (size_t i = 0; i < n; ++i) {
    double w;
    if (kT == 0)
      w = (t.energy[i] - emin <= gs_tol) ? 1.0 : 0.0;
    else
      w = std::exp(-(t.energy[i] - emin) / kT); // shifted to avoid overflow
    if (w == 0) continue;
    zsum += w;
    az += w * t.z[i];
    axx += w * t.xx[i];
    ayy += w * t.yy[i];
    azz += w * t.zz[i];
  }
  return {az / zsum, axx / zsum, ayy / zsum, azz / zsum};
}

double boltzmann_energy(const MomentTable &t, double kT) {
  if (kT < 0) throw std::invalid_argument("boltzmann_energy: kT must be >= 0");
  double emin = *std::min_element(t.energy.begin(), t.energy.end());
  double emax = *std::max_element(t.energy.begin(), t.energy.end());
  const double gs_tol = 1e-10 * std::max(emax - emin, 1.0);
  double zsum = 0, acc = 0;
  for (double e : t.energy) {
    const double w = kT == 0 ? (e - emin <= gs_tol ? 1.0 : 0.0)
                             : std::exp(-(e - emin) / kT);
    zsum += w;
    acc += w * e;
  }
  return acc / zsum;
}

// ---------------------------------------------------------------------------
// Moment-table cache

namespace {

std::mutex g_cache_mu;
std::map<std::string, std::shared_ptr<const MomentTable>> g_cache;
std::string g_cache_dir;

std::string table_key(const ModelSpec &m, int L) {
  return m.key() + "_L" + std::to_string(L);
}

// file layout: magic, int32 L, int64 count, then 5*count doubles
constexpr char kCacheMagic[8] = {'Q', 'C', 'P', 'D', 'M', 'T', '1', '\n'};

bool load_table(const std::string &path, int L, MomentTable &t) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  char magic[8];
  std::int32_t fl;
  std::int64_t count;
  in.read(magic, 8);
  in.read(reinterpret_cast<char *>(&fl), 4);
  in.read(reinterpret_cast<char *>(&count), 8);
  if (!in || std::memcmp(magic, kCacheMagic, 8) != 0 || fl != L ||
      count != (std::int64_t{1} << L))
    return false;
  for (auto *v : {&t.energy, &t.z, &t.xx, &t.yy, &t.zz}) {
    v->resize(count);
    in.read(reinterpret_cast<char *>(v->data()), count * 8);
  }
  return static_cast<bool>(in);
}

void store_table(const std::string &path, int L, const MomentTable &t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return; // cache is best effort
  const std::int32_t fl = L;
  const std::int64_t count = static_cast<std::int64_t>(t.energy.size());
  out.write(kCacheMagic, 8);
  out.write(reinterpret_cast<const char *>(&fl), 4);
  out.write(reinterpret_cast<const char *>(&count), 8);
  for (const auto *v : {&t.energy, &t.z, &t.xx, &t.yy, &t.zz})
    out.write(reinterpret_cast<const char *>(v->data()), count * 8);
}

} // namespace

void set_spectrum_cache_dir(const std::string &dir) {
  std::lock_guard<std::mutex> lock(g_cache_mu);
  g_cache_dir = dir;
}

PairCorrelators ed_correlators(const ThermalPoint &p, int L) {
  const std::string key = table_key(p.model, L);
  std::shared_ptr<const MomentTable> table;
  std::string dir;
  {
    std::lock_guard<std::mutex> lock(g_cache_mu);
    auto it = g_cache.find(key);
    if (it != g_cache.end()) table = it->second;
    dir = g_cache_dir;
  }
  if (!table) {
    auto fresh = std::make_shared<MomentTable>();
    bool loaded = false;
    if (!dir.empty()) loaded = load_table(dir + "/" + key + ".bin", L, *fresh);
    if (!loaded) {
      *fresh = ed_moments(p.model, L);
      if (!dir.empty()) store_table(dir + "/" + key + ".bin", L, *fresh);
    }
    table = fresh;
    std::lock_guard<std::mutex> lock(g_cache_mu);
    g_cache[key] = table;
  }
  return boltzmann_average(*table, p.kT);
}

PairCorrelators ed_correlators_dense(const ThermalPoint &p, int L, int site) {
  if (L < 2 || L > 12)
    throw std::invalid_argument("ed_correlators_dense: L out of range (<=12)");
  if (site < 0 || site >= L)
    throw std::invalid_argument("ed_correlators_dense: bad site");
  Eigen::MatrixXd H = hamiltonian_matrix(p.model, L);
  Eigen::VectorXd w;
  sym_eig(H, w); // H holds eigenvectors
  const long dim = 1L << L;
  const int jn = (site + 1) % L;
  const uint32_t flip = (1u << site) | (1u << jn);

  std::vector<double> ez(dim), exx(dim), eyy(dim), ezz(dim);
  for (long i = 0; i < dim; ++i) {
    double vz = 0, vxx = 0, vyy = 0, vzz = 0;
    for (uint32_t s = 0; s < static_cast<uint32_t>(dim); ++s) {
      const double c = H(s, i);
      vz += c * c * spin(s, site);
      vzz += c * c * spin(s, site) * spin(s, jn);
      const bool differ = ((s >> site) & 1u) != ((s >> jn) & 1u);
      const double cross = c * H(s ^ flip, i);
      vxx += cross;
      vyy += differ ? cross : -cross;
    }
    ez[i] = vz;
    exx[i] = vxx;
    eyy[i] = vyy;
    ezz[i] = vzz;
  }
  MomentTable t{std::vector<double>(w.data(), w.data() + dim), ez, exx, eyy, ezz};
  return boltzmann_average(t, p.kT);
}

// ---------------------------------------------------------------------------
// Free-fermion correlators for the XY family (thermodynamic limit).
//
// Jordan-Wigner + Bogoliubov: xi_k = 1 - lambda cos k, Delta_k =
// lambda gamma sin k, eps_k = sqrt(xi^2 + Delta^2), t_k = tanh(eps_k/2kT).
//   z  =  (1/pi) Int xi_k / eps_k t_k
//   xx =  (1/pi) Int (sin k Delta_k - cos k xi_k) t_k / eps_k
//   yy = -(1/pi) Int (sin k Delta_k + cos k xi_k) t_k / eps_k
//   zz =  z^2 - xx*yy          (Wick's theorem, nearest neighbors)

namespace {

struct FFPoint {
  double z, xx, yy;
};

FFPoint ff_integrand(double k, double lambda, double gamma, double kT) {
  const double xi = 1.0 - lambda * std::cos(k);
  const double dl = lambda * gamma * std::sin(k);
  const double eps = std::hypot(xi, dl);
  double w; // tanh(eps/2kT)/eps
  if (eps < 1e-14) {
    if (kT <= 0) return {0, 0, 0}; // isolated gapless point
    w = 1.0 / (2.0 * kT);
  } else {
    w = (kT > 0 ? std::tanh(eps / (2.0 * kT)) : 1.0) / eps;
  }
  const double c = std::cos(k), s = std::sin(k);
  return {xi * w, (s * dl - c * xi) * w, -(s * dl + c * xi) * w};
}

// composite midpoint rule on [a,b], n panels; never samples the interval
// endpoints, where the kT = 0 integrand can be singular
FFPoint ff_midpoint(double a, double b, long n, double lambda, double gamma,
                    double kT) {
  const double h = (b - a) / n;
  FFPoint acc{0, 0, 0};
  for (long i = 0; i < n; ++i) {
    const FFPoint f = ff_integrand(a + (i + 0.5) * h, lambda, gamma, kT);
    acc.z += f.z;
    acc.xx += f.xx;
    acc.yy += f.yy;
  }
  acc.z *= h;
  acc.xx *= h;
  acc.yy *= h;
  return acc;
}

FFPoint ff_integrate(double a, double b, double lambda, double gamma, double kT) {
  long n = std::max(1000L, static_cast<long>(1e4 * (b - a) / M_PI));
  FFPoint prev = ff_midpoint(a, b, n, lambda, gamma, kT);
  for (int round = 0; round < 6; ++round) {
    n *= 4;
    const FFPoint cur = ff_midpoint(a, b, n, lambda, gamma, kT);
    const double diff = std::max({std::abs(cur.z - prev.z),
                                  std::abs(cur.xx - prev.xx),
                                  std::abs(cur.yy - prev.yy)});
    if (diff < 1e-9) return cur;
    prev = cur;
  }
  throw std::runtime_error("xy_correlators: quadrature did not converge");
}

} // namespace

PairCorrelators xy_correlators(const ThermalPoint &p) {
  if (p.model.kind != ModelSpec::Kind::XY)
    throw std::invalid_argument("xy_correlators: XY variant required");
  if (p.kT < 0) throw std::invalid_argument("xy_correlators: kT must be >= 0");
  check_finite(p.model);
  const double lambda = p.model.lambda, gamma = p.model.gamma;

  // split at the zero of xi (integrand kink when kT = 0)
  FFPoint sum{0, 0, 0};
  if (lambda > 1.0) {
    const double kstar = std::acos(1.0 / lambda);
    for (auto [a, b] : {std::pair{0.0, kstar}, std::pair{kstar, M_PI}}) {
      const FFPoint part = ff_integrate(a, b, lambda, gamma, p.kT);
      sum.z += part.z;
      sum.xx += part.xx;
      sum.yy += part.yy;
    }
  } else {
    sum = ff_integrate(0.0, M_PI, lambda, gamma, p.kT);
  }
  PairCorrelators c;
  c.z = sum.z / M_PI;
  c.xx = sum.xx / M_PI;
  c.yy = sum.yy / M_PI;
  c.zz = c.z * c.z - c.xx * c.yy;
  return c;
}

// ---------------------------------------------------------------------------
// XXZ critical points

double xxz_qcp_delta1(double h) {
  if (h <= 0) throw std::invalid_argument("xxz_qcp_delta1: h must be > 0");
  return h / 4.0 - 1.0;
}

namespace {

// h(eta) = 4 sinh(eta) sum_{j=-inf}^{inf} (-1)^j / cosh(j eta)
double delta2_field(double eta) {
  double s = 1.0;
  for (long j = 1;; ++j) {
    const double term = 2.0 * ((j % 2) ? -1.0 : 1.0) / std::cosh(j * eta);
    s += term;
    if (std::abs(term) < 1e-16) break;
    if (j > 20000000L) throw std::runtime_error("delta2 series stalled");
  }
  return 4.0 * std::sinh(eta) * s;
}

} // namespace

double xxz_qcp_delta2(double h) {
  if (h <= 0 || !std::isfinite(h))
    throw std::invalid_argument("xxz_qcp_delta2: h must be > 0");
  // h(eta) vanishes faster than any power as eta -> 0 (underflows below
  // eta ~ 0.05), so 0.01 brackets every representable positive h
  double lo = 0.01, hi = 1.0;
  while (delta2_field(hi) < h) {
    hi *= 2;
    if (hi > 1e4) throw std::runtime_error("xxz_qcp_delta2: no bracket");
  }
  if (delta2_field(lo) > h)
    throw std::runtime_error("xxz_qcp_delta2: no bracket");
  // bisection; the series is cheap and monotone on the bracket
  for (int it = 0; it < 200 && hi - lo > 1e-13 * (1 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (delta2_field(mid) < h ? lo : hi) = mid;
  }
  return std::cosh(0.5 * (lo + hi));
}

ProviderResult correlator_provider(const ThermalPoint &p, Strategy s, int L) {
  if (s == Strategy::FreeFermion) {
    if (p.model.kind != ModelSpec::Kind::XY)
      throw std::invalid_argument(
          "correlator_provider: FreeFermion supports only the XY family");
    return {xy_correlators(p), s, 0};
  }
  return {ed_correlators(p, L), s, L};
}

} // namespace qcpd::chains
