#include "core/teleport.hpp"

#include <cmath>
#include <stdexcept>

namespace qcpd::teleport {

using qmat::Pauli;

const char *set_name(Set s) {
  switch (s) {
  case Set::SPhiPlus: return "S_Phi+";
  case Set::SPhiMinus: return "S_Phi-";
  case Set::SPsiPlus: return "S_Psi+";
  case Set::SPsiMinus: return "S_Psi-";
  }
  return "?";
}

SetFamily family(Set s) {
  return (s == Set::SPsiPlus || s == Set::SPsiMinus) ? SetFamily::Psi
                                                     : SetFamily::Phi;
}

const char *family_name(SetFamily f) {
  return f == SetFamily::Phi ? "S_Phi+-" : "S_Psi+-";
}

std::array<Mat, 4> correction_set(Set s) {
  const Mat id = qmat::pauli(Pauli::I);
  const Mat x = qmat::pauli(Pauli::X);
  const Mat z = qmat::pauli(Pauli::Z);
  const Mat zx = z * x;
  switch (s) {
  case Set::SPhiPlus: return {id, z, x, zx};
  case Set::SPhiMinus: return {z, id, zx, x};
  case Set::SPsiPlus: return {x, zx, id, z};
  case Set::SPsiMinus: return {zx, x, z, id};
  }
  throw std::invalid_argument("bad set label");
}

Mat correction(Set s, Bell outcome) {
  const auto table = correction_set(s);
  switch (outcome) {
  case Bell::PhiPlus: return table[0];
  case Bell::PhiMinus: return table[1];
  case Bell::PsiPlus: return table[2];
  case Bell::PsiMinus: return table[3];
  }
  throw std::invalid_argument("bad Bell label");
}

XEntries x_entries(const PairCorrelators &c) {
  return {(1 + 2 * c.z + c.zz) / 4, (1 - c.zz) / 4, (c.xx + c.yy) / 4,
          (1 - 2 * c.z + c.zz) / 4, (c.xx - c.yy) / 4};
}

bool PairCorrelators::physical(double tol) const {
  const XEntries x = x_entries(*this);
  if (x.a < -tol || x.b < -tol || x.d < -tol) return false;
  if (std::abs(x.e) > std::sqrt(std::max(x.a, 0.0) * std::max(x.d, 0.0)) + tol)
    return false;
  if (std::abs(x.c) > x.b + tol) return false;
  return true;
}

Mat rho23_from_correlators(const PairCorrelators &c) {
  if (!c.physical())
    throw std::invalid_argument("rho23_from_correlators: unphysical correlators");
  const XEntries x = x_entries(c);
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = x.a;
  m(1, 1) = m(2, 2) = x.b;
  m(1, 2) = m(2, 1) = x.c;
  m(3, 3) = x.d;
  m(0, 3) = m(3, 0) = x.e;
  return m;
}

Mat rho1_from_z(double z) {
  if (std::abs(z) > 1.0 + 1e-12)
    throw std::invalid_argument("rho1_from_z: |z| > 1");
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = (1 + z) / 2;
  m(1, 1) = (1 - z) / 2;
  return m;
}

std::array<Outcome, 4> engine(const Mat &rho1, const Mat &rho23, Set set) {
  if (rho1.rows() != 2 || rho23.rows() != 4)
    throw std::invalid_argument("engine: rho1 must be 2x2, rho23 4x4");
  const Mat rho = qmat::tensor(rho1, rho23);
  const Mat id2 = qmat::pauli(Pauli::I);

  std::array<Outcome, 4> out;
  int idx = 0;
  for (qmat::Bell j : qmat::kBellLabels) {
    const Mat proj = qmat::tensor(qmat::bell_projector(j), id2);
    const Mat collapsed = proj * rho * proj;
    const double q = collapsed.trace().real();
    Outcome &o = out[idx++];
    o.j = j;
    o.probability = q;
    if (q < kDegenerateTol) {
      o.degenerate = true;
      o.bob_state = Mat::Zero(2, 2);
      continue;
    }
    const Mat u = correction(set, j);
    const Mat reduced = qmat::partial_trace(collapsed, {2}, {2, 2, 2});
    o.bob_state = u * reduced * u.adjoint() / q;
  }
  return out;
}

double engine_mean_fidelity(const Mat &rho1, const Mat &rho23, Set set) {
  double acc = 0.0;
  for (const Outcome &o : engine(rho1, rho23, set))
    if (!o.degenerate)
      acc += o.probability * qmat::uhlmann_fidelity(rho1, o.bob_state);
  return acc;
}

double engine_mean_trace_distance(const Mat &rho1, const Mat &rho23, Set set) {
  double acc = 0.0;
  for (const Outcome &o : engine(rho1, rho23, set))
    if (!o.degenerate)
      acc += o.probability * qmat::trace_distance(rho1, o.bob_state);
  return acc;
}

double f_poly(double zz, double z) { return 1 + z + z * z + z * zz; }
double g_poly(double zz, double z) { return 1 - z - z * z + z * zz; }

static double sq(double x) { return x * x; }

double mean_fidelity(const PairCorrelators &c, Set set) {
  const double z = c.z, zz = c.zz;
  auto root = [](double x) { return std::sqrt(std::max(x, 0.0)); };
  double fid;
  if (family(set) == SetFamily::Psi) {
    fid = sq(root((1 + z) * f_poly(zz, -z)) + root((1 - z) * f_poly(zz, z))) / 8 +
          sq(root((1 - z) * g_poly(zz, z)) + root((1 + z) * g_poly(zz, -z))) / 8;
  } else {
    fid = sq(root((1 - z) * f_poly(zz, -z)) + root((1 + z) * f_poly(zz, z))) / 8 +
          sq(root((1 + z) * g_poly(zz, z)) + root((1 - z) * g_poly(zz, -z))) / 8;
  }
  return std::clamp(fid, 0.0, 1.0);
}

double mean_trace_distance(const PairCorrelators &c, Set set) {
  const double z = c.z, zz = c.zz;
  const double cubic = std::abs(z * z * z - z * zz);
  if (family(set) == SetFamily::Psi)
    return ((2 + z * z + zz) * std::abs(z) + cubic) / 4;
  return ((2 - z * z - zz) * std::abs(z) + cubic) / 4;
}

Optimum<SetFamily> f_max(const PairCorrelators &c) {
  const double fphi = mean_fidelity(c, Set::SPhiPlus);
  const double fpsi = mean_fidelity(c, Set::SPsiPlus);
  if (fpsi > fphi) return {fpsi, SetFamily::Psi};
  return {fphi, SetFamily::Phi};
}

double d_min_closed_form(double z, double zz) {
  return ((2 - std::abs(z * z + zz)) * std::abs(z) +
          std::abs(z * z * z - z * zz)) /
         4;
}

Optimum<SetFamily> d_min(const PairCorrelators &c) {
  const double dphi = mean_trace_distance(c, Set::SPhiPlus);
  const double dpsi = mean_trace_distance(c, Set::SPsiPlus);
  if (dpsi < dphi) return {dpsi, SetFamily::Psi};
  return {dphi, SetFamily::Phi};
}

Mat bob_output(const PairCorrelators &c, Bell j, SetFamily fam) {
  const double z = c.z, zz = c.zz;
  const bool psi_outcome = (j == Bell::PsiPlus || j == Bell::PsiMinus);
  Mat m = Mat::Zero(2, 2);
  if (psi_outcome) {
    if (std::abs(z) >= 1.0 - 1e-15)
      throw std::domain_error("bob_output: Psi outcome degenerate at |z|=1");
    const double norm = 2 * (1 - z * z);
    if (fam == SetFamily::Psi) {
      m(0, 0) = g_poly(zz, -z) / norm;
      m(1, 1) = g_poly(zz, z) / norm;
    } else {
      m(0, 0) = g_poly(zz, z) / norm;
      m(1, 1) = g_poly(zz, -z) / norm;
    }
  } else {
    const double norm = 2 * (1 + z * z);
    if (fam == SetFamily::Psi) {
      m(0, 0) = f_poly(zz, -z) / norm;
      m(1, 1) = f_poly(zz, z) / norm;
    } else {
      m(0, 0) = f_poly(zz, z) / norm;
      m(1, 1) = f_poly(zz, -z) / norm;
    }
  }
  return m;
}

SignAnalysis sign_analysis(const PairCorrelators &c) {
  const double z = c.z, zz = c.zz;
  auto sgn = [](double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); };
  SignAnalysis s;
  s.sign_cubic = sgn(z * z * z - z * zz);
  s.sign_z = sgn(z);
  const double az = std::abs(z);
  if (zz >= z * z) {
    s.region = SignAnalysis::Region::High;
    s.branch_value = az * (1 - z * z) / 2;
  } else if (zz <= -z * z) {
    s.region = SignAnalysis::Region::Low;
    s.branch_value = az * (1 + z * z) / 2;
  } else {
    s.region = SignAnalysis::Region::Mid;
    s.branch_value = az * (1 - zz) / 2;
  }
  return s;
}

const char *region_name(SignAnalysis::Region r) {
  switch (r) {
  case SignAnalysis::Region::High: return "zz>=z^2";
  case SignAnalysis::Region::Mid: return "|zz|<=z^2";
  case SignAnalysis::Region::Low: return "zz<=-z^2";
  }
  return "?";
}

} // namespace qcpd::teleport
