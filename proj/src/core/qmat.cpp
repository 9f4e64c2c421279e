#include "core/qmat.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qcpd::qmat {

using std::complex;
static const complex<double> I_(0.0, 1.0);

const char *bell_name(Bell b) {
  switch (b) {
  case Bell::PsiPlus: return "Psi+";
  case Bell::PsiMinus: return "Psi-";
  case Bell::PhiPlus: return "Phi+";
  case Bell::PhiMinus: return "Phi-";
  }
  return "?";
}

Mat pauli(Pauli p) {
  Mat m(2, 2);
  switch (p) {
  case Pauli::I: m << 1, 0, 0, 1; break;
  case Pauli::X: m << 0, 1, 1, 0; break;
  case Pauli::Y: m << 0, -I_, I_, 0; break;
  case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

Vec bell_state(Bell b) {
  Vec v = Vec::Zero(4);
  const double s = 1.0 / std::sqrt(2.0);
  switch (b) {
  case Bell::PsiPlus: v(1) = s; v(2) = s; break;
  case Bell::PsiMinus: v(1) = s; v(2) = -s; break;
  case Bell::PhiPlus: v(0) = s; v(3) = s; break;
  case Bell::PhiMinus: v(0) = s; v(3) = -s; break;
  }
  return v;
}

Mat bell_projector(Bell b) {
  Vec v = bell_state(b);
  return v * v.adjoint();
}

bool is_density_matrix(const Mat &m, std::string *why) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    if (why) *why = "not square";
    return false;
  }
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermTol) {
    if (why) *why = "not Hermitian";
    return false;
  }
  if (std::abs(m.trace() - 1.0) > kTraceTol) {
    if (why) *why = "trace != 1";
    return false;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol) {
    if (why) {
      std::ostringstream os;
      os << "not PSD (min eigenvalue " << es.eigenvalues().minCoeff() << ")";
      *why = os.str();
    }
    return false;
  }
  return true;
}

DensityMatrix::DensityMatrix(Mat m) : m_(std::move(m)) {
  std::string why;
  if (!is_density_matrix(m_, &why))
    throw std::invalid_argument("invalid density matrix: " + why);
}

Mat tensor(const Mat &a, const Mat &b) {
  if (a.rows() * b.rows() > kMaxDim)
    throw std::length_error("tensor: dimension exceeds limit");
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat partial_trace(const Mat &rho, const std::vector<int> &keep,
                  const std::vector<int> &dims) {
  long prod = 1;
  for (int d : dims) prod *= d;
  if (prod != rho.rows() || rho.rows() != rho.cols())
    throw std::invalid_argument("partial_trace: dims inconsistent with rho");
  if (keep.empty())
    throw std::invalid_argument("partial_trace: keep set is empty");

  const int n = static_cast<int>(dims.size());
  std::vector<bool> kept(n, false);
  long dkeep = 1, dtrace = 1;
  for (int k : keep) {
    if (k < 0 || k >= n || kept[k])
      throw std::invalid_argument("partial_trace: bad keep index");
    kept[k] = true;
    dkeep *= dims[k];
  }
  for (int i = 0; i < n; ++i)
    if (!kept[i]) dtrace *= dims[i];

  // strides in the row-major multi-index (factor 0 most significant)
  std::vector<long> stride(n);
  long s = 1;
  for (int i = n - 1; i >= 0; --i) {
    stride[i] = s;
    s *= dims[i];
  }

  auto expand = [&](long compact, bool use_kept) {
    long full = 0;
    for (int i = n - 1; i >= 0; --i) {
      if (kept[i] == use_kept) {
        full += (compact % dims[i]) * stride[i];
        compact /= dims[i];
      }
    }
    return full;
  };

  Mat out = Mat::Zero(dkeep, dkeep);
  for (long r = 0; r < dkeep; ++r) {
    const long rfull = expand(r, true);
    for (long c = 0; c < dkeep; ++c) {
      const long cfull = expand(c, true);
      complex<double> acc = 0.0;
      for (long t = 0; t < dtrace; ++t) {
        const long tfull = expand(t, false);
        acc += rho(rfull + tfull, cfull + tfull);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

Mat sqrt_psd(const Mat &m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -kPsdTol)
      throw std::domain_error("sqrt_psd: matrix not positive semidefinite");
    ev(i) = std::sqrt(std::max(ev(i), 0.0));
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

double uhlmann_fidelity(const Mat &r1, const Mat &r2) {
  if (r1.rows() != r2.rows())
    throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
  const Mat s = sqrt_psd(r1);
  const Mat inner = sqrt_psd(s * r2 * s);
  const double f = std::pow(inner.trace().real(), 2);
  return std::clamp(f, 0.0, 1.0);
}

double trace_distance(const Mat &r1, const Mat &r2) {
  if (r1.rows() != r2.rows())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Mat> es(r1 - r2, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_distance_bloch(const Mat &r1, const Mat &r2) {
  if (r1.rows() != 2 || r2.rows() != 2)
    throw std::invalid_argument("trace_distance_bloch: qubits only");
  double sum = 0.0;
  for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
    const double dr = ((r1 - r2) * pauli(p)).trace().real();
    sum += dr * dr;
  }
  return 0.5 * std::sqrt(sum);
}

} // namespace qcpd::qmat
