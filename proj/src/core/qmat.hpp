#pragma once

// Dense complex-matrix toolkit for few-qubit states: Pauli operators,
// Bell states, tensor products, partial trace, Uhlmann fidelity and
// trace distance.
//
// Basis convention (fixed project-wide): product basis |q1 q2 q3 ...>,
// qubit 1 (Alice's input) is tensor factor 0 and the most significant
// bit of the basis index; |0> is the sigma^z = +1 (spin up) state.

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qcpd::qmat {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kHermTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr int kMaxDim = 1 << 16;

enum class Pauli { I, X, Y, Z };

enum class Bell { PsiPlus, PsiMinus, PhiPlus, PhiMinus };
inline constexpr Bell kBellLabels[4] = {Bell::PsiPlus, Bell::PsiMinus,
                                        Bell::PhiPlus, Bell::PhiMinus};
const char *bell_name(Bell b);

Mat pauli(Pauli p);

// |Psi+->=(|01>+-|10>)/sqrt2, |Phi+->=(|00>+-|11>)/sqrt2
Vec bell_state(Bell b);
Mat bell_projector(Bell b);

// Validated density matrix. Construction throws std::invalid_argument if
// the matrix fails the Hermiticity / unit-trace / PSD checks.
class DensityMatrix {
public:
  explicit DensityMatrix(Mat m);
  const Mat &mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

private:
  Mat m_;
};

bool is_density_matrix(const Mat &m, std::string *why = nullptr);

// Kronecker product; dimension a.dim*b.dim, throws past kMaxDim.
Mat tensor(const Mat &a, const Mat &b);

// Reduced matrix on the kept factors (indices into dims, ascending order
// preserved). prod(dims) must equal dim(rho).
Mat partial_trace(const Mat &rho, const std::vector<int> &keep,
                  const std::vector<int> &dims);

// Square root of a Hermitian PSD matrix; eigenvalues below -kPsdTol throw,
// small negative ones are clipped to zero.
Mat sqrt_psd(const Mat &m);

// F = [Tr sqrt(sqrt(r1) r2 sqrt(r1))]^2
double uhlmann_fidelity(const Mat &r1, const Mat &r2);

// D = Tr|r1-r2|/2
double trace_distance(const Mat &r1, const Mat &r2);

// Bloch-vector form, qubits only: half the Euclidean distance between
// the two Bloch vectors.
double trace_distance_bloch(const Mat &r1, const Mat &r2);

} // namespace qcpd::qmat
