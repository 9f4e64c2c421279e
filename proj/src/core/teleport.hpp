#pragma once

// Teleportation of an internal qubit over a thermal two-spin resource:
// the brute-force protocol engine, the four Bell correction sets, and the
// closed-form mean fidelity / mean trace distance, their optima over the
// correction sets, and Bob's output states.

#include "core/qmat.hpp"

#include <array>
#include <optional>

namespace qcpd::teleport {

using qmat::Bell;
using qmat::Mat;

// Correction set S_k: the unitary Bob applies for each of Alice's
// outcomes, assuming the resource is the Bell state |k>.
enum class Set { SPhiPlus, SPhiMinus, SPsiPlus, SPsiMinus };
inline constexpr Set kSetLabels[4] = {Set::SPhiPlus, Set::SPhiMinus,
                                      Set::SPsiPlus, Set::SPsiMinus};
const char *set_name(Set s);

// Family of a set: the closed forms only distinguish S_{Psi+-} from
// S_{Phi+-}.
enum class SetFamily { Phi, Psi };
SetFamily family(Set s);
const char *family_name(SetFamily f);

// Unitary table indexed in the order {Phi+, Phi-, Psi+, Psi-}.
std::array<Mat, 4> correction_set(Set s);
Mat correction(Set s, Bell outcome);

// One- and two-point correlators {z, xx, yy, zz} of a nearest-neighbor
// spin pair; fully determine rho23 and rho1.
struct PairCorrelators {
  double z = 0, xx = 0, yy = 0, zz = 0;
  // PSD conditions of the X-shaped rho23: a,b,d >= 0, |e| <= sqrt(a d),
  // |c| <= b (within tolerance).
  bool physical(double tol = 1e-12) const;
};

// a..e entries of the X-shaped two-spin matrix.
struct XEntries {
  double a, b, c, d, e;
};
XEntries x_entries(const PairCorrelators &c);

Mat rho23_from_correlators(const PairCorrelators &c); // throws if unphysical
Mat rho1_from_z(double z);                            // throws if |z|>1

struct Outcome {
  Bell j;
  double probability = 0;
  Mat bob_state;          // 2x2, normalized; unspecified when degenerate
  bool degenerate = false; // probability below threshold, excluded from means
};

inline constexpr double kDegenerateTol = 1e-14;

// Full protocol: rho = rho1 (x) rho23, Bell measurement on qubits 1,2,
// correction from `set` on qubit 3.
std::array<Outcome, 4> engine(const Mat &rho1, const Mat &rho23, Set set);

// Engine-side weighted means (oracle route; degenerate outcomes excluded).
double engine_mean_fidelity(const Mat &rho1, const Mat &rho23, Set set);
double engine_mean_trace_distance(const Mat &rho1, const Mat &rho23, Set set);

// f(zz,z) = 1 + z + z^2 + z*zz,  g(zz,z) = 1 - z - z^2 + z*zz
double f_poly(double zz, double z);
double g_poly(double zz, double z);

// Closed forms; depend only on (z, zz).
double mean_fidelity(const PairCorrelators &c, Set set);
double mean_trace_distance(const PairCorrelators &c, Set set);

template <typename T> struct Optimum {
  double value;
  T arg;
};

// Max mean fidelity over the sets; ties go to the Phi family.
Optimum<SetFamily> f_max(const PairCorrelators &c);
// Min mean trace distance over the sets; ties go to the Phi family.
// Equals ((2 - |z^2+zz|)|z| + |z^3 - z*zz|)/4.
Optimum<SetFamily> d_min(const PairCorrelators &c);
double d_min_closed_form(double z, double zz);

// Bob's output for outcome j under set family, closed form (diagonal 2x2).
// Psi outcomes require |z| < 1.
Mat bob_output(const PairCorrelators &c, Bell j, SetFamily fam);

// Which simplified branch of d_min applies at (z, zz).
struct SignAnalysis {
  int sign_cubic;   // sign of z^3 - z*zz
  int sign_z;       // sign of z
  enum class Region { High, Mid, Low } region; // zz >= z^2, |zz| <= z^2, zz <= -z^2
  double branch_value; // the piecewise expression; equals d_min on its domain
};
SignAnalysis sign_analysis(const PairCorrelators &c);
const char *region_name(SignAnalysis::Region r);

} // namespace qcpd::teleport
