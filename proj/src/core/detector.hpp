#pragma once

// Finite-temperature QCP detection pipeline: parameter scans of the
// teleportation measures, finite-difference derivatives, extremum
// location with a grid-step error model, set-crossing / sign-change
// analysis, and least-squares extrapolation of extrema to kT = 0.

#include "core/chains.hpp"
#include "core/teleport.hpp"

#include <string>
#include <vector>

namespace qcpd::detector {

using chains::ModelSpec;
using chains::Strategy;
using teleport::PairCorrelators;
using teleport::SetFamily;

enum class Axis { Delta, Lambda, Gamma };
const char *axis_name(Axis a);

struct ScanPoint {
  double param = 0;
  bool ok = false;    // false: provider failed, point recorded as a gap
  std::string error;  // provider message when !ok
  PairCorrelators c;
  double fbar_psi = 0, fbar_phi = 0, fmax = 0;
  double dbar_psi = 0, dbar_phi = 0, dmin = 0;
  SetFamily argmax_set = SetFamily::Phi;
  SetFamily argmin_set = SetFamily::Phi;
};

struct ScanSeries {
  ModelSpec model; // axis parameter value here is ignored
  Axis axis = Axis::Lambda;
  double kT = 0;
  double step = 0;
  Strategy strategy = Strategy::ED;
  int L = 0;
  std::vector<ScanPoint> points;

  std::vector<double> grid() const;
  // observable in {z,xx,yy,zz,fbar_psi,fbar_phi,fmax,dbar_psi,dbar_phi,
  // dmin}; gaps come back as NaN
  std::vector<double> values(const std::string &observable) const;
};

// Applies the axis parameter to a model; shared with the crossing refiner.
ModelSpec with_axis_value(const ModelSpec &m, Axis axis, double value);
ScanPoint evaluate_point(const ModelSpec &m, Axis axis, double param, double kT,
                         Strategy strategy, int L);

// Uniform grid lo, lo+step, ..., last point <= hi (+ tolerance).
ScanSeries scan(const ModelSpec &m, Axis axis, double lo, double hi,
                double step, double kT, Strategy strategy,
                int L = chains::kDefaultChainLength);

// Central differences in the interior, one-sided at the two edges;
// order 2 is the first-difference of the order-1 result. Output length
// equals input length; NaN gaps propagate.
std::vector<double> finite_difference(const std::vector<double> &series,
                                      double step, int order);

struct ExtremumEstimate {
  double location = 0;
  double uncertainty = 0; // step for order 1, 2*step for order 2
  int derivative_order = 1;
  std::string observable;
  double kT = 0;
  bool at_edge = false; // one-sided-difference region; unreliable
};

// Grid point of maximum |deriv| within [window_lo, window_hi]; ties go
// to the lower parameter value; NaN entries are skipped.
ExtremumEstimate locate_extremum(const std::vector<double> &deriv,
                                 const std::vector<double> &grid,
                                 double window_lo, double window_hi,
                                 double step, int order,
                                 const std::string &observable, double kT);

enum class FitKind { Linear, Quadratic };

struct QcpEstimate {
  double extrapolated_location = 0;
  FitKind fit_kind = FitKind::Linear;
  std::vector<std::pair<double, double>> fit_points; // (kT, location), kT > 0
  double residual = 0; // Euclidean norm of fit residuals
};

// Unweighted least squares in kT; kT = 0 points are excluded before the
// fit. Needs >= 3 points (linear) or >= 4 (quadratic) after exclusion.
QcpEstimate extrapolate_qcp(const std::vector<std::pair<double, double>> &points,
                            FitKind kind);

struct CrossingPoint {
  enum class Kind {
    FidelitySets,  // F(S_Psi) = F(S_Phi)
    DistanceSets,  // D(S_Psi) = D(S_Phi)
    CubicSign,     // z^3 - z*zz changes sign
    ZzPlusZSquared // z^2 + zz = 0
  };
  double param_value = 0;
  Kind kind = Kind::FidelitySets;
  double kT = 0;
};
const char *crossing_kind_name(CrossingPoint::Kind k);

// Sign-change bracketing over the scan grid, then bisection against the
// closed forms with fresh provider evaluations inside the bracket.
std::vector<CrossingPoint> find_crossings(const ScanSeries &s);

struct GammaCheck {
  double kT = 0;
  double dmin_argmax = 0; // gamma maximizing the minimal trace distance
  double fmax_argmin = 0; // gamma minimizing the maximal fidelity
};

// gamma scan at fixed lambda > 1 for each temperature.
std::vector<GammaCheck> gamma_transition_check(double lambda_fixed,
                                               const std::vector<double> &kts,
                                               double glo, double ghi,
                                               double step, Strategy strategy,
                                               int L = chains::kDefaultChainLength);

struct DetectConfig {
  ModelSpec model;
  Axis axis = Axis::Lambda;
  double lo = 0, hi = 1, step = 0.01;
  std::vector<double> kts;
  Strategy strategy = Strategy::ED;
  int L = chains::kDefaultChainLength;
  int order = 1;
  FitKind fit = FitKind::Linear;
  double window_lo = 0, window_hi = 0; // lo >= hi means full range
  std::string observable = "dmin";
};

struct DetectResult {
  std::vector<ExtremumEstimate> per_kt;
  QcpEstimate qcp;
  std::vector<ScanSeries> scans; // one per kT, same order as config.kts
};

// Full pipeline: scan per kT, differentiate, locate the extremum in the
// window, extrapolate the per-kT locations to kT = 0.
DetectResult run_detect(const DetectConfig &cfg);

} // namespace qcpd::detector
