#include "core/detector.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace qcpd::detector {

const char *axis_name(Axis a) {
  switch (a) {
  case Axis::Delta: return "delta";
  case Axis::Lambda: return "lambda";
  case Axis::Gamma: return "gamma";
  }
  return "?";
}

ModelSpec with_axis_value(const ModelSpec &m, Axis axis, double value) {
  ModelSpec out = m;
  switch (axis) {
  case Axis::Delta:
    if (m.kind != ModelSpec::Kind::XXZ)
      throw std::invalid_argument("axis delta needs the XXZ model");
    out.delta = value;
    break;
  case Axis::Lambda:
    if (m.kind != ModelSpec::Kind::XY)
      throw std::invalid_argument("axis lambda needs the XY model");
    out.lambda = value;
    break;
  case Axis::Gamma:
    if (m.kind != ModelSpec::Kind::XY)
      throw std::invalid_argument("axis gamma needs the XY model");
    out.gamma = value;
    break;
  }
  return out;
}

ScanPoint evaluate_point(const ModelSpec &m, Axis axis, double param, double kT,
                         Strategy strategy, int L) {
  ScanPoint p;
  p.param = param;
  try {
    const chains::ThermalPoint tp{with_axis_value(m, axis, param), kT};
    p.c = chains::correlator_provider(tp, strategy, L).c;
    p.fbar_psi = teleport::mean_fidelity(p.c, teleport::Set::SPsiPlus);
    p.fbar_phi = teleport::mean_fidelity(p.c, teleport::Set::SPhiPlus);
    p.dbar_psi = teleport::mean_trace_distance(p.c, teleport::Set::SPsiPlus);
    p.dbar_phi = teleport::mean_trace_distance(p.c, teleport::Set::SPhiPlus);
    const auto fm = teleport::f_max(p.c);
    const auto dm = teleport::d_min(p.c);
    p.fmax = fm.value;
    p.argmax_set = fm.arg;
    p.dmin = dm.value;
    p.argmin_set = dm.arg;
    p.ok = true;
  } catch (const std::exception &e) {
    p.ok = false;
    p.error = e.what();
  }
  return p;
}

std::vector<double> ScanSeries::grid() const {
  std::vector<double> g;
  g.reserve(points.size());
  for (const ScanPoint &p : points) g.push_back(p.param);
  return g;
}

std::vector<double> ScanSeries::values(const std::string &observable) const {
  double ScanPoint::*field = nullptr;
  double PairCorrelators::*cfield = nullptr;
  if (observable == "z") cfield = &PairCorrelators::z;
  else if (observable == "xx") cfield = &PairCorrelators::xx;
  else if (observable == "yy") cfield = &PairCorrelators::yy;
  else if (observable == "zz") cfield = &PairCorrelators::zz;
  else if (observable == "fbar_psi") field = &ScanPoint::fbar_psi;
  else if (observable == "fbar_phi") field = &ScanPoint::fbar_phi;
  else if (observable == "fmax") field = &ScanPoint::fmax;
  else if (observable == "dbar_psi") field = &ScanPoint::dbar_psi;
  else if (observable == "dbar_phi") field = &ScanPoint::dbar_phi;
  else if (observable == "dmin") field = &ScanPoint::dmin;
  else throw std::invalid_argument("unknown observable: " + observable);

  std::vector<double> v;
  v.reserve(points.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const ScanPoint &p : points) {
    if (!p.ok) v.push_back(nan);
    else v.push_back(cfield ? p.c.*cfield : p.*field);
  }
  return v;
}

ScanSeries scan(const ModelSpec &m, Axis axis, double lo, double hi,
                double step, double kT, Strategy strategy, int L) {
  if (!(step > 0)) throw std::invalid_argument("scan: step must be > 0");
  if (!(hi > lo)) throw std::invalid_argument("scan: empty parameter range");
  ScanSeries s;
  s.model = m;
  s.axis = axis;
  s.kT = kT;
  s.step = step;
  s.strategy = strategy;
  s.L = L;
  const long n = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  s.points.reserve(n);
  for (long i = 0; i < n; ++i)
    s.points.push_back(evaluate_point(m, axis, lo + i * step, kT, strategy, L));
  return s;
}

static std::vector<double> diff1(const std::vector<double> &f, double step) {
  const size_t n = f.size();
  std::vector<double> d(n);
  d[0] = (f[1] - f[0]) / step;
  d[n - 1] = (f[n - 1] - f[n - 2]) / step;
  for (size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2 * step);
  return d;
}

std::vector<double> finite_difference(const std::vector<double> &series,
                                      double step, int order) {
  if (order != 1 && order != 2)
    throw std::invalid_argument("finite_difference: order must be 1 or 2");
  if (!(step > 0)) throw std::invalid_argument("finite_difference: bad step");
  if (series.size() < static_cast<size_t>(order) + 1)
    throw std::invalid_argument("finite_difference: series too short");
  std::vector<double> d = diff1(series, step);
  if (order == 2) d = diff1(d, step);
  return d;
}

ExtremumEstimate locate_extremum(const std::vector<double> &deriv,
                                 const std::vector<double> &grid,
                                 double window_lo, double window_hi,
                                 double step, int order,
                                 const std::string &observable, double kT) {
  if (deriv.size() != grid.size())
    throw std::invalid_argument("locate_extremum: size mismatch");
  long best = -1;
  double best_mag = -1;
  for (size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < window_lo - 1e-12 || grid[i] > window_hi + 1e-12) continue;
    if (std::isnan(deriv[i])) continue;
    const double mag = std::abs(deriv[i]);
    if (mag > best_mag) { // strict: ties keep the lower parameter value
      best_mag = mag;
      best = static_cast<long>(i);
    }
  }
  if (best < 0) throw std::invalid_argument("locate_extremum: empty window");
  ExtremumEstimate e;
  e.location = grid[best];
  e.uncertainty = order == 1 ? step : 2 * step;
  e.derivative_order = order;
  e.observable = observable;
  e.kT = kT;
  e.at_edge = best < order || best + order >= static_cast<long>(grid.size());
  return e;
}

QcpEstimate extrapolate_qcp(const std::vector<std::pair<double, double>> &points,
                            FitKind kind) {
  QcpEstimate q;
  q.fit_kind = kind;
  for (const auto &p : points)
    if (p.first != 0.0) q.fit_points.push_back(p);
  const int deg = kind == FitKind::Linear ? 1 : 2;
  const long n = static_cast<long>(q.fit_points.size());
  if (n < deg + 2)
    throw std::invalid_argument("extrapolate_qcp: too few nonzero-kT points");
  if (std::all_of(q.fit_points.begin(), q.fit_points.end(), [&](const auto &p) {
        return p.first == q.fit_points[0].first;
      }))
    throw std::invalid_argument("extrapolate_qcp: all kT equal");
  Eigen::MatrixXd a(n, deg + 1);
  Eigen::VectorXd b(n);
  for (long i = 0; i < n; ++i) {
    double t = 1;
    for (int j = 0; j <= deg; ++j, t *= q.fit_points[i].first) a(i, j) = t;
    b(i) = q.fit_points[i].second;
  }
  const Eigen::VectorXd coeff = a.colPivHouseholderQr().solve(b);
  q.extrapolated_location = coeff(0); // value at kT = 0
  q.residual = (a * coeff - b).norm();
  return q;
}

const char *crossing_kind_name(CrossingPoint::Kind k) {
  switch (k) {
  case CrossingPoint::Kind::FidelitySets: return "fidelity-sets";
  case CrossingPoint::Kind::DistanceSets: return "distance-sets";
  case CrossingPoint::Kind::CubicSign: return "cubic-sign";
  case CrossingPoint::Kind::ZzPlusZSquared: return "zz-plus-z2";
  }
  return "?";
}

namespace {

double crossing_function(const PairCorrelators &c, CrossingPoint::Kind k) {
  switch (k) {
  case CrossingPoint::Kind::FidelitySets:
    return teleport::mean_fidelity(c, teleport::Set::SPsiPlus) -
           teleport::mean_fidelity(c, teleport::Set::SPhiPlus);
  case CrossingPoint::Kind::DistanceSets:
    return teleport::mean_trace_distance(c, teleport::Set::SPsiPlus) -
           teleport::mean_trace_distance(c, teleport::Set::SPhiPlus);
  case CrossingPoint::Kind::CubicSign:
    return c.z * c.z * c.z - c.z * c.zz;
  case CrossingPoint::Kind::ZzPlusZSquared:
    return c.z * c.z + c.zz;
  }
  return 0;
}

} // namespace

std::vector<CrossingPoint> find_crossings(const ScanSeries &s) {
  std::vector<CrossingPoint> out;
  auto eval = [&](double param) {
    const ScanPoint p =
        evaluate_point(s.model, s.axis, param, s.kT, s.strategy, s.L);
    if (!p.ok) throw std::runtime_error("crossing refinement: " + p.error);
    return p.c;
  };
  constexpr CrossingPoint::Kind kinds[] = {
      CrossingPoint::Kind::FidelitySets, CrossingPoint::Kind::DistanceSets,
      CrossingPoint::Kind::CubicSign, CrossingPoint::Kind::ZzPlusZSquared};
  for (CrossingPoint::Kind kind : kinds) {
    for (size_t i = 0; i + 1 < s.points.size(); ++i) {
      const ScanPoint &a = s.points[i], &b = s.points[i + 1];
      if (!a.ok || !b.ok) continue;
      const double fa = crossing_function(a.c, kind);
      const double fb = crossing_function(b.c, kind);
      if (fa == 0.0) {
        // an exactly-zero plateau contributes its boundary grid points; a
        // one-sided zero (e.g. z3 - z*zz == 0 across the whole polarized
        // phase) has no sign change for the bracketing below to find
        const bool prev_zero =
            i > 0 && s.points[i - 1].ok &&
            crossing_function(s.points[i - 1].c, kind) == 0.0;
        if (!prev_zero || fb != 0.0) out.push_back({a.param, kind, s.kT});
        continue;
      }
      if (fb == 0.0) {
        // trailing zero at the last grid point has no later bracket
        if (i + 2 == s.points.size()) out.push_back({b.param, kind, s.kT});
        continue;
      }
      if (fa * fb >= 0) continue;
      double plo = a.param, phi = b.param, flo = fa;
      for (int it = 0; it < 60 && phi - plo > 1e-10; ++it) {
        const double mid = 0.5 * (plo + phi);
        const double fm = crossing_function(eval(mid), kind);
        if (fm == 0.0) { plo = phi = mid; break; }
        if (flo * fm < 0) phi = mid;
        else { plo = mid; flo = fm; }
      }
      out.push_back({0.5 * (plo + phi), kind, s.kT});
    }
  }
  return out;
}

std::vector<GammaCheck> gamma_transition_check(double lambda_fixed,
                                               const std::vector<double> &kts,
                                               double glo, double ghi,
                                               double step, Strategy strategy,
                                               int L) {
  if (!(lambda_fixed > 1))
    throw std::invalid_argument("gamma_transition_check: lambda must be > 1");
  std::vector<GammaCheck> out;
  const ModelSpec base = ModelSpec::xy(lambda_fixed, 0.0);
  for (double kT : kts) {
    const ScanSeries s = scan(base, Axis::Gamma, glo, ghi, step, kT, strategy, L);
    GammaCheck g;
    g.kT = kT;
    double dbest = -1, fbest = 2;
    for (const ScanPoint &p : s.points) {
      if (!p.ok) continue;
      if (p.dmin > dbest) { dbest = p.dmin; g.dmin_argmax = p.param; }
      if (p.fmax < fbest) { fbest = p.fmax; g.fmax_argmin = p.param; }
    }
    if (dbest < 0)
      throw std::runtime_error("gamma_transition_check: no usable points");
    out.push_back(g);
  }
  return out;
}

DetectResult run_detect(const DetectConfig &cfg) {
  if (cfg.kts.empty()) throw std::invalid_argument("run_detect: no temperatures");
  DetectResult r;
  double wlo = cfg.window_lo, whi = cfg.window_hi;
  if (!(wlo < whi)) { wlo = cfg.lo; whi = cfg.hi; }
  std::vector<std::pair<double, double>> pts;
  for (double kT : cfg.kts) {
    ScanSeries s = scan(cfg.model, cfg.axis, cfg.lo, cfg.hi, cfg.step, kT,
                        cfg.strategy, cfg.L);
    const std::vector<double> deriv =
        finite_difference(s.values(cfg.observable), cfg.step, cfg.order);
    const ExtremumEstimate e =
        locate_extremum(deriv, s.grid(), wlo, whi, cfg.step, cfg.order,
                        cfg.observable, kT);
    pts.push_back({kT, e.location});
    r.per_kt.push_back(e);
    r.scans.push_back(std::move(s));
  }
  r.qcp = extrapolate_qcp(pts, cfg.fit);
  return r;
}

} // namespace qcpd::detector
