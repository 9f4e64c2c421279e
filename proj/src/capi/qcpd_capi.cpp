#include "qcpd.h"

#include "core/chains.hpp"
#include "core/detector.hpp"
#include "core/teleport.hpp"
#include "core/verify.hpp"

#include <cstdlib>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <string>

using qcpd::chains::ModelSpec;
using qcpd::chains::Strategy;
using qcpd::chains::ThermalPoint;
using qcpd::detector::Axis;
using qcpd::teleport::PairCorrelators;
using qcpd::teleport::SetFamily;

namespace {

thread_local std::string t_last_error;

int fail(int code, const char *what) {
  t_last_error = what ? what : "";
  return code;
}

// maps the library's exception taxonomy onto the C error codes
int translate_current_exception() {
  try {
    throw;
  } catch (const std::domain_error &e) {
    return fail(QCPD_EUNPHYSICAL, e.what());
  } catch (const std::invalid_argument &e) {
    return fail(QCPD_EINVAL, e.what());
  } catch (const std::runtime_error &e) {
    return fail(QCPD_ENUMERIC, e.what());
  } catch (const std::exception &e) {
    return fail(QCPD_ENUMERIC, e.what());
  }
}

ModelSpec to_model(const qcpd_model &m) {
  switch (m.kind) {
  case QCPD_MODEL_XXZ: return ModelSpec::xxz(m.delta, m.h);
  case QCPD_MODEL_XY: return ModelSpec::xy(m.lambda, m.gamma);
  default: throw std::invalid_argument("qcpd_model.kind out of range");
  }
}

Strategy to_strategy(const qcpd_provider &p) {
  switch (p.strategy) {
  case QCPD_PROVIDER_ED: return Strategy::ED;
  case QCPD_PROVIDER_FREE_FERMION: return Strategy::FreeFermion;
  default: throw std::invalid_argument("qcpd_provider.strategy out of range");
  }
}

Axis to_axis(int axis) {
  switch (axis) {
  case QCPD_AXIS_DELTA: return Axis::Delta;
  case QCPD_AXIS_LAMBDA: return Axis::Lambda;
  case QCPD_AXIS_GAMMA: return Axis::Gamma;
  default: throw std::invalid_argument("axis out of range");
  }
}

int family_code(SetFamily f) {
  return f == SetFamily::Psi ? QCPD_FAMILY_PSI : QCPD_FAMILY_PHI;
}

} // namespace

struct qcpd_scan {
  qcpd::detector::ScanSeries series;
};

struct qcpd_detect {
  qcpd::detector::DetectResult result;
};

extern "C" {

const char *qcpd_last_error(void) { return t_last_error.c_str(); }

const char *qcpd_version(void) { return "1.0.0"; }

const char *qcpd_family_name(int family) {
  switch (family) {
  case QCPD_FAMILY_PHI: return "S_Phi+-";
  case QCPD_FAMILY_PSI: return "S_Psi+-";
  default: return "?";
  }
}

const char *qcpd_crossing_name(int kind) {
  switch (kind) {
  case QCPD_CROSS_FIDELITY_SETS: return "fidelity-sets";
  case QCPD_CROSS_DISTANCE_SETS: return "distance-sets";
  case QCPD_CROSS_CUBIC_SIGN: return "cubic-sign";
  case QCPD_CROSS_ZZ_PLUS_Z2: return "zz-plus-z2";
  default: return "?";
  }
}

int qcpd_set_cache_dir(const char *dir) {
  try {
    qcpd::chains::set_spectrum_cache_dir(dir ? dir : "");
    return QCPD_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

int qcpd_correlators_eval(const qcpd_model *model, double kT,
                          const qcpd_provider *provider,
                          qcpd_correlators *out) {
  if (!model || !provider || !out) return fail(QCPD_EINVAL, "null argument");
  try {
    const ModelSpec m = to_model(*model);
    const Strategy s = to_strategy(*provider);
    if (s == Strategy::FreeFermion && m.kind != ModelSpec::Kind::XY)
      return fail(QCPD_EUNSUPPORTED,
                  "free-fermion correlators exist only for the XY family");
    const PairCorrelators c =
        qcpd::chains::correlator_provider({m, kT}, s, provider->chain_length).c;
    *out = {c.z, c.xx, c.yy, c.zz};
    return QCPD_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

int qcpd_measures_eval(const qcpd_correlators *c, qcpd_measures *out) {
  if (!c || !out) return fail(QCPD_EINVAL, "null argument");
  try {
    const PairCorrelators pc{c->z, c->xx, c->yy, c->zz};
    if (!pc.physical())
      return fail(QCPD_EUNPHYSICAL,
                  "correlators do not describe a physical two-qubit state");
    using qcpd::teleport::Set;
    out->fbar_psi = qcpd::teleport::mean_fidelity(pc, Set::SPsiPlus);
    out->fbar_phi = qcpd::teleport::mean_fidelity(pc, Set::SPhiPlus);
    out->dbar_psi = qcpd::teleport::mean_trace_distance(pc, Set::SPsiPlus);
    out->dbar_phi = qcpd::teleport::mean_trace_distance(pc, Set::SPhiPlus);
    const auto fm = qcpd::teleport::f_max(pc);
    const auto dm = qcpd::teleport::d_min(pc);
    out->fmax = fm.value;
    out->argmax_family = family_code(fm.arg);
    out->dmin = dm.value;
    out->argmin_family = family_code(dm.arg);
    return QCPD_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

int qcpd_xxz_delta1(double h, double *out) {
  if (!out) return fail(QCPD_EINVAL, "null argument");
  try {
    *out = qcpd::chains::xxz_qcp_delta1(h);
    return QCPD_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

int qcpd_xxz_delta2(double h, double *out) {
  if (!out) return fail(QCPD_EINVAL, "null argument");
  try {
    *out = qcpd::chains::xxz_qcp_delta2(h);
    return QCPD_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

int qcpd_scan_run(const qcpd_model *model, int axis, double lo, double hi,
                  double step, double kT, const qcpd_provider *provider,
                  qcpd_scan **out) {
  if (!model || !provider || !out) return fail(QCPD_EINVAL, "null argument");
  *out = nullptr;
  try {
    const ModelSpec m = to_model(*model);
    const Strategy s = to_strategy(*provider);
    if (s == Strategy::FreeFermion && m.kind != ModelSpec::Kind::XY)
      return fail(QCPD_EUNSUPPORTED,
                  "free-fermion correlators exist only for the XY family");
    auto handle = new qcpd_scan{qcpd::detector::scan(
        m, to_axis(axis), lo, hi, step, kT, s, provider->chain_length)};
    *out = handle;
    return QCPD_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

void qcpd_scan_free(qcpd_scan *s) { delete s; }

size_t qcpd_scan_size(const qcpd_scan *s) {
  return s ? s->series.points.size() : 0;
}

int qcpd_scan_point_ok(const qcpd_scan *s, size_t i) {
  if (!s || i >= s->series.points.size()) return 0;
  return s->series.points[i].ok ? 1 : 0;
}

int qcpd_scan_row(const qcpd_scan *s, size_t i, double out[QCPD_SCAN_COLS]) {
  if (!s || !out) return fail(QCPD_EINVAL, "null argument");
  if (i >= s->series.points.size())
    return fail(QCPD_EINVAL, "row index out of range");
  const auto &p = s->series.points[i];
  out[0] = p.param;
  out[1] = s->series.kT;
  if (!p.ok) { // recorded gap: grid position kept, values are NaN
    for (int c = 2; c < QCPD_SCAN_COLS; ++c)
      out[c] = std::numeric_limits<double>::quiet_NaN();
    return QCPD_OK;
  }
  out[2] = p.c.z;
  out[3] = p.c.xx;
  out[4] = p.c.yy;
  out[5] = p.c.zz;
  out[6] = p.fbar_psi;
  out[7] = p.fbar_phi;
  out[8] = p.fmax;
  out[9] = family_code(p.argmax_set);
  out[10] = p.dbar_psi;
  out[11] = p.dbar_phi;
  out[12] = p.dmin;
  out[13] = family_code(p.argmin_set);
  return QCPD_OK;
}

int qcpd_scan_crossings(const qcpd_scan *s, qcpd_crossing **out, size_t *count) {
  if (!s || !out || !count) return fail(QCPD_EINVAL, "null argument");
  *out = nullptr;
  *count = 0;
  try {
    const auto found = qcpd::detector::find_crossings(s->series);
    if (!found.empty()) {
      auto *arr = static_cast<qcpd_crossing *>(
          std::malloc(found.size() * sizeof(qcpd_crossing)));
      if (!arr) return fail(QCPD_ENUMERIC, "allocation failure");
      for (size_t i = 0; i < found.size(); ++i)
        arr[i] = {found[i].param_value, static_cast<int>(found[i].kind),
                  found[i].kT};
      *out = arr;
      *count = found.size();
    }
    return QCPD_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

void qcpd_free(void *p) { std::free(p); }

int qcpd_detect_run(const qcpd_detect_config *cfg, qcpd_detect **out) {
  if (!cfg || !out) return fail(QCPD_EINVAL, "null argument");
  if (!cfg->kts || cfg->n_kt == 0)
    return fail(QCPD_EINVAL, "no temperatures given");
  *out = nullptr;
  try {
    qcpd::detector::DetectConfig c;
    c.model = to_model(cfg->model);
    c.axis = to_axis(cfg->axis);
    c.lo = cfg->lo;
    c.hi = cfg->hi;
    c.step = cfg->step;
    c.kts.assign(cfg->kts, cfg->kts + cfg->n_kt);
    c.strategy = to_strategy(cfg->provider);
    if (c.strategy == Strategy::FreeFermion &&
        c.model.kind != ModelSpec::Kind::XY)
      return fail(QCPD_EUNSUPPORTED,
                  "free-fermion correlators exist only for the XY family");
    c.L = cfg->provider.chain_length;
    c.order = cfg->order;
    if (c.order != 1 && c.order != 2)
      return fail(QCPD_EINVAL, "derivative order must be 1 or 2");
    switch (cfg->fit) {
    case QCPD_FIT_LINEAR: c.fit = qcpd::detector::FitKind::Linear; break;
    case QCPD_FIT_QUADRATIC: c.fit = qcpd::detector::FitKind::Quadratic; break;
    default: return fail(QCPD_EINVAL, "fit kind out of range");
    }
    c.window_lo = cfg->window_lo;
    c.window_hi = cfg->window_hi;
    c.observable = cfg->observable ? cfg->observable : "dmin";
    *out = new qcpd_detect{qcpd::detector::run_detect(c)};
    return QCPD_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

void qcpd_detect_free(qcpd_detect *d) { delete d; }

size_t qcpd_detect_count(const qcpd_detect *d) {
  return d ? d->result.per_kt.size() : 0;
}

int qcpd_detect_extremum(const qcpd_detect *d, size_t i, double *kT,
                         double *location, double *uncertainty, int *at_edge) {
  if (!d) return fail(QCPD_EINVAL, "null argument");
  if (i >= d->result.per_kt.size())
    return fail(QCPD_EINVAL, "index out of range");
  const auto &e = d->result.per_kt[i];
  if (kT) *kT = e.kT;
  if (location) *location = e.location;
  if (uncertainty) *uncertainty = e.uncertainty;
  if (at_edge) *at_edge = e.at_edge ? 1 : 0;
  return QCPD_OK;
}

int qcpd_detect_estimate(const qcpd_detect *d, double *location,
                         double *residual) {
  if (!d) return fail(QCPD_EINVAL, "null argument");
  if (location) *location = d->result.qcp.extrapolated_location;
  if (residual) *residual = d->result.qcp.residual;
  return QCPD_OK;
}

int qcpd_gamma_check(double lambda, const double *kts, size_t n_kt, double glo,
                     double ghi, double step, const qcpd_provider *provider,
                     double *dmin_argmax, double *fmax_argmin) {
  if (!kts || !provider || !dmin_argmax || !fmax_argmin || n_kt == 0)
    return fail(QCPD_EINVAL, "null argument");
  try {
    const auto checks = qcpd::detector::gamma_transition_check(
        lambda, std::vector<double>(kts, kts + n_kt), glo, ghi, step,
        to_strategy(*provider), provider->chain_length);
    for (size_t i = 0; i < checks.size(); ++i) {
      dmin_argmax[i] = checks[i].dmin_argmax;
      fmax_argmin[i] = checks[i].fmax_argmin;
    }
    return QCPD_OK;
  } catch (...) {
    return translate_current_exception();
  }
}

int qcpd_verify(int level, void (*log)(const char *line, void *ctx),
                void *ctx) {
  if (level != QCPD_VERIFY_QUICK && level != QCPD_VERIFY_FULL)
    return fail(QCPD_EINVAL, "verify level out of range");
  try {
    const auto fwd = [&](const std::string &line) {
      if (log) log(line.c_str(), ctx);
    };
    return qcpd::verify::run(level == QCPD_VERIFY_FULL
                                 ? qcpd::verify::Level::Full
                                 : qcpd::verify::Level::Quick,
                             fwd);
  } catch (...) {
    return translate_current_exception();
  }
}

} // extern "C"
