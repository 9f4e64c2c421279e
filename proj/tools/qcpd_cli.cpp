// Command-line front end for the QCP-detector library. Everything goes
// through the public C API; CSV output uses 17-significant-digit
// formatting so reruns are byte identical.

#include "qcpd.h"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitVerifyFailed = 3;

int exit_code_for(int qcpd_code) {
  switch (qcpd_code) {
  case QCPD_EINVAL:
  case QCPD_EUNSUPPORTED: return kExitUsage;
  default: return kExitNumeric;
  }
}

int report(int qcpd_code) {
  std::fprintf(stderr, "error: %s\n", qcpd_last_error());
  return exit_code_for(qcpd_code);
}

bool parse_pair(const std::string &s, double &a, double &b) {
  const auto pos = s.find(':');
  if (pos == std::string::npos) return false;
  try {
    size_t used;
    a = std::stod(s.substr(0, pos), &used);
    if (used != pos) return false;
    const std::string rest = s.substr(pos + 1);
    b = std::stod(rest, &used);
    return used == rest.size();
  } catch (...) {
    return false;
  }
}

struct Options {
  std::string model;
  double h = 0, delta = 0, lambda = 0, gamma = 0;
  std::string delta_range, lambda_range, gamma_range;
  double step = 0.01;
  std::vector<double> kts;
  std::string provider = "ed:12";
  int order = 1;
  std::string fit;
  std::string window;
  std::string observable = "dmin";
  std::string out;
  std::string preset;
  std::string cache_dir;
  std::string level = "quick";
};

void add_model_flags(CLI::App *cmd, Options &o) {
  // --h is a model parameter, so help must not claim the short -h
  cmd->set_help_flag("--help", "print help and exit");
  cmd->add_option("--model", o.model, "model family: xxz or xy");
  cmd->add_option("--h", o.h, "XXZ longitudinal field");
  cmd->add_option("--delta", o.delta, "XXZ anisotropy");
  cmd->add_option("--lambda", o.lambda, "XY coupling");
  cmd->add_option("--gamma", o.gamma, "XY anisotropy");
  cmd->add_option("--provider", o.provider,
                  "correlator provider: ed:<L> or ff (free fermions)");
  cmd->add_option("--cache-dir", o.cache_dir, "on-disk ED spectrum cache");
  cmd->add_option("--preset", o.preset,
                  "xxz-h12 | xy-gamma0 | xy-gamma0.5 | xy-gamma1 | xy-gamma-scan");
}

void add_scan_flags(CLI::App *cmd, Options &o) {
  cmd->add_option("--delta-range", o.delta_range, "scan axis delta, as lo:hi");
  cmd->add_option("--lambda-range", o.lambda_range, "scan axis lambda, as lo:hi");
  cmd->add_option("--gamma-range", o.gamma_range, "scan axis gamma, as lo:hi");
  cmd->add_option("--step", o.step, "grid step (default 0.01)");
  cmd->add_option("--kt", o.kts, "temperature; repeatable")->expected(-1);
  cmd->add_option("--out", o.out, "output CSV path (default: stdout)");
}

// Fills in the paper scenarios; explicit flags win.
bool apply_preset(CLI::App *cmd, Options &o) {
  if (o.preset.empty()) return true;
  auto def = [&](const char *flag, auto &field, auto value) {
    if (cmd->count(flag) == 0) field = value;
  };
  if (o.preset == "xxz-h12") {
    def("--model", o.model, "xxz");
    def("--h", o.h, 12.0);
    def("--delta-range", o.delta_range, "1:6");
    def("--provider", o.provider, "ed:12");
  } else if (o.preset == "xy-gamma0") {
    def("--model", o.model, "xy");
    def("--gamma", o.gamma, 0.0);
    def("--lambda-range", o.lambda_range, "0.1:2");
    def("--provider", o.provider, "ff");
  } else if (o.preset == "xy-gamma0.5") {
    def("--model", o.model, "xy");
    def("--gamma", o.gamma, 0.5);
    def("--lambda-range", o.lambda_range, "0:2");
    def("--provider", o.provider, "ff");
  } else if (o.preset == "xy-gamma1") {
    def("--model", o.model, "xy");
    def("--gamma", o.gamma, 1.0);
    def("--lambda-range", o.lambda_range, "0:2");
    def("--provider", o.provider, "ff");
  } else if (o.preset == "xy-gamma-scan") {
    def("--model", o.model, "xy");
    def("--lambda", o.lambda, 1.5);
    def("--gamma-range", o.gamma_range, "-1:1");
    def("--provider", o.provider, "ff");
  } else {
    std::fprintf(stderr, "error: unknown preset '%s'\n", o.preset.c_str());
    return false;
  }
  return true;
}

bool build_model(const Options &o, qcpd_model &m) {
  std::memset(&m, 0, sizeof m);
  if (o.model == "xxz") {
    m.kind = QCPD_MODEL_XXZ;
    m.delta = o.delta;
    m.h = o.h;
  } else if (o.model == "xy") {
    m.kind = QCPD_MODEL_XY;
    m.lambda = o.lambda;
    m.gamma = o.gamma;
  } else {
    std::fprintf(stderr, "error: --model must be xxz or xy\n");
    return false;
  }
  return true;
}

bool build_provider(const Options &o, qcpd_provider &p) {
  std::memset(&p, 0, sizeof p);
  if (o.provider == "ff") {
    p.strategy = QCPD_PROVIDER_FREE_FERMION;
    return true;
  }
  if (o.provider.rfind("ed:", 0) == 0) {
    p.strategy = QCPD_PROVIDER_ED;
    try {
      p.chain_length = std::stoi(o.provider.substr(3));
      return true;
    } catch (...) {
    }
  }
  std::fprintf(stderr, "error: --provider must be ed:<L> or ff\n");
  return false;
}

// picks the scan axis from whichever range flag is set
bool build_axis(const Options &o, int &axis, double &lo, double &hi) {
  int set = 0;
  if (!o.delta_range.empty()) {
    ++set;
    axis = QCPD_AXIS_DELTA;
    if (!parse_pair(o.delta_range, lo, hi)) set = -99;
  }
  if (!o.lambda_range.empty()) {
    ++set;
    axis = QCPD_AXIS_LAMBDA;
    if (!parse_pair(o.lambda_range, lo, hi)) set = -99;
  }
  if (!o.gamma_range.empty()) {
    ++set;
    axis = QCPD_AXIS_GAMMA;
    if (!parse_pair(o.gamma_range, lo, hi)) set = -99;
  }
  if (set != 1) {
    std::fprintf(stderr,
                 "error: give exactly one of --delta-range, --lambda-range, "
                 "--gamma-range as lo:hi\n");
    return false;
  }
  return true;
}

struct Csv {
  FILE *f = nullptr;
  bool owned = false;
  ~Csv() {
    if (owned && f) std::fclose(f);
  }
  bool open(const std::string &path) {
    if (path.empty()) {
      f = stdout;
      return true;
    }
    f = std::fopen(path.c_str(), "wb");
    owned = true;
    if (!f) std::fprintf(stderr, "error: cannot open %s\n", path.c_str());
    return f != nullptr;
  }
  void header(const char *line) { std::fprintf(f, "%s\n", line); }
  void value(double v, bool last = false) {
    std::fprintf(f, "%.17g%c", v, last ? '\n' : ',');
  }
  void text(const char *s, bool last = false) {
    std::fprintf(f, "%s%c", s, last ? '\n' : ',');
  }
};

int setup_cache(const Options &o) {
  if (o.cache_dir.empty()) return QCPD_OK;
  return qcpd_set_cache_dir(o.cache_dir.c_str());
}

int run_scan_common(CLI::App *cmd, Options &o, qcpd_scan **scan, double kT) {
  if (!apply_preset(cmd, o)) return kExitUsage;
  qcpd_model m;
  qcpd_provider p;
  int axis;
  double lo, hi;
  if (!build_model(o, m) || !build_provider(o, p) || !build_axis(o, axis, lo, hi))
    return kExitUsage;
  if (int rc = setup_cache(o); rc != QCPD_OK) return report(rc);
  if (int rc = qcpd_scan_run(&m, axis, lo, hi, o.step, kT, &p, scan);
      rc != QCPD_OK)
    return report(rc);
  return kExitOk;
}

int cmd_scan(CLI::App *cmd, Options &o) {
  const double kT = o.kts.empty() ? 0.0 : o.kts.front();
  if (o.kts.size() > 1) {
    std::fprintf(stderr, "error: scan takes a single --kt\n");
    return kExitUsage;
  }
  qcpd_scan *scan = nullptr;
  if (int rc = run_scan_common(cmd, o, &scan, kT); rc != kExitOk) return rc;
  Csv csv;
  if (!csv.open(o.out)) {
    qcpd_scan_free(scan);
    return kExitNumeric;
  }
  csv.header("param,kT,z,xx,yy,zz,fbar_psi,fbar_phi,fmax,argmax_set,"
             "dbar_psi,dbar_phi,dmin,argmin_set");
  double row[QCPD_SCAN_COLS];
  for (size_t i = 0; i < qcpd_scan_size(scan); ++i) {
    qcpd_scan_row(scan, i, row); // gap rows come back as NaN values
    for (int c = 0; c < QCPD_SCAN_COLS; ++c) {
      if (c == 9 || c == 13) {
        const bool ok = qcpd_scan_point_ok(scan, i) != 0;
        csv.text(ok ? qcpd_family_name(static_cast<int>(row[c])) : "nan",
                 c == 13);
      } else {
        csv.value(row[c], false);
      }
    }
  }
  qcpd_scan_free(scan);
  return kExitOk;
}

int cmd_crossings(CLI::App *cmd, Options &o) {
  const double kT = o.kts.empty() ? 0.0 : o.kts.front();
  qcpd_scan *scan = nullptr;
  if (int rc = run_scan_common(cmd, o, &scan, kT); rc != kExitOk) return rc;
  qcpd_crossing *list = nullptr;
  size_t count = 0;
  const int rc = qcpd_scan_crossings(scan, &list, &count);
  qcpd_scan_free(scan);
  if (rc != QCPD_OK) return report(rc);
  Csv csv;
  if (!csv.open(o.out)) {
    qcpd_free(list);
    return kExitNumeric;
  }
  csv.header("kind,param,kT");
  for (size_t i = 0; i < count; ++i) {
    csv.text(qcpd_crossing_name(list[i].kind));
    csv.value(list[i].param);
    csv.value(list[i].kT, true);
  }
  qcpd_free(list);
  return kExitOk;
}

int cmd_correlators(CLI::App *cmd, Options &o) {
  if (!apply_preset(cmd, o)) return kExitUsage;
  qcpd_model m;
  qcpd_provider p;
  if (!build_model(o, m) || !build_provider(o, p)) return kExitUsage;
  if (int rc = setup_cache(o); rc != QCPD_OK) return report(rc);
  if (o.kts.empty()) o.kts.push_back(0.0);
  Csv csv;
  if (!csv.open(o.out)) return kExitNumeric;
  csv.header("kT,z,xx,yy,zz,fbar_psi,fbar_phi,fmax,argmax_set,"
             "dbar_psi,dbar_phi,dmin,argmin_set");
  for (double kT : o.kts) {
    qcpd_correlators c;
    if (int rc = qcpd_correlators_eval(&m, kT, &p, &c); rc != QCPD_OK)
      return report(rc);
    qcpd_measures meas;
    if (int rc = qcpd_measures_eval(&c, &meas); rc != QCPD_OK)
      return report(rc);
    csv.value(kT);
    csv.value(c.z);
    csv.value(c.xx);
    csv.value(c.yy);
    csv.value(c.zz);
    csv.value(meas.fbar_psi);
    csv.value(meas.fbar_phi);
    csv.value(meas.fmax);
    csv.text(qcpd_family_name(meas.argmax_family));
    csv.value(meas.dbar_psi);
    csv.value(meas.dbar_phi);
    csv.value(meas.dmin);
    csv.text(qcpd_family_name(meas.argmin_family), true);
  }
  return kExitOk;
}

int cmd_detect(CLI::App *cmd, Options &o) {
  if (!apply_preset(cmd, o)) return kExitUsage;
  qcpd_model m;
  qcpd_provider p;
  int axis;
  double lo, hi;
  if (!build_model(o, m) || !build_provider(o, p) || !build_axis(o, axis, lo, hi))
    return kExitUsage;
  size_t positive = 0;
  for (double kT : o.kts)
    if (kT > 0) ++positive;
  if (positive < 3) {
    std::fprintf(stderr, "error: detect needs at least three --kt values > 0\n");
    return kExitUsage;
  }
  if (int rc = setup_cache(o); rc != QCPD_OK) return report(rc);

  qcpd_detect_config cfg{};
  cfg.model = m;
  cfg.axis = axis;
  cfg.lo = lo;
  cfg.hi = hi;
  cfg.step = o.step;
  cfg.kts = o.kts.data();
  cfg.n_kt = o.kts.size();
  cfg.provider = p;
  cfg.order = o.order;
  if (o.fit.empty()) o.fit = o.order == 1 ? "linear" : "quadratic";
  if (o.fit == "linear") cfg.fit = QCPD_FIT_LINEAR;
  else if (o.fit == "quadratic") cfg.fit = QCPD_FIT_QUADRATIC;
  else {
    std::fprintf(stderr, "error: --fit must be linear or quadratic\n");
    return kExitUsage;
  }
  cfg.window_lo = cfg.window_hi = 0;
  if (!o.window.empty() &&
      !parse_pair(o.window, cfg.window_lo, cfg.window_hi)) {
    std::fprintf(stderr, "error: --window must be lo:hi\n");
    return kExitUsage;
  }
  cfg.observable = o.observable.c_str();

  qcpd_detect *det = nullptr;
  if (int rc = qcpd_detect_run(&cfg, &det); rc != QCPD_OK) return report(rc);

  Csv csv;
  if (!csv.open(o.out)) {
    qcpd_detect_free(det);
    return kExitNumeric;
  }
  csv.header("kind,kT,location,uncertainty,at_edge,residual");
  const double nan = std::strtod("nan", nullptr);
  for (size_t i = 0; i < qcpd_detect_count(det); ++i) {
    double kT, loc, unc;
    int edge;
    qcpd_detect_extremum(det, i, &kT, &loc, &unc, &edge);
    csv.text("extremum");
    csv.value(kT);
    csv.value(loc);
    csv.value(unc);
    csv.value(edge);
    csv.value(nan, true);
  }
  double est, res;
  qcpd_detect_estimate(det, &est, &res);
  csv.text("extrapolation");
  csv.value(0.0);
  csv.value(est);
  csv.value(nan);
  csv.value(0);
  csv.value(res, true);
  if (!o.out.empty())
    std::printf("estimated critical point: %.6f (fit residual %.3g, %s, "
                "observable %s)\n",
                est, res, o.fit.c_str(), o.observable.c_str());
  qcpd_detect_free(det);
  return kExitOk;
}

int cmd_verify(Options &o) {
  const int level =
      o.level == "full" ? QCPD_VERIFY_FULL : QCPD_VERIFY_QUICK;
  if (o.level != "full" && o.level != "quick") {
    std::fprintf(stderr, "error: --level must be quick or full\n");
    return kExitUsage;
  }
  const int rc = qcpd_verify(
      level, [](const char *line, void *) { std::printf("%s\n", line); },
      nullptr);
  if (rc < 0) return report(rc);
  std::printf("%s\n", rc == 0 ? "all checks passed" : "CHECKS FAILED");
  return rc == 0 ? kExitOk : kExitVerifyFailed;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"finite-temperature quantum-critical-point detector"};
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);
  app.set_config("--config")
      ->description("key=value config file (sections allowed)");

  Options o;
  CLI::App *scan = app.add_subcommand("scan", "parameter scan to CSV");
  add_model_flags(scan, o);
  add_scan_flags(scan, o);

  CLI::App *detect =
      app.add_subcommand("detect", "locate a QCP from finite-T scans");
  add_model_flags(detect, o);
  add_scan_flags(detect, o);
  detect->add_option("--order", o.order, "derivative order, 1 or 2");
  detect->add_option("--fit", o.fit, "linear | quadratic");
  detect->add_option("--window", o.window, "extremum search window lo:hi");
  detect->add_option("--observable", o.observable,
                     "scanned observable (default dmin)");

  CLI::App *crossings =
      app.add_subcommand("crossings", "set-crossing and sign-change points");
  add_model_flags(crossings, o);
  add_scan_flags(crossings, o);

  CLI::App *correlators =
      app.add_subcommand("correlators", "thermal correlators at one point");
  add_model_flags(correlators, o);
  correlators->add_option("--kt", o.kts, "temperature; repeatable")
      ->expected(-1);
  correlators->add_option("--out", o.out, "output CSV path (default: stdout)");

  CLI::App *verify = app.add_subcommand("verify", "run the self-check suites");
  verify->add_option("--level", o.level, "quick (default) or full");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e); // prints help / error text
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (scan->parsed()) return cmd_scan(scan, o);
  if (detect->parsed()) return cmd_detect(detect, o);
  if (crossings->parsed()) return cmd_crossings(crossings, o);
  if (correlators->parsed()) return cmd_correlators(correlators, o);
  if (verify->parsed()) return cmd_verify(o);
  return kExitUsage;
}
