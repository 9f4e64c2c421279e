#ifndef QCPD_H
#define QCPD_H

/*
 * C interface to the teleportation-based quantum-critical-point detector.
 *
 * All functions return QCPD_OK (0) or a negative error code; the
 * thread-local qcpd_last_error() holds a message for the most recent
 * failure on the calling thread. Opaque handles are freed with their
 * matching *_free function.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define QCPD_OK 0
#define QCPD_EINVAL (-1)       /* bad argument / configuration */
#define QCPD_EUNPHYSICAL (-2)  /* correlators outside the physical region */
#define QCPD_ENUMERIC (-3)     /* solver or quadrature failure */
#define QCPD_EUNSUPPORTED (-4) /* valid request, unsupported combination */

const char *qcpd_last_error(void);
const char *qcpd_version(void);

/* ------------------------------------------------------------------ */
/* models and correlator providers                                    */

#define QCPD_MODEL_XXZ 0 /* XXZ ring in a longitudinal field (delta, h) */
#define QCPD_MODEL_XY 1  /* XY/Ising ring in a transverse field (lambda, gamma) */

typedef struct {
  int kind; /* QCPD_MODEL_* */
  double delta, h;      /* XXZ */
  double lambda, gamma; /* XY */
} qcpd_model;

#define QCPD_PROVIDER_ED 0           /* finite-L exact diagonalization */
#define QCPD_PROVIDER_FREE_FERMION 1 /* thermodynamic limit, XY only */

typedef struct {
  int strategy;     /* QCPD_PROVIDER_* */
  int chain_length; /* even, 4..16; ignored for free fermions */
} qcpd_provider;

/* one-site and nearest-neighbor thermal correlators */
typedef struct {
  double z, xx, yy, zz;
} qcpd_correlators;

int qcpd_correlators_eval(const qcpd_model *model, double kT,
                          const qcpd_provider *provider,
                          qcpd_correlators *out);

/* optional on-disk cache for ED spectra; NULL or "" disables */
int qcpd_set_cache_dir(const char *dir);

/* ------------------------------------------------------------------ */
/* teleportation efficiency measures                                  */

#define QCPD_FAMILY_PHI 0 /* correction sets assuming a Phi Bell resource */
#define QCPD_FAMILY_PSI 1 /* correction sets assuming a Psi Bell resource */

const char *qcpd_family_name(int family);

typedef struct {
  double fbar_psi, fbar_phi; /* mean fidelity per correction family */
  double fmax;               /* best achievable mean fidelity */
  int argmax_family;
  double dbar_psi, dbar_phi; /* mean trace distance per family */
  double dmin;               /* best achievable mean trace distance */
  int argmin_family;
} qcpd_measures;

int qcpd_measures_eval(const qcpd_correlators *c, qcpd_measures *out);

/* ------------------------------------------------------------------ */
/* XXZ critical points (J = 1)                                        */

int qcpd_xxz_delta1(double h, double *out);
int qcpd_xxz_delta2(double h, double *out);

/* ------------------------------------------------------------------ */
/* parameter scans                                                    */

#define QCPD_AXIS_DELTA 0
#define QCPD_AXIS_LAMBDA 1
#define QCPD_AXIS_GAMMA 2

typedef struct qcpd_scan qcpd_scan;

int qcpd_scan_run(const qcpd_model *model, int axis, double lo, double hi,
                  double step, double kT, const qcpd_provider *provider,
                  qcpd_scan **out);
void qcpd_scan_free(qcpd_scan *s);

size_t qcpd_scan_size(const qcpd_scan *s);
/* 1 if the provider succeeded at point i, 0 for a recorded gap */
int qcpd_scan_point_ok(const qcpd_scan *s, size_t i);

#define QCPD_SCAN_COLS 14
/* row layout: param kT z xx yy zz fbar_psi fbar_phi fmax argmax_family
 * dbar_psi dbar_phi dmin argmin_family (families as QCPD_FAMILY_*).
 * Gap rows keep param and kT; the remaining columns are NaN. */
int qcpd_scan_row(const qcpd_scan *s, size_t i, double out[QCPD_SCAN_COLS]);

#define QCPD_CROSS_FIDELITY_SETS 0 /* the two mean-fidelity curves meet */
#define QCPD_CROSS_DISTANCE_SETS 1 /* the two trace-distance curves meet */
#define QCPD_CROSS_CUBIC_SIGN 2    /* z^3 - z*zz changes sign */
#define QCPD_CROSS_ZZ_PLUS_Z2 3    /* z^2 + zz = 0 */

const char *qcpd_crossing_name(int kind);

typedef struct {
  double param;
  int kind; /* QCPD_CROSS_* */
  double kT;
} qcpd_crossing;

/* bisection-refined crossings; *out is malloc'd, release with qcpd_free */
int qcpd_scan_crossings(const qcpd_scan *s, qcpd_crossing **out, size_t *count);
void qcpd_free(void *p);

/* ------------------------------------------------------------------ */
/* QCP detection: derivative extrema per kT + extrapolation to kT = 0 */

#define QCPD_FIT_LINEAR 0
#define QCPD_FIT_QUADRATIC 1

typedef struct {
  qcpd_model model;
  int axis;
  double lo, hi, step;
  const double *kts; /* temperatures, each scanned independently */
  size_t n_kt;
  qcpd_provider provider;
  int order;                   /* derivative order, 1 or 2 */
  int fit;                     /* QCPD_FIT_* */
  double window_lo, window_hi; /* extremum search window; lo >= hi: full */
  const char *observable;      /* NULL -> "dmin" */
} qcpd_detect_config;

typedef struct qcpd_detect qcpd_detect;

int qcpd_detect_run(const qcpd_detect_config *cfg, qcpd_detect **out);
void qcpd_detect_free(qcpd_detect *d);

size_t qcpd_detect_count(const qcpd_detect *d);
int qcpd_detect_extremum(const qcpd_detect *d, size_t i, double *kT,
                         double *location, double *uncertainty, int *at_edge);
/* extrapolated QCP location and the fit residual norm */
int qcpd_detect_estimate(const qcpd_detect *d, double *location,
                         double *residual);

/* ------------------------------------------------------------------ */
/* anisotropy-transition check: gamma scan at fixed lambda > 1        */

/* dmin_argmax / fmax_argmin are caller arrays of length n_kt */
int qcpd_gamma_check(double lambda, const double *kts, size_t n_kt, double glo,
                     double ghi, double step, const qcpd_provider *provider,
                     double *dmin_argmax, double *fmax_argmin);

/* ------------------------------------------------------------------ */
/* self verification                                                  */

#define QCPD_VERIFY_QUICK 0
#define QCPD_VERIFY_FULL 1

/* runs the oracle-equivalence suites; logs one line per check through
 * the callback (may be NULL); returns the number of failed checks, or a
 * negative error code */
int qcpd_verify(int level, void (*log)(const char *line, void *ctx),
                void *ctx);

#ifdef __cplusplus
}
#endif

#endif /* QCPD_H */
