#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ckn/numerics.hpp"
#include "ckn/params.hpp"
#include "ckn/profiles.hpp"

namespace ckn {

// Outcome of measuring one ratio or identity residual against its target.
// In ratio mode, passed means |measured - target_constant| is within the
// declared tolerances; in residual mode the target is zero and passed means
// |measured| <= abs_tolerance; in lower-bound mode (one-sided inequality
// checks) passed means measured >= target_constant - abs_tolerance.
struct VerificationReport {
  double target_constant = 0.0;
  double measured = 0.0;
  double abs_tolerance = 0.0;
  double rel_tolerance = 0.0;
  bool residual_mode = false;
  bool lower_bound_mode = false;
  bool passed = false;
  std::vector<QuadratureResult> quadrature_errors;
  std::string inputs;  // profile label plus the parameter values used
};

// The pass rule derived from the stored fields; every report constructor
// routes through this so the flag and the fields cannot drift apart.
bool pass_criterion(const VerificationReport& rep);

// Recomputes the pass criterion and compares with the stored flag.
bool report_consistent(const VerificationReport& rep);

// Weighted seminorm integrals over (0, inf).  Values are the unexponentiated
// p-th power integrals, sphere factor included; callers take roots once at
// ratio assembly.  The optional diag sink receives the quadrature summary.
//   seminorm_laplacian: |S^{N-1}| int |u'' + (N-1)u'/r|^p r^{N - p alpha - 1} dr
//   seminorm_gradient:  |S^{N-1}| int |u'|^q r^{N - q beta - 1} dr
//   weighted_gradient:  |S^{N-1}| int |u'|^e r^{N - 1 - w} dr  (explicit weight)
double seminorm_laplacian(const RadialProfile& u, int N, double p, double alpha,
                          QuadratureResult* diag = nullptr);
double seminorm_gradient(const RadialProfile& u, int N, double q, double beta,
                         QuadratureResult* diag = nullptr);
double weighted_gradient(const RadialProfile& u, int N, double e, double w,
                         QuadratureResult* diag = nullptr);

// Measured ratios against the sharp constants.  All four enforce
// admissibility through the seminorm quadratures and reject profiles whose
// right-hand side integral degenerates below 1e-300.
VerificationReport ratio_thm21(const RadialProfile& u, const CknParams& params);
VerificationReport ratio_lp_product(const RadialProfile& u, int N, double p,
                                    double alpha, double beta);
VerificationReport ratio_lp_sum(const RadialProfile& u, int N, double p,
                                double alpha, double beta);
VerificationReport ratio_hup(const RadialProfile& u, int N, double alpha);

// The convexity kernel |Y|^p + (p-1)|X|^p - p|X|^{p-2} X.Y for p > 1.
// The cross term is evaluated as |X|^{p-1} (Xhat.Y), and as exactly 0 when
// |X| = 0, so no spurious singularity arises for p < 2.
double kp_value(double p, const std::vector<double>& X,
                const std::vector<double>& Y);
// One-dimensional arguments (the radial identities reduce to scalars).
double kp_scalar(double p, double x, double y);

// Pointwise-identity residual for a radial profile.  With
//   A = int |lap u|^p / |x|^{p alpha},   B = int |grad u|^p / |x|^{p beta},
//   R = int |grad u|^p / |x|^{alpha + (p-1) beta + 1},
// the identity for the chosen branch states
//   A + (p-1) B - branch * J * R = int |x|^{-p alpha} Kp(X, lap u),
// with J = alpha + (p-1) beta + (p-1)(N-1) and X = branch * r^{alpha-beta} u'.
// The scaled variant replaces the left side with A^{1/p} B^{(p-1)/p}
// - branch * (J/p) * R and the kernel arguments with
// (A/B)^{1/p^2} X and (B/A)^{(p-1)/p^2} lap u; it is assembled from the same
// A and B values rather than re-quadratured, since the cross term of the
// kernel is invariant under that normalization.
struct IdentityReport {
  double A = 0.0, B = 0.0, R = 0.0;
  double kernel = 0.0;          // right-hand side of the unscaled identity
  double kernel_scaled = 0.0;   // right-hand side of the scaled identity
  double lhs = 0.0;
  double residual = 0.0;        // lhs - kernel
  double normalized = 0.0;      // residual / (A + (p-1) B)
  double scaled_lhs = 0.0;
  double scaled_residual = 0.0;
  double scaled_normalized = 0.0;  // scaled_residual / A^{1/p} B^{(p-1)/p}
  // Largest normalized gap between the two scaled kernel arguments over a
  // 50-point grid; ~0 exactly on the equality family.
  double arg_gap = 0.0;
  VerificationReport report;
};

IdentityReport identity_report_radial(const RadialProfile& u, int N, double p,
                                      double alpha, double beta, int branch);
VerificationReport identity_residual_radial(const RadialProfile& u, int N,
                                            double p, double alpha, double beta,
                                            int branch);

// Monte Carlo settings for the full-space identity check.
struct McSettings {
  long long samples = 200000;
  double sigma = 1.0;
  std::uint64_t seed = 20260817;
};

// Full-space residual for a general (not necessarily radial) function.  The
// five integrals
//   A, B, R as above,
//   T = int |grad u|^{p-2} [(x.grad u)^2 - |x|^2 |grad u|^2]
//         / |x|^{alpha + (p-1) beta + 3},
//   K = int |x|^{-p alpha} Kp(branch |x|^{alpha-beta} grad u, (lap u) xhat)
// are estimated on a common sample stream, along with a direct per-sample
// estimate of A + (p-1) B - branch J R - branch p D T - K whose standard
// error accounts for the correlations between the five estimates.
struct GeneralIdentityReport {
  double A = 0.0, B = 0.0, R = 0.0, T = 0.0, kernel = 0.0;
  double A_err = 0.0, B_err = 0.0, R_err = 0.0, T_err = 0.0, kernel_err = 0.0;
  double residual = 0.0;
  double residual_err = 0.0;  // standard error of the direct estimate
  double scale = 0.0;         // A + (p-1)|B|, the relative-error yardstick
  bool sampling_ok = true;
  VerificationReport report;
};

GeneralIdentityReport identity_report_general(const NDFunction& f, double p,
                                              double alpha, double beta,
                                              int branch,
                                              const McSettings& mc = {});
VerificationReport identity_residual_general(const NDFunction& f, double p,
                                             double alpha, double beta,
                                             int branch,
                                             const McSettings& mc = {});

// Gamma-function closed forms for the seminorms of the exponential equality
// family at lambda = 1 (amplitude 1).  Requires alpha - beta + 1 > 0 and
// z = (N + p - pN - p beta)/(alpha - beta + 1) > 1 so that every Gamma
// argument is positive.  ratio = A^{1/p} B^{(p-1)/p} / R.
struct LpClosedForm {
  double A = 0.0, B = 0.0, R = 0.0;
  double ratio = 0.0;
  double z = 0.0;
};
LpClosedForm closed_form_norms_lp(int N, double p, double alpha, double beta);

// Closed forms for the second-order interpolation ratio of the Gaussian-type
// extremizer exp(-r^{2(alpha+1)} / (2(alpha+1))).  Requires
// (N + 2 alpha)/(alpha + 1) > 0.  ratio = sqrt(A C) / D = |N + 4 alpha + 2|/2.
struct HupClosedForm {
  double A = 0.0, C = 0.0, D = 0.0;
  double ratio = 0.0;
  double z1 = 0.0;
};
HupClosedForm closed_form_norms_hup(int N, double alpha);

}  // namespace ckn
