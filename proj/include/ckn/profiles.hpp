#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ckn/numerics.hpp"
#include "ckn/params.hpp"

namespace ckn {

// Radial function represented through its derivatives.  Every functional of
// interest depends only on u' and the radial laplacian, so u itself is a
// lazily computed tail integral unless a family supplies a closed form.
//
// Descriptor conventions: du_origin.a is the polynomial power of |du| near 0
// (also mirrored in origin_exponent); for essential_vanish origins it records
// the polynomial prefactor.  decay.d likewise records the power of |du| at
// infinity, doubling as the polynomial prefactor for stretched_exp decay.
struct RadialProfile {
  std::function<double(double)> du;    // u'(r)
  std::function<double(double)> d2u;   // u''(r)
  std::function<double(double)> lap;   // u'' + (dim-1) u'/r, analytic form
  std::function<double(double)> value_fn;  // optional closed-form u(r)
  int dim = 1;

  double origin_exponent = 0.0;  // leading power of |du| at 0
  OriginSpec du_origin;
  TailSpec decay;                // behavior of |du| at infinity
  OriginSpec lap_origin;
  TailSpec lap_decay;

  std::vector<double> du_zeros;   // interior sign changes of du, if known
  std::vector<double> lap_zeros;  // interior sign changes of lap, if known
  std::string label;

  // u(r) with u(inf) = 0, from the closed form when available and from the
  // tail integral of du otherwise.
  double value(double r) const;
};

// Smooth function on R^N.  value may be absent when only derivatives are
// needed (the weighted functionals involve gradient and laplacian only).
struct NDFunction {
  std::function<double(const std::vector<double>&)> value;
  std::function<std::vector<double>(const std::vector<double>&)> gradient;
  std::function<double(const std::vector<double>&)> laplacian;
  int N = 1;
};

// --------------------------------------------------------------------------
// Extremizer families.
// --------------------------------------------------------------------------

// du(r) = -Lambda r^{1-N} exp(sign * lambda r^kappa / kappa), kappa = alpha-beta+1.
RadialProfile make_exp_extremizer(int N, double alpha, double beta,
                                  double Lambda, double lambda, int sign);

// du(r) = -Lambda r^{1-N} [1 + sign (t-p) lambda r^{E/(p-1)} / E]^{(p-1)/(p-t)}.
RadialProfile make_powerlaw_extremizer(int N, double p, double t, double alpha,
                                       double beta, double Lambda,
                                       double lambda, int sign);

struct HupExtremizerPair {
  RadialProfile radial;
  NDFunction nd;
};

// u(r) = exp(-sign r^{2(alpha+1)} / (2(alpha+1))), with the same function
// exposed on R^N for direct cross-checks.
HupExtremizerPair make_hup_extremizer(int N, double alpha, int sign);

// --------------------------------------------------------------------------
// Trial families and combinators.
// --------------------------------------------------------------------------

// kind "gen-exp":  du = -r^a exp(-lambda r^s)        keys a, lambda, s
// kind "rational": du = -r^a (1+r^s)^{-m}            keys a, s, m
// kind "bump":     smooth du supported on [r0, r1]   keys r0, r1
RadialProfile make_trial(int N, const std::string& kind,
                         const std::map<std::string, double>& kv);

// base.du + eps * bump.du with worst-case metadata.
RadialProfile perturb(const RadialProfile& base, const RadialProfile& bump,
                      double eps);

// u_s(x) = u(s x): du scales by s, the laplacian by s^2.
RadialProfile dilate(const RadialProfile& u, double s);

// Multiplies du, d2u and the laplacian by a nonzero constant.
RadialProfile scale_amplitude(const RadialProfile& u, double factor);

// Finiteness of both seminorm integrals, decided from declared metadata
// alone; throws inadmissible_error naming the divergent integral.
void check_admissible(const RadialProfile& u, const CknParams& params);

// Gradient/laplacian of a radial profile viewed on R^N (value evaluator is
// populated only if the profile carries a closed form).
NDFunction make_nd_from_radial(const RadialProfile& u);

// Gaussian-based smooth test functions on R^N.
NDFunction make_nd_gaussian(int N);            // exp(-|x|^2/2)
NDFunction make_nd_gaussian_linear(int N);     // exp(-|x|^2/2) (1 + x_1)
NDFunction make_nd_gaussian_quadratic(int N);  // exp(-|x|^2/2) (1 + x_1^2)

// Negative-control wrapper: scales the reported gradient by a factor while
// leaving value and laplacian untouched.
NDFunction corrupt_gradient(const NDFunction& f, double factor);

// --------------------------------------------------------------------------
// Consistency probes (used by the test suites).
// --------------------------------------------------------------------------

// Central finite differences of du against d2u on a log grid.
bool derivative_consistent(const RadialProfile& u, std::string* why = nullptr);

// Declared endpoint descriptors against measured log-log slopes.
bool metadata_consistent(const RadialProfile& u, std::string* why = nullptr);

}  // namespace ckn
