#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ckn {

// Thrown when endpoint metadata proves an integral divergent, or when an
// input lies outside a routine's documented domain in a way that callers
// are expected to surface to the user (CLI exit code 65).
class inadmissible_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Gamma function for x > 0 (Lanczos rational approximation, double precision).
double gamma_fn(double x);

// Surface measure of the unit sphere in R^dim, dim >= 1.
double sphere_area(int dim);

// ---------------------------------------------------------------------------
// Endpoint behavior descriptors for integrands on (0, inf).
//
// Every integrand carries a declared behavior at r -> 0 and r -> inf.  The
// quadrature driver uses them to pick substitutions and to reject divergent
// integrals before evaluating anything.  A small algebra (pow / mul / add)
// propagates descriptors through products, powers and sums of integrands.
// ---------------------------------------------------------------------------

struct OriginSpec {
  enum class Kind { power, essential_vanish, growing };
  Kind kind = Kind::power;
  double a = 0.0;          // |f(r)| ~ r^a                    (power)
  double c = 0.0, s = 1.0; // |f(r)| <~ exp(-c r^{-s})        (essential_vanish)

  static OriginSpec power(double a);
  static OriginSpec essential_vanish(double c, double s);
  static OriginSpec growing();
};

struct TailSpec {
  enum class Kind { stretched_exp, power_law, compact, growing };
  Kind kind = Kind::power_law;
  double c = 1.0, s = 1.0;   // |f(r)| <~ exp(-c r^s)         (stretched_exp)
  double d = 0.0;            // |f(r)| ~ r^d                  (power_law)
  double r0 = 0.0, r1 = 0.0; // support contained in [r0, r1] (compact)

  static TailSpec stretched_exp(double c, double s);
  static TailSpec power_law(double d);
  static TailSpec compact(double r0, double r1);
  static TailSpec growing();
};

OriginSpec origin_pow(const OriginSpec& o, double e);
OriginSpec origin_mul(const OriginSpec& x, const OriginSpec& y);
OriginSpec origin_add(const OriginSpec& x, const OriginSpec& y);
TailSpec tail_pow(const TailSpec& t, double e);
TailSpec tail_mul(const TailSpec& x, const TailSpec& y);
TailSpec tail_add(const TailSpec& x, const TailSpec& y);

// Multiply a descriptor by the power weight r^e (weight factors carried by
// seminorm integrands).
OriginSpec origin_weight(const OriginSpec& o, double e);
TailSpec tail_weight(const TailSpec& t, double e);

struct IntegrandSpec {
  std::function<double(double)> core;
  OriginSpec origin;
  TailSpec tail;
  // Interior radii where the integrand loses smoothness (absolute-value
  // kinks, piecewise definitions).  The driver splits segments there.
  std::vector<double> breakpoints;
  // Used in divergence diagnostics ("<label> diverges at the origin ...").
  std::string label = "integrand";
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  long long evaluations = 0;
  bool converged = false;
};

QuadratureResult integrate_halfline(const IntegrandSpec& spec, double rel_tol = 1e-9);

// Plain adaptive quadrature on a finite interval (no endpoint metadata).
QuadratureResult integrate_interval(const std::function<double(double)>& f,
                                    double a, double b, double rel_tol = 1e-9);

// Integral over [start, inf), start > 0, of an integrand with the declared
// tail behavior.  Rejects growing and non-integrable power-law tails.
QuadratureResult integrate_tail(const std::function<double(double)>& f,
                                double start, const TailSpec& tail,
                                double rel_tol = 1e-9);

// The admissibility screen used by integrate_halfline, exposed so callers
// can vet an integral from metadata alone.  Throws inadmissible_error with
// the label and offending endpoint when the declared behavior diverges.
void check_integrable(const OriginSpec& origin, const TailSpec& tail,
                      const std::string& label);

// ---------------------------------------------------------------------------
// Root finding and Monte Carlo.
// ---------------------------------------------------------------------------

// Root of the polynomial c[0] + c[1] x + ... + c[n] x^n inside [lo, hi].
// Requires a sign change across the bracket; safeguarded Newton iteration.
double find_poly_root(const std::vector<double>& coeffs, double lo, double hi,
                      double tol = 1e-14);

struct GaussianSampler {
  int dim = 1;
  double sigma = 1.0;
};

struct McResult {
  double value = 0.0;
  double std_error = 0.0;
  long long samples = 0;
  long long non_finite = 0;
  bool ok = false;
};

// Importance-sampled estimate of the integral of f over R^dim with an
// isotropic Gaussian proposal.  Deterministic for a fixed seed: the sample
// stream and the accumulation order are both fixed.
McResult mc_integrate(const std::function<double(const std::vector<double>&)>& f,
                      const GaussianSampler& sampler, long long samples,
                      std::uint64_t seed);

}  // namespace ckn
