#include "ckn/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace ckn {

namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

// Rational Lanczos approximation, 13 terms, g = 6.024680040776729583740234375.
// Certified for double precision on the positive real axis.
double lanczos_sum(double z) {
  static const double num[13] = {
      23531376880.41075968857200767445163675473,
      42919803642.64909876895789904700198885093,
      35711959237.35566804944018545154716670596,
      17921034426.03720969991975575445893111267,
      6039542586.35202800506429164430729792107,
      1439720407.311721673663223072794912393972,
      248874557.8620541565114603864132294232163,
      31426415.58540019438061423162831820536287,
      2876370.628935372441225409051620849613599,
      186056.2653952234950402949897160456992822,
      8071.672002365816210638002902272250613822,
      210.8242777515793458725097339207133627117,
      2.506628274631000270164908177133837338626,
  };
  static const double den[13] = {
      0.0,       39916800.0, 120543840.0, 150917976.0, 105258076.0,
      45995730.0, 13339535.0, 2637558.0,   357423.0,    32670.0,
      1925.0,     66.0,       1.0,
  };
  if (z <= 1.0) {
    double n = 0.0, d = 0.0;
    for (int i = 12; i >= 0; --i) {
      n = n * z + num[i];
      d = d * z + den[i];
    }
    return n / d;
  }
  const double s = 1.0 / z;
  double n = 0.0, d = 0.0;
  for (int i = 0; i <= 12; ++i) {
    n = n * s + num[i];
    d = d * s + den[i];
  }
  return n / d;
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_fn: domain is x > 0");
  static const double g = 6.024680040776729583740234375;
  const double zgh = x + g - 0.5;
  const double hp = std::pow(zgh, 0.5 * (x - 0.5));
  return lanczos_sum(x) * (hp * std::exp(-zgh)) * hp;
}

double sphere_area(int dim) {
  if (dim < 1) throw std::invalid_argument("sphere_area: dimension must be >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / gamma_fn(0.5 * dim);
}

// ---------------------------------------------------------------------------
// Descriptor constructors and algebra.
// ---------------------------------------------------------------------------

OriginSpec OriginSpec::power(double a) {
  OriginSpec o;
  o.kind = Kind::power;
  o.a = a;
  return o;
}

OriginSpec OriginSpec::essential_vanish(double c, double s) {
  OriginSpec o;
  o.kind = Kind::essential_vanish;
  o.c = c;
  o.s = s;
  return o;
}

OriginSpec OriginSpec::growing() {
  OriginSpec o;
  o.kind = Kind::growing;
  return o;
}

TailSpec TailSpec::stretched_exp(double c, double s) {
  TailSpec t;
  t.kind = Kind::stretched_exp;
  t.c = c;
  t.s = s;
  return t;
}

TailSpec TailSpec::power_law(double d) {
  TailSpec t;
  t.kind = Kind::power_law;
  t.d = d;
  return t;
}

TailSpec TailSpec::compact(double r0, double r1) {
  TailSpec t;
  t.kind = Kind::compact;
  t.r0 = r0;
  t.r1 = r1;
  return t;
}

TailSpec TailSpec::growing() {
  TailSpec t;
  t.kind = Kind::growing;
  return t;
}

OriginSpec origin_pow(const OriginSpec& o, double e) {
  switch (o.kind) {
    case OriginSpec::Kind::power:
      return OriginSpec::power(o.a * e);
    case OriginSpec::Kind::essential_vanish:
      return e > 0 ? OriginSpec::essential_vanish(o.c * e, o.s) : OriginSpec::growing();
    default:
      return OriginSpec::growing();
  }
}

OriginSpec origin_mul(const OriginSpec& x, const OriginSpec& y) {
  using K = OriginSpec::Kind;
  if (x.kind == K::growing || y.kind == K::growing) return OriginSpec::growing();
  if (x.kind == K::power && y.kind == K::power) return OriginSpec::power(x.a + y.a);
  if (x.kind == K::essential_vanish && y.kind == K::essential_vanish) {
    if (x.s == y.s) return OriginSpec::essential_vanish(x.c + y.c, x.s);
    return x.s < y.s ? x : y;  // slower vanishing factor is the safe bound
  }
  return x.kind == K::essential_vanish ? x : y;  // power factor is absorbed
}

OriginSpec origin_add(const OriginSpec& x, const OriginSpec& y) {
  using K = OriginSpec::Kind;
  if (x.kind == K::growing || y.kind == K::growing) return OriginSpec::growing();
  if (x.kind == K::power && y.kind == K::power)
    return OriginSpec::power(std::min(x.a, y.a));
  if (x.kind == K::essential_vanish && y.kind == K::essential_vanish) {
    if (x.s == y.s) return OriginSpec::essential_vanish(std::min(x.c, y.c), x.s);
    return x.s < y.s ? x : y;
  }
  return x.kind == K::power ? x : y;  // power term dominates an essential one
}

TailSpec tail_pow(const TailSpec& t, double e) {
  switch (t.kind) {
    case TailSpec::Kind::stretched_exp:
      return e > 0 ? TailSpec::stretched_exp(t.c * e, t.s) : TailSpec::growing();
    case TailSpec::Kind::power_law:
      return TailSpec::power_law(t.d * e);
    case TailSpec::Kind::compact:
      return t;
    default:
      return TailSpec::growing();
  }
}

TailSpec tail_mul(const TailSpec& x, const TailSpec& y) {
  using K = TailSpec::Kind;
  if (x.kind == K::compact || y.kind == K::compact) {
    const TailSpec& c = (x.kind == K::compact) ? x : y;
    const TailSpec& o = (x.kind == K::compact) ? y : x;
    if (o.kind == K::compact)
      return TailSpec::compact(std::max(x.r0, y.r0), std::min(x.r1, y.r1));
    return c;
  }
  if (x.kind == K::growing || y.kind == K::growing) return TailSpec::growing();
  if (x.kind == K::stretched_exp && y.kind == K::stretched_exp) {
    if (x.s == y.s) return TailSpec::stretched_exp(x.c + y.c, x.s);
    return x.s < y.s ? x : y;  // slower decay is the safe bound
  }
  if (x.kind == K::power_law && y.kind == K::power_law)
    return TailSpec::power_law(x.d + y.d);
  return x.kind == K::stretched_exp ? x : y;  // power factor is absorbed
}

TailSpec tail_add(const TailSpec& x, const TailSpec& y) {
  using K = TailSpec::Kind;
  if (x.kind == K::growing || y.kind == K::growing) return TailSpec::growing();
  if (x.kind == K::compact && y.kind == K::compact)
    return TailSpec::compact(std::min(x.r0, y.r0), std::max(x.r1, y.r1));
  if (x.kind == K::compact) return y;
  if (y.kind == K::compact) return x;
  if (x.kind == K::power_law && y.kind == K::power_law)
    return TailSpec::power_law(std::max(x.d, y.d));
  if (x.kind == K::power_law) return x;
  if (y.kind == K::power_law) return y;
  if (x.s == y.s) return TailSpec::stretched_exp(std::min(x.c, y.c), x.s);
  return x.s < y.s ? x : y;
}

OriginSpec origin_weight(const OriginSpec& o, double e) {
  if (o.kind == OriginSpec::Kind::power) return OriginSpec::power(o.a + e);
  return o;  // essential vanishing absorbs any power; growth stays growth
}

TailSpec tail_weight(const TailSpec& t, double e) {
  if (t.kind == TailSpec::Kind::power_law) return TailSpec::power_law(t.d + e);
  return t;
}

// ---------------------------------------------------------------------------
// Quadrature.
// ---------------------------------------------------------------------------

namespace {

struct SegResult {
  double value = 0.0;
  double err = 0.0;
  long long evals = 0;
  bool converged = false;
};

// Tanh-sinh rule on a finite interval.  Abscissas near the endpoints are
// formed as offsets from the endpoint itself, so integrable boundary
// singularities are evaluated at well-separated points.  Non-finite
// integrand values are treated as zero (they can only occur within
// negligible-weight boundary regions of admissible integrands).
SegResult tanh_sinh(const std::function<double(double)>& f, double a, double b,
                    double rel_tol) {
  SegResult out;
  if (!(b > a)) {
    out.converged = true;
    return out;
  }
  const double half = 0.5 * (b - a);
  const double umax = 3.6;
  const int max_level = 11;

  auto node = [&](double u) -> double {
    const double sh = 0.5 * std::numbers::pi * std::sinh(u);
    double x;
    if (sh >= 0.0)
      x = b - half * (2.0 / (std::exp(2.0 * sh) + 1.0));
    else
      x = a + half * (2.0 / (std::exp(-2.0 * sh) + 1.0));
    const double ch = std::cosh(sh);
    const double w = 0.5 * std::numbers::pi * std::cosh(u) / (ch * ch);
    ++out.evals;
    const double v = f(x);
    return std::isfinite(v) ? w * v : 0.0;
  };

  double h = 0.5;
  double sum = node(0.0);
  for (int j = 1; j * h <= umax; ++j) sum += node(j * h) + node(-j * h);
  double prev = half * h * sum;

  for (int lev = 1; lev <= max_level; ++lev) {
    h *= 0.5;
    double add = 0.0;
    for (int j = 1; j * h <= umax; j += 2) add += node(j * h) + node(-j * h);
    const double cur = 0.5 * prev + half * h * add;
    const double diff = std::abs(cur - prev);
    prev = cur;
    out.err = diff;
    if (lev >= 2 && diff <= rel_tol * std::max(std::abs(cur), 1e-300)) {
      out.converged = true;
      break;
    }
  }
  out.value = prev;
  return out;
}

// Integral over [0, b] of an integrand with declared origin behavior.
SegResult integrate_stretched_tail(const std::function<double(double)>& f,
                                   double start, double c, double s,
                                   double rel_tol);

SegResult integrate_from_zero(const std::function<double(double)>& f, double b,
                              const OriginSpec& o, double rel_tol) {
  if (o.kind == OriginSpec::Kind::essential_vanish) {
    // r = b/v turns the essential vanishing at 0 into a stretched tail in v.
    auto g = [f, b](double v) { return f(b / v) * b / (v * v); };
    return integrate_stretched_tail(g, 1.0, o.c * std::pow(b, -o.s), o.s, rel_tol);
  }
  const double a = (o.kind == OriginSpec::Kind::power) ? o.a : 0.0;
  int m = 1;
  if (a < 0.5) {
    m = static_cast<int>(std::ceil(2.0 / (a + 1.0)));
    m = std::clamp(m, 1, 12);
  }
  if (m == 1) return tanh_sinh(f, 0.0, b, rel_tol);
  // r = b * tau^m flattens the boundary power so the rule converges fast.
  auto g = [f, b, m](double tau) {
    const double r = b * std::pow(tau, m);
    return f(r) * b * m * std::pow(tau, m - 1);
  };
  return tanh_sinh(g, 0.0, 1.0, rel_tol);
}

// Integral over [start, inf) of an integrand bounded by exp(-c r^s) times
// slowly varying factors.  The substitution y = r^s normalizes the decay
// rate; panels of a few e-folds each are accumulated until two consecutive
// contributions are negligible against the running total.
SegResult integrate_stretched_tail(const std::function<double(double)>& f,
                                   double start, double c, double s,
                                   double rel_tol) {
  c = std::max(c, 1e-8);
  s = std::max(s, 1e-3);
  const double inv_s = 1.0 / s;
  auto g = [f, inv_s](double y) {
    const double r = std::pow(y, inv_s);
    return f(r) * inv_s * std::pow(y, inv_s - 1.0);
  };
  const double y0 = std::pow(start, s);
  const double L = 4.0 / c;
  SegResult out;
  bool all_conv = true;
  int small_run = 0;
  for (int k = 0; k < 600; ++k) {
    const SegResult p = tanh_sinh(g, y0 + k * L, y0 + (k + 1) * L, rel_tol);
    out.value += p.value;
    out.err += p.err;
    out.evals += p.evals;
    all_conv = all_conv && p.converged;
    const double scale = std::max(std::abs(out.value), 1e-300);
    if (std::abs(p.value) <= 0.05 * rel_tol * scale) {
      if (++small_run >= 2) {
        out.converged = all_conv;
        break;
      }
    } else {
      small_run = 0;
    }
  }
  return out;
}

SegResult integrate_powerlaw_tail(const std::function<double(double)>& f,
                                  double B, double d, double rel_tol) {
  // r = B/v maps [B, inf) onto (0, 1]; the image has local exponent -d-2
  // at v = 0, integrable precisely because d < -1.
  auto g = [f, B](double v) { return f(B / v) * B / (v * v); };
  return integrate_from_zero(g, 1.0, OriginSpec::power(-d - 2.0), rel_tol);
}

}  // namespace

void check_integrable(const OriginSpec& o, const TailSpec& t,
                      const std::string& label) {
  const double margin = 1e-12;
  auto fail = [&](const std::string& msg) {
    throw inadmissible_error(label + " " + msg);
  };
  // Support bounded away from both endpoints: nothing can diverge.
  if (t.kind == TailSpec::Kind::compact && t.r0 > 0.0) return;
  if (o.kind == OriginSpec::Kind::growing)
    fail("grows at the origin; the integral diverges");
  if (o.kind == OriginSpec::Kind::power && o.a <= -1.0 + margin)
    fail("diverges at the origin: local exponent " + fmt_double(o.a) + " <= -1");
  if (t.kind == TailSpec::Kind::growing)
    fail("grows at infinity; the integral diverges");
  if (t.kind == TailSpec::Kind::power_law && t.d >= -1.0 - margin)
    fail("diverges at infinity: decay exponent " + fmt_double(t.d) + " >= -1");
}

QuadratureResult integrate_halfline(const IntegrandSpec& spec, double rel_tol) {
  if (!spec.core) throw std::invalid_argument("integrate_halfline: missing integrand");
  const OriginSpec& o = spec.origin;
  const TailSpec& t = spec.tail;
  check_integrable(o, t, spec.label);

  QuadratureResult total;
  total.converged = true;
  auto absorb = [&total](const SegResult& s) {
    total.value += s.value;
    total.abs_error += s.err;
    total.evaluations += s.evals;
    total.converged = total.converged && s.converged;
  };

  std::vector<double> bps;
  for (double x : spec.breakpoints)
    if (std::isfinite(x) && x > 0.0) bps.push_back(x);
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end(),
                        [](double u, double v) { return std::abs(u - v) <= 1e-12 * std::max(u, v); }),
            bps.end());

  if (t.kind == TailSpec::Kind::compact) {
    const double lo = std::max(t.r0, 0.0);
    const double hi = t.r1;
    if (!(hi > lo)) return total;
    std::vector<double> bounds{lo};
    for (double x : bps)
      if (x > lo && x < hi) bounds.push_back(x);
    bounds.push_back(hi);
    for (size_t i = 0; i + 1 < bounds.size(); ++i) {
      if (i == 0 && bounds[0] == 0.0)
        absorb(integrate_from_zero(spec.core, bounds[1], o, rel_tol));
      else
        absorb(tanh_sinh(spec.core, bounds[i], bounds[i + 1], rel_tol));
    }
    return total;
  }

  double B = 1.0;
  for (double x : bps) B = std::max(B, x);
  std::vector<double> bounds{0.0};
  for (double x : bps)
    if (x < B) bounds.push_back(x);
  bounds.push_back(B);

  absorb(integrate_from_zero(spec.core, bounds[1], o, rel_tol));
  for (size_t i = 1; i + 1 < bounds.size(); ++i)
    absorb(tanh_sinh(spec.core, bounds[i], bounds[i + 1], rel_tol));

  if (t.kind == TailSpec::Kind::stretched_exp)
    absorb(integrate_stretched_tail(spec.core, B, t.c, t.s, rel_tol));
  else
    absorb(integrate_powerlaw_tail(spec.core, B, t.d, rel_tol));
  return total;
}

QuadratureResult integrate_interval(const std::function<double(double)>& f,
                                    double a, double b, double rel_tol) {
  const SegResult s = tanh_sinh(f, a, b, rel_tol);
  QuadratureResult q;
  q.value = s.value;
  q.abs_error = s.err;
  q.evaluations = s.evals;
  q.converged = s.converged;
  return q;
}

QuadratureResult integrate_tail(const std::function<double(double)>& f,
                                double start, const TailSpec& tail,
                                double rel_tol) {
  if (!(start > 0.0))
    throw std::invalid_argument("integrate_tail: start must be positive");
  check_integrable(OriginSpec::power(0.0), tail, "tail integrand");
  SegResult s;
  switch (tail.kind) {
    case TailSpec::Kind::compact:
      s = tanh_sinh(f, std::max(start, tail.r0), tail.r1, rel_tol);
      if (!(tail.r1 > std::max(start, tail.r0))) s.converged = true;
      break;
    case TailSpec::Kind::stretched_exp:
      s = integrate_stretched_tail(f, start, tail.c, tail.s, rel_tol);
      break;
    default:
      s = integrate_powerlaw_tail(f, start, tail.d, rel_tol);
      break;
  }
  QuadratureResult q;
  q.value = s.value;
  q.abs_error = s.err;
  q.evaluations = s.evals;
  q.converged = s.converged;
  return q;
}

// ---------------------------------------------------------------------------
// Root finding.
// ---------------------------------------------------------------------------

double find_poly_root(const std::vector<double>& coeffs, double lo, double hi,
                      double tol) {
  if (coeffs.empty())
    throw std::invalid_argument("find_poly_root: empty coefficient list");
  if (!(hi > lo))
    throw std::invalid_argument("find_poly_root: requires lo < hi");
  auto eval = [&coeffs](double x, double* deriv) {
    double p = 0.0, dp = 0.0;
    for (size_t i = coeffs.size(); i-- > 0;) {
      dp = dp * x + p;
      p = p * x + coeffs[i];
    }
    if (deriv) *deriv = dp;
    return p;
  };
  double flo = eval(lo, nullptr);
  double fhi = eval(hi, nullptr);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0))
    throw std::invalid_argument("find_poly_root: no sign change across [lo, hi]");

  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    double dfx = 0.0;
    const double fx = eval(x, &dfx);
    if (fx == 0.0) return x;
    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    double xn = x - fx / dfx;
    if (!std::isfinite(xn) || xn <= lo || xn >= hi) xn = 0.5 * (lo + hi);
    if (std::abs(xn - x) <= tol * std::max(1.0, std::abs(xn))) return xn;
    x = xn;
  }
  return x;
}

// ---------------------------------------------------------------------------
// Monte Carlo.
// ---------------------------------------------------------------------------

namespace {

// Deterministic normal stream: 64-bit Mersenne Twister plus Box-Muller.
// Library normal_distribution implementations differ across platforms, so
// the transform is fixed here to keep runs bit-reproducible.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : eng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    spare_ = rad * std::sin(ang);
    have_spare_ = true;
    return rad * std::cos(ang);
  }

 private:
  double uniform01() { return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1p-53; }

  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace

McResult mc_integrate(const std::function<double(const std::vector<double>&)>& f,
                      const GaussianSampler& sampler, long long samples,
                      std::uint64_t seed) {
  if (sampler.dim < 1)
    throw std::invalid_argument("mc_integrate: dimension must be >= 1");
  if (!(sampler.sigma > 0.0))
    throw std::invalid_argument("mc_integrate: sigma must be positive");
  if (samples < 1)
    throw std::invalid_argument("mc_integrate: needs at least one sample");

  NormalStream stream(seed);
  const int dim = sampler.dim;
  const double sg = sampler.sigma;
  const double log_norm =
      -0.5 * dim * std::log(2.0 * std::numbers::pi * sg * sg);

  std::vector<double> x(dim);
  double sum = 0.0, sumsq = 0.0;
  long long used = 0, bad = 0;
  for (long long i = 0; i < samples; ++i) {
    double q = 0.0;
    for (int j = 0; j < dim; ++j) {
      const double z = stream.next();
      x[j] = sg * z;
      q += z * z;
    }
    const double v = f(x) * std::exp(0.5 * q - log_norm);
    if (!std::isfinite(v)) {
      ++bad;
      continue;
    }
    sum += v;
    sumsq += v * v;
    ++used;
  }

  McResult r;
  r.samples = samples;
  r.non_finite = bad;
  if (used > 0) {
    const double mean = sum / static_cast<double>(used);
    const double var =
        std::max(0.0, sumsq / static_cast<double>(used) - mean * mean);
    r.value = mean;
    r.std_error = std::sqrt(var / static_cast<double>(std::max<long long>(1, used - 1)));
  }
  r.ok = used > 0 && bad * 1000 <= samples;
  return r;
}

}  // namespace ckn
