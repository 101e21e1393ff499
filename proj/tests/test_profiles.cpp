#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ckn/profiles.hpp"

using namespace ckn;

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return g;
}

std::vector<double> random_point(std::mt19937_64& eng, int N, double spread) {
  std::uniform_real_distribution<double> u(-spread, spread);
  std::vector<double> x(N);
  double q = 0.0;
  for (double& xi : x) {
    xi = u(eng);
    q += xi * xi;
  }
  if (q < 1e-4) x[0] += 0.5;  // keep points away from the origin
  return x;
}

// Central-difference gradient of f.value.
std::vector<double> fd_gradient(const NDFunction& f, const std::vector<double>& x) {
  std::vector<double> g(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    const double h = 1e-5 * std::max(1.0, std::abs(x[i]));
    std::vector<double> xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f.value(xp) - f.value(xm)) / (2.0 * h);
  }
  return g;
}

// Trace of the central-difference Hessian of f.value.
double fd_laplacian(const NDFunction& f, const std::vector<double>& x) {
  double tr = 0.0;
  const double f0 = f.value(x);
  for (size_t i = 0; i < x.size(); ++i) {
    const double h = 1e-4 * std::max(1.0, std::abs(x[i]));
    std::vector<double> xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    tr += (f.value(xp) - 2.0 * f0 + f.value(xm)) / (h * h);
  }
  return tr;
}

}  // namespace

TEST_CASE("exponential extremizer matches its closed form in 1-D") {
  // kappa = 0.2, so du(r) = -exp(-5 r^0.2) and the radial laplacian at N = 1
  // reduces to d2u(r) = exp(-5 r^0.2) r^{-0.8}.
  const RadialProfile u = make_exp_extremizer(1, -0.8, 0.0, 1.0, 1.0, -1);
  for (double r : {0.3, 1.0, 2.7}) {
    const double e = std::exp(-5.0 * std::pow(r, 0.2));
    CHECK(rel_err(u.du(r), -e) <= 1e-14);
    CHECK(rel_err(u.d2u(r), e * std::pow(r, -0.8)) <= 1e-13);
    CHECK(rel_err(u.lap(r), e * std::pow(r, -0.8)) <= 1e-13);
  }
  CHECK(u.origin_exponent == 0.0);
  CHECK(u.decay.kind == TailSpec::Kind::stretched_exp);
  CHECK(u.decay.c == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(u.decay.s == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("exponential extremizer matches its closed form in 3-D") {
  // kappa = 0.5: du(r) = -r^{-2} exp(-2 sqrt(r)).
  const RadialProfile u = make_exp_extremizer(3, -2.0, -1.5, 1.0, 1.0, -1);
  for (double r : {0.5, 1.0, 4.0}) {
    const double want = -std::pow(r, -2.0) * std::exp(-2.0 * std::sqrt(r));
    CHECK(rel_err(u.du(r), want) <= 1e-14);
  }
  CHECK(u.origin_exponent == -2.0);
  CHECK(u.du_origin.kind == OriginSpec::Kind::power);
  CHECK(u.decay.kind == TailSpec::Kind::stretched_exp);
  // lap = -sign lambda Lambda r^{kappa-N} exp(...) = +r^{-2.5} exp(-2 sqrt r).
  CHECK(rel_err(u.lap(1.0), std::exp(-2.0)) <= 1e-14);
}

TEST_CASE("exponential extremizer endpoint metadata by quadrant") {
  // kappa < 0 with sign +1 vanishes essentially at the origin and loses the
  // exponential factor at infinity.
  const RadialProfile up = make_exp_extremizer(2, -1.5, 0.5, 1.0, 3.0, 1);
  // kappa = -1, so exp(+3 r^{-1} / (-1)) = exp(-3/r).
  CHECK(up.du_origin.kind == OriginSpec::Kind::essential_vanish);
  CHECK(up.du_origin.c == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(up.du_origin.s == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(up.decay.kind == TailSpec::Kind::power_law);
  CHECK(up.decay.d == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(rel_err(up.du(2.0), -0.5 * std::exp(-1.5)) <= 1e-14);

  const RadialProfile um = make_exp_extremizer(2, -1.5, 0.5, 1.0, 3.0, -1);
  CHECK(um.du_origin.kind == OriginSpec::Kind::growing);
  CHECK(um.decay.kind == TailSpec::Kind::power_law);

  const RadialProfile grow = make_exp_extremizer(1, -0.8, 0.0, 1.0, 1.0, 1);
  CHECK(grow.decay.kind == TailSpec::Kind::growing);
}

TEST_CASE("exponential extremizer rejects excluded and trivial parameters") {
  CHECK_THROWS_AS(make_exp_extremizer(2, 0.0, 1.0, 1.0, 1.0, -1),
                  inadmissible_error);  // alpha - beta + 1 = 0
  CHECK_THROWS_AS(make_exp_extremizer(2, 0.0, 0.0, 0.0, 1.0, -1),
                  std::invalid_argument);  // Lambda = 0
  CHECK_THROWS_AS(make_exp_extremizer(2, 0.0, 0.0, 1.0, -1.0, -1),
                  std::invalid_argument);  // lambda <= 0
  CHECK_THROWS_AS(make_exp_extremizer(2, 0.0, 0.0, 1.0, 1.0, 2),
                  std::invalid_argument);  // bad sign
  CHECK_THROWS_AS(make_exp_extremizer(0, 0.0, 0.0, 1.0, 1.0, -1),
                  std::invalid_argument);  // bad dimension
}

TEST_CASE("power-law extremizer matches its closed form") {
  // (N,p,t,alpha,beta) = (1,2,3,-0.8,-1): decay exponent E = 2.2 and
  // du(r) = -[1 + r^{2.2}/2.2]^{-1}.
  const RadialProfile u = make_powerlaw_extremizer(1, 2.0, 3.0, -0.8, -1.0, 1.0, 1.0, 1);
  for (double r : {0.2, 1.0, 5.0}) {
    const double B = 1.0 + std::pow(r, 2.2) / 2.2;
    CHECK(rel_err(u.du(r), -1.0 / B) <= 1e-14);
    CHECK(rel_err(u.lap(r), std::pow(r, 1.2) / (B * B)) <= 1e-13);
  }
  CHECK(u.origin_exponent == 0.0);
  CHECK(u.decay.kind == TailSpec::Kind::power_law);
  CHECK(u.decay.d == doctest::Approx(-2.2).epsilon(1e-13));
  CHECK(u.lap_decay.d == doctest::Approx(-3.2).epsilon(1e-13));
}

TEST_CASE("power-law extremizer rejects a vanishing bracket and names the radius") {
  // sign = -1 with E > 0 drives the bracket to zero at r = 2.2^{1/2.2}.
  const double rstar = std::pow(2.2, 1.0 / 2.2);
  try {
    make_powerlaw_extremizer(1, 2.0, 3.0, -0.8, -1.0, 1.0, 1.0, -1);
    FAIL("expected inadmissible_error");
  } catch (const inadmissible_error& e) {
    const std::string msg = e.what();
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", rstar);
    CHECK(msg.find("vanishes") != std::string::npos);
    CHECK(msg.find(buf) != std::string::npos);
  }
  CHECK_THROWS_AS(make_powerlaw_extremizer(1, 2.0, 2.0, -0.8, -1.0, 1.0, 1.0, 1),
                  std::invalid_argument);  // t = p belongs to the exp family
}

TEST_CASE("power-law extremizer approaches the exponential family as t -> p") {
  const double lambda = 0.7;
  const RadialProfile ue = make_exp_extremizer(1, -0.8, -1.0, 1.0, lambda, -1);
  const RadialProfile up =
      make_powerlaw_extremizer(1, 2.0, 2.0 + 1e-6, -0.8, -1.0, 1.0, lambda, 1);
  for (double r : log_grid(0.1, 10.0, 50))
    CHECK(std::abs(up.du(r) - ue.du(r)) / std::abs(ue.du(r)) <= 1e-4);
}

TEST_CASE("power-law extremizer is linear in Lambda") {
  const RadialProfile u1 = make_powerlaw_extremizer(2, 2.0, 3.0, -0.8, -1.0, 1.0, 0.9, 1);
  const RadialProfile u35 =
      make_powerlaw_extremizer(2, 2.0, 3.0, -0.8, -1.0, 3.5, 0.9, 1);
  for (double r : {0.3, 1.0, 4.0}) {
    CHECK(rel_err(u35.du(r), 3.5 * u1.du(r)) <= 1e-15);
    CHECK(rel_err(u35.lap(r), 3.5 * u1.lap(r)) <= 1e-15);
  }
}

TEST_CASE("uncertainty extremizer in 4-D with alpha = 0 is the Gaussian") {
  const HupExtremizerPair pair = make_hup_extremizer(4, 0.0, 1);
  const RadialProfile& u = pair.radial;
  for (double r : {0.5, 1.0, 2.0, 3.0}) {
    const double g = std::exp(-0.5 * r * r);
    CHECK(rel_err(u.value(r), g) <= 1e-14);
    CHECK(rel_err(u.du(r), -r * g) <= 1e-14);
    CHECK(rel_err(u.lap(r), (r * r - 4.0) * g) <= 1e-13);
  }
  REQUIRE(u.lap_zeros.size() == 1);
  CHECK(u.lap_zeros[0] == doctest::Approx(2.0).epsilon(1e-14));

  // The R^4 view agrees with the radial one at random points.
  std::mt19937_64 eng(991);
  for (int i = 0; i < 100; ++i) {
    const std::vector<double> x = random_point(eng, 4, 2.0);
    double q = 0.0;
    for (double xi : x) q += xi * xi;
    const double r = std::sqrt(q);
    CHECK(rel_err(pair.nd.value(x), u.value(r)) <= 1e-10);
    CHECK(rel_err(pair.nd.laplacian(x), u.lap(r)) <= 1e-10);
    const std::vector<double> g = pair.nd.gradient(x);
    for (size_t j = 0; j < x.size(); ++j)
      CHECK(rel_err(g[j], u.du(r) * x[j] / r) <= 1e-10);
  }
}

TEST_CASE("uncertainty extremizer closed forms across the weight range") {
  const HupExtremizerPair a = make_hup_extremizer(5, 0.5, 1);
  for (double r : {0.5, 1.5})
    CHECK(rel_err(a.radial.value(r), std::exp(-std::pow(r, 3.0) / 3.0)) <= 1e-14);
  CHECK(rel_err(a.radial.du(1.0), -std::exp(-1.0 / 3.0)) <= 1e-14);

  // Below the excluded weight the profile vanishes essentially at the origin.
  const HupExtremizerPair b = make_hup_extremizer(2, -1.2, -1);
  CHECK(rel_err(b.radial.value(1.0), std::exp(-2.5)) <= 1e-14);
  CHECK(b.radial.du_origin.kind == OriginSpec::Kind::essential_vanish);
  CHECK(b.radial.du_origin.c == doctest::Approx(2.5).epsilon(1e-13));
  CHECK(b.radial.du_origin.s == doctest::Approx(0.4).epsilon(1e-13));
  CHECK(b.radial.decay.kind == TailSpec::Kind::power_law);
  CHECK(b.radial.decay.d == doctest::Approx(-1.4).epsilon(1e-13));

  CHECK_THROWS_AS(make_hup_extremizer(3, -1.0, 1), inadmissible_error);
}

TEST_CASE("trial kinds reproduce the extremizer shapes") {
  // gen-exp with a = 1-N, lambda = lambda/kappa, s = kappa equals the
  // decaying exponential extremizer.
  const RadialProfile e = make_exp_extremizer(3, -2.0, -1.5, 1.0, 1.0, -1);
  const RadialProfile g =
      make_trial(3, "gen-exp", {{"a", -2.0}, {"lambda", 2.0}, {"s", 0.5}});
  for (double r : log_grid(0.05, 20.0, 25)) {
    CHECK(rel_err(g.du(r), e.du(r)) <= 1e-13);
    CHECK(rel_err(g.lap(r), e.lap(r)) <= 1e-12);
  }

  // A dilated rational trial is an amplitude multiple of the power-law
  // extremizer: with s0^{2.2} = 1/2.2, du_rat(s0 r) s0 = s0 du_pl(r).
  const RadialProfile pl = make_powerlaw_extremizer(1, 2.0, 3.0, -0.8, -1.0, 1.0, 1.0, 1);
  const double s0 = std::pow(1.0 / 2.2, 1.0 / 2.2);
  const RadialProfile rat =
      dilate(make_trial(1, "rational", {{"a", 0.0}, {"s", 2.2}, {"m", 1.0}}), s0);
  for (double r : log_grid(0.1, 10.0, 25))
    CHECK(rel_err(rat.du(r), s0 * pl.du(r)) <= 1e-13);
}

TEST_CASE("trial input validation") {
  CHECK_THROWS_AS(make_trial(2, "gen-exp", {{"a", 1.0}, {"lambda", 1.0}}),
                  std::invalid_argument);  // missing key
  CHECK_THROWS_AS(
      make_trial(2, "gen-exp", {{"a", 1.0}, {"lambda", 1.0}, {"s", 1.0}, {"x", 1.0}}),
      std::invalid_argument);  // unknown key
  CHECK_THROWS_AS(make_trial(2, "rational", {{"a", 1.0}, {"s", -2.0}, {"m", 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_trial(2, "bump", {{"r0", 2.0}, {"r1", 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_trial(2, "fancy", {}), std::invalid_argument);
}

TEST_CASE("coefficient cancellations shift the declared laplacian exponents") {
  // a + N - 1 = 0: the r^{a-1} term of the laplacian drops out.
  const RadialProfile g =
      make_trial(2, "gen-exp", {{"a", -1.0}, {"lambda", 1.0}, {"s", 1.0}});
  CHECK(g.lap_origin.a == doctest::Approx(-1.0).epsilon(1e-14));  // a + s - 1
  CHECK(g.lap_zeros.empty());
  // lap = lambda s r^{a+s-1} e^{-lambda r^s} with lambda = s = 1.
  CHECK(rel_err(g.lap(0.5), std::pow(0.5, -1.0) * std::exp(-0.5)) <= 1e-13);

  // m s = a + N - 1: the leading tail term of the laplacian cancels.
  const RadialProfile r =
      make_trial(3, "rational", {{"a", 0.0}, {"s", 1.0}, {"m", 2.0}});
  CHECK(r.lap_decay.d == doctest::Approx(-4.0).epsilon(1e-14));  // a-1-s(m+1)
}

TEST_CASE("bump trial is compactly supported with interior laplacian flips") {
  const RadialProfile b = make_trial(3, "bump", {{"r0", 1.0}, {"r1", 2.0}});
  CHECK(b.du(0.5) == 0.0);
  CHECK(b.du(2.5) == 0.0);
  CHECK(b.du(1.5) < 0.0);
  CHECK(b.decay.kind == TailSpec::Kind::compact);
  CHECK(b.decay.r0 == 1.0);
  CHECK(b.decay.r1 == 2.0);
  REQUIRE(!b.lap_zeros.empty());
  for (double z : b.lap_zeros) {
    CHECK(z > 1.0);
    CHECK(z < 2.0);
    CHECK(std::abs(b.lap(z)) <= 1e-9 * std::abs(b.lap(1.5)));
  }
}

TEST_CASE("derivative consistency holds across every family") {
  std::string why;
  const RadialProfile profiles[] = {
      make_exp_extremizer(1, -0.8, 0.0, 1.0, 1.0, -1),
      make_exp_extremizer(3, -2.0, -1.5, 1.0, 1.0, -1),
      make_exp_extremizer(2, -1.5, 0.5, 1.0, 3.0, 1),
      make_powerlaw_extremizer(1, 2.0, 3.0, -0.8, -1.0, 1.0, 1.0, 1),
      make_powerlaw_extremizer(2, 2.5, 3.5, -1.2, -0.9, 2.0, 0.5, 1),
      make_hup_extremizer(4, 0.0, 1).radial,
      make_hup_extremizer(2, -1.2, -1).radial,
      make_trial(2, "gen-exp", {{"a", 0.5}, {"lambda", 1.0}, {"s", 2.0}}),
      make_trial(3, "rational", {{"a", 1.0}, {"s", 2.0}, {"m", 2.0}}),
      make_trial(3, "bump", {{"r0", 1.0}, {"r1", 2.0}}),
  };
  for (const RadialProfile& u : profiles) {
    const bool ok = derivative_consistent(u, &why);
    CHECK_MESSAGE(ok, u.label, ": ", why);
  }
}

TEST_CASE("declared endpoint metadata matches measured slopes") {
  std::string why;
  const RadialProfile profiles[] = {
      make_exp_extremizer(1, -0.8, 0.0, 1.0, 1.0, -1),
      make_exp_extremizer(3, -2.0, -1.5, 1.0, 1.0, -1),
      make_exp_extremizer(2, -1.5, 0.5, 1.0, 3.0, 1),
      make_powerlaw_extremizer(1, 2.0, 3.0, -0.8, -1.0, 1.0, 1.0, 1),
      make_powerlaw_extremizer(2, 2.5, 3.5, -1.2, -0.9, 2.0, 0.5, 1),
      make_hup_extremizer(4, 0.0, 1).radial,
      make_hup_extremizer(5, 0.5, 1).radial,
      make_hup_extremizer(2, -1.2, -1).radial,
      make_trial(2, "gen-exp", {{"a", 0.5}, {"lambda", 1.0}, {"s", 2.0}}),
      make_trial(3, "rational", {{"a", 1.0}, {"s", 2.0}, {"m", 2.0}}),
      make_trial(3, "bump", {{"r0", 1.0}, {"r1", 2.0}}),
  };
  for (const RadialProfile& u : profiles) {
    const bool ok = metadata_consistent(u, &why);
    CHECK_MESSAGE(ok, u.label, ": ", why);
  }
}

TEST_CASE("profiles built from positive amplitudes decrease") {
  const RadialProfile profiles[] = {
      make_exp_extremizer(3, -2.0, -1.5, 1.0, 1.0, -1),
      make_powerlaw_extremizer(1, 2.0, 3.0, -0.8, -1.0, 1.0, 1.0, 1),
      make_hup_extremizer(4, 0.0, 1).radial,
      make_trial(2, "gen-exp", {{"a", 0.5}, {"lambda", 1.0}, {"s", 2.0}}),
      make_trial(3, "rational", {{"a", 1.0}, {"s", 2.0}, {"m", 2.0}}),
  };
  // r stays below the range where the steepest profile underflows to -0.
  for (const RadialProfile& u : profiles)
    for (double r : log_grid(0.01, 10.0, 40)) CHECK(u.du(r) < 0.0);
}

TEST_CASE("value recovers the antiderivative through the declared tail") {
  // du = -e^{-r}: u(r) = e^{-r}.
  const RadialProfile g =
      make_trial(1, "gen-exp", {{"a", 0.0}, {"lambda", 1.0}, {"s", 1.0}});
  CHECK(rel_err(g.value(0.5), std::exp(-0.5)) <= 1e-9);
  CHECK(rel_err(g.value(2.0), std::exp(-2.0)) <= 1e-9);

  // du = -(1+r^2)^{-1}: u(r) = pi/2 - atan(r).
  const RadialProfile rat =
      make_trial(1, "rational", {{"a", 0.0}, {"s", 2.0}, {"m", 1.0}});
  CHECK(rel_err(rat.value(1.0), std::numbers::pi / 4.0) <= 1e-9);
  CHECK(rel_err(rat.value(0.3), std::numbers::pi / 2.0 - std::atan(0.3)) <= 1e-9);
}

TEST_CASE("admissibility screening names the divergent seminorm") {
  const CknParams ok_params = make_params(1, 2.0, 3.0, -0.8, -1.0);
  const RadialProfile u3 = make_powerlaw_extremizer(1, 2.0, 3.0, -0.8, -1.0, 1.0, 1.0, 1);
  CHECK_NOTHROW(check_admissible(u3, ok_params));

  // A steep origin power makes the gradient integral diverge at 0.
  const CknParams pr = make_params(1, 2.0, 2.0, 0.4, 0.2);
  const RadialProfile bad =
      make_trial(1, "gen-exp", {{"a", -1.0}, {"lambda", 1.0}, {"s", 1.0}});
  try {
    check_admissible(bad, pr);
    FAIL("expected inadmissible_error");
  } catch (const inadmissible_error& e) {
    CHECK(std::string(e.what()).find("seminorm") != std::string::npos);
  }

  // Compactly supported bumps are admissible for any exponents.
  const RadialProfile b = make_trial(5, "bump", {{"r0", 1.0}, {"r1", 2.0}});
  CHECK_NOTHROW(check_admissible(b, make_params(5, 3.0, 4.0, 2.5, -3.0)));

  const RadialProfile wrong_dim = make_trial(2, "bump", {{"r0", 1.0}, {"r1", 2.0}});
  CHECK_THROWS_AS(check_admissible(wrong_dim, ok_params), std::invalid_argument);
}

TEST_CASE("perturbation combines values and worst-case metadata") {
  const RadialProfile base =
      make_trial(3, "gen-exp", {{"a", 0.0}, {"lambda", 1.0}, {"s", 2.0}});
  const RadialProfile tail =
      make_trial(3, "rational", {{"a", 0.0}, {"s", 2.0}, {"m", 3.0}});
  const RadialProfile sum = perturb(base, tail, 0.25);
  for (double r : {0.4, 1.0, 3.0}) {
    CHECK(rel_err(sum.du(r), base.du(r) + 0.25 * tail.du(r)) <= 1e-15);
    CHECK(rel_err(sum.lap(r), base.lap(r) + 0.25 * tail.lap(r)) <= 1e-15);
  }
  // The slower power-law tail dominates the stretched-exponential one.
  CHECK(sum.decay.kind == TailSpec::Kind::power_law);
  CHECK(sum.decay.d == doctest::Approx(-6.0).epsilon(1e-14));

  const RadialProfile same = perturb(base, tail, 0.0);
  CHECK(same.label == base.label);

  const RadialProfile other = make_trial(2, "bump", {{"r0", 1.0}, {"r1", 2.0}});
  CHECK_THROWS_AS(perturb(base, other, 0.1), std::invalid_argument);
}

TEST_CASE("dilation rescales evaluators, metadata and landmarks") {
  const HupExtremizerPair pair = make_hup_extremizer(4, 0.0, 1);
  const RadialProfile v = dilate(pair.radial, 2.0);
  for (double r : {0.3, 1.0, 1.7}) {
    CHECK(rel_err(v.du(r), 2.0 * pair.radial.du(2.0 * r)) <= 1e-15);
    CHECK(rel_err(v.lap(r), 4.0 * pair.radial.lap(2.0 * r)) <= 1e-15);
    CHECK(rel_err(v.value(r), pair.radial.value(2.0 * r)) <= 1e-14);
  }
  REQUIRE(v.lap_zeros.size() == 1);
  CHECK(v.lap_zeros[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(v.decay.c == doctest::Approx(0.5 * 4.0).epsilon(1e-14));  // c s^s_exp

  const RadialProfile b = dilate(make_trial(3, "bump", {{"r0", 1.0}, {"r1", 2.0}}), 2.0);
  CHECK(b.decay.r0 == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(b.decay.r1 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(b.du(0.75) < 0.0);
  CHECK(b.du(1.25) == 0.0);

  CHECK_THROWS_AS(dilate(pair.radial, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(scale_amplitude(pair.radial, 0.0), std::invalid_argument);
  const RadialProfile s = scale_amplitude(pair.radial, -3.0);
  CHECK(rel_err(s.du(1.0), -3.0 * pair.radial.du(1.0)) <= 1e-15);
}

TEST_CASE("smooth test functions satisfy their own calculus") {
  std::mt19937_64 eng(1234);
  const NDFunction fns[] = {
      make_nd_gaussian(3),
      make_nd_gaussian_linear(3),
      make_nd_gaussian_quadratic(3),
      make_nd_gaussian_linear(5),
      make_hup_extremizer(4, 0.0, 1).nd,
  };
  for (const NDFunction& f : fns) {
    for (int i = 0; i < 100; ++i) {
      const std::vector<double> x = random_point(eng, f.N, 1.5);
      const std::vector<double> g = f.gradient(x);
      const std::vector<double> fd = fd_gradient(f, x);
      for (size_t j = 0; j < g.size(); ++j)
        CHECK(std::abs(g[j] - fd[j]) <= 1e-5 * std::max(1.0, std::abs(g[j])));
    }
    for (int i = 0; i < 20; ++i) {
      const std::vector<double> x = random_point(eng, f.N, 1.5);
      const double lap = f.laplacian(x);
      CHECK(std::abs(lap - fd_laplacian(f, x)) <= 1e-4 * std::max(1.0, std::abs(lap)));
    }
  }
}

TEST_CASE("gradient corruption changes only the gradient") {
  const NDFunction f = make_nd_gaussian_linear(3);
  const NDFunction bad = corrupt_gradient(f, 1.01);
  const std::vector<double> x = {0.4, -0.2, 0.9};
  CHECK(bad.value(x) == f.value(x));
  CHECK(bad.laplacian(x) == f.laplacian(x));
  const std::vector<double> g = f.gradient(x);
  const std::vector<double> gb = bad.gradient(x);
  for (size_t j = 0; j < g.size(); ++j)
    CHECK(rel_err(gb[j], 1.01 * g[j]) <= 1e-15);
}

TEST_CASE("radial profiles lift to dimension-consistent functions") {
  const RadialProfile u = make_powerlaw_extremizer(3, 2.0, 3.0, -0.8, -1.0, 1.0, 1.0, 1);
  const NDFunction f = make_nd_from_radial(u);
  CHECK(f.N == 3);
  CHECK(!f.value);  // no closed form was attached
  const std::vector<double> x = {0.6, -0.3, 0.2};
  const double r = std::sqrt(0.6 * 0.6 + 0.3 * 0.3 + 0.2 * 0.2);
  CHECK(rel_err(f.laplacian(x), u.lap(r)) <= 1e-14);
  const std::vector<double> g = f.gradient(x);
  CHECK(rel_err(g[0], u.du(r) * 0.6 / r) <= 1e-14);
}
