#include "ckn/params.hpp"

#include <cmath>
#include <stdexcept>

namespace ckn {

namespace {

Condition cond(std::string name, double value, bool satisfied) {
  return Condition{std::move(name), value, satisfied};
}

}  // namespace

CknParams make_params(int N, double p, double t, double alpha, double beta) {
  if (N < 1) throw std::invalid_argument("make_params: N must be a positive integer");
  if (!(p > 1.0)) throw std::invalid_argument("make_params: p must exceed 1");
  if (!(t >= p)) throw std::invalid_argument("make_params: t must be >= p");
  if (!std::isfinite(alpha) || !std::isfinite(beta))
    throw std::invalid_argument("make_params: weight exponents must be finite");
  CknParams out;
  out.N = N;
  out.p = p;
  out.t = t;
  out.q = p * (t - 1.0) / (p - 1.0);
  out.alpha = alpha;
  out.beta = beta;
  out.gamma = (alpha + (t - 1.0) * beta + 1.0) / t;
  return out;
}

std::string to_string(TheoremTag tag) {
  switch (tag) {
    case TheoremTag::thm21: return "thm21";
    case TheoremTag::lp_product: return "lp-product";
    case TheoremTag::lp_sum: return "lp-sum";
    case TheoremTag::hup: return "hup";
  }
  return "unknown";
}

std::string to_string(Attainability a) {
  switch (a) {
    case Attainability::attained_by_known_family: return "attained-by-known-family";
    case Attainability::open: return "open";
    case Attainability::not_applicable: return "not-applicable";
  }
  return "unknown";
}

double kappa_value(double alpha, double beta) { return alpha - beta + 1.0; }

double slope_value(int N, double p, double alpha) {
  return p * alpha + (p - 1.0) * N;
}

double j_value(int N, double p, double alpha, double beta) {
  return alpha + (p - 1.0) * beta + (p - 1.0) * (N - 1.0);
}

double d_value(double p, double alpha, double beta) {
  return alpha + (p - 1.0) * beta + 1.0;
}

double e_value(int N, double p, double t, double alpha, double beta) {
  return (p - 1.0) * (alpha + 1.0) - (t - 1.0) * beta - (N - 1.0) * (t - p);
}

bool identity_hypotheses_hold(int N, double p, double alpha, double beta,
                              int branch) {
  const double kappa = kappa_value(alpha, beta);
  const double slope = slope_value(N, p, alpha);
  if (branch == -1) return kappa > 0.0 && slope < 0.0;
  if (branch == +1) return kappa < 0.0 && slope > 0.0;
  throw std::invalid_argument("identity_hypotheses_hold: branch must be -1 or +1");
}

RegionReport classify_thm21(const CknParams& pr) {
  RegionReport rep;
  rep.theorem_tag = TheoremTag::thm21;
  const double kappa = kappa_value(pr.alpha, pr.beta);
  const double slope = slope_value(pr.N, pr.p, pr.alpha);

  if (pr.t == pr.p) {
    const bool a1 = kappa > 0.0, a2 = slope < 0.0;
    const bool b1 = kappa < 0.0, b2 = slope > 0.0;
    rep.condition_values = {
        cond("alpha - beta + 1 > 0", kappa, a1),
        cond("p*alpha + (p-1)*N < 0", slope, a2),
        cond("alpha - beta + 1 < 0", kappa, b1),
        cond("p*alpha + (p-1)*N > 0", slope, b2),
    };
    if (a1 && a2) rep.case_tag = "1a";
    else if (b1 && b2) rep.case_tag = "1b";
    else rep.case_tag = "none";
  } else {
    const double p = pr.p, t = pr.t, alpha = pr.alpha, beta = pr.beta;
    const double N = pr.N;
    const double e = e_value(pr.N, p, t, alpha, beta);
    const double v1 = (p - 1.0) * (alpha + 1.0) - (t - 1.0) * beta - (t - p);
    const double v2 =
        p * ((p - 1.0) * alpha - (t - 1.0) * beta + t - 1.0) / (t - p) -
        (N - p * alpha);
    const double v3 = p * (t - 1.0) *
                          ((p - 1.0) * (alpha + 1.0) - (t - 1.0) * beta) /
                          ((t - p) * (p - 1.0)) -
                      (N - pr.q * beta);
    const bool c1 = v1 > 0.0, c2 = v2 > 0.0, c3 = v3 > 0.0;
    const bool ea = e > 0.0, sa = slope < 0.0;
    const bool eb = e < 0.0, sb = slope > 0.0;
    rep.condition_values = {
        cond("(p-1)*(alpha+1) - (t-1)*beta - (t-p) > 0", v1, c1),
        cond("p*((p-1)*alpha - (t-1)*beta + t - 1)/(t-p) - (N - p*alpha) > 0", v2, c2),
        cond("p*(t-1)*((p-1)*(alpha+1) - (t-1)*beta)/((t-p)*(p-1)) - (N - q*beta) > 0", v3, c3),
        cond("(p-1)*(alpha+1) - (t-1)*beta - (N-1)*(t-p) > 0", e, ea),
        cond("p*alpha + (p-1)*N < 0", slope, sa),
        cond("(p-1)*(alpha+1) - (t-1)*beta - (N-1)*(t-p) < 0", e, eb),
        cond("p*alpha + (p-1)*N > 0", slope, sb),
    };
    if (c1 && c2 && c3 && ea && sa) rep.case_tag = "2a";
    else if (c1 && c2 && c3 && eb && sb) rep.case_tag = "2b";
    else rep.case_tag = "none";
  }

  rep.attainability = (rep.case_tag == "none")
                          ? Attainability::not_applicable
                          : Attainability::attained_by_known_family;
  return rep;
}

RegionReport classify_lp(int N, double p, double alpha, double beta,
                         bool sum_form) {
  if (N < 1) throw std::invalid_argument("classify_lp: N must be a positive integer");
  if (!(p > 1.0)) throw std::invalid_argument("classify_lp: p must exceed 1");
  RegionReport rep;
  rep.theorem_tag = sum_form ? TheoremTag::lp_sum : TheoremTag::lp_product;

  const double dval = d_value(p, alpha, beta);
  const double kappa = kappa_value(alpha, beta);
  const double slope = slope_value(N, p, alpha);
  const double eq_tol = 1e-12;

  const bool d_pos = dval > 0.0, d_neg = dval < 0.0;
  const bool k_pos = kappa > 0.0, k_neg = kappa < 0.0;
  const bool s_neg = slope < 0.0, s_pos = slope > 0.0;
  const bool d_zero = std::abs(dval) <= eq_tol;

  rep.condition_values = {
      cond("alpha + (p-1)*beta + 1 > 0", dval, d_pos),
      cond("alpha - beta + 1 > 0", kappa, k_pos),
      cond("p*alpha + (p-1)*N < 0", slope, s_neg),
      cond("alpha + (p-1)*beta + 1 < 0", dval, d_neg),
      cond("alpha - beta + 1 < 0", kappa, k_neg),
      cond("p*alpha + (p-1)*N > 0", slope, s_pos),
      cond("|alpha + (p-1)*beta + 1| <= 1e-12", dval, d_zero),
  };

  if (d_zero) {
    if (k_pos && s_neg) rep.case_tag = "3a";
    else if (k_neg && s_pos) rep.case_tag = "3b";
    else rep.case_tag = "3";
  } else if (d_pos && k_pos && s_neg) {
    rep.case_tag = "1";
  } else if (d_neg && k_neg && s_pos) {
    rep.case_tag = "2";
  } else {
    rep.case_tag = "none";
  }

  if (rep.case_tag == "none" || rep.case_tag == "3") {
    if (identity_hypotheses_hold(N, p, alpha, beta, -1))
      rep.notes.push_back(
          "identity hypotheses hold for branch -1 (alpha-beta+1 > 0, "
          "p*alpha+(p-1)*N < 0) although no inequality case applies");
    if (identity_hypotheses_hold(N, p, alpha, beta, +1))
      rep.notes.push_back(
          "identity hypotheses hold for branch +1 (alpha-beta+1 < 0, "
          "p*alpha+(p-1)*N > 0) although no inequality case applies");
  }

  if (rep.case_tag == "none")
    rep.attainability = Attainability::not_applicable;
  else if (rep.case_tag == "3")
    rep.attainability = Attainability::open;
  else
    rep.attainability = Attainability::attained_by_known_family;
  return rep;
}

RegionReport classify_hup(int N, double alpha) {
  if (N < 1) throw std::invalid_argument("classify_hup: N must be a positive integer");
  RegionReport rep;
  rep.theorem_tag = TheoremTag::hup;

  const double sqrt5 = std::sqrt(5.0);
  const double sqrt8 = 2.0 * std::sqrt(2.0);
  const double c1a = alpha + 1.0;
  const double c1b = N - 2.0 * alpha;
  const double c1c = N - (sqrt5 - 1.0) * alpha - (sqrt5 + 1.0);
  const double c2a = N + 2.0 * alpha;
  const double c2b = N + (sqrt5 + 1.0) * alpha + (sqrt5 - 1.0);
  const double c2c = N - sqrt8 * alpha - sqrt8;
  const double c3a = alpha + 1.0;
  const double c3b = N + 4.0 * alpha + 2.0;

  const bool in1 = c1a > 0.0 && c1b > 0.0 && c1c > 0.0;
  const bool in2 = c2a < 0.0 && c2b > 0.0 && c2c > 0.0;
  const bool in3 = c3a < 0.0 && c3b > 0.0;

  // Attainment branches of the sharp-constant statement.
  const bool att1 = alpha + 1.0 > 0.0 && N + 2.0 * alpha > 0.0;
  const bool att2 = alpha + 1.0 < 0.0 && N + 2.0 * alpha < 0.0;

  rep.condition_values = {
      cond("alpha + 1 > 0", c1a, c1a > 0.0),
      cond("N - 2*alpha > 0", c1b, c1b > 0.0),
      cond("N - (sqrt(5)-1)*alpha - (sqrt(5)+1) > 0", c1c, c1c > 0.0),
      cond("N + 2*alpha < 0", c2a, c2a < 0.0),
      cond("N + (sqrt(5)+1)*alpha + (sqrt(5)-1) > 0", c2b, c2b > 0.0),
      cond("N - 2*sqrt(2)*alpha - 2*sqrt(2) > 0", c2c, c2c > 0.0),
      cond("alpha + 1 < 0", c3a, c3a < 0.0),
      cond("N + 4*alpha + 2 > 0", c3b, c3b > 0.0),
      cond("attainment branch 1: alpha + 1 > 0 and N + 2*alpha > 0",
           std::min(alpha + 1.0, N + 2.0 * alpha), att1),
      cond("attainment branch 2: alpha + 1 < 0 and N + 2*alpha < 0",
           std::max(alpha + 1.0, N + 2.0 * alpha), att2),
  };

  if (in1) rep.case_tag = "case1";
  else if (in2) rep.case_tag = "case2";
  else if (in3) rep.case_tag = "case3";
  else rep.case_tag = "outside";

  if (rep.case_tag == "outside") {
    rep.attainability = Attainability::not_applicable;
  } else if (att1 || att2) {
    rep.attainability = Attainability::attained_by_known_family;
    if (att2)
      rep.notes.push_back(
          "attainment branch 2 fired; this branch was never observed on "
          "scanned grids inside the three hypothesis sets");
  } else {
    rep.attainability = Attainability::open;
  }
  return rep;
}

}  // namespace ckn
