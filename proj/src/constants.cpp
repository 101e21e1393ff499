#include "ckn/constants.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ckn/numerics.hpp"

namespace ckn {

double thm21_constant(const CknParams& pr) {
  return std::abs(pr.N - pr.t * (pr.N + pr.gamma - 1.0)) / pr.t;
}

double lp_constant(int N, double p, double alpha, double beta) {
  return std::abs(j_value(N, p, alpha, beta)) / p;
}

double lp_sum_constant(int N, double p, double alpha, double beta) {
  return std::abs(j_value(N, p, alpha, beta));
}

double hup_constant(int N, double alpha) {
  return std::abs(N + 4.0 * alpha + 2.0) / 2.0;
}

SignedConstant thm21_constant_signed(const CknParams& pr) {
  SignedConstant out;
  out.signed_value = pr.N - pr.t * (pr.N + pr.gamma - 1.0);
  out.value = std::abs(out.signed_value) / pr.t;
  out.sub_case = classify_thm21(pr).case_tag;
  return out;
}

SignedConstant lp_constant_signed(int N, double p, double alpha, double beta) {
  SignedConstant out;
  out.signed_value = j_value(N, p, alpha, beta);
  out.value = std::abs(out.signed_value) / p;
  out.sub_case = classify_lp(N, p, alpha, beta).case_tag;
  return out;
}

SignedConstant hup_constant_signed(int N, double alpha) {
  SignedConstant out;
  out.signed_value = N + 4.0 * alpha + 2.0;
  out.value = std::abs(out.signed_value) / 2.0;
  out.sub_case = classify_hup(N, alpha).case_tag;
  return out;
}

double mode_factor(int N, double alpha, int k, bool general_form) {
  if (N < 1) throw std::invalid_argument("mode_factor: N must be a positive integer");
  if (k < 0) throw std::invalid_argument("mode_factor: k must be >= 0");
  const double y = N + 2.0 * k + 2.0 * alpha;
  if (y == 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "mode_factor: N + 2k + 2*alpha vanishes at N=%d, alpha=%.17g, "
                  "k=%d; the factor is undefined there",
                  N, alpha, k);
    throw std::domain_error(buf);
  }
  const double target = N + 2.0 * k + 4.0 * alpha + 2.0;
  const double corr = -4.0 * k * (2.0 * alpha + 2.0) / (y * y);
  const double bracket = general_form ? 1.0 + std::min(0.0, corr) : 1.0 + corr;
  return bracket * target * target / 4.0;
}

double g_function(int N, double alpha, double y) {
  const double a = 2.0 * alpha + 2.0;
  const double b = 2.0 * N + 4.0 * alpha;
  return y * y * y * y + a * a * a * y - b * a * a * y - b * a * a * a;
}

bool in_cor34_region(int N, double alpha) {
  const double sqrt5 = std::sqrt(5.0);
  const double sqrt8 = 2.0 * std::sqrt(2.0);
  const bool branch1 =
      alpha + 1.0 > 0.0 && N - (sqrt5 - 1.0) * alpha - (sqrt5 + 1.0) > 0.0;
  const bool branch2 = N + 2.0 * alpha < 0.0 &&
                       N + (sqrt5 + 1.0) * alpha + (sqrt5 - 1.0) > 0.0 &&
                       N - sqrt8 * alpha - sqrt8 > 0.0;
  return branch1 || branch2;
}

bool in_lemma35_region(int N, double alpha) {
  return alpha + 1.0 < 0.0 && N + 4.0 * alpha + 2.0 > 0.0;
}

ModeFactorTable mode_infimum(int N, double alpha, int k_max) {
  if (k_max < 0) throw std::invalid_argument("mode_infimum: k_max must be >= 0");
  ModeFactorTable table;
  table.N = N;
  table.alpha = alpha;
  table.k_requested = k_max;
  table.entries.reserve(std::min(k_max + 1, 64));

  int increasing_run = 0;
  for (int k = 0; k <= k_max; ++k) {
    const double f = mode_factor(N, alpha, k, /*general_form=*/true);
    table.entries.emplace_back(k, f);
    if (k == 0 || f < table.infimum) {
      table.infimum = f;
      table.argmin_k = k;
    }
    // The factor grows like k^2/4 once the quartic controlling its slope is
    // positive; ten consecutive certified increases end the scan early.
    if (k > 0) {
      const bool increased = f >= table.entries[k - 1].second;
      const bool slope_ok = g_function(N, alpha, N + 2.0 * k + 2.0 * alpha) >= 0.0;
      increasing_run = (increased && slope_ok) ? increasing_run + 1 : 0;
      if (increasing_run >= 10 && k < k_max) {
        table.early_stop = true;
        break;
      }
    }
  }

  const double target = hup_constant(N, alpha);
  const double want = target * target;  // (N+4alpha+2)^2 / 4
  const bool close =
      std::abs(table.infimum - want) <= 1e-9 * std::max(1.0, std::abs(want));
  table.matches_lemma =
      close && (in_cor34_region(N, alpha) || in_lemma35_region(N, alpha));
  return table;
}

CubicLandmarks cubic_landmarks() {
  CubicLandmarks lm;
  lm.y0 = find_poly_root({1.0, 0.0, -2.0, 2.0}, -1.0, 0.0);
  const std::vector<double> c{1.0, 0.0, -8.0, -8.0};
  lm.x1 = find_poly_root(c, -1.0, -0.6);
  lm.x2 = find_poly_root(c, -0.6, -0.4);
  lm.x3 = find_poly_root(c, 0.0, 1.0);
  return lm;
}

}  // namespace ckn
