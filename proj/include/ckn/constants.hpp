#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ckn/params.hpp"

namespace ckn {

// Optimal constants, absolute-value form.
double thm21_constant(const CknParams& params);                       // |N - t(N+gamma-1)| / t
double lp_constant(int N, double p, double alpha, double beta);       // |alpha+(p-1)beta+(p-1)(N-1)| / p
double lp_sum_constant(int N, double p, double alpha, double beta);   // p * lp_constant
double hup_constant(int N, double alpha);                             // |N+4alpha+2| / 2

// The same constants with the quantity inside the absolute value and the
// sub-case that owns its sign.
struct SignedConstant {
  double value = 0.0;         // absolute-value form
  double signed_value = 0.0;  // quantity before taking the absolute value
  std::string sub_case;       // owning case tag, or "none"
};
SignedConstant thm21_constant_signed(const CknParams& params);
SignedConstant lp_constant_signed(int N, double p, double alpha, double beta);
SignedConstant hup_constant_signed(int N, double alpha);

// Discrete per-mode factor of the spherical-harmonics analysis.  The plain
// form can dip negative outside its region; the general form replaces the
// correction by min{0, correction} and is positive wherever defined.
double mode_factor(int N, double alpha, int k, bool general_form = false);

struct ModeFactorTable {
  int N = 1;
  double alpha = 0.0;
  std::vector<std::pair<int, double>> entries;  // (k, factor), contiguous from k=0
  double infimum = 0.0;
  int argmin_k = 0;
  bool matches_lemma = false;  // infimum == (N+4alpha+2)^2/4 within 1e-9 inside a certified region
  int k_requested = 0;
  bool early_stop = false;     // scan ended once the factor was confirmed increasing
};

ModeFactorTable mode_infimum(int N, double alpha, int k_max = 1000);

// Quartic controlling the growth of the mode factor in the continuous
// variable y = N + 2x + 2*alpha.
double g_function(int N, double alpha, double y);

struct CubicLandmarks {
  double y0 = 0.0;  // root of 2y^3 - 2y^2 + 1
  double x1 = 0.0, x2 = 0.0, x3 = 0.0;  // roots of -8x^3 - 8x^2 + 1
};
CubicLandmarks cubic_landmarks();

// Certified regions where the tabulated infimum provably equals
// (N+4alpha+2)^2/4.
bool in_cor34_region(int N, double alpha);
bool in_lemma35_region(int N, double alpha);

}  // namespace ckn
