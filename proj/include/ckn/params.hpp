#pragma once

#include <string>
#include <vector>

namespace ckn {

// Exponent tuple for the weighted inequalities.  gamma and q are always
// derived from (N, p, t, alpha, beta); they are never accepted as inputs.
struct CknParams {
  int N = 1;
  double p = 2.0;
  double t = 2.0;
  double q = 2.0;      // p(t-1)/(p-1)
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;  // (alpha + (t-1) beta + 1)/t
};

CknParams make_params(int N, double p, double t, double alpha, double beta);

struct Condition {
  std::string name;
  double value = 0.0;
  bool satisfied = false;
};

enum class TheoremTag { thm21, lp_product, lp_sum, hup };
enum class Attainability { attained_by_known_family, open, not_applicable };

std::string to_string(TheoremTag tag);
std::string to_string(Attainability a);

struct RegionReport {
  TheoremTag theorem_tag = TheoremTag::thm21;
  std::string case_tag = "none";
  std::vector<Condition> condition_values;
  Attainability attainability = Attainability::not_applicable;
  // Facts worth surfacing that are not case conditions, e.g. parameter
  // points outside every inequality case where the pointwise identity
  // hypotheses still hold.
  std::vector<std::string> notes;
};

RegionReport classify_thm21(const CknParams& params);
RegionReport classify_lp(int N, double p, double alpha, double beta,
                         bool sum_form = false);
RegionReport classify_hup(int N, double alpha);

// Recurring exponent combinations.
double kappa_value(double alpha, double beta);                  // alpha - beta + 1
double slope_value(int N, double p, double alpha);              // p alpha + (p-1) N
double j_value(int N, double p, double alpha, double beta);     // alpha + (p-1) beta + (p-1)(N-1)
double d_value(double p, double alpha, double beta);            // alpha + (p-1) beta + 1
double e_value(int N, double p, double t, double alpha, double beta);

// Hypotheses of the pointwise identities: branch -1 requires
// alpha-beta+1 > 0 and p alpha + (p-1) N < 0, branch +1 the reversed signs.
bool identity_hypotheses_hold(int N, double p, double alpha, double beta,
                              int branch);

}  // namespace ckn
