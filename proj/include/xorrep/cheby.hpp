// Chebyshev-node noise-mixing coefficients and the Lagrange / complete
// homogeneous symmetric polynomial identity.

#pragma once

#include <string>
#include <vector>

namespace xorrep {

using real = long double;

struct NoiseMixCoefficients {
  int d = 0;
  real eps = 0.25L;
  std::vector<real> rho;  // strictly decreasing, rho[0] = 1 - eps, rho[d] = 0
  std::vector<real> c;

  // sum_j c_j rho_j^k
  real moment(int k) const;
  real abs_sum() const;
};

// d = 0 gives the single node 1 - eps with weight 1.
NoiseMixCoefficients noise_mix_coefficients(int d, real eps);

real chebyshev_eval(int d, real x);
real chebyshev_recurrence(int d, real x);

struct SchurCheck {
  real lhs = 0, rhs = 0, diff = 0;
};

// lhs = sum_j rho_j^k / prod_{i != j}(rho_j - rho_i), rhs = h_{k-d}(rho).
SchurCheck schur_check(const std::vector<real>& nodes, int k);

// h_m of the given variables by dynamic programming.
real complete_homogeneous(const std::vector<real>& vars, int m);

struct NoiseMixAudit {
  real tolerance = 0;          // 1e-8 * sum |c_j|
  real item1_max_error = 0;    // max_{k<=d} |A_k - 1|
  bool item1 = true;
  bool item2_range = true;     // A_k in [-tol, 1 + tol] for d < k <= k_max
  bool monotone = true;        // A_k >= A_{k+1} - tol for d <= k < k_max
  real abs_sum = 0;
  real chebyshev_value = 0;    // T_d((1+eps)/(1-eps))
  real abs_sum_rel_error = 0;
  bool abs_sum_identity = true;
  bool signs_alternate = true;
  bool nodes_in_range = true;
  bool growth_bound = true;    // abs_sum <= exp(10 d sqrt(eps))

  bool ok() const {
    return item1 && item2_range && monotone && abs_sum_identity && signs_alternate &&
           nodes_in_range && growth_bound;
  }
  std::string failures() const;
};

NoiseMixAudit audit_noise_mix(const NoiseMixCoefficients& nm, int k_max = 200);

}  // namespace xorrep
