#include "xorrep/cheby.hpp"

#include <cmath>
#include <numbers>

#include "xorrep/errors.hpp"

namespace xorrep {

real NoiseMixCoefficients::moment(int k) const {
  real s = 0;
  for (std::size_t j = 0; j < rho.size(); ++j) s += c[j] * std::pow(rho[j], static_cast<real>(k));
  return s;
}

real NoiseMixCoefficients::abs_sum() const {
  real s = 0;
  for (real v : c) s += std::fabs(v);
  return s;
}

NoiseMixCoefficients noise_mix_coefficients(int d, real eps) {
  if (d < 0) throw InputError("degree must be non-negative");
  if (!(eps > 0 && eps < 0.5L)) throw InputError("eps must lie in (0, 1/2)");
  NoiseMixCoefficients nm;
  nm.d = d;
  nm.eps = eps;
  if (d == 0) {
    nm.rho = {1 - eps};
    nm.c = {1};
    return nm;
  }
  const real pi = std::numbers::pi_v<real>;
  for (int j = 0; j <= d; ++j) {
    real r;
    if (j == 0)
      r = 1 - eps;
    else if (j == d)
      r = 0;
    else
      r = (1 - eps) / 2 * (std::cos(j * pi / d) + 1);
    nm.rho.push_back(r);
  }
  for (int j = 0; j <= d; ++j) {
    real num = 1, den = 1;
    for (int i = 0; i <= d; ++i) {
      if (i == j) continue;
      num *= 1 - nm.rho[i];
      den *= nm.rho[j] - nm.rho[i];
    }
    nm.c.push_back(num / den);
  }
  return nm;
}

real chebyshev_eval(int d, real x) {
  if (d < 0) throw InputError("Chebyshev degree must be non-negative");
  if (std::fabs(x) <= 1) return std::cos(d * std::acos(x));
  if (x > 1) return std::cosh(d * std::acosh(x));
  const real v = std::cosh(d * std::acosh(-x));
  return d % 2 ? -v : v;
}

real chebyshev_recurrence(int d, real x) {
  if (d == 0) return 1;
  real prev = 1, cur = x;
  for (int i = 1; i < d; ++i) {
    const real next = 2 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

real complete_homogeneous(const std::vector<real>& vars, int m) {
  if (m < 0) return 0;
  // h[t] over the variables processed so far.
  std::vector<real> h(m + 1, 0);
  h[0] = 1;
  for (real v : vars)
    for (int t = 1; t <= m; ++t) h[t] += v * h[t - 1];
  return h[m];
}

SchurCheck schur_check(const std::vector<real>& nodes, int k) {
  const int d = static_cast<int>(nodes.size()) - 1;
  if (d < 0) throw InputError("need at least one node");
  if (k < d) throw InputError("exponent k must be at least d");
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (nodes[i] == nodes[j]) throw InputError("repeated nodes");
  SchurCheck s;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    real den = 1;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (i != j) den *= nodes[j] - nodes[i];
    s.lhs += std::pow(nodes[j], static_cast<real>(k)) / den;
  }
  s.rhs = complete_homogeneous(nodes, k - d);
  s.diff = std::fabs(s.lhs - s.rhs);
  return s;
}

std::string NoiseMixAudit::failures() const {
  std::string s;
  auto add = [&](bool ok, const char* name) {
    if (!ok) s += (s.empty() ? "" : ", ") + std::string(name);
  };
  add(item1, "item 1 (moments equal 1 for k <= d)");
  add(item2_range, "item 2 (moments in [0,1] for k > d)");
  add(monotone, "moment monotonicity");
  add(abs_sum_identity, "weight sum equals Chebyshev value");
  add(signs_alternate, "sign alternation");
  add(nodes_in_range, "nodes in [0, 1-eps]");
  add(growth_bound, "weight growth bound");
  return s;
}

NoiseMixAudit audit_noise_mix(const NoiseMixCoefficients& nm, int k_max) {
  NoiseMixAudit a;
  a.abs_sum = nm.abs_sum();
  a.tolerance = 1e-8L * a.abs_sum;
  for (int k = 0; k <= nm.d; ++k)
    a.item1_max_error = std::max(a.item1_max_error, std::fabs(nm.moment(k) - 1));
  a.item1 = a.item1_max_error <= a.tolerance;
  real prev = nm.moment(nm.d);
  for (int k = nm.d + 1; k <= k_max; ++k) {
    const real m = nm.moment(k);
    if (m < -a.tolerance || m > 1 + a.tolerance) a.item2_range = false;
    if (m > prev + a.tolerance) a.monotone = false;
    prev = m;
  }
  a.chebyshev_value = chebyshev_eval(nm.d, (1 + nm.eps) / (1 - nm.eps));
  a.abs_sum_rel_error = std::fabs(a.abs_sum - a.chebyshev_value) / a.chebyshev_value;
  a.abs_sum_identity = a.abs_sum_rel_error <= 1e-8L;
  for (std::size_t j = 0; j < nm.c.size(); ++j) {
    const bool positive = j % 2 == 0;
    if (positive ? !(nm.c[j] > 0) : !(nm.c[j] < 0)) a.signs_alternate = false;
  }
  for (std::size_t j = 0; j < nm.rho.size(); ++j) {
    if (nm.rho[j] < 0 || nm.rho[j] > 1 - nm.eps) a.nodes_in_range = false;
    if (j > 0 && !(nm.rho[j] < nm.rho[j - 1])) a.nodes_in_range = false;
  }
  a.growth_bound = a.abs_sum <= std::exp(10 * nm.d * std::sqrt(nm.eps));
  return a;
}

}  // namespace xorrep
