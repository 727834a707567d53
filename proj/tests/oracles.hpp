// Independent slow reference computations used as test oracles.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "xorrep/cheby.hpp"
#include "xorrep/embed.hpp"
#include "xorrep/game.hpp"

namespace oracle {

// Every answer table for `questions` questions with answers in [0, answers).
inline void for_each_table(std::size_t questions, std::int64_t answers,
                           const std::function<void(const std::vector<std::int64_t>&)>& fn) {
  std::vector<std::int64_t> t(questions, 0);
  while (true) {
    fn(t);
    std::size_t i = 0;
    while (i < questions && t[i] == answers - 1) t[i++] = 0;
    if (i == questions) return;
    ++t[i];
  }
}

// Answer tuples in Z_m^n are packed as base-m integers, coordinate 0 most
// significant.
inline std::int64_t digit(std::int64_t packed, std::int64_t m, int n, int i) {
  for (int k = n - 1; k > i; --k) packed /= m;
  return packed % m;
}

inline std::size_t pow_size(std::size_t b, int n) {
  std::size_t r = 1;
  for (int i = 0; i < n; ++i) r *= b;
  return r;
}

// Win probability of packed tables by a direct loop over support^n.
inline xorrep::Rational direct_win(const xorrep::XorGame& g, int n,
                                   const std::vector<std::int64_t>& f,
                                   const std::vector<std::int64_t>& gg,
                                   const std::vector<std::int64_t>& h) {
  const auto& supp = g.dist.support;
  const std::size_t ns = g.dist.sigma.size(), ny = g.dist.gamma.size(), nz = g.dist.phi.size();
  xorrep::Rational total = 0;
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    xorrep::Rational p = 1;
    std::size_t ix = 0, iy = 0, iz = 0;
    for (int i = 0; i < n; ++i) {
      p *= supp[pick[i]].p;
      ix = ix * ns + supp[pick[i]].q.x;
      iy = iy * ny + supp[pick[i]].q.y;
      iz = iz * nz + supp[pick[i]].q.z;
    }
    bool win = true;
    for (int i = 0; i < n && win; ++i) {
      std::int64_t s = digit(f[ix], g.modulus, n, i) + digit(gg[iy], g.modulus, n, i) +
                       digit(h[iz], g.modulus, n, i) - g.t(supp[pick[i]].q);
      win = ((s % g.modulus) + g.modulus) % g.modulus == 0;
    }
    if (win) total += p;
    int i = n - 1;
    while (i >= 0 && pick[i] == supp.size() - 1) pick[i--] = 0;
    if (i < 0) break;
    ++pick[i];
  }
  return total;
}

// Packed form of a library strategy table.
inline std::vector<std::int64_t> pack(const std::vector<std::vector<std::int64_t>>& table,
                                      std::int64_t m) {
  std::vector<std::int64_t> out;
  for (const auto& row : table) {
    std::int64_t v = 0;
    for (auto a : row) v = v * m + a;
    out.push_back(v);
  }
  return out;
}

// Maximum over all three tables.
inline xorrep::Rational brute_value(const xorrep::XorGame& g, int n) {
  const std::int64_t answers = static_cast<std::int64_t>(pow_size(g.modulus, n));
  const std::size_t qs = pow_size(g.dist.sigma.size(), n), qy = pow_size(g.dist.gamma.size(), n),
                    qz = pow_size(g.dist.phi.size(), n);
  xorrep::Rational best = 0;
  for_each_table(qs, answers, [&](const auto& f) {
    for_each_table(qy, answers, [&](const auto& gg) {
      for_each_table(qz, answers, [&](const auto& h) {
        auto w = direct_win(g, n, f, gg, h);
        if (w > best) best = w;
      });
    });
  });
  return best;
}

// Maximum over strategies with the first two tables equal, the third table
// enumerated in full. Requires |Sigma| = |Gamma|.
inline xorrep::Rational symmetric_value(const xorrep::XorGame& g, int n) {
  const std::int64_t answers = static_cast<std::int64_t>(pow_size(g.modulus, n));
  const std::size_t qs = pow_size(g.dist.sigma.size(), n), qz = pow_size(g.dist.phi.size(), n);
  xorrep::Rational best = 0;
  for_each_table(qs, answers, [&](const auto& f) {
    for_each_table(qz, answers, [&](const auto& h) {
      auto w = direct_win(g, n, f, f, h);
      if (w > best) best = w;
    });
  });
  return best;
}

// Normalized assignments with values in `values`, filtered by the congruence
// computed directly (modulus 0 means over the integers).
inline std::vector<xorrep::Embedding> brute_embeddings(const xorrep::TripartiteDistribution& d,
                                                       std::int64_t q,
                                                       const std::vector<std::int64_t>& values) {
  const xorrep::Triple anchor = xorrep::normalization_anchor(d);
  std::vector<std::pair<int, std::size_t>> free;
  for (std::size_t i = 0; i < d.sigma.size(); ++i)
    if (i != anchor.x) free.push_back({0, i});
  for (std::size_t i = 0; i < d.gamma.size(); ++i)
    if (i != anchor.y) free.push_back({1, i});
  for (std::size_t i = 0; i < d.phi.size(); ++i)
    if (i != anchor.z) free.push_back({2, i});
  std::vector<std::size_t> digit(free.size(), 0);
  std::vector<xorrep::Embedding> out;
  while (true) {
    xorrep::Embedding e;
    e.modulus = q;
    e.alpha.assign(d.sigma.size(), 0);
    e.beta.assign(d.gamma.size(), 0);
    e.gamma.assign(d.phi.size(), 0);
    for (std::size_t k = 0; k < free.size(); ++k) {
      auto& vec = free[k].first == 0 ? e.alpha : free[k].first == 1 ? e.beta : e.gamma;
      vec[free[k].second] = values[digit[k]];
    }
    bool ok = true;
    for (const auto& a : d.support) {
      std::int64_t s = e.alpha[a.q.x] + e.beta[a.q.y] + e.gamma[a.q.z];
      ok = ok && (q == 0 ? s == 0 : s % q == 0);
    }
    if (ok) out.push_back(e);
    std::size_t k = 0;
    while (k < free.size() && digit[k] == values.size() - 1) digit[k++] = 0;
    if (k == free.size()) break;
    ++digit[k];
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::int64_t> range(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> v;
  for (std::int64_t i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

// h_m of the variables as an explicit sum over all exponent vectors.
inline xorrep::real monomial_sum(const std::vector<xorrep::real>& vars, int m) {
  if (m < 0) return 0;
  xorrep::real total = 0;
  std::vector<int> e(vars.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == vars.size()) {
      e[i] = left;
      xorrep::real term = 1;
      for (std::size_t j = 0; j < vars.size(); ++j) term *= std::pow(vars[j], e[j]);
      total += term;
      return;
    }
    for (int a = 0; a <= left; ++a) {
      e[i] = a;
      rec(i + 1, left - a);
    }
  };
  rec(0, m);
  return total;
}

}  // namespace oracle
