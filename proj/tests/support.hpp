// Hand-rolled generators shared by the test binaries.

#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "xorrep/analytic.hpp"
#include "xorrep/game.hpp"

namespace testsupport {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

// Random distribution on alphabets of the given maximum size. Every symbol
// is used and probabilities are random small rationals.
inline xorrep::TripartiteDistribution random_distribution(Rng& rng, std::size_t max_alpha,
                                                          bool uniform = false) {
  const std::size_t ns = pick(rng, 1, max_alpha), ng = pick(rng, 1, max_alpha),
                    nf = pick(rng, 1, max_alpha);
  std::set<xorrep::Triple> triples;
  const std::size_t target = pick(rng, std::max({ns, ng, nf}), ns * ng * nf);
  while (triples.size() < target)
    triples.insert({pick(rng, 0, ns - 1), pick(rng, 0, ng - 1), pick(rng, 0, nf - 1)});
  // Cover every symbol.
  for (std::size_t i = 0; i < std::max({ns, ng, nf}); ++i)
    triples.insert({std::min(i, ns - 1), std::min(i, ng - 1), std::min(i, nf - 1)});
  std::vector<xorrep::Atom> atoms;
  long total = 0;
  std::vector<long> w;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    w.push_back(uniform ? 1 : static_cast<long>(pick(rng, 1, 4)));
    total += w.back();
  }
  std::size_t i = 0;
  for (const auto& t : triples) atoms.push_back({t, xorrep::Rational(w[i++], total)});
  for (auto& a : atoms) a.p.canonicalize();
  return xorrep::TripartiteDistribution(xorrep::Alphabet::numbered(ns),
                                        xorrep::Alphabet::numbered(ng),
                                        xorrep::Alphabet::numbered(nf), std::move(atoms));
}

inline xorrep::XorGame random_game(Rng& rng, std::size_t max_alpha, std::int64_t max_m) {
  xorrep::XorGame g;
  g.dist = random_distribution(rng, max_alpha);
  g.modulus = static_cast<std::int64_t>(pick(rng, 2, static_cast<std::size_t>(max_m)));
  for (const auto& a : g.dist.support)
    g.target[a.q] = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(g.modulus));
  return g;
}

inline xorrep::Strategy random_strategy(Rng& rng, const xorrep::XorGame& g, int n) {
  xorrep::Strategy s = xorrep::Strategy::zero(g, n);
  for (auto* tab : {&s.f, &s.g, &s.h})
    for (auto& row : *tab)
      for (auto& v : row) v = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(g.modulus));
  return s;
}

inline xorrep::ComplexTable random_table(Rng& rng, std::size_t alphabet, int n,
                                         bool unit_modulus = false) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  xorrep::ComplexTable t(alphabet, n);
  for (auto& v : t.values) {
    v = {u(rng), u(rng)};
    if (unit_modulus) v /= std::abs(v);
    else if (std::abs(v) > 1) v /= std::abs(v);
  }
  return t;
}

inline std::vector<double> random_weights(Rng& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> w(n);
  double s = 0;
  for (auto& x : w) s += (x = u(rng));
  for (auto& x : w) x /= s;
  return w;
}

}  // namespace testsupport
