#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "xorrep/additive.hpp"
#include "xorrep/embed.hpp"

using namespace xorrep;

namespace {

FunctionOnGroupBox on_whole_group(const FiniteAbelianGroup& g, std::int64_t q,
                                  const std::function<std::int64_t(const GroupElement&)>& fn) {
  FunctionOnGroupBox f;
  f.group = g;
  f.modulus = q;
  f.domain = all_elements(g);
  for (const auto& x : f.domain) f.values.push_back(mod_floor(fn(x), q));
  return f;
}

// Order-s Freiman property by tabulating every sorted index tuple.
bool brute_freiman(const FunctionOnGroupBox& f, int s) {
  std::map<GroupElement, std::int64_t> image_of_sum;
  std::vector<std::size_t> idx(s, 0);
  const std::size_t n = f.domain.size();
  while (true) {
    GroupElement sum = f.group.zero();
    std::int64_t img = 0;
    for (std::size_t i : idx) {
      sum = f.group.add(sum, f.domain[i]);
      img = (img + f.values[i]) % f.modulus;
    }
    auto [it, fresh] = image_of_sum.try_emplace(sum, img);
    if (!fresh && it->second != img) return false;
    int k = s - 1;
    while (k >= 0 && idx[k] == n - 1) --k;
    if (k < 0) return true;
    ++idx[k];
    for (int j = k + 1; j < s; ++j) idx[j] = idx[k];
  }
}

FiniteAbelianGroup random_group(std::mt19937_64& rng) {
  std::vector<std::int64_t> factors;
  const std::size_t arity = 1 + rng() % 2;
  for (std::size_t i = 0; i < arity; ++i) factors.push_back(2 + static_cast<std::int64_t>(rng() % 4));
  return FiniteAbelianGroup(factors);
}

}  // namespace

TEST(Freiman, QuadraticOnZ5) {
  auto g = FiniteAbelianGroup::cyclic(5);
  auto f = on_whole_group(g, 5, [](const GroupElement& x) { return x[0] * x[0]; });
  auto r = freiman_check(f, 2);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.witness);
  const auto& [a, b] = *r.witness;
  EXPECT_EQ(a, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(b, (std::vector<std::size_t>{1, 1}));
  GroupElement sa = g.zero(), sb = g.zero();
  std::int64_t ia = 0, ib = 0;
  for (auto i : a) sa = g.add(sa, f.domain[i]), ia += f.values[i];
  for (auto i : b) sb = g.add(sb, f.domain[i]), ib += f.values[i];
  EXPECT_EQ(sa, sb);
  EXPECT_NE(ia % 5, ib % 5);
}

TEST(Freiman, SingletonDomain) {
  FunctionOnGroupBox f;
  f.group = FiniteAbelianGroup::cyclic(7);
  f.domain = {{3}};
  f.values = {5};
  f.modulus = 7;
  for (int s = 1; s <= 4; ++s) EXPECT_TRUE(freiman_check(f, s).holds);
}

TEST(Freiman, HomomorphismsAndAffineMapsPass) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 60; ++trial) {
    auto g = random_group(rng);
    const std::int64_t q = 2 + static_cast<std::int64_t>(rng() % 5);
    std::vector<std::int64_t> coeff;
    for (auto a : g.factors()) {
      const std::int64_t step = q / std::gcd(a, q);
      coeff.push_back(step * static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q)));
    }
    const std::int64_t shift = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
    auto f = on_whole_group(g, q, [&](const GroupElement& x) {
      std::int64_t v = shift;
      for (std::size_t i = 0; i < x.size(); ++i) v += coeff[i] * x[i];
      return v;
    });
    // Random subset of the domain.
    FunctionOnGroupBox sub = f;
    sub.domain.clear();
    sub.values.clear();
    for (std::size_t i = 0; i < f.domain.size(); ++i)
      if (rng() % 3 != 0) sub.domain.push_back(f.domain[i]), sub.values.push_back(f.values[i]);
    if (sub.domain.empty()) sub.domain.push_back(f.domain[0]), sub.values.push_back(f.values[0]);
    for (int s = 1; s <= 3; ++s) {
      EXPECT_TRUE(freiman_check(f, s).holds);
      EXPECT_TRUE(freiman_check(sub, s).holds);
    }
  }
}

TEST(Freiman, MatchesTabulationAndIsMonotone) {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 80; ++trial) {
    auto g = random_group(rng);
    const std::int64_t q = 2 + static_cast<std::int64_t>(rng() % 4);
    FunctionOnGroupBox f;
    f.group = g;
    f.modulus = q;
    for (const auto& x : all_elements(g))
      if (rng() % 2) {
        f.domain.push_back(x);
        f.values.push_back(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q)));
      }
    if (f.domain.empty()) continue;
    bool previous = true;
    for (int s = 1; s <= 4; ++s) {
      const bool holds = freiman_check(f, s).holds;
      EXPECT_EQ(holds, brute_freiman(f, s)) << "s=" << s;
      if (!previous) EXPECT_FALSE(holds);
      previous = holds;
    }
  }
}

TEST(AffineExtract, Examples) {
  auto z3 = FiniteAbelianGroup::cyclic(3);
  auto zero = affine_form_extract(z3, std::vector<std::int64_t>{0, 0, 0}, 3);
  ASSERT_TRUE(zero);
  EXPECT_EQ(zero->constant, 0);
  EXPECT_EQ(zero->coeffs, (std::vector<std::int64_t>{0}));
  auto lin = affine_form_extract(z3, std::vector<std::int64_t>{1, 0, 2}, 3);
  ASSERT_TRUE(lin);
  EXPECT_EQ(lin->constant, 1);
  EXPECT_EQ(lin->coeffs, (std::vector<std::int64_t>{2}));
  FiniteAbelianGroup z2z2({2, 2});
  std::vector<std::int64_t> prod;
  for (const auto& x : all_elements(z2z2)) prod.push_back(x[0] * x[1]);
  EXPECT_FALSE(affine_form_extract(z2z2, prod, 2));
}

TEST(AffineExtract, RecoversRandomForms) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 60; ++trial) {
    const std::int64_t p = (rng() % 2) ? 2 : 3;
    std::vector<std::int64_t> factors;
    const std::size_t arity = 1 + rng() % 3;
    for (std::size_t i = 0; i < arity; ++i) factors.push_back(p * (1 + static_cast<std::int64_t>(rng() % 2)));
    FiniteAbelianGroup g(factors);
    AffineForm form;
    form.constant = static_cast<std::int64_t>(rng() % p);
    for (std::size_t i = 0; i < arity; ++i) form.coeffs.push_back(static_cast<std::int64_t>(rng() % p));
    std::vector<std::int64_t> values;
    for (const auto& x : all_elements(g)) values.push_back(evaluate(form, x, p));
    auto got = affine_form_extract(g, values, p);
    ASSERT_TRUE(got);
    for (const auto& x : all_elements(g)) EXPECT_EQ(evaluate(*got, x, p), evaluate(form, x, p));
  }
}

TEST(AffineExtract, ForcedZeroCoefficients) {
  FiniteAbelianGroup g({2, 2});
  std::vector<std::pair<GroupElement, std::int64_t>> pts;
  for (const auto& x : all_elements(g)) pts.emplace_back(x, x[1]);
  EXPECT_TRUE(affine_form_extract(g, pts, 2));
  EXPECT_TRUE(affine_form_extract(g, pts, 2, {true, false}));
  EXPECT_FALSE(affine_form_extract(g, pts, 2, {false, true}));
}

TEST(VanishingCoefficients, ComponentRule) {
  FiniteAbelianGroup g({2, 3, 8});
  EXPECT_EQ(vanishing_coefficients(g, 2, 1, 1), (std::vector<bool>{true, true, false}));
  EXPECT_EQ(vanishing_coefficients(g, 2, 1, 2), (std::vector<bool>{true, true, false}));
  EXPECT_EQ(vanishing_coefficients(g, 2, 2, 2), (std::vector<bool>{true, true, true}));
}

TEST(CoefficientMatching, Examples) {
  AffineForm z{0, {0}};
  EXPECT_TRUE(coefficient_matching_check(z, z, z, 2));
  AffineForm ones{1, {0}};
  EXPECT_FALSE(coefficient_matching_check(ones, ones, ones, 2));
  AffineForm a{1, {1}}, b{1, {1}}, c{0, {1}};
  EXPECT_TRUE(coefficient_matching_check(a, b, c, 2));
  AffineForm d{0, {0}};
  EXPECT_FALSE(coefficient_matching_check(a, b, d, 2));
}

TEST(CrossModule, AcceptedReductionHasMatchingForms) {
  XorGame g = ghz();
  TargetEmbedding te;
  te.p = 2;
  te.k = 1;
  te.j = 2;
  te.N = 4;
  te.modulus = 8;
  te.a = te.b = te.c = {0, 2};
  te.target = g.target;
  te.shift_a = te.shift_b = te.shift_c = {0, 0};
  auto coords = coordinates_from_master(master_embedding(g.dist));
  ASSERT_NO_THROW(reduce_embedding_N(te, 2, coords));
  auto form = [&](const std::vector<GroupElement>& xs, const std::vector<std::int64_t>& vals) {
    std::vector<std::pair<GroupElement, std::int64_t>> pts;
    for (std::size_t i = 0; i < xs.size(); ++i) pts.emplace_back(xs[i], mod_floor(vals[i], 2));
    return affine_form_extract(coords.group, pts, 2);
  };
  auto fa = form(coords.x, te.a), fb = form(coords.y, te.b), fc = form(coords.z, te.c);
  ASSERT_TRUE(fa && fb && fc);
  EXPECT_TRUE(coefficient_matching_check(*fa, *fb, *fc, 2));
  for (auto c : fa->coeffs) EXPECT_EQ(c, 0);
}
