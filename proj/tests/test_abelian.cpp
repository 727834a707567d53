#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "xorrep/abelian.hpp"

using namespace xorrep;

namespace {

IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long bound) {
  IntegerMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * bound + 1)) - bound;
  return m;
}

// Membership in the lattice spanned by an echelon basis, by back-substitution
// on the pivot columns.
bool in_echelon_lattice(std::vector<IntVector> basis, IntVector v) {
  auto pivot_of = [](const IntVector& row) {
    std::size_t c = 0;
    while (c < row.size() && row[c] == 0) ++c;
    return c;
  };
  std::sort(basis.begin(), basis.end(),
            [&](const IntVector& a, const IntVector& b) { return pivot_of(a) < pivot_of(b); });
  for (const auto& row : basis) {
    std::size_t pivot = 0;
    while (pivot < row.size() && row[pivot] == 0) ++pivot;
    if (pivot == row.size()) continue;
    for (std::size_t c = 0; c < pivot; ++c)
      if (v[c] != 0) return false;
    if (v[pivot] % row[pivot] != 0) return false;
    Int k = v[pivot] / row[pivot];
    for (std::size_t c = 0; c < v.size(); ++c) v[c] -= k * row[c];
  }
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

// Every integer vector with entries in [-bound, bound]^cols.
template <class Fn>
void for_each_box_vector(std::size_t cols, long bound, Fn fn) {
  IntVector v(cols, Int(-bound));
  while (true) {
    fn(v);
    std::size_t i = 0;
    while (i < cols && v[i] == bound) v[i++] = -bound;
    if (i == cols) return;
    v[i] += 1;
  }
}

}  // namespace

TEST(SmithForm, Examples) {
  auto id = smith_normal_form(IntegerMatrix::identity(2));
  EXPECT_EQ(id.S, IntegerMatrix({{1, 0}, {0, 1}}));
  auto s = smith_normal_form(IntegerMatrix{{2, 4}, {6, 8}});
  EXPECT_EQ(s.S, IntegerMatrix({{2, 0}, {0, 4}}));
  EXPECT_EQ(s.rank, 2u);
  auto z = smith_normal_form(IntegerMatrix{{0}});
  EXPECT_EQ(z.S, IntegerMatrix({{0}}));
  EXPECT_EQ(z.rank, 0u);
}

TEST(SmithForm, RandomReconstruction) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t rows = 1 + rng() % 8, cols = 1 + rng() % 8;
    IntegerMatrix m = random_matrix(rng, rows, cols, 20);
    SmithForm f = smith_normal_form(m);
    ASSERT_EQ(f.U * m * f.V, f.S) << m.to_string();
    Int du = f.U.determinant(), dv = f.V.determinant();
    EXPECT_TRUE(abs(du) == 1) << du.get_str();
    EXPECT_TRUE(abs(dv) == 1) << dv.get_str();
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (r != c) EXPECT_EQ(f.S(r, c), 0);
    const std::size_t diag = std::min(rows, cols);
    for (std::size_t i = 0; i < diag; ++i) {
      EXPECT_GE(f.S(i, i), 0);
      EXPECT_EQ(f.S(i, i) != 0, i < f.rank);
      if (i + 1 < f.rank) EXPECT_EQ(f.S(i + 1, i + 1) % f.S(i, i), 0);
    }
  }
}

TEST(IntegerKernel, Examples) {
  auto k = integer_kernel(IntegerMatrix{{1, 1}});
  ASSERT_EQ(k.size(), 1u);
  EXPECT_TRUE((k[0] == IntVector{1, -1}) || (k[0] == IntVector{-1, 1}));
  auto z = integer_kernel(IntegerMatrix(1, 2));
  ASSERT_EQ(z.size(), 2u);
  EXPECT_TRUE(in_echelon_lattice(z, {1, 0}));
  EXPECT_TRUE(in_echelon_lattice(z, {0, 1}));
}

TEST(IntegerKernel, CompleteAgainstBoxSearch) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t cols = 2 + rng() % 4, rows = 1 + rng() % 3;
    IntegerMatrix m = random_matrix(rng, rows, cols, 3);
    auto basis = integer_kernel(m);
    EXPECT_EQ(basis.size(), cols - smith_normal_form(m).rank);
    for (const auto& v : basis) {
      IntVector mv = m * v;
      for (const auto& x : mv) EXPECT_EQ(x, 0);
    }
    for_each_box_vector(cols, 3, [&](const IntVector& v) {
      IntVector mv = m * v;
      bool zero = true;
      for (const auto& x : mv) zero = zero && x == 0;
      if (zero) EXPECT_TRUE(in_echelon_lattice(basis, v)) << m.to_string();
    });
  }
}

TEST(SolveModQ, Examples) {
  auto s = solve_mod_q(IntegerMatrix{{2}}, {2}, 4);
  ASSERT_TRUE(s.consistent());
  EXPECT_EQ(s.solutions(), (std::vector<std::vector<std::int64_t>>{{1}, {3}}));
  EXPECT_EQ(s.count(), 2);
  auto none = solve_mod_q(IntegerMatrix{{2}}, {1}, 4);
  EXPECT_FALSE(none.consistent());
  EXPECT_EQ(none.count(), 0);
  EXPECT_TRUE(none.solutions().empty());
  EXPECT_THROW(none.first(), PreconditionError);
}

TEST(SolveModQ, MatchesBruteForce) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 120; ++trial) {
    const std::int64_t q = 2 + static_cast<std::int64_t>(rng() % 7);
    const std::size_t cols = 1 + rng() % 4, rows = 1 + rng() % 3;
    IntegerMatrix m = random_matrix(rng, rows, cols, 5);
    IntVector b(rows);
    for (auto& x : b) x = static_cast<long>(rng() % 9) - 4;
    std::vector<std::vector<std::int64_t>> brute;
    std::vector<std::int64_t> v(cols, 0);
    while (true) {
      bool ok = true;
      for (std::size_t r = 0; r < rows && ok; ++r) {
        Int acc = -b[r];
        for (std::size_t c = 0; c < cols; ++c) acc += m(r, c) * v[c];
        Int red = acc % q;
        ok = red == 0;
      }
      if (ok) brute.push_back(v);
      std::size_t i = cols;
      while (i > 0 && v[i - 1] == q - 1) v[--i] = 0;
      if (i == 0) break;
      ++v[i - 1];
    }
    auto set = solve_mod_q(m, b, q);
    EXPECT_EQ(set.consistent(), !brute.empty());
    EXPECT_EQ(set.count(), static_cast<unsigned long>(brute.size()));
    EXPECT_EQ(set.solutions(), brute) << m.to_string() << " q=" << q;
    if (!brute.empty()) {
      EXPECT_EQ(set.first(), brute.front());
      auto part = set.particular();
      EXPECT_TRUE(std::find(brute.begin(), brute.end(), part) != brute.end());
    }
  }
}

TEST(Subgroup, Examples) {
  auto z4 = FiniteAbelianGroup::cyclic(4);
  auto s = subgroup_generated(z4, {{2}});
  EXPECT_EQ(s.elements, (std::vector<GroupElement>{{0}, {2}}));
  FiniteAbelianGroup z2z4({2, 4});
  auto t = subgroup_generated(z2z4, {{1, 2}});
  EXPECT_EQ(t.elements, (std::vector<GroupElement>{{0, 0}, {1, 2}}));
  EXPECT_EQ(t.order, 2);
  FiniteAbelianGroup z2z2({2, 2});
  auto w = subgroup_generated(z2z2, {{1, 0}, {0, 1}});
  EXPECT_EQ(w.elements.size(), 4u);
  EXPECT_EQ(w.invariant_factors, (std::vector<Int>{2, 2}));
}

TEST(Subgroup, IdempotentAndStructure) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::int64_t> factors;
    const std::size_t arity = 1 + rng() % 3;
    for (std::size_t i = 0; i < arity; ++i) factors.push_back(2 + static_cast<std::int64_t>(rng() % 7));
    FiniteAbelianGroup g(factors);
    std::vector<GroupElement> gens;
    const std::size_t ng = rng() % 3;
    for (std::size_t i = 0; i < ng; ++i) {
      GroupElement e(arity);
      for (std::size_t c = 0; c < arity; ++c) e[c] = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(factors[c]));
      gens.push_back(e);
    }
    auto s = subgroup_generated(g, gens);
    auto again = subgroup_generated(g, s.elements);
    EXPECT_EQ(again.elements, s.elements);
    Int product = 1;
    for (const auto& d : s.invariant_factors) product *= d;
    EXPECT_EQ(product, s.order);
    EXPECT_EQ(Int(static_cast<unsigned long>(s.elements.size())), s.order);
    EXPECT_EQ(subgroup_structure(g, gens), s.invariant_factors);
    // Closure under addition.
    for (const auto& a : s.elements)
      for (const auto& b : s.elements) EXPECT_TRUE(s.contains(g.add(a, b)));
    // Canonical coordinates form a bijection onto the canonical group.
    auto canon = s.canonical_group();
    std::set<GroupElement> seen;
    for (const auto& a : s.elements) {
      auto c = s.canonical_coordinates(a);
      EXPECT_TRUE(canon.contains(c));
      seen.insert(c);
    }
    EXPECT_EQ(seen.size(), s.elements.size());
  }
}

TEST(NumberTheory, Helpers) {
  std::int64_t p = 0;
  int k = 0;
  EXPECT_TRUE(is_prime_power(8, &p, &k));
  EXPECT_EQ(p, 2);
  EXPECT_EQ(k, 3);
  EXPECT_FALSE(is_prime_power(6));
  EXPECT_FALSE(is_prime_power(1));
  EXPECT_EQ(prime_powers_up_to(9), (std::vector<std::int64_t>{2, 3, 4, 5, 7, 8, 9}));
  EXPECT_EQ(mod_floor(-3, 5), 2);
  EXPECT_EQ(checked_pow(3, 4), 81);
  EXPECT_EQ(factorize(12), (std::vector<std::pair<std::int64_t, int>>{{2, 2}, {3, 1}}));
}
