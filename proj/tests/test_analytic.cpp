#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "xorrep/analytic.hpp"

using namespace xorrep;

namespace {

constexpr double kTol = 1e-9;

double max_diff(const ComplexTable& a, const ComplexTable& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

struct RandomBasisCase {
  std::vector<double> mu;
  DecompositionBasis basis;
  ComplexTable F;
};

RandomBasisCase random_case(testsupport::Rng& rng, BasisMode mode) {
  RandomBasisCase c;
  const std::size_t M = testsupport::pick(rng, 1, 4);
  const int n = static_cast<int>(testsupport::pick(rng, 1, 4));
  c.mu = testsupport::random_weights(rng, M);
  std::vector<bool> designated(M);
  std::vector<int> labels(M);
  for (std::size_t x = 0; x < M; ++x) {
    designated[x] = rng() % 4 != 0;
    labels[x] = static_cast<int>(rng() % 3);
  }
  c.basis = build_decomposition_basis(c.mu, designated, mode, labels);
  c.F = testsupport::random_table(rng, M, n);
  return c;
}

}  // namespace

TEST(Arithmetization, GhzZeroStrategy) {
  XorGame g = ghz();
  cplx v = arithmetize_win_probability(g, Strategy::zero(g, 1));
  EXPECT_NEAR(v.real(), 0.25, kTol);
  EXPECT_NEAR(v.imag(), 0.0, kTol);
}

TEST(Arithmetization, PerfectStrategy) {
  XorGame g = ghz();
  for (auto& [q, t] : g.target) t = 0;
  EXPECT_NEAR(arithmetize_win_probability(g, Strategy::zero(g, 2)).real(), 1.0, kTol);
}

TEST(Arithmetization, MatchesWinProbability) {
  testsupport::Rng rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    XorGame g = testsupport::random_game(rng, 3, 4);
    const int n = 1 + static_cast<int>(rng() % 2);
    Strategy s = testsupport::random_strategy(rng, g, n);
    const double exact = win_probability(g, s).get_d();
    cplx full = arithmetize_win_probability(g, s);
    EXPECT_NEAR(full.real(), exact, kTol);
    EXPECT_NEAR(full.imag(), 0.0, kTol);
    // A budget covering only the events forces the factored route.
    cplx factored =
        arithmetize_win_probability(g, s, checked_power(g.dist.support.size(), n));
    EXPECT_NEAR(factored.real(), exact, kTol);
  }
}

TEST(Correlation, Trivial) {
  XorGame g = ghz();
  ComplexTable one(2, 2, 1.0);
  PhaseTensor T(g.dist.support.size(), 1.0);
  EXPECT_NEAR(std::abs(correlation(one, one, one, T, g.dist, 2) - cplx(1.0)), 0.0, kTol);
}

TEST(Correlation, UnitModulusBounded) {
  testsupport::Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    XorGame g = testsupport::random_game(rng, 3, 4);
    auto T = arithmetization_tensor(g);
    auto F = testsupport::random_table(rng, g.dist.sigma.size(), 1, true);
    auto G = testsupport::random_table(rng, g.dist.gamma.size(), 1, true);
    auto H = testsupport::random_table(rng, g.dist.phi.size(), 1, true);
    EXPECT_LE(std::abs(correlation(F, G, H, T, g.dist, 1)), 1.0 + kTol);
  }
}

TEST(Correlation, ProductFormMatchesDense) {
  testsupport::Rng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    XorGame g = testsupport::random_game(rng, 3, 4);
    auto T = arithmetization_tensor(g);
    const int n = 2;
    std::vector<ComplexTable> fs, gs, hs;
    for (int i = 0; i < n; ++i) {
      fs.push_back(testsupport::random_table(rng, g.dist.sigma.size(), 1));
      gs.push_back(testsupport::random_table(rng, g.dist.gamma.size(), 1));
      hs.push_back(testsupport::random_table(rng, g.dist.phi.size(), 1));
    }
    auto dense = [&](const std::vector<ComplexTable>& parts) {
      return ComplexTable::from_function(parts[0].alphabet, n, [&](const auto& x) {
        cplx v = 1.0;
        for (int i = 0; i < n; ++i) v *= parts[i][x[i]];
        return v;
      });
    };
    cplx a = correlation(dense(fs), dense(gs), dense(hs), T, g.dist, n);
    cplx b = correlation_product(fs, gs, hs, T, g.dist);
    EXPECT_NEAR(std::abs(a - b), 0.0, kTol);
  }
}

TEST(Correlation, DegenerateTensorDecay) {
  testsupport::Rng rng(44);
  std::uniform_real_distribution<double> u(0.2, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    auto d = testsupport::random_distribution(rng, 3);
    PhaseTensor T;
    for (std::size_t i = 0; i < d.support.size(); ++i) T.push_back(u(rng));
    T[0] = 0.5;
    double mean = 0;
    for (std::size_t i = 0; i < T.size(); ++i) mean += d.support[i].p.get_d() * T[i].real();
    for (int n = 1; n <= 3; ++n) {
      ComplexTable F(d.sigma.size(), n, 1.0), G(d.gamma.size(), n, 1.0), H(d.phi.size(), n, 1.0);
      EXPECT_NEAR(std::abs(correlation(F, G, H, T, d, n)), std::pow(mean, n), kTol);
    }
  }
}

TEST(TwoPlayer, SpectralExamples) {
  TwoPlayerInstance andg{{{0.25, 0.25}, {0.25, 0.25}}, {{1.0, 1.0}, {1.0, -1.0}}};
  EXPECT_NEAR(two_player_spectral_norm(andg), 1.0 / std::sqrt(2.0), 1e-10);
  TwoPlayerInstance flat{{{0.25, 0.25}, {0.25, 0.25}}, {{1.0, 1.0}, {1.0, 1.0}}};
  EXPECT_NEAR(two_player_spectral_norm(flat), 1.0, 1e-10);
}

TEST(TwoPlayer, Tensorization) {
  testsupport::Rng rng(45);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = testsupport::pick(rng, 1, 3), cols = testsupport::pick(rng, 1, 3);
    const std::int64_t m = static_cast<std::int64_t>(testsupport::pick(rng, 2, 4));
    auto w = testsupport::random_weights(rng, rows * cols);
    TwoPlayerInstance inst;
    inst.mu.assign(rows, std::vector<double>(cols));
    inst.T.assign(rows, std::vector<cplx>(cols));
    for (std::size_t x = 0; x < rows; ++x)
      for (std::size_t y = 0; y < cols; ++y) {
        inst.mu[x][y] = w[x * cols + y];
        inst.T[x][y] = std::polar(1.0, 2 * M_PI * static_cast<double>(rng() % m) / m);
      }
    const double sigma = two_player_spectral_norm(inst);
    EXPECT_LE(sigma, 1.0 + kTol);
    auto F = testsupport::random_table(rng, rows, 3);
    auto G = testsupport::random_table(rng, cols, 3);
    EXPECT_LE(std::abs(two_player_correlation(inst, F, G, 3)), std::pow(sigma, 3) + kTol);
  }
}

TEST(Basis, Examples) {
  std::vector<double> u{0.5, 0.5};
  auto none = build_decomposition_basis(u, {false, false}, BasisMode::Effective);
  EXPECT_EQ(none.high_count(), 0u);
  auto singles =
      build_decomposition_basis({0.25, 0.25, 0.5}, {true, true, true}, BasisMode::Modest, {0, 1, 2});
  EXPECT_EQ(singles.high_count(), 0u);
  auto full = build_decomposition_basis(u, {true, true}, BasisMode::Effective);
  ASSERT_EQ(full.high_count(), 1u);
  EXPECT_NEAR(full.vectors[1][0], 1.0, kTol);
  EXPECT_NEAR(full.vectors[1][1], -1.0, kTol);
  EXPECT_NEAR(full.vectors[0][0], 1.0, kTol);
  EXPECT_LT(full.orthonormality_error(), kTol);
}

TEST(Decompose, Examples) {
  auto basis = build_decomposition_basis({0.5, 0.5}, {true, true}, BasisMode::Effective);
  ComplexTable c(2, 3, cplx(0.3, -0.2));
  auto D = decompose(c, basis);
  EXPECT_NEAR(max_diff(D.parts[0], c), 0.0, kTol);
  for (int d = 1; d <= 3; ++d) EXPECT_NEAR(D.parts[d].max_abs(), 0.0, kTol);
  EXPECT_NEAR(D.total_influence, 0.0, kTol);
  auto chi = ComplexTable::from_function(2, 3, [](const auto& x) {
    return cplx((x[0] ? -1.0 : 1.0) * (x[1] ? -1.0 : 1.0) * (x[2] ? -1.0 : 1.0));
  });
  auto E = decompose(chi, basis);
  EXPECT_NEAR(max_diff(E.parts[3], chi), 0.0, kTol);
  for (int d = 0; d < 3; ++d) EXPECT_NEAR(E.parts[d].max_abs(), 0.0, kTol);
}

TEST(Decompose, ParsevalInfluenceNoise) {
  testsupport::Rng rng(46);
  for (BasisMode mode : {BasisMode::Effective, BasisMode::Modest}) {
    for (int trial = 0; trial < 50; ++trial) {
      auto c = random_case(rng, mode);
      ASSERT_LT(c.basis.orthonormality_error(), kTol);
      const double norm = l2_norm_squared(c.F, c.mu);
      auto D = decompose(c.F, c.basis);
      double parts = 0, coeffs = 0;
      ComplexTable sum(c.F.alphabet, c.F.n);
      for (const auto& p : D.parts) {
        parts += l2_norm_squared(p, c.mu);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += p[i];
      }
      for (const auto& v : D.coefficients) coeffs += std::norm(v);
      EXPECT_NEAR(parts, norm, kTol);
      EXPECT_NEAR(coeffs, norm, kTol);
      EXPECT_NEAR(max_diff(sum, c.F), 0.0, kTol);
      // Parts are mutually orthogonal.
      for (std::size_t a = 0; a < D.parts.size(); ++a)
        for (std::size_t b = a + 1; b < D.parts.size(); ++b)
          EXPECT_NEAR(std::abs(inner_product(D.parts[a], D.parts[b], c.mu)), 0.0, kTol);
      double total = 0;
      for (int i = 0; i < c.F.n; ++i) {
        EXPECT_NEAR(D.influence[i], influence_by_resampling(c.F, c.basis, i), kTol);
        total += D.influence[i];
      }
      EXPECT_NEAR(total, D.total_influence, kTol);

      const double rho = std::uniform_real_distribution<double>(0, 1)(rng);
      auto spectral = apply_noise(c.F, c.basis, rho);
      auto direct = apply_noise_direct(c.F, c.basis, rho);
      EXPECT_NEAR(max_diff(spectral, direct), 0.0, kTol);
      for (std::size_t d = 0; d < D.parts.size(); ++d) {
        auto img = apply_noise_direct(D.parts[d], c.basis, rho);
        ComplexTable scaled = D.parts[d];
        for (auto& v : scaled.values) v *= std::pow(1 - rho, static_cast<double>(d));
        EXPECT_NEAR(max_diff(img, scaled), 0.0, kTol);
      }
      EXPECT_NEAR(max_diff(apply_noise(c.F, c.basis, 0.0), c.F), 0.0, kTol);
      EXPECT_NEAR(max_diff(apply_noise_direct(c.F, c.basis, 1.0), D.parts[0]), 0.0, kTol);
    }
  }
}

TEST(Svd, RankOne) {
  std::vector<double> mu{0.5, 0.5};
  auto F = ComplexTable::from_function(2, 2, [](const auto& x) {
    return cplx((x[0] ? -1.0 : 1.0) * (x[1] ? -1.0 : 1.0));
  });
  auto svd = svd_decompose(F, mu);
  ASSERT_FALSE(svd.singular.empty());
  EXPECT_NEAR(svd.singular[0], 1.0, kTol);
  for (std::size_t r = 1; r < svd.singular.size(); ++r) EXPECT_NEAR(svd.singular[r], 0.0, kTol);
}

TEST(Svd, ReconstructionOrthonormalityVariance) {
  testsupport::Rng rng(47);
  for (BasisMode mode : {BasisMode::Effective, BasisMode::Modest}) {
    for (int trial = 0; trial < 50; ++trial) {
      auto c = random_case(rng, mode);
      auto svd = svd_decompose(c.F, c.mu);
      EXPECT_NEAR(max_diff(svd_reconstruct(svd, c.F.n), c.F), 0.0, kTol);
      double energy = 0;
      for (std::size_t r = 0; r < svd.singular.size(); ++r) {
        energy += svd.singular[r] * svd.singular[r];
        if (r + 1 < svd.singular.size()) EXPECT_GE(svd.singular[r] + kTol, svd.singular[r + 1]);
        for (std::size_t s = 0; s < svd.singular.size(); ++s) {
          const double want = r == s ? 1.0 : 0.0;
          EXPECT_NEAR(std::abs(inner_product(svd.right[r], svd.right[s], c.mu) - want), 0.0, kTol);
          if (c.F.n > 1)
            EXPECT_NEAR(std::abs(inner_product(svd.left[r], svd.left[s], c.mu) - want), 0.0, kTol);
        }
      }
      EXPECT_NEAR(energy, l2_norm_squared(c.F, c.mu), kTol);
      double lhs = 0;
      for (std::size_t r = 0; r < svd.singular.size(); ++r)
        lhs += svd.singular[r] * svd.singular[r] *
               influence_by_resampling(svd.right[r], c.basis, 0);
      EXPECT_NEAR(lhs, influence_by_resampling(c.F, c.basis, c.F.n - 1), kTol);
    }
  }
}
