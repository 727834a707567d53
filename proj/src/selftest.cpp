#include "xorrep/selftest.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "xorrep/abelian.hpp"
#include "xorrep/additive.hpp"
#include "xorrep/analytic.hpp"
#include "xorrep/cheby.hpp"
#include "xorrep/embed.hpp"
#include "xorrep/game.hpp"
#include "xorrep/transform.hpp"

namespace xorrep {

namespace {

struct Runner {
  std::ostream& out;
  int failures = 0;

  void check(const std::string& scope, const std::string& name,
             const std::function<std::string()>& body) {
    std::string detail;
    try {
      detail = body();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (detail.empty()) {
      out << "PASS " << scope << ": " << name << "\n";
    } else {
      ++failures;
      out << "FAIL " << scope << ": " << name << ": " << detail << "\n";
    }
  }
};

std::string expect(bool ok, const std::string& what) { return ok ? "" : what; }

ComplexTable random_table(std::size_t M, int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexTable t(M, n);
  for (auto& v : t.values) v = {u(rng), u(rng)};
  return t;
}

double max_diff(const ComplexTable& a, const ComplexTable& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void abelian_checks(Runner& r) {
  r.check("abelian", "smith normal form", [] {
    IntegerMatrix m{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
    const SmithForm s = smith_normal_form(m);
    if (s.U * m * s.V != s.S) return std::string("U M V differs from S");
    if (s.S(0, 0) != 2 || s.S(1, 1) != 6 || s.S(2, 2) != 12)
      return "diagonal " + s.S.to_string();
    return std::string();
  });
  r.check("abelian", "subgroup generation", [] {
    const FiniteAbelianGroup g({4, 2});
    const Subgroup s = subgroup_generated(g, {{1, 1}});
    return expect(s.order == 4 && s.describe() == "Z4", "got " + s.describe());
  });
}

void game_checks(Runner& r) {
  r.check("game", "GHZ value 3/4", [] {
    const auto v = value_exact(ghz(), 1);
    return expect(v.value == Rational(3, 4), "value " + rational_to_string(v.value));
  });
  r.check("game", "arithmetization identity", [] {
    std::mt19937_64 rng(7);
    const XorGame g = ghz();
    for (int trial = 0; trial < 20; ++trial) {
      Strategy s = Strategy::zero(g, 2);
      for (auto* tab : {&s.f, &s.g, &s.h})
        for (auto& row : *tab)
          for (auto& v : row) v = static_cast<std::int64_t>(rng() % 2);
      const cplx a = arithmetize_win_probability(g, s);
      const double w = win_probability(g, s).get_d();
      if (std::abs(a - w) > kTolerance) return "mismatch at trial " + std::to_string(trial);
    }
    return std::string();
  });
}

void embed_checks(Runner& r) {
  const XorGame g = ghz();
  r.check("embed", "GHZ pairwise connected", [&] {
    return expect(is_pairwise_connected(g.dist).connected, "not connected");
  });
  r.check("embed", "GHZ has no Z-embedding", [&] {
    return expect(!has_nontrivial_z_embedding(g.dist).nontrivial, "Z-embedding found");
  });
  r.check("embed", "GHZ minimal N = 2", [&] {
    const auto te = minimal_N(g);
    if (!te) return std::string("no target embedding");
    return expect(te->N == 2 && te->a == std::vector<std::int64_t>{0, 1} && te->b == te->a &&
                      te->c == te->a,
                  "N = " + std::to_string(te->N));
  });
  r.check("embed", "GHZ master group Z2", [&] {
    const auto me = master_embedding(g.dist);
    return expect(me.master.describe() == "Z2", "got " + me.master.describe());
  });
}

void analytic_checks(Runner& r) {
  r.check("analytic", "AND game spectral norm", [] {
    TwoPlayerInstance inst;
    inst.mu = {{0.25, 0.25}, {0.25, 0.25}};
    inst.T = {{1.0, 1.0}, {1.0, -1.0}};
    const double s = two_player_spectral_norm(inst);
    return expect(std::fabs(s - 1 / std::sqrt(2.0)) < 1e-10, "sigma " + std::to_string(s));
  });
  r.check("analytic", "Parseval and noise routes", [] {
    std::mt19937_64 rng(11);
    const std::vector<double> mu{0.1, 0.2, 0.3, 0.4};
    const auto basis = build_decomposition_basis(mu, {true, true, false, true},
                                                 BasisMode::Effective);
    const ComplexTable F = random_table(4, 3, rng);
    const auto D = decompose(F, basis);
    double parts = 0;
    for (const auto& p : D.parts) parts += l2_norm_squared(p, mu);
    if (std::fabs(parts - l2_norm_squared(F, mu)) > kTolerance) return std::string("Parseval");
    const double gap = max_diff(apply_noise(F, basis, 0.3), apply_noise_direct(F, basis, 0.3));
    return expect(gap < kTolerance, "noise routes differ by " + std::to_string(gap));
  });
  r.check("analytic", "SVD reconstruction", [] {
    std::mt19937_64 rng(13);
    const std::vector<double> mu{0.5, 0.25, 0.25};
    const ComplexTable F = random_table(3, 3, rng);
    const auto svd = svd_decompose(F, mu);
    const double gap = max_diff(svd_reconstruct(svd, 3), F);
    return expect(gap < kTolerance, "reconstruction error " + std::to_string(gap));
  });
}

void transform_checks(Runner& r) {
  const XorGame g = ghz();
  r.check("transform", "path trick fills (y,z)", [&] {
    const auto ptr = path_trick(g, Axis::X, 2);
    return expect(pair_support_full(ptr.dist, Axis::Y, Axis::Z), "support not full");
  });
  r.check("transform", "diagonal target consistency", [&] {
    const auto ptr = path_trick(g, Axis::X, 2);
    for (const auto& a : g.dist.support) {
      const Triple q{ptr.diagonal[a.q.x], a.q.y, a.q.z};
      if (ptr.payload.target->at(q) != g.t(a.q)) return std::string("diagonal target differs");
    }
    return std::string();
  });
  r.check("transform", "GHZ saturated in zero rounds", [&] {
    const auto sat = saturate(g.dist);
    return expect(sat.rounds == 0 && is_saturated(sat.dist, sat.master),
                  std::to_string(sat.rounds) + " rounds");
  });
  r.check("transform", "GHZ projection", [&] {
    const auto sat = saturate(g.dist);
    const auto proj = project_to_master(sat.dist, sat.master);
    for (const auto& a : proj.dist.support)
      if ((proj.elements[a.q.x][0] + static_cast<std::int64_t>(a.q.y + a.q.z)) % 2 != 0)
        return std::string("atom off x+y+z=0");
    return expect(proj.dist.support.size() == 4, "support size");
  });
}

void cheby_checks(Runner& r, bool corrupt) {
  const char* names[] = {"polyapprox item 1", "polyapprox item 2", "polyapprox monotone",
                         "polyapprox weight sum", "polyapprox sign alternation"};
  std::string failed[5];
  for (int d = 1; d <= 30; ++d)
    for (real eps : {0.25L, 0.0625L, 0.015625L}) {
      auto nm = noise_mix_coefficients(d, eps);
      if (corrupt && d == 5) nm.c[0] *= 1.001L;
      const auto a = audit_noise_mix(nm);
      const bool ok[5] = {a.item1, a.item2_range, a.monotone, a.abs_sum_identity,
                          a.signs_alternate};
      for (int i = 0; i < 5; ++i)
        if (!ok[i] && failed[i].empty()) {
          std::ostringstream s;
          s << "d=" << d << " eps=" << static_cast<double>(eps);
          failed[i] = s.str();
        }
    }
  for (int i = 0; i < 5; ++i) r.check("cheby", names[i], [&] { return failed[i]; });
  r.check("cheby", "Schur identity", [] {
    const std::vector<real> nodes{0.9L, 0.5L, 0.2L, -0.3L};
    for (int k = 3; k <= 9; ++k) {
      const auto s = schur_check(nodes, k);
      if (s.diff > 1e-12L) return "k=" + std::to_string(k);
    }
    return std::string();
  });
}

void additive_checks(Runner& r) {
  r.check("additive", "Z5 quadratic is not Freiman", [] {
    FunctionOnGroupBox f{FiniteAbelianGroup({5}), {}, {}, 5};
    for (std::int64_t x = 0; x < 5; ++x) {
      f.domain.push_back({x});
      f.values.push_back(x * x % 5);
    }
    return expect(!freiman_check(f, 2).holds, "check passed");
  });
  r.check("additive", "x1 x2 is not affine", [] {
    const FiniteAbelianGroup g({2, 2});
    std::vector<std::int64_t> v;
    for (const auto& e : all_elements(g)) v.push_back(e[0] * e[1]);
    return expect(!affine_form_extract(g, v, 2), "affine form found");
  });
}

}  // namespace

const std::set<std::string>& selftest_scopes() {
  static const std::set<std::string> s{"abelian", "game",  "embed",   "analytic",
                                       "transform", "cheby", "additive"};
  return s;
}

int run_selftest(const SelftestOptions& opts, std::ostream& out) {
  for (const auto& s : opts.scopes)
    if (!selftest_scopes().count(s)) throw InputError("unknown selftest scope \"" + s + "\"");
  auto want = [&](const char* s) { return opts.scopes.empty() || opts.scopes.count(s); };
  Runner r{out};
  if (want("abelian")) abelian_checks(r);
  if (want("game")) game_checks(r);
  if (want("embed")) embed_checks(r);
  if (want("analytic")) analytic_checks(r);
  if (want("transform")) transform_checks(r);
  if (want("cheby")) cheby_checks(r, opts.corrupt_cheby_weight);
  if (want("additive")) additive_checks(r);
  out << (r.failures ? "FAILED " : "OK ") << r.failures << " failure(s)\n";
  return r.failures;
}

}  // namespace xorrep
