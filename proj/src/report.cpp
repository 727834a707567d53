#include "xorrep/report.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

#include "xorrep/analytic.hpp"
#include "xorrep/embed.hpp"

namespace xorrep {

namespace {

using nlohmann::ordered_json;

std::vector<std::string> labels(const Alphabet& a, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(a.label(i));
  return out;
}

ordered_json connectivity_json(const TripartiteDistribution& d) {
  const Connectivity c = is_pairwise_connected(d);
  ordered_json j;
  j["connected"] = c.connected;
  ordered_json pairs = ordered_json::array();
  for (const auto& pg : c.pairs) {
    ordered_json p;
    p["axes"] = std::string(axis_name(pg.left)) + "," + axis_name(pg.right);
    p["connected"] = pg.connected();
    ordered_json comps = ordered_json::array();
    for (const auto& comp : pg.components) {
      ordered_json cj;
      cj["left"] = labels(d.alphabet(pg.left), comp.left);
      cj["right"] = labels(d.alphabet(pg.right), comp.right);
      comps.push_back(std::move(cj));
    }
    p["components"] = std::move(comps);
    pairs.push_back(std::move(p));
  }
  j["pairs"] = std::move(pairs);
  return j;
}

ordered_json embedding_json(const Embedding& e) {
  ordered_json j;
  j["modulus"] = e.modulus;
  j["alpha"] = e.alpha;
  j["beta"] = e.beta;
  j["gamma"] = e.gamma;
  return j;
}

std::optional<ValueReport> one_shot_witness(const XorGame& game, std::uint64_t budget,
                                            std::uint64_t seed, std::uint64_t iterations) {
  try {
    return value_exact(game, 1, budget);
  } catch (const CapacityError&) {
  }
  try {
    return value_search(game, 1, seed, iterations, std::nullopt, budget);
  } catch (const CapacityError&) {
  }
  return std::nullopt;
}

std::optional<ValueReport> seeded_search(const XorGame& game, int n, std::uint64_t seed,
                                         std::uint64_t iterations, std::uint64_t budget,
                                         const std::optional<ValueReport>& one_shot) {
  try {
    std::optional<Strategy> init;
    if (one_shot && one_shot->witness) init = tensor_power(*one_shot->witness, game, n);
    return value_search(game, n, seed, iterations, init, budget);
  } catch (const CapacityError&) {
    return std::nullopt;
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double spectral_reference_base(const XorGame& game) {
  validate(game);
  const auto& d = game.dist;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> cols;
  for (const auto& a : d.support) cols.emplace(std::make_pair(a.q.y, a.q.z), 0);
  std::size_t k = 0;
  for (auto& [yz, idx] : cols) idx = k++;
  double total = 1.0;
  for (std::int64_t s = 1; s < game.modulus; ++s) {
    TwoPlayerInstance inst;
    inst.mu.assign(d.sigma.size(), std::vector<double>(cols.size(), 0.0));
    inst.T.assign(d.sigma.size(), std::vector<cplx>(cols.size(), 1.0));
    for (const auto& a : d.support) {
      const std::size_t c = cols.at({a.q.y, a.q.z});
      inst.mu[a.q.x][c] = a.p.get_d();
      const double angle = -2 * std::numbers::pi *
                           static_cast<double>(mod_floor(s * game.t(a.q), game.modulus)) /
                           static_cast<double>(game.modulus);
      inst.T[a.q.x][c] = {std::cos(angle), std::sin(angle)};
    }
    total += two_player_spectral_norm(inst);
  }
  return total / static_cast<double>(game.modulus);
}

ordered_json analyze(const XorGame& game, const AnalyzeOptions& opts) {
  validate(game);
  const auto& d = game.dist;
  ordered_json rep;
  ordered_json g;
  g["alphabet_sizes"] = {d.sigma.size(), d.gamma.size(), d.phi.size()};
  g["modulus"] = game.modulus;
  g["support_size"] = d.support.size();
  rep["game"] = std::move(g);
  rep["connectivity"] = connectivity_json(d);

  const ZEmbeddingVerdict zv = has_nontrivial_z_embedding(d);
  ordered_json zj;
  zj["nontrivial"] = zv.nontrivial;
  zj["kernel_rank"] = zv.kernel_rank;
  zj["witness"] = zv.witness ? embedding_json(*zv.witness) : ordered_json(nullptr);
  rep["z_embedding"] = std::move(zj);

  ordered_json emb = ordered_json::array();
  for (std::int64_t q = 2; q <= 5; ++q) {
    ordered_json e;
    e["q"] = q;
    try {
      const auto list = enumerate_embeddings(d, q, 100000);
      std::size_t nontrivial = 0;
      for (const auto& x : list) nontrivial += !x.is_zero();
      e["normalized"] = list.size();
      e["nonzero"] = nontrivial;
    } catch (const CapacityError& err) {
      e["status"] = "skipped";
      e["reason"] = err.what();
    }
    emb.push_back(std::move(e));
  }
  rep["embeddings"] = std::move(emb);

  ordered_json mj;
  try {
    const MasterEmbedding me = master_embedding(d, opts.r);
    mj["r"] = me.r;
    mj["components"] = me.embeddings.size();
    mj["group"] = me.master.describe();
    mj["order"] = me.master.order.get_str();
    mj["warnings"] = me.warnings;
  } catch (const CapacityError& err) {
    mj["status"] = "skipped";
    mj["reason"] = err.what();
  }
  rep["master"] = std::move(mj);

  ordered_json mn = ordered_json::array();
  bool all_found = true;
  for (const XorGame& comp : crt_decompose(game)) {
    ordered_json c;
    c["modulus"] = comp.modulus;
    const auto te = minimal_N(comp, opts.j_max);
    if (te) {
      c["status"] = "found";
      c["p"] = te->p;
      c["k"] = te->k;
      c["j"] = te->j;
      c["N"] = te->N;
      c["embedding_modulus"] = te->modulus;
      c["a"] = te->a;
      c["b"] = te->b;
      c["c"] = te->c;
    } else {
      all_found = false;
      c["status"] = "absent";
      c["j_max"] = opts.j_max;
    }
    mn.push_back(std::move(c));
  }
  rep["minimal_N"] = std::move(mn);
  rep["classification"] =
      all_found ? "embeddable over D" : "nonembeddable over D (within bound)";

  std::optional<ValueReport> one_shot;
  ordered_json values = ordered_json::array();
  for (int n : opts.n_list) {
    ordered_json v;
    v["n"] = n;
    try {
      const ValueReport r = value_exact(game, n, opts.budget);
      v["mode"] = "exact";
      v["value"] = rational_to_string(r.value);
      v["approx"] = std::stod(format_double(r.approx));
      if (n == 1) one_shot = r;
    } catch (const CapacityError& err) {
      v["exact"] = "skipped";
      v["reason"] = err.what();
      if (!one_shot) one_shot = one_shot_witness(game, opts.budget, opts.seed, opts.iterations);
      const auto s = seeded_search(game, n, opts.seed, opts.iterations, opts.budget, one_shot);
      if (s) {
        v["mode"] = "search";
        v["value"] = rational_to_string(s->value);
        v["approx"] = std::stod(format_double(s->approx));
      } else {
        v["mode"] = "skipped";
      }
    }
    values.push_back(std::move(v));
  }
  rep["values"] = std::move(values);
  return rep;
}

std::string decay_csv(const XorGame& game, const DecayOptions& opts) {
  validate(game);
  if (opts.n_max < 1) throw InputError("n_max must be positive");
  std::ostringstream out;
  out << "n,exact_value,search_value,spectral_reference\n";
  const double base = spectral_reference_base(game);
  const bool want_exact = opts.mode != DecayMode::Search;
  const bool want_search = opts.mode != DecayMode::Exact;
  std::optional<ValueReport> one_shot;
  if (want_search) one_shot = one_shot_witness(game, opts.budget, opts.seed, opts.iterations);
  bool exact_feasible = true;
  for (int n = 1; n <= opts.n_max; ++n) {
    out << n << ",";
    if (want_exact && exact_feasible) {
      try {
        out << rational_to_string(value_exact(game, n, opts.budget).value);
      } catch (const CapacityError&) {
        exact_feasible = false;
      }
    }
    out << ",";
    if (want_search) {
      const auto s = seeded_search(game, n, opts.seed, opts.iterations, opts.budget, one_shot);
      if (s) out << format_double(s->approx);
    }
    out << "," << format_double(std::pow(base, n)) << "\n";
  }
  return out.str();
}

}  // namespace xorrep
