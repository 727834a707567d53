#include "xorrep/embed.hpp"

#include <algorithm>
#include <memory>
#include <set>

#include "xorrep/additive.hpp"

namespace xorrep {

Triple normalization_anchor(const TripartiteDistribution& dist) {
  if (dist.support.empty()) throw InputError("empty support has no normalization anchor");
  // Support is sorted, so the first atom has the smallest x (symbol 0 when
  // every symbol is used).
  return dist.support.front().q;
}

bool Embedding::is_zero() const {
  auto z = [](const std::vector<std::int64_t>& v) {
    return std::all_of(v.begin(), v.end(), [](std::int64_t a) { return a == 0; });
  };
  return z(alpha) && z(beta) && z(gamma);
}

bool Embedding::is_constant() const {
  auto c = [](const std::vector<std::int64_t>& v) {
    return std::all_of(v.begin(), v.end(), [&](std::int64_t a) { return a == v.front(); });
  };
  return c(alpha) && c(beta) && c(gamma);
}

bool is_embedding(const TripartiteDistribution& dist, const Embedding& e) {
  if (e.alpha.size() != dist.sigma.size() || e.beta.size() != dist.gamma.size() ||
      e.gamma.size() != dist.phi.size())
    return false;
  for (const auto& at : dist.support) {
    const __int128 s = static_cast<__int128>(e.alpha[at.q.x]) + e.beta[at.q.y] + e.gamma[at.q.z];
    if (e.modulus == 0 ? s != 0 : s % e.modulus != 0) return false;
  }
  return true;
}

bool is_normalized(const TripartiteDistribution& dist, const Embedding& e) {
  const Triple a = normalization_anchor(dist);
  return e.alpha.at(a.x) == 0 && e.beta.at(a.y) == 0 && e.gamma.at(a.z) == 0;
}

std::string describe_embedding(const TripartiteDistribution& dist, const Embedding& e) {
  std::string s = e.modulus == 0 ? "Z" : "Z" + std::to_string(e.modulus);
  auto part = [&](const char* name, const Alphabet& al, const std::vector<std::int64_t>& v) {
    s += std::string(" ") + name + "{";
    for (std::size_t i = 0; i < v.size(); ++i)
      s += (i ? "," : "") + al.label(i) + ":" + std::to_string(v[i]);
    s += "}";
  };
  part("alpha", dist.sigma, e.alpha);
  part("beta", dist.gamma, e.beta);
  part("gamma", dist.phi, e.gamma);
  return s;
}

IntegerMatrix embedding_constraint_matrix(const TripartiteDistribution& dist) {
  const std::size_t ns = dist.sigma.size(), ng = dist.gamma.size(), nf = dist.phi.size();
  IntegerMatrix m(dist.support.size(), ns + ng + nf);
  for (std::size_t r = 0; r < dist.support.size(); ++r) {
    const Triple& q = dist.support[r].q;
    m(r, q.x) += 1;
    m(r, ns + q.y) += 1;
    m(r, ns + ng + q.z) += 1;
  }
  return m;
}

namespace {

IntegerMatrix normalized_constraint_matrix(const TripartiteDistribution& dist) {
  const std::size_t ns = dist.sigma.size(), ng = dist.gamma.size();
  IntegerMatrix base = embedding_constraint_matrix(dist);
  IntegerMatrix m(base.rows() + 3, base.cols());
  for (std::size_t r = 0; r < base.rows(); ++r)
    for (std::size_t c = 0; c < base.cols(); ++c) m(r, c) = base(r, c);
  const Triple a = normalization_anchor(dist);
  m(base.rows(), a.x) = 1;
  m(base.rows() + 1, ns + a.y) = 1;
  m(base.rows() + 2, ns + ng + a.z) = 1;
  return m;
}

Embedding split_solution(const TripartiteDistribution& dist, std::int64_t q,
                         const std::vector<std::int64_t>& v) {
  const std::size_t ns = dist.sigma.size(), ng = dist.gamma.size();
  Embedding e;
  e.modulus = q;
  e.alpha.assign(v.begin(), v.begin() + ns);
  e.beta.assign(v.begin() + ns, v.begin() + ns + ng);
  e.gamma.assign(v.begin() + ns + ng, v.end());
  return e;
}

std::vector<Embedding> embeddings_from(const TripartiteDistribution& dist, const LinearSystem& sys,
                                       std::int64_t q, std::uint64_t limit) {
  std::vector<Embedding> out;
  for (const auto& v : sys.solve_homogeneous_mod(q).solutions(limit))
    out.push_back(split_solution(dist, q, v));
  std::sort(out.begin(), out.end());
  for (const auto& e : out)
    if (!is_embedding(dist, e)) throw PreconditionError("solver returned a non-embedding");
  return out;
}

}  // namespace

std::vector<Embedding> enumerate_embeddings(const TripartiteDistribution& dist, std::int64_t q,
                                            std::uint64_t limit) {
  if (q < 1) throw InputError("embedding modulus must be positive");
  LinearSystem sys(normalized_constraint_matrix(dist), false);
  return embeddings_from(dist, sys, q, limit);
}

ZEmbeddingVerdict has_nontrivial_z_embedding(const TripartiteDistribution& dist) {
  ZEmbeddingVerdict v;
  v.kernel_rank = integer_kernel(embedding_constraint_matrix(dist)).size();
  std::vector<IntVector> normalized = integer_kernel(normalized_constraint_matrix(dist));
  v.nontrivial = !normalized.empty();
  if (v.nontrivial) {
    std::vector<std::int64_t> w;
    for (const auto& c : normalized.front()) w.push_back(to_int64(c));
    v.witness = split_solution(dist, 0, w);
  }
  return v;
}

SymbolPartition MasterEmbedding::partition(Axis a) const {
  const auto& tuples = map(a);
  std::map<GroupElement, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < tuples.size(); ++i) classes[tuples[i]].push_back(i);
  SymbolPartition p{a, {}};
  for (auto& [k, c] : classes) p.classes.push_back(std::move(c));
  std::sort(p.classes.begin(), p.classes.end());
  return p;
}

GroupElement MasterEmbedding::coordinates(Axis a, std::size_t symbol) const {
  return master.canonical_coordinates(map(a).at(symbol));
}

std::vector<GroupElement> MasterEmbedding::image(Axis a) const {
  std::set<GroupElement> s(map(a).begin(), map(a).end());
  return {s.begin(), s.end()};
}

std::int64_t default_order_bound(const TripartiteDistribution& dist) {
  const std::int64_t prod = static_cast<std::int64_t>(dist.sigma.size() * dist.gamma.size() *
                                                      dist.phi.size());
  return 2 * prod * prod;
}

SymbolPartition partition_by_embeddings(const std::vector<Embedding>& embeddings, Axis a,
                                        std::size_t alphabet_size) {
  std::map<std::vector<std::int64_t>, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < alphabet_size; ++i) {
    std::vector<std::int64_t> key;
    for (const auto& e : embeddings) key.push_back(e.map(a).at(i));
    classes[key].push_back(i);
  }
  SymbolPartition p{a, {}};
  for (auto& [k, c] : classes) p.classes.push_back(std::move(c));
  std::sort(p.classes.begin(), p.classes.end());
  return p;
}

MasterEmbedding master_embedding(const TripartiteDistribution& dist, std::int64_t r,
                                 std::uint64_t element_budget) {
  constexpr std::size_t kComponentCap = 512;
  MasterEmbedding me;
  me.r = r > 0 ? r : default_order_bound(dist);
  if (has_nontrivial_z_embedding(dist).nontrivial)
    me.warnings.push_back("distribution has a nontrivial Z-embedding; the master group need not "
                          "capture all embeddings");
  LinearSystem sys(normalized_constraint_matrix(dist), false);
  for (std::int64_t q : prime_powers_up_to(me.r)) {
    for (auto& e : embeddings_from(dist, sys, q, 1000000)) {
      if (e.is_zero()) continue;
      if (me.embeddings.size() == kComponentCap) {
        me.truncated = true;
        break;
      }
      me.moduli.push_back(q);
      me.embeddings.push_back(std::move(e));
    }
    if (me.truncated) break;
  }
  if (me.truncated)
    me.warnings.push_back("embedding list truncated at " + std::to_string(kComponentCap) +
                          " components");
  me.product = FiniteAbelianGroup(me.moduli);
  auto tuples = [&](Axis a, std::size_t n) {
    std::vector<GroupElement> out(n);
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& e : me.embeddings) out[i].push_back(e.map(a)[i]);
    return out;
  };
  me.alpha = tuples(Axis::X, dist.sigma.size());
  me.beta = tuples(Axis::Y, dist.gamma.size());
  me.gamma = tuples(Axis::Z, dist.phi.size());
  std::vector<GroupElement> gens = me.image(Axis::X);
  try {
    me.master = subgroup_generated(me.product, gens, element_budget);
  } catch (const CapacityError&) {
    me.master.ambient = me.product;
    me.master.generators = gens;
    me.master.invariant_factors = subgroup_structure(me.product, gens);
    me.master.order = 1;
    for (auto& d : me.master.invariant_factors) me.master.order *= d;
    me.warnings.push_back("master group of order " + me.master.order.get_str() +
                          " not enumerated (element budget)");
  }
  return me;
}

void validate_target_embedding(const TargetEmbedding& te) {
  std::int64_t pp = 0;
  int kk = 0;
  if (!is_prime_power(checked_pow(te.p, te.k), &pp, &kk) || pp != te.p)
    throw PreconditionError("target embedding: p^k is not a prime power of p");
  if (te.N != checked_pow(te.p, te.j))
    throw PreconditionError("target embedding: N is not p^j");
  const std::int64_t pk = checked_pow(te.p, te.k);
  if (te.modulus != pk * te.N) throw PreconditionError("target embedding: modulus is not p^k N");
  for (const auto* v : {&te.a, &te.b, &te.c})
    for (auto x : *v)
      if (x < 0 || x >= te.modulus) throw PreconditionError("target embedding: value out of range");
  for (const auto& [q, t] : te.target) {
    const __int128 lhs = static_cast<__int128>(te.a.at(q.x)) + te.b.at(q.y) + te.c.at(q.z);
    const __int128 rhs = static_cast<__int128>(te.N) * t;
    if ((lhs - rhs) % te.modulus != 0)
      throw PreconditionError("target embedding: congruence fails on triple (" +
                              std::to_string(q.x) + "," + std::to_string(q.y) + "," +
                              std::to_string(q.z) + ")");
  }
}

bool is_bounded_by_N(const TargetEmbedding& te) {
  for (const auto* v : {&te.a, &te.b, &te.c})
    for (auto x : *v)
      if (x < 0 || x >= te.N) return false;
  return true;
}

namespace {

struct TargetSystem {
  std::int64_t p = 0;
  int k = 0;
  std::unique_ptr<LinearSystem> sys;
};

TargetSystem target_system(const XorGame& game) {
  validate(game);
  TargetSystem ts;
  if (!is_prime_power(game.modulus, &ts.p, &ts.k))
    throw InputError("modulus " + std::to_string(game.modulus) +
                     " is not a prime power; decompose by CRT first");
  const auto& d = game.dist;
  const std::size_t ns = d.sigma.size();
  IntegerMatrix base = embedding_constraint_matrix(d);
  IntegerMatrix m(base.rows() + 2, base.cols());
  for (std::size_t r = 0; r < base.rows(); ++r)
    for (std::size_t c = 0; c < base.cols(); ++c) m(r, c) = base(r, c);
  const Triple a = normalization_anchor(d);
  m(base.rows(), a.x) = 1;
  m(base.rows() + 1, ns + a.y) = 1;
  ts.sys = std::make_unique<LinearSystem>(std::move(m), true);
  return ts;
}

IntVector target_rhs(const XorGame& game, std::int64_t N) {
  IntVector b;
  for (const auto& at : game.dist.support) b.emplace_back(static_cast<long>(N * game.t(at.q)));
  b.emplace_back(0);
  b.emplace_back(0);
  return b;
}

}  // namespace

bool target_embedding_exists(const XorGame& game, int j) {
  TargetSystem ts = target_system(game);
  const std::int64_t N = checked_pow(ts.p, j);
  return ts.sys->solve_mod(target_rhs(game, N), checked_pow(ts.p, ts.k) * N).consistent();
}

std::optional<TargetEmbedding> minimal_N(const XorGame& game, int j_max) {
  TargetSystem ts = target_system(game);
  const std::int64_t pk = checked_pow(ts.p, ts.k);
  const auto& d = game.dist;
  const std::size_t ns = d.sigma.size(), ng = d.gamma.size();
  for (int j = 0; j <= j_max; ++j) {
    const std::int64_t N = checked_pow(ts.p, j);
    const std::int64_t q = pk * N;
    ModularSolutionSet sols = ts.sys->solve_mod(target_rhs(game, N), q);
    if (!sols.consistent()) continue;
    std::vector<std::int64_t> v;
    try {
      v = sols.first();
    } catch (const CapacityError&) {
      v = sols.particular();
    }
    TargetEmbedding te;
    te.p = ts.p;
    te.k = ts.k;
    te.j = j;
    te.N = N;
    te.modulus = q;
    std::vector<std::int64_t> raw_a(v.begin(), v.begin() + ns);
    std::vector<std::int64_t> raw_b(v.begin() + ns, v.begin() + ns + ng);
    std::vector<std::int64_t> raw_c(v.begin() + ns + ng, v.end());
    auto reduce = [&](const std::vector<std::int64_t>& raw, std::vector<std::int64_t>& out,
                      std::vector<std::int64_t>& shift) {
      for (auto x : raw) {
        const std::int64_t r = x % N;
        out.push_back(r);
        shift.push_back(mod_floor((r - x) / N, pk));
      }
    };
    reduce(raw_a, te.a, te.shift_a);
    reduce(raw_b, te.b, te.shift_b);
    reduce(raw_c, te.c, te.shift_c);
    for (const auto& at : d.support) {
      const std::int64_t s = te.a[at.q.x] + te.b[at.q.y] + te.c[at.q.z];
      te.target[at.q] = mod_floor(s / N, pk);
    }
    validate_target_embedding(te);
    return te;
  }
  return std::nullopt;
}

SymbolCoordinates coordinates_from_master(const MasterEmbedding& me) {
  SymbolCoordinates sc;
  bool inside = !me.master.elements.empty();
  for (const auto* tuples : {&me.alpha, &me.beta, &me.gamma})
    for (const auto& t : *tuples) inside = inside && me.master.contains(t);
  if (!inside) {
    sc.group = me.product;
    sc.x = me.alpha;
    sc.y = me.beta;
    sc.z = me.gamma;
    return sc;
  }
  // Primary decomposition of the canonical group: Z_d -> prod Z_{p^e}.
  std::vector<std::int64_t> factors;
  std::vector<std::pair<std::size_t, std::int64_t>> split;
  const auto canonical = me.master.canonical_group().factors();
  for (std::size_t i = 0; i < canonical.size(); ++i) {
    for (auto [p, e] : factorize(canonical[i])) {
      factors.push_back(checked_pow(p, e));
      split.emplace_back(i, factors.back());
    }
  }
  sc.group = FiniteAbelianGroup(factors);
  auto convert = [&](const std::vector<GroupElement>& tuples) {
    std::vector<GroupElement> out;
    for (const auto& t : tuples) {
      GroupElement c = me.master.canonical_coordinates(t), e;
      for (auto [i, q] : split) e.push_back(c[i] % q);
      out.push_back(std::move(e));
    }
    return out;
  };
  sc.x = convert(me.alpha);
  sc.y = convert(me.beta);
  sc.z = convert(me.gamma);
  return sc;
}

TargetEmbedding reduce_embedding_N(const TargetEmbedding& te, std::int64_t p,
                                   const SymbolCoordinates& coords) {
  validate_target_embedding(te);
  if (p != te.p) throw InputError("prime does not match the target embedding");
  if (te.j == 0) throw PreconditionError("not reducible: N = 1 already");
  if (coords.x.size() != te.a.size() || coords.y.size() != te.b.size() ||
      coords.z.size() != te.c.size())
    throw InputError("symbol coordinates do not match the embedding alphabets");
  const FiniteAbelianGroup& G = coords.group;
  for (const auto& [q, t] : te.target) {
    GroupElement s = G.add(G.add(coords.x[q.x], coords.y[q.y]), coords.z[q.z]);
    if (s != G.zero())
      throw InputError("symbol coordinates do not sum to zero on the support");
  }

  auto points = [&](const std::vector<GroupElement>& xs, const std::vector<std::int64_t>& vals) {
    std::vector<std::pair<GroupElement, std::int64_t>> pts;
    for (std::size_t i = 0; i < xs.size(); ++i) pts.emplace_back(xs[i], mod_floor(vals[i], p));
    return pts;
  };
  const auto pa = points(coords.x, te.a), pb = points(coords.y, te.b), pc = points(coords.z, te.c);
  if (!affine_form_extract(G, pa, p) || !affine_form_extract(G, pb, p) ||
      !affine_form_extract(G, pc, p))
    throw PreconditionError("not reducible: a mod-p part is not an affine form");

  const std::vector<bool> vanish = vanishing_coefficients(G, p, te.k, te.j);
  if (!affine_form_extract(G, pa, p, vanish) || !affine_form_extract(G, pb, p, vanish) ||
      !affine_form_extract(G, pc, p, vanish))
    throw PreconditionError(
        "not reducible: vanishing-coefficient condition fails (a coefficient on a component of "
        "order below p^(k+j) or coprime to p is forced nonzero)");

  // Joint solve: unknowns (c, d, e, c_1..c_L) with shared linear part.
  const std::size_t L = G.arity();
  const std::size_t rows = pa.size() + pb.size() + pc.size() + 1;
  std::size_t forced = 0;
  for (bool b : vanish) forced += b;
  IntegerMatrix m(rows + forced, 3 + L);
  IntVector rhs(rows + forced, Int(0));
  std::size_t r = 0;
  for (int which = 0; which < 3; ++which) {
    const auto& pts = which == 0 ? pa : which == 1 ? pb : pc;
    for (const auto& [x, v] : pts) {
      m(r, which) = 1;
      for (std::size_t i = 0; i < L; ++i) m(r, 3 + i) = static_cast<long>(x[i]);
      rhs[r] = static_cast<long>(v);
      ++r;
    }
  }
  m(r, 0) = 1, m(r, 1) = 1, m(r, 2) = 1;
  ++r;
  for (std::size_t i = 0; i < L; ++i)
    if (vanish[i]) m(r++, 3 + i) = 1;
  ModularSolutionSet joint = solve_mod_q(m, rhs, p);
  if (!joint.consistent())
    throw PreconditionError(
        "not reducible: matching-coefficient condition fails (constants must sum to 0 mod p and "
        "linear parts must agree)");
  std::vector<std::int64_t> sol;
  try {
    sol = joint.first();
  } catch (const CapacityError&) {
    sol = joint.particular();
  }
  const std::int64_t cc = sol[0], dd = sol[1], ee = -(sol[0] + sol[1]);
  const std::vector<std::int64_t> lin(sol.begin() + 3, sol.end());

  TargetEmbedding out = te;
  out.j = te.j - 1;
  out.N = te.N / p;
  out.modulus = te.modulus / p;
  auto shrink = [&](const std::vector<std::int64_t>& vals, const std::vector<GroupElement>& xs,
                    std::int64_t constant, std::vector<std::int64_t>& dst) {
    dst.clear();
    for (std::size_t i = 0; i < vals.size(); ++i) {
      __int128 v = static_cast<__int128>(vals[i]) - constant;
      for (std::size_t l = 0; l < L; ++l) v -= static_cast<__int128>(lin[l]) * xs[i][l];
      if (v % p != 0) throw PreconditionError("not reducible: shifted value is not divisible by p");
      dst.push_back(mod_floor(static_cast<std::int64_t>((v / p) % out.modulus), out.modulus));
    }
  };
  shrink(te.a, coords.x, cc, out.a);
  shrink(te.b, coords.y, dd, out.b);
  shrink(te.c, coords.z, ee, out.c);
  try {
    validate_target_embedding(out);
  } catch (const PreconditionError& e) {
    throw PreconditionError(std::string("not reducible: reduced maps fail the congruence (") +
                            e.what() + ")");
  }
  return out;
}

}  // namespace xorrep
