#include "xorrep/transform.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "xorrep/errors.hpp"

namespace xorrep {

namespace {

Triple make_triple(Axis a, std::size_t va, std::size_t vb, std::size_t vc) {
  const auto [b, c] = other_axes(a);
  std::size_t v[3] = {0, 0, 0};
  v[static_cast<int>(a)] = va;
  v[static_cast<int>(b)] = vb;
  v[static_cast<int>(c)] = vc;
  return Triple{v[0], v[1], v[2]};
}

std::string sequence_label(const Alphabet& alpha, const std::vector<std::size_t>& seq) {
  std::string s = "(";
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) s += ",";
    s += alpha.label(seq[i]);
  }
  return s + ")";
}

TripartiteDistribution with_alphabet(const TripartiteDistribution& d, Axis a, Alphabet fresh,
                                     std::vector<Atom> atoms) {
  Alphabet al[3] = {d.sigma, d.gamma, d.phi};
  al[static_cast<int>(a)] = std::move(fresh);
  return TripartiteDistribution(al[0], al[1], al[2], std::move(atoms));
}

void check_payload(const TripartiteDistribution& dist, const Payload& p) {
  if (p.target) {
    if (p.modulus < 2) throw InputError("target payload needs a modulus of at least 2");
    for (const auto& atom : dist.support)
      if (!p.target->count(atom.q)) throw InputError("target missing on a support triple");
  }
  if (p.tensor && p.tensor->size() != dist.support.size())
    throw InputError("tensor payload does not match the support");
}

struct WalkValue {
  Rational prob;
  cplx tensor = 0.0;
};

MasterEmbedding rebuild_master(const MasterEmbedding& old, std::vector<Embedding> embs,
                               const TripartiteDistribution& dist) {
  MasterEmbedding me;
  me.r = old.r;
  me.moduli = old.moduli;
  me.product = old.product;
  me.warnings = old.warnings;
  me.truncated = old.truncated;
  me.embeddings = std::move(embs);
  auto tuples = [&](Axis a) {
    std::vector<GroupElement> out(dist.size(a));
    for (std::size_t i = 0; i < out.size(); ++i)
      for (const auto& e : me.embeddings) out[i].push_back(e.map(a)[i]);
    return out;
  };
  me.alpha = tuples(Axis::X);
  me.beta = tuples(Axis::Y);
  me.gamma = tuples(Axis::Z);
  me.master = subgroup_generated(me.product, me.image(Axis::X));
  return me;
}

}  // namespace

std::pair<Axis, Axis> other_axes(Axis a) {
  switch (a) {
    case Axis::X:
      return {Axis::Y, Axis::Z};
    case Axis::Y:
      return {Axis::X, Axis::Z};
    default:
      return {Axis::X, Axis::Y};
  }
}

XorGame PathTrickResult::game() const {
  if (!payload.target) throw PreconditionError("path trick carried no target");
  return XorGame{dist, payload.modulus, *payload.target};
}

PathTrickResult path_trick(const TripartiteDistribution& dist, Axis axis, int r,
                           const Payload& payload, std::uint64_t state_budget) {
  if (r < 1 || r > 20) throw InputError("path trick needs 1 <= r <= 20");
  check_payload(dist, payload);
  const auto [B, C] = other_axes(axis);
  const std::size_t K = std::size_t{1} << (r - 1);
  const auto muB = dist.marginal(B);
  const auto muC = dist.marginal(C);
  std::vector<std::vector<std::size_t>> byB(dist.size(B)), byC(dist.size(C));
  for (std::size_t i = 0; i < dist.support.size(); ++i) {
    byB[dist.support[i].q[B]].push_back(i);
    byC[dist.support[i].q[C]].push_back(i);
  }
  const std::int64_t m = payload.target ? payload.modulus : 1;
  auto t_of = [&](std::size_t i) -> std::int64_t {
    return payload.target ? payload.target->at(dist.support[i].q) : 0;
  };
  auto T_of = [&](std::size_t i) -> cplx {
    return payload.tensor ? (*payload.tensor)[i] : cplx(1.0);
  };

  // Key: (sequence, b_1, current endpoint, running target sum).
  using Key = std::tuple<std::vector<std::size_t>, std::size_t, std::size_t, std::int64_t>;
  std::map<Key, WalkValue> states;
  for (std::size_t i = 0; i < dist.support.size(); ++i) {
    const auto& q = dist.support[i].q;
    auto& v = states[Key{{q[axis]}, q[B], q[C], mod_floor(t_of(i), m)}];
    v.prob += dist.support[i].p;
    v.tensor += dist.support[i].p.get_d() * T_of(i);
  }
  for (std::size_t step = 1; step < K; ++step) {
    std::map<Key, WalkValue> next;
    for (const auto& [key, val] : states) {
      const auto& [seq, b1, c, t] = key;
      for (std::size_t i : byC[c]) {
        const auto& qi = dist.support[i].q;
        const Rational pi = dist.support[i].p / muC[c];
        for (std::size_t j : byB[qi[B]]) {
          const auto& qj = dist.support[j].q;
          const Rational pj = dist.support[j].p / muB[qi[B]];
          auto s = seq;
          s.push_back(qi[axis]);
          s.push_back(qj[axis]);
          const std::int64_t tt = mod_floor(t - t_of(i) + t_of(j), m);
          auto& v = next[Key{std::move(s), b1, qj[C], tt}];
          const Rational w = pi * pj;
          v.prob += val.prob * w;
          v.tensor += val.tensor * w.get_d() * std::conj(T_of(i)) * T_of(j);
          if (next.size() > state_budget)
            throw CapacityError("path trick exceeds the walk state budget");
        }
      }
    }
    states = std::move(next);
  }

  // Group by output triple.
  struct Out {
    Rational prob;
    cplx tensor = 0.0;
    std::set<std::int64_t> targets;
  };
  std::map<std::vector<std::size_t>, std::size_t> seq_index;
  for (const auto& [key, val] : states) seq_index.emplace(std::get<0>(key), 0);
  PathTrickResult res;
  res.axis = axis;
  res.r = r;
  std::vector<std::string> labels;
  for (auto& [seq, idx] : seq_index) {
    idx = res.decode.size();
    res.decode.push_back(seq);
    labels.push_back(sequence_label(dist.alphabet(axis), seq));
  }
  std::map<Triple, Out> outs;
  for (const auto& [key, val] : states) {
    const auto& [seq, b1, c, t] = key;
    auto& o = outs[make_triple(axis, seq_index.at(seq), b1, c)];
    o.prob += val.prob;
    o.tensor += val.tensor;
    o.targets.insert(t);
  }
  std::vector<Atom> atoms;
  TargetMap target;
  PhaseTensor tensor;
  for (const auto& [q, o] : outs) {
    if (payload.target && o.targets.size() > 1)
      throw PreconditionError("t+ ambiguous on output triple (" + std::to_string(q.x) + "," +
                              std::to_string(q.y) + "," + std::to_string(q.z) + ")");
    atoms.push_back(Atom{q, o.prob});
    if (payload.target) target[q] = *o.targets.begin();
    tensor.push_back(o.tensor / o.prob.get_d());
  }
  res.dist = with_alphabet(dist, axis, Alphabet(labels), std::move(atoms));
  res.payload.modulus = payload.modulus;
  if (payload.target) res.payload.target = std::move(target);
  if (payload.tensor) res.payload.tensor = std::move(tensor);
  for (std::size_t a = 0; a < dist.size(axis); ++a) {
    const std::vector<std::size_t> diag(2 * K - 1, a);
    res.diagonal.push_back(seq_index.at(diag));
  }
  if (is_pairwise_connected(dist).connected && !is_pairwise_connected(res.dist).connected)
    throw PreconditionError("path trick broke pairwise connectivity");
  return res;
}

PathTrickResult path_trick(const XorGame& game, Axis axis, int r) {
  validate(game);
  Payload p;
  p.modulus = game.modulus;
  p.target = game.target;
  return path_trick(game.dist, axis, r, p);
}

Embedding transport_embedding(const Embedding& e, const PathTrickResult& ptr) {
  Embedding out = e;
  std::vector<std::int64_t> mapped;
  const auto& base = e.map(ptr.axis);
  for (const auto& seq : ptr.decode) {
    __int128 acc = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
      acc += (i % 2 == 0 ? 1 : -1) * static_cast<__int128>(base.at(seq[i]));
    std::int64_t v = static_cast<std::int64_t>(e.modulus ? acc % e.modulus : acc);
    if (e.modulus) v = mod_floor(v, e.modulus);
    mapped.push_back(v);
  }
  (ptr.axis == Axis::X ? out.alpha : ptr.axis == Axis::Y ? out.beta : out.gamma) =
      std::move(mapped);
  return out;
}

MasterEmbedding transport_master(const MasterEmbedding& me, const PathTrickResult& ptr) {
  std::vector<Embedding> embs;
  for (const auto& e : me.embeddings) embs.push_back(transport_embedding(e, ptr));
  return rebuild_master(me, std::move(embs), ptr.dist);
}

int full_support_threshold(const TripartiteDistribution& dist, Axis axis) {
  const auto [b, c] = other_axes(axis);
  const std::size_t need = std::min(dist.size(b), dist.size(c));
  int r = 1;
  while ((std::size_t{1} << (r - 1)) < need) ++r;
  return r;
}

bool pair_support_full(const TripartiteDistribution& dist, Axis a, Axis b) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& atom : dist.support) seen.emplace(atom.q[a], atom.q[b]);
  return seen.size() == dist.size(a) * dist.size(b);
}

MergeResult merge_symbols(const TripartiteDistribution& dist, Axis axis, const Payload& payload) {
  check_payload(dist, payload);
  const auto [B, C] = other_axes(axis);
  const std::size_t n = dist.size(axis);
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> first;
  for (const auto& atom : dist.support) {
    auto [it, fresh] = first.try_emplace({atom.q[B], atom.q[C]}, atom.q[axis]);
    if (!fresh) {
      const std::size_t a = find(it->second), b = find(atom.q[axis]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  MergeResult mr;
  mr.axis = axis;
  mr.rep.assign(n, 0);
  std::map<std::size_t, std::size_t> root_index;
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t root = find(x);
    auto [it, fresh] = root_index.try_emplace(root, mr.representatives.size());
    if (fresh) {
      mr.representatives.push_back(x);
      labels.push_back(dist.alphabet(axis).label(x));
    }
    mr.rep[x] = it->second;
  }
  struct Merged {
    Rational p;
    std::optional<std::int64_t> t;
    std::optional<cplx> T;
  };
  std::map<Triple, Merged> merged;
  for (std::size_t i = 0; i < dist.support.size(); ++i) {
    const auto& q = dist.support[i].q;
    const Triple nq = make_triple(axis, mr.rep[q[axis]], q[B], q[C]);
    auto& m = merged[nq];
    m.p += dist.support[i].p;
    bool conflict = false;
    if (payload.target) {
      const std::int64_t t = payload.target->at(q);
      if (m.t && *m.t != t) conflict = true;
      if (!m.t) m.t = t;
    }
    if (payload.tensor) {
      const cplx T = (*payload.tensor)[i];
      if (m.T && std::abs(*m.T - T) > 1e-12) conflict = true;
      if (!m.T) m.T = T;
    }
    if (conflict) mr.conflicts.push_back(q);
  }
  std::vector<Atom> atoms;
  TargetMap target;
  PhaseTensor tensor;
  for (const auto& [q, m] : merged) {
    atoms.push_back(Atom{q, m.p});
    if (m.t) target[q] = *m.t;
    if (m.T) tensor.push_back(*m.T);
  }
  mr.dist = with_alphabet(dist, axis, Alphabet(labels), std::move(atoms));
  mr.payload.modulus = payload.modulus;
  if (payload.target) mr.payload.target = std::move(target);
  if (payload.tensor) mr.payload.tensor = std::move(tensor);
  return mr;
}

MergeResult merge_symbols(const XorGame& game, Axis axis) {
  validate(game);
  Payload p;
  p.modulus = game.modulus;
  p.target = game.target;
  return merge_symbols(game.dist, axis, p);
}

MasterEmbedding transport_master(const MasterEmbedding& me, const MergeResult& mr) {
  std::vector<Embedding> embs;
  for (const auto& e : me.embeddings) {
    Embedding out = e;
    std::vector<std::int64_t> mapped;
    for (std::size_t s : mr.representatives) mapped.push_back(e.map(mr.axis).at(s));
    (mr.axis == Axis::X ? out.alpha : mr.axis == Axis::Y ? out.beta : out.gamma) =
        std::move(mapped);
    embs.push_back(std::move(out));
  }
  return rebuild_master(me, std::move(embs), mr.dist);
}

RestrictionSplit restriction_split(const TripartiteDistribution& dist,
                                   const std::vector<Triple>& atoms, bool uniform) {
  if (atoms.empty()) throw InputError("restriction needs at least one atom");
  std::set<Triple> wanted(atoms.begin(), atoms.end());
  if (wanted.size() != atoms.size()) throw InputError("restriction lists a triple twice");
  Rational mass = 0;
  for (const auto& q : wanted) {
    auto p = dist.probability(q);
    if (!p) throw InputError("requested triple is not in the support");
    mass += *p;
  }
  std::vector<Atom> restricted;
  for (const auto& q : wanted) {
    const Rational p = uniform ? Rational(1, static_cast<unsigned long>(wanted.size()))
                               : Rational(*dist.probability(q) / mass);
    restricted.push_back(Atom{q, p});
  }
  RestrictionSplit rs;
  bool first = true;
  for (const auto& a : restricted) {
    const Rational ratio = *dist.probability(a.q) / a.p;
    if (first || ratio < rs.delta) rs.delta = ratio;
    first = false;
  }
  rs.restricted = TripartiteDistribution(dist.sigma, dist.gamma, dist.phi, restricted);
  if (rs.delta != 1) {
    std::vector<Atom> rest;
    for (const auto& a : dist.support) {
      Rational p = a.p;
      if (wanted.count(a.q)) p -= rs.delta * *rs.restricted.probability(a.q);
      p /= 1 - rs.delta;
      if (p != 0) rest.push_back(Atom{a.q, p});
    }
    rs.rest = TripartiteDistribution(dist.sigma, dist.gamma, dist.phi, std::move(rest));
  }
  return rs;
}

std::vector<GroupElement> master_image(const MasterEmbedding& me, Axis a) {
  std::set<GroupElement> s;
  for (const auto& e : me.map(a)) s.insert(me.product.reduce(e));
  return {s.begin(), s.end()};
}

namespace {

bool image_is_subgroup(const FiniteAbelianGroup& g, const std::vector<GroupElement>& img) {
  std::set<GroupElement> s(img.begin(), img.end());
  if (!s.count(g.zero())) return false;
  for (const auto& a : s)
    for (const auto& b : s)
      if (!s.count(g.add(a, b))) return false;
  return true;
}

bool images_saturated(const MasterEmbedding& me) {
  const auto ix = master_image(me, Axis::X);
  return image_is_subgroup(me.product, ix) && ix == master_image(me, Axis::Y) &&
         ix == master_image(me, Axis::Z);
}

SaturationRound snapshot(const std::string& step, const TripartiteDistribution& d,
                         const MasterEmbedding& me) {
  SaturationRound r;
  r.step = step;
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
    r.sizes[static_cast<int>(a)] = d.size(a);
    r.images[static_cast<int>(a)] = master_image(me, a).size();
  }
  return r;
}

}  // namespace

bool is_saturated(const TripartiteDistribution& dist, const MasterEmbedding& me) {
  return images_saturated(me) && pair_support_full(dist, Axis::Y, Axis::Z);
}

SaturationResult saturate(const TripartiteDistribution& dist, const Payload& payload,
                          int round_cap, std::uint64_t state_budget) {
  if (has_nontrivial_z_embedding(dist).nontrivial)
    throw PreconditionError("saturation requires a distribution without nontrivial Z-embeddings");
  SaturationResult res;
  res.dist = dist;
  res.payload = payload;
  res.master = master_embedding(dist);
  res.trace.push_back(snapshot("initial", res.dist, res.master));
  auto trick = [&](Axis a, int r) {
    auto ptr = path_trick(res.dist, a, r, res.payload, state_budget);
    res.master = transport_master(res.master, ptr);
    res.dist = std::move(ptr.dist);
    res.payload = std::move(ptr.payload);
    res.trace.push_back(snapshot(std::string(axis_name(a)) + "-trick r=" + std::to_string(r),
                                 res.dist, res.master));
  };
  while (!images_saturated(res.master)) {
    if (res.rounds == round_cap)
      throw CapacityError("saturation did not finish within " + std::to_string(round_cap) +
                          " rounds");
    const std::size_t M =
        std::max({res.dist.sigma.size(), res.dist.gamma.size(), res.dist.phi.size()});
    int r = 1;
    while ((std::size_t{1} << r) <= M) ++r;
    trick(Axis::Z, r);
    trick(Axis::Y, r);
    trick(Axis::X, 2);
    ++res.rounds;
  }
  // One more x-trick, with the smallest r that fills the (y, z) support.
  if (!pair_support_full(res.dist, Axis::Y, Axis::Z)) {
    const int limit = full_support_threshold(res.dist, Axis::X);
    for (int r = 2;; ++r) {
      auto ptr = path_trick(res.dist, Axis::X, r, res.payload, state_budget);
      if (pair_support_full(ptr.dist, Axis::Y, Axis::Z) || r >= limit) {
        res.master = transport_master(res.master, ptr);
        res.dist = std::move(ptr.dist);
        res.payload = std::move(ptr.payload);
        res.trace.push_back(snapshot("x-trick r=" + std::to_string(r), res.dist, res.master));
        break;
      }
    }
  }
  return res;
}

RelaxedBaseCase build_relaxed_base_case(const TripartiteDistribution& dist,
                                        const Payload& payload, RelaxedMode mode, int r,
                                        std::uint64_t state_budget) {
  if (!is_pairwise_connected(dist).connected)
    throw PreconditionError("relaxed base case needs a pairwise-connected distribution");
  RelaxedBaseCase out;
  std::optional<MasterEmbedding> me;
  if (mode == RelaxedMode::Master) me = master_embedding(dist);

  auto step = [&](const TripartiteDistribution& d, const Payload& p, Axis a, Axis full1,
                  Axis full2) {
    const int need = full_support_threshold(d, a);
    const int used = r > 0 ? r : need;
    auto ptr = path_trick(d, a, used, p, state_budget);
    if (!pair_support_full(ptr.dist, full1, full2))
      throw PreconditionError(std::string("(") + axis_name(full1) + "," + axis_name(full2) +
                              ") support not full after " + axis_name(a) +
                              " path trick with r=" + std::to_string(used) + "; requires r >= " +
                              std::to_string(need));
    out.trace.push_back(std::string(axis_name(a)) + " path trick r=" + std::to_string(used) +
                        ": " + std::to_string(ptr.dist.size(a)) + " symbols, " +
                        std::to_string(ptr.dist.support.size()) + " atoms");
    return ptr;
  };
  auto first = step(dist, payload, Axis::Y, Axis::X, Axis::Z);
  if (me) me = transport_master(*me, first);
  auto second = step(first.dist, first.payload, Axis::X, Axis::Y, Axis::Z);
  if (me) me = transport_master(*me, second);
  auto merged = merge_symbols(second.dist, Axis::X, second.payload);
  if (me) me = transport_master(*me, merged);
  out.trace.push_back("merge: " + std::to_string(merged.dist.sigma.size()) + " classes, " +
                      std::to_string(merged.conflicts.size()) + " payload conflicts");

  std::vector<Triple> all;
  for (const auto& a : merged.dist.support) all.push_back(a.q);
  auto split = restriction_split(merged.dist, all, true);
  out.delta = split.delta;
  out.dist = split.restricted;
  out.trace.push_back("uniform restriction: delta " + rational_to_string(split.delta));
  out.payload = merged.payload;
  out.designated.assign(out.dist.sigma.size(), false);
  for (std::size_t x = 0; x < dist.sigma.size(); ++x)
    out.designated[merged.rep[second.diagonal[x]]] = true;
  out.master = me;

  const auto my = out.dist.marginal(Axis::Y), mz = out.dist.marginal(Axis::Z);
  out.yz_product = pair_support_full(out.dist, Axis::Y, Axis::Z);
  std::map<std::pair<std::size_t, std::size_t>, Rational> joint;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> xs;
  out.yz_determines_x = true;
  for (const auto& a : out.dist.support) {
    joint[{a.q.y, a.q.z}] += a.p;
    auto [it, fresh] = xs.try_emplace({a.q.y, a.q.z}, a.q.x);
    if (!fresh && it->second != a.q.x) out.yz_determines_x = false;
  }
  for (const auto& [yz, p] : joint)
    if (p != my[yz.first] * mz[yz.second]) out.yz_product = false;
  if (!out.yz_determines_x) throw PreconditionError("merged support is not determined by (y,z)");
  return out;
}

MasterProjection project_to_master(const TripartiteDistribution& dist, const MasterEmbedding& me) {
  if (!is_saturated(dist, me)) throw PreconditionError("projection needs a saturated distribution");
  if (me.master.elements.empty())
    throw CapacityError("master group elements were not enumerated");
  MasterProjection mp;
  mp.group = me.master.canonical_group();
  std::vector<GroupElement> coords;
  for (const auto& e : me.master.elements) coords.push_back(me.master.canonical_coordinates(e));
  std::sort(coords.begin(), coords.end());
  std::map<GroupElement, std::size_t> index;
  std::vector<std::string> labels;
  for (const auto& c : coords) {
    index.emplace(c, labels.size());
    labels.push_back(c.size() == 1 ? std::to_string(c[0]) : element_to_string(c));
  }
  mp.elements = coords;
  std::map<std::pair<std::size_t, std::size_t>, Rational> yz;
  for (const auto& a : dist.support) yz[{a.q.y, a.q.z}] += a.p;
  std::vector<Atom> atoms;
  for (const auto& [k, p] : yz) {
    const GroupElement x =
        me.product.negate(me.product.add(me.beta[k.first], me.gamma[k.second]));
    const auto c = me.master.canonical_coordinates(me.product.reduce(x));
    atoms.push_back(Atom{Triple{index.at(c), k.first, k.second}, p});
  }
  mp.dist = TripartiteDistribution(Alphabet(labels), dist.gamma, dist.phi, std::move(atoms));
  return mp;
}

}  // namespace xorrep
