#include "xorrep/game.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <thread>

#include "xorrep/abelian.hpp"

namespace xorrep {

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    case Axis::Z: return "z";
  }
  return "?";
}

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (!index_.emplace(symbols_[i], i).second)
      throw InputError("duplicate symbol '" + symbols_[i] + "' in alphabet");
  }
}

Alphabet Alphabet::numbered(std::size_t n) {
  std::vector<std::string> s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(std::to_string(i));
  return Alphabet(std::move(s));
}

std::size_t Alphabet::index(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw InputError("unknown symbol '" + label + "'");
  return it->second;
}

TripartiteDistribution::TripartiteDistribution(Alphabet s, Alphabet g, Alphabet f,
                                               std::vector<Atom> atoms)
    : sigma(std::move(s)), gamma(std::move(g)), phi(std::move(f)), support(std::move(atoms)) {
  std::stable_sort(support.begin(), support.end(),
                   [](const Atom& a, const Atom& b) { return a.q < b.q; });
}

const Alphabet& TripartiteDistribution::alphabet(Axis a) const {
  return a == Axis::X ? sigma : a == Axis::Y ? gamma : phi;
}

std::vector<Rational> TripartiteDistribution::marginal(Axis a) const {
  std::vector<Rational> m(size(a), Rational(0));
  for (const auto& at : support) m[at.q[a]] += at.p;
  return m;
}

std::optional<Rational> TripartiteDistribution::probability(const Triple& t) const {
  auto it = std::lower_bound(support.begin(), support.end(), t,
                             [](const Atom& a, const Triple& q) { return a.q < q; });
  if (it == support.end() || it->q != t) return std::nullopt;
  return it->p;
}

Rational TripartiteDistribution::lcm_denominator() const {
  Int l = 1;
  for (const auto& a : support) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.p.get_den_mpz_t());
  return Rational(l);
}

namespace {

std::string triple_label(const TripartiteDistribution& d, const Triple& t) {
  auto lab = [](const Alphabet& a, std::size_t i) {
    return i < a.size() ? a.label(i) : "#" + std::to_string(i);
  };
  return "(" + lab(d.sigma, t.x) + "," + lab(d.gamma, t.y) + "," + lab(d.phi, t.z) + ")";
}

}  // namespace

void TripartiteDistribution::validate() const {
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
    if (size(a) == 0) throw InputError(std::string("empty alphabet for ") + axis_name(a));
  }
  if (support.empty()) throw InputError("probability mass is 0, expected 1 (empty support)");
  for (std::size_t i = 0; i < support.size(); ++i) {
    const auto& at = support[i];
    if (at.q.x >= sigma.size() || at.q.y >= gamma.size() || at.q.z >= phi.size())
      throw InputError("unknown symbol in triple " + triple_label(*this, at.q));
    if (i > 0 && support[i - 1].q == at.q)
      throw InputError("duplicate triple " + triple_label(*this, at.q));
    if (at.p <= 0)
      throw InputError("non-positive probability " + rational_to_string(at.p) + " on triple " +
                       triple_label(*this, at.q));
  }
  Rational total = 0;
  for (const auto& at : support) total += at.p;
  if (total != 1)
    throw InputError("probability mass sums to " + rational_to_string(total) + ", expected 1");
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
    std::vector<bool> used(size(a), false);
    for (const auto& at : support) used[at.q[a]] = true;
    for (std::size_t i = 0; i < used.size(); ++i) {
      if (!used[i])
        throw InputError("unused symbol '" + alphabet(a).label(i) + "' in alphabet " + axis_name(a));
    }
  }
}

bool TripartiteDistribution::operator==(const TripartiteDistribution& o) const {
  if (!(sigma == o.sigma && gamma == o.gamma && phi == o.phi)) return false;
  if (support.size() != o.support.size()) return false;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i].q != o.support[i].q || support[i].p != o.support[i].p) return false;
  }
  return true;
}

TripartiteDistribution uniform_distribution(std::size_t ns, std::size_t ng, std::size_t nf,
                                            const std::vector<Triple>& triples) {
  std::vector<Atom> atoms;
  for (const auto& t : triples) atoms.push_back({t, Rational(1, triples.size())});
  return TripartiteDistribution(Alphabet::numbered(ns), Alphabet::numbered(ng),
                                Alphabet::numbered(nf), std::move(atoms));
}

std::int64_t XorGame::t(const Triple& q) const {
  auto it = target.find(q);
  if (it == target.end()) throw InputError("target missing on triple " + triple_label(dist, q));
  return it->second;
}

void validate(const XorGame& game) {
  if (game.modulus < 2)
    throw InputError("modulus must be at least 2, got " + std::to_string(game.modulus));
  game.dist.validate();
  for (const auto& at : game.dist.support) {
    if (!game.target.count(at.q))
      throw InputError("target missing on support triple " + triple_label(game.dist, at.q));
  }
  for (const auto& [q, v] : game.target) {
    if (!game.dist.in_support(q))
      throw InputError("target defined on non-support triple " + triple_label(game.dist, q));
    if (v < 0 || v >= game.modulus)
      throw InputError("target out of range on triple " + triple_label(game.dist, q) + ": " +
                       std::to_string(v));
  }
}

XorGame ghz() {
  XorGame g;
  g.dist = uniform_distribution(2, 2, 2, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  g.modulus = 2;
  for (const auto& at : g.dist.support) g.target[at.q] = (at.q.x | at.q.y | at.q.z) ? 1 : 0;
  return g;
}

std::uint64_t checked_power(std::uint64_t base, int n) {
  unsigned __int128 r = 1;
  for (int i = 0; i < n; ++i) {
    r *= base;
    if (r > (static_cast<unsigned __int128>(1) << 62)) throw CapacityError("index space too large");
  }
  return static_cast<std::uint64_t>(r);
}

std::size_t tuple_index(const std::vector<std::size_t>& tuple, std::size_t base) {
  std::size_t idx = 0;
  for (auto v : tuple) idx = idx * base + v;
  return idx;
}

std::vector<std::size_t> index_tuple(std::size_t index, std::size_t base, int n) {
  std::vector<std::size_t> t(n);
  for (int i = n - 1; i >= 0; --i) {
    t[i] = index % base;
    index /= base;
  }
  return t;
}

Strategy Strategy::zero(const XorGame& game, int n) {
  Strategy s;
  s.n = n;
  s.modulus = game.modulus;
  s.f.assign(checked_power(game.dist.sigma.size(), n), std::vector<std::int64_t>(n, 0));
  s.g.assign(checked_power(game.dist.gamma.size(), n), std::vector<std::int64_t>(n, 0));
  s.h.assign(checked_power(game.dist.phi.size(), n), std::vector<std::int64_t>(n, 0));
  return s;
}

const std::vector<std::vector<std::int64_t>>& Strategy::table(Axis a) const {
  return a == Axis::X ? f : a == Axis::Y ? g : h;
}

namespace {

// Flattened n-fold support with integer weights over a common denominator.
// Answers are packed as codes in [0, m^n) with coordinate 0 most significant.
struct Scorer {
  int n = 1;
  std::int64_t m = 2;
  std::uint32_t codes = 1;
  std::size_t nx = 0, ny = 0, nz = 0;
  std::vector<std::uint32_t> xs, ys, zs, ts;
  std::vector<std::int64_t> w;
  std::int64_t denom = 1;
  std::vector<std::uint32_t> sub_table;

  Scorer(const XorGame& game, int n_, std::uint64_t budget) : n(n_), m(game.modulus) {
    if (n < 1) throw InputError("repetition count must be positive");
    const auto& supp = game.dist.support;
    const std::uint64_t tuples = checked_power(supp.size(), n);
    if (tuples > budget) throw CapacityError("n-fold support exceeds the enumeration budget");
    codes = static_cast<std::uint32_t>(checked_power(m, n));
    if (codes > (1u << 24)) throw CapacityError("answer space m^n too large");
    nx = checked_power(game.dist.sigma.size(), n);
    ny = checked_power(game.dist.gamma.size(), n);
    nz = checked_power(game.dist.phi.size(), n);

    const Int d = game.dist.lcm_denominator().get_num();
    Int dn = 1;
    for (int i = 0; i < n; ++i) dn *= d;
    if (dn > Int(1L << 62)) throw CapacityError("common denominator too large for exact scoring");
    denom = dn.get_si();
    std::vector<std::int64_t> aw;
    for (const auto& a : supp) aw.push_back(Rational(a.p * d).get_num().get_si());

    xs.resize(tuples);
    ys.resize(tuples);
    zs.resize(tuples);
    ts.resize(tuples);
    w.resize(tuples);
    std::vector<std::size_t> idx(n, 0);
    for (std::uint64_t k = 0; k < tuples; ++k) {
      std::size_t x = 0, y = 0, z = 0, t = 0;
      std::int64_t wt = 1;
      for (int i = 0; i < n; ++i) {
        const auto& at = supp[idx[i]];
        x = x * game.dist.sigma.size() + at.q.x;
        y = y * game.dist.gamma.size() + at.q.y;
        z = z * game.dist.phi.size() + at.q.z;
        t = t * m + game.t(at.q);
        wt *= aw[idx[i]];
      }
      xs[k] = x, ys[k] = y, zs[k] = z, ts[k] = t, w[k] = wt;
      for (int i = n - 1; i >= 0; --i) {
        if (++idx[i] < supp.size()) break;
        idx[i] = 0;
      }
    }
    if (codes <= 1024) {
      sub_table.resize(static_cast<std::size_t>(codes) * codes);
      for (std::uint32_t a = 0; a < codes; ++a)
        for (std::uint32_t b = 0; b < codes; ++b) sub_table[a * codes + b] = sub_slow(a, b);
    }
  }

  std::uint32_t sub_slow(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t out = 0, mul = 1;
    for (int i = 0; i < n; ++i) {
      std::int64_t da = a % m, db = b % m;
      out += static_cast<std::uint32_t>(mod_floor(da - db, m)) * mul;
      mul *= static_cast<std::uint32_t>(m);
      a /= static_cast<std::uint32_t>(m);
      b /= static_cast<std::uint32_t>(m);
    }
    return out;
  }

  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return sub_table.empty() ? sub_slow(a, b) : sub_table[a * codes + b];
  }

  std::uint32_t encode(const std::vector<std::int64_t>& ans) const {
    if (static_cast<int>(ans.size()) != n) throw InputError("strategy answer arity mismatch");
    std::uint32_t c = 0;
    for (auto v : ans) {
      if (v < 0 || v >= m) throw InputError("strategy answer out of range");
      c = c * static_cast<std::uint32_t>(m) + static_cast<std::uint32_t>(v);
    }
    return c;
  }

  std::vector<std::int64_t> decode(std::uint32_t c) const {
    std::vector<std::int64_t> ans(n);
    for (int i = n - 1; i >= 0; --i) {
      ans[i] = c % m;
      c /= static_cast<std::uint32_t>(m);
    }
    return ans;
  }

  std::vector<std::uint32_t> encode_table(const std::vector<std::vector<std::int64_t>>& t,
                                          std::size_t expected) const {
    if (t.size() != expected) throw InputError("strategy table size does not match the alphabet power");
    std::vector<std::uint32_t> out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) out[i] = encode(t[i]);
    return out;
  }

  bool wins(std::size_t k, std::uint32_t f, std::uint32_t g, std::uint32_t h) const {
    return sub(sub(ts[k], f), g) == h;
  }
};

Rational as_rational(std::int64_t num, std::int64_t den) {
  Rational r(Int(static_cast<long>(num)), Int(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

}  // namespace

Rational win_probability(const XorGame& game, const Strategy& s, std::uint64_t budget) {
  Scorer sc(game, s.n, budget);
  if (s.modulus != game.modulus) throw InputError("strategy modulus does not match the game");
  auto F = sc.encode_table(s.f, sc.nx);
  auto G = sc.encode_table(s.g, sc.ny);
  auto H = sc.encode_table(s.h, sc.nz);
  std::int64_t total = 0;
  for (std::size_t k = 0; k < sc.w.size(); ++k)
    if (sc.wins(k, F[sc.xs[k]], G[sc.ys[k]], H[sc.zs[k]])) total += sc.w[k];
  return as_rational(total, sc.denom);
}

namespace {

struct ChunkBest {
  std::int64_t score = -1;
  std::uint64_t fi = 0, gi = 0;
};

void decode_table(std::uint64_t idx, std::uint32_t codes, std::vector<std::uint32_t>& out) {
  for (std::size_t j = out.size(); j-- > 0;) {
    out[j] = static_cast<std::uint32_t>(idx % codes);
    idx /= codes;
  }
}

// Best h score for fixed (f, g); fills h when requested.
std::int64_t best_h(const Scorer& sc, const std::vector<std::vector<std::size_t>>& by_z,
                    const std::vector<std::uint32_t>& partial, const std::vector<std::uint32_t>& G,
                    std::vector<std::int64_t>& votes, std::vector<std::uint32_t>& touched,
                    std::vector<std::uint32_t>* h_out) {
  std::int64_t total = 0;
  for (std::size_t z = 0; z < by_z.size(); ++z) {
    touched.clear();
    for (std::size_t k : by_z[z]) {
      const std::uint32_t v = sc.sub(partial[k], G[sc.ys[k]]);
      if (votes[v] == 0) touched.push_back(v);
      votes[v] += sc.w[k];
    }
    std::int64_t best = 0;
    std::uint32_t arg = 0;
    for (std::uint32_t v : touched) {
      if (votes[v] > best || (votes[v] == best && v < arg)) best = votes[v], arg = v;
      votes[v] = 0;
    }
    total += best;
    if (h_out) (*h_out)[z] = arg;
  }
  return total;
}

}  // namespace

ValueReport value_exact(const XorGame& game, int n, std::uint64_t budget, unsigned threads) {
  Scorer sc(game, n, budget);
  const Int fcount = [&] {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), sc.codes, sc.nx);
    return r;
  }();
  const Int gcount = [&] {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), sc.codes, sc.ny);
    return r;
  }();
  const Int events = fcount * gcount * static_cast<unsigned long>(sc.w.size());
  if (events > Int(static_cast<unsigned long>(budget)))
    throw CapacityError("exact infeasible, use value_search (" + events.get_str() +
                        " scored events exceed budget " + std::to_string(budget) + ")");
  const std::uint64_t FX = fcount.get_ui(), GY = gcount.get_ui();

  std::vector<std::vector<std::size_t>> by_z(sc.nz);
  for (std::size_t k = 0; k < sc.w.size(); ++k) by_z[sc.zs[k]].push_back(k);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t T = std::min<std::uint64_t>(threads, FX);
  std::vector<ChunkBest> best(T);
  auto run = [&](std::uint64_t chunk) {
    const std::uint64_t lo = FX * chunk / T, hi = FX * (chunk + 1) / T;
    std::vector<std::uint32_t> F(sc.nx), G(sc.ny), partial(sc.w.size()), touched;
    std::vector<std::int64_t> votes(sc.codes, 0);
    ChunkBest b;
    for (std::uint64_t fi = lo; fi < hi; ++fi) {
      decode_table(fi, sc.codes, F);
      for (std::size_t k = 0; k < sc.w.size(); ++k) partial[k] = sc.sub(sc.ts[k], F[sc.xs[k]]);
      std::fill(G.begin(), G.end(), 0);
      for (std::uint64_t gi = 0; gi < GY; ++gi) {
        const std::int64_t s = best_h(sc, by_z, partial, G, votes, touched, nullptr);
        if (s > b.score) b = {s, fi, gi};
        for (std::size_t j = G.size(); j-- > 0;) {
          if (++G[j] < sc.codes) break;
          G[j] = 0;
        }
      }
    }
    best[chunk] = b;
  };
  if (T == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::uint64_t c = 0; c < T; ++c) pool.emplace_back(run, c);
    for (auto& t : pool) t.join();
  }
  ChunkBest win;
  for (const auto& b : best)
    if (b.score > win.score) win = b;

  std::vector<std::uint32_t> F(sc.nx), G(sc.ny), H(sc.nz, 0), partial(sc.w.size()), touched;
  std::vector<std::int64_t> votes(sc.codes, 0);
  decode_table(win.fi, sc.codes, F);
  decode_table(win.gi, sc.codes, G);
  for (std::size_t k = 0; k < sc.w.size(); ++k) partial[k] = sc.sub(sc.ts[k], F[sc.xs[k]]);
  best_h(sc, by_z, partial, G, votes, touched, &H);

  Strategy s;
  s.n = n;
  s.modulus = game.modulus;
  for (auto c : F) s.f.push_back(sc.decode(c));
  for (auto c : G) s.g.push_back(sc.decode(c));
  for (auto c : H) s.h.push_back(sc.decode(c));

  ValueReport r;
  r.mode = "exact";
  r.value = as_rational(win.score, sc.denom);
  r.approx = r.value.get_d();
  r.witness = std::move(s);
  r.scored = events.get_ui();
  return r;
}

ValueReport value_search(const XorGame& game, int n, std::uint64_t seed, std::uint64_t iterations,
                         const std::optional<Strategy>& initial, std::uint64_t budget) {
  Scorer sc(game, n, budget);
  std::minstd_rand rng(static_cast<std::minstd_rand::result_type>(seed % 2147483647ULL));
  const std::size_t sizes[3] = {sc.nx, sc.ny, sc.nz};
  std::vector<std::uint32_t> tab[3];
  std::vector<std::vector<std::size_t>> touching[3];
  for (int p = 0; p < 3; ++p) touching[p].resize(sizes[p]);
  for (std::size_t k = 0; k < sc.w.size(); ++k) {
    touching[0][sc.xs[k]].push_back(k);
    touching[1][sc.ys[k]].push_back(k);
    touching[2][sc.zs[k]].push_back(k);
  }

  auto randomize = [&] {
    for (int p = 0; p < 3; ++p) {
      tab[p].resize(sizes[p]);
      for (auto& v : tab[p]) v = static_cast<std::uint32_t>(rng() % sc.codes);
    }
  };
  auto score_all = [&] {
    std::int64_t s = 0;
    for (std::size_t k = 0; k < sc.w.size(); ++k)
      if (sc.wins(k, tab[0][sc.xs[k]], tab[1][sc.ys[k]], tab[2][sc.zs[k]])) s += sc.w[k];
    return s;
  };

  if (initial) {
    if (initial->n != n || initial->modulus != game.modulus)
      throw InputError("initial strategy does not match the game and n");
    tab[0] = sc.encode_table(initial->f, sc.nx);
    tab[1] = sc.encode_table(initial->g, sc.ny);
    tab[2] = sc.encode_table(initial->h, sc.nz);
  } else {
    randomize();
  }
  std::int64_t cur = score_all();
  std::int64_t best_score = cur;
  std::vector<std::uint32_t> best_tab[3] = {tab[0], tab[1], tab[2]};

  struct Move {
    std::uint8_t player;
    std::uint32_t q;
    std::uint32_t shift;
  };
  std::vector<Move> moves;
  if (sc.codes > 1) {
    for (std::uint8_t p = 0; p < 3; ++p)
      for (std::uint32_t q = 0; q < sizes[p]; ++q)
        for (std::uint32_t s = 1; s < sc.codes; ++s) moves.push_back({p, q, s});
  }

  std::uint64_t evals = 0, restarts = 0;
  while (evals < iterations && !moves.empty()) {
    for (std::size_t i = moves.size(); i > 1; --i) std::swap(moves[i - 1], moves[rng() % i]);
    bool improved = false;
    for (const Move& mv : moves) {
      if (evals >= iterations) break;
      ++evals;
      const std::uint32_t old = tab[mv.player][mv.q];
      const std::uint32_t nv = (old + mv.shift) % sc.codes;
      std::int64_t delta = 0;
      for (std::size_t k : touching[mv.player][mv.q]) {
        std::uint32_t a[3] = {tab[0][sc.xs[k]], tab[1][sc.ys[k]], tab[2][sc.zs[k]]};
        const bool before = sc.wins(k, a[0], a[1], a[2]);
        a[mv.player] = nv;
        const bool after = sc.wins(k, a[0], a[1], a[2]);
        delta += (static_cast<int>(after) - static_cast<int>(before)) * sc.w[k];
      }
      if (delta > 0) {
        tab[mv.player][mv.q] = nv;
        cur += delta;
        improved = true;
        if (cur > best_score) {
          best_score = cur;
          for (int p = 0; p < 3; ++p) best_tab[p] = tab[p];
        }
      }
    }
    if (!improved && evals < iterations) {
      randomize();
      cur = score_all();
      ++restarts;
      if (cur > best_score) {
        best_score = cur;
        for (int p = 0; p < 3; ++p) best_tab[p] = tab[p];
      }
    }
  }

  Strategy s;
  s.n = n;
  s.modulus = game.modulus;
  for (auto c : best_tab[0]) s.f.push_back(sc.decode(c));
  for (auto c : best_tab[1]) s.g.push_back(sc.decode(c));
  for (auto c : best_tab[2]) s.h.push_back(sc.decode(c));
  ValueReport r;
  r.mode = "search";
  r.value = as_rational(best_score, sc.denom);
  r.approx = r.value.get_d();
  r.witness = std::move(s);
  r.scored = evals;
  r.restarts = restarts;
  return r;
}

Strategy tensor_product(const Strategy& a, const Strategy& b, const XorGame& game) {
  if (a.modulus != b.modulus) throw InputError("strategy moduli differ");
  Strategy s;
  s.n = a.n + b.n;
  s.modulus = a.modulus;
  const std::size_t sizes[3] = {game.dist.sigma.size(), game.dist.gamma.size(),
                                game.dist.phi.size()};
  const std::vector<std::vector<std::int64_t>>* at[3] = {&a.f, &a.g, &a.h};
  const std::vector<std::vector<std::int64_t>>* bt[3] = {&b.f, &b.g, &b.h};
  std::vector<std::vector<std::int64_t>>* out[3] = {&s.f, &s.g, &s.h};
  for (int p = 0; p < 3; ++p) {
    const std::uint64_t nb = checked_power(sizes[p], b.n);
    const std::uint64_t total = checked_power(sizes[p], s.n);
    if (at[p]->size() * nb != total || bt[p]->size() != nb)
      throw InputError("strategy tables do not match the game alphabets");
    out[p]->resize(total);
    for (std::uint64_t i = 0; i < total; ++i) {
      auto row = (*at[p])[i / nb];
      const auto& tail = (*bt[p])[i % nb];
      row.insert(row.end(), tail.begin(), tail.end());
      (*out[p])[i] = std::move(row);
    }
  }
  return s;
}

Strategy tensor_power(const Strategy& one_shot, const XorGame& game, int n) {
  if (one_shot.n != 1) throw InputError("tensor_power needs a one-shot strategy");
  Strategy s = one_shot;
  for (int i = 1; i < n; ++i) s = tensor_product(s, one_shot, game);
  return s;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

PairGraph pair_graph(const TripartiteDistribution& d, Axis l, Axis r) {
  const std::size_t nl = d.size(l), nr = d.size(r);
  UnionFind uf(nl + nr);
  for (const auto& at : d.support) uf.unite(at.q[l], nl + at.q[r]);
  std::map<std::size_t, Component> comps;
  for (std::size_t i = 0; i < nl; ++i) comps[uf.find(i)].left.push_back(i);
  for (std::size_t j = 0; j < nr; ++j) comps[uf.find(nl + j)].right.push_back(j);
  PairGraph g{l, r, {}};
  for (auto& [root, c] : comps) g.components.push_back(std::move(c));
  return g;
}

}  // namespace

Connectivity is_pairwise_connected(const TripartiteDistribution& dist) {
  Connectivity c;
  c.pairs = {pair_graph(dist, Axis::X, Axis::Y), pair_graph(dist, Axis::X, Axis::Z),
             pair_graph(dist, Axis::Y, Axis::Z)};
  c.connected = std::all_of(c.pairs.begin(), c.pairs.end(),
                            [](const PairGraph& g) { return g.connected(); });
  return c;
}

std::vector<XorGame> crt_decompose(const XorGame& game) {
  std::vector<XorGame> out;
  for (auto [p, k] : factorize(game.modulus)) {
    XorGame g = game;
    g.modulus = checked_pow(p, k);
    for (auto& [q, v] : g.target) v = mod_floor(v, g.modulus);
    out.push_back(std::move(g));
  }
  return out;
}

std::int64_t crt_reconstruct(const std::vector<std::int64_t>& residues,
                             const std::vector<std::int64_t>& moduli) {
  if (residues.size() != moduli.size()) throw InputError("residue and modulus counts differ");
  Int r = 0, m = 1;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    Int mi(static_cast<long>(moduli[i])), ri(static_cast<long>(mod_floor(residues[i], moduli[i])));
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t(), mi.get_mpz_t());
    if (g != 1) throw InputError("moduli are not pairwise coprime");
    // r + m * s * (ri - r) solves both congruences.
    Int nr = r + m * s * (ri - r);
    m *= mi;
    mpz_fdiv_r(r.get_mpz_t(), nr.get_mpz_t(), m.get_mpz_t());
  }
  return to_int64(r);
}

std::string rational_to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace xorrep
