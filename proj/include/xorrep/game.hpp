// XOR-game data model, repeated-game values and structural predicates.

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "xorrep/errors.hpp"

namespace xorrep {

using Rational = mpq_class;

enum class Axis { X = 0, Y = 1, Z = 2 };

const char* axis_name(Axis a);

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);
  // Symbols "0", "1", ..., "n-1".
  static Alphabet numbered(std::size_t n);

  std::size_t size() const { return symbols_.size(); }
  const std::string& label(std::size_t i) const { return symbols_.at(i); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::size_t index(const std::string& label) const;
  bool contains(const std::string& label) const { return index_.count(label) > 0; }

  bool operator==(const Alphabet& o) const { return symbols_ == o.symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::map<std::string, std::size_t> index_;
};

struct Triple {
  std::size_t x = 0, y = 0, z = 0;

  std::size_t operator[](Axis a) const { return a == Axis::X ? x : a == Axis::Y ? y : z; }
  auto operator<=>(const Triple&) const = default;
};

struct Atom {
  Triple q;
  Rational p;
};

// An exact distribution on Sigma x Gamma x Phi given by its support, kept
// sorted by triple.
struct TripartiteDistribution {
  Alphabet sigma, gamma, phi;
  std::vector<Atom> support;

  TripartiteDistribution() = default;
  TripartiteDistribution(Alphabet s, Alphabet g, Alphabet f, std::vector<Atom> atoms);

  const Alphabet& alphabet(Axis a) const;
  std::size_t size(Axis a) const { return alphabet(a).size(); }
  std::vector<Rational> marginal(Axis a) const;
  std::optional<Rational> probability(const Triple& t) const;
  bool in_support(const Triple& t) const { return probability(t).has_value(); }
  Rational lcm_denominator() const;

  // Throws InputError naming the first violated invariant.
  void validate() const;

  bool operator==(const TripartiteDistribution& o) const;
};

// Uniform distribution over the listed triples of numbered alphabets.
TripartiteDistribution uniform_distribution(std::size_t ns, std::size_t ng, std::size_t nf,
                                            const std::vector<Triple>& triples);

struct XorGame {
  TripartiteDistribution dist;
  std::int64_t modulus = 2;
  std::map<Triple, std::int64_t> target;

  std::int64_t t(const Triple& q) const;
  bool operator==(const XorGame& o) const = default;
};

// Checks every invariant of the game and its distribution. Messages start
// with one of: "probability mass", "target missing", "target defined on
// non-support triple", "target out of range", "unused symbol", "duplicate
// triple", "non-positive probability", "modulus".
void validate(const XorGame& game);

XorGame ghz();

// Dense strategy tables. Question tuples are indexed in mixed radix with
// coordinate 0 most significant; each entry holds n answers in [0, m).
struct Strategy {
  int n = 1;
  std::int64_t modulus = 2;
  std::vector<std::vector<std::int64_t>> f, g, h;

  static Strategy zero(const XorGame& game, int n);
  const std::vector<std::vector<std::int64_t>>& table(Axis a) const;
  bool operator==(const Strategy&) const = default;
};

// Index <-> tuple helpers for the n-fold alphabet product.
std::size_t tuple_index(const std::vector<std::size_t>& tuple, std::size_t base);
std::vector<std::size_t> index_tuple(std::size_t index, std::size_t base, int n);
std::uint64_t checked_power(std::uint64_t base, int n);

constexpr std::uint64_t kDefaultBudget = 1000000000ULL;

Rational win_probability(const XorGame& game, const Strategy& s,
                         std::uint64_t budget = kDefaultBudget);

struct ValueReport {
  std::string mode;  // "exact" or "search"
  Rational value;    // exact value (exact mode) or exact score of the witness (search mode)
  double approx = 0.0;
  std::optional<Strategy> witness;
  std::uint64_t scored = 0;    // scored events (exact) or move evaluations (search)
  std::uint64_t restarts = 0;  // search only
};

// Maximum over (f, g) with the optimal h chosen per question in closed
// form. Throws CapacityError("exact infeasible, use value_search") over budget.
ValueReport value_exact(const XorGame& game, int n, std::uint64_t budget = kDefaultBudget,
                        unsigned threads = 0);

// Restart hill-climbing over single-entry moves. Random numbers come from
// std::minstd_rand seeded with `seed`; entries are drawn as rng() % m^n and
// sweep orders by a Fisher-Yates shuffle using rng() % (i + 1).
ValueReport value_search(const XorGame& game, int n, std::uint64_t seed, std::uint64_t iterations,
                         const std::optional<Strategy>& initial = std::nullopt,
                         std::uint64_t budget = kDefaultBudget);

// Product strategy: coordinate-wise application of a one-shot strategy.
Strategy tensor_power(const Strategy& one_shot, const XorGame& game, int n);
Strategy tensor_product(const Strategy& a, const Strategy& b, const XorGame& game);

struct Component {
  std::vector<std::size_t> left, right;
};

struct PairGraph {
  Axis left, right;
  std::vector<Component> components;
  bool connected() const { return components.size() == 1; }
};

struct Connectivity {
  bool connected = false;
  std::array<PairGraph, 3> pairs;  // (x,y), (x,z), (y,z)
};

Connectivity is_pairwise_connected(const TripartiteDistribution& dist);

std::vector<XorGame> crt_decompose(const XorGame& game);
// Unique r in [0, prod m_i) with r = residues_i (mod m_i); moduli coprime.
std::int64_t crt_reconstruct(const std::vector<std::int64_t>& residues,
                             const std::vector<std::int64_t>& moduli);

std::string rational_to_string(const Rational& r);

}  // namespace xorrep
