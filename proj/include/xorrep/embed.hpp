// Abelian embeddings of a question distribution: enumeration over Z_q,
// Z-embedding detection, the master embedding and minimal-N target embeddings.
//
// Normalization anchor: x* is the first symbol of Sigma and (y*, z*) are taken
// from the smallest support triple whose x-coordinate is x*. Because the
// anchor is itself a support triple, fixing alpha(x*) = beta(y*) = gamma(z*)
// = 0 picks exactly one representative of every class of embeddings modulo
// constant shifts.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xorrep/abelian.hpp"
#include "xorrep/game.hpp"

namespace xorrep {

Triple normalization_anchor(const TripartiteDistribution& dist);

// Values of three maps into Z_q (q >= 1) or into Z when modulus == 0.
struct Embedding {
  std::int64_t modulus = 0;
  std::vector<std::int64_t> alpha, beta, gamma;

  const std::vector<std::int64_t>& map(Axis a) const {
    return a == Axis::X ? alpha : a == Axis::Y ? beta : gamma;
  }
  bool is_zero() const;
  bool is_constant() const;
  auto operator<=>(const Embedding&) const = default;
};

// True iff alpha + beta + gamma vanishes on every support triple.
bool is_embedding(const TripartiteDistribution& dist, const Embedding& e);
bool is_normalized(const TripartiteDistribution& dist, const Embedding& e);
std::string describe_embedding(const TripartiteDistribution& dist, const Embedding& e);

// Rows: one per support triple over unknowns (alpha | beta | gamma).
IntegerMatrix embedding_constraint_matrix(const TripartiteDistribution& dist);

// Sorted list of normalized embeddings into Z_q.
std::vector<Embedding> enumerate_embeddings(const TripartiteDistribution& dist, std::int64_t q,
                                            std::uint64_t limit = 1000000);

struct ZEmbeddingVerdict {
  bool nontrivial = false;
  std::optional<Embedding> witness;  // normalized, modulus 0
  std::size_t kernel_rank = 0;
};

ZEmbeddingVerdict has_nontrivial_z_embedding(const TripartiteDistribution& dist);

struct SymbolPartition {
  Axis axis;
  std::vector<std::vector<std::size_t>> classes;
  bool operator==(const SymbolPartition&) const = default;
};

struct MasterEmbedding {
  std::int64_t r = 0;
  std::vector<Embedding> embeddings;      // nonzero normalized embeddings, grouped by modulus
  std::vector<std::int64_t> moduli;       // component moduli (one per embedding)
  FiniteAbelianGroup product;             // prod of the component cyclic groups
  std::vector<GroupElement> alpha, beta, gamma;  // per-symbol component tuples
  Subgroup master;                        // generated by alpha tuples
  std::vector<std::string> warnings;
  bool truncated = false;

  const std::vector<GroupElement>& map(Axis a) const {
    return a == Axis::X ? alpha : a == Axis::Y ? beta : gamma;
  }
  // Partition of an alphabet by equal master tuples.
  SymbolPartition partition(Axis a) const;
  // Canonical coordinates of a symbol's tuple in the master group; throws
  // for tuples outside it.
  GroupElement coordinates(Axis a, std::size_t symbol) const;
  std::vector<GroupElement> image(Axis a) const;
};

std::int64_t default_order_bound(const TripartiteDistribution& dist);

// Partition induced by agreement of every listed embedding.
SymbolPartition partition_by_embeddings(const std::vector<Embedding>& embeddings, Axis a,
                                        std::size_t alphabet_size);

MasterEmbedding master_embedding(const TripartiteDistribution& dist, std::int64_t r = 0,
                                 std::uint64_t element_budget = 1000000);

// a + b + c = N t (mod p^k N) on the support, for the stored target t.
struct TargetEmbedding {
  std::int64_t p = 2;
  int k = 1;
  int j = 0;
  std::int64_t N = 1;
  std::int64_t modulus = 2;  // p^k N
  std::vector<std::int64_t> a, b, c;
  std::map<Triple, std::int64_t> target;  // residues mod p^k
  // target = original + shift_a(x) + shift_b(y) + shift_c(z) (mod p^k)
  std::vector<std::int64_t> shift_a, shift_b, shift_c;

  bool operator==(const TargetEmbedding&) const = default;
};

// Throws PreconditionError when the congruence fails on some support triple.
void validate_target_embedding(const TargetEmbedding& te);
bool is_bounded_by_N(const TargetEmbedding& te);

constexpr int kDefaultJMax = 6;

// Least N = p^j, j <= j_max, admitting a target embedding; the result is
// reduced so 0 <= a, b, c < N with the target rewritten accordingly.
std::optional<TargetEmbedding> minimal_N(const XorGame& game, int j_max = kDefaultJMax);

// Whether some (a, b, c) solves the congruence for N = p^j.
bool target_embedding_exists(const XorGame& game, int j);

// Group coordinates of every symbol, with alpha + beta + gamma = 0 in the
// group on the support.
struct SymbolCoordinates {
  FiniteAbelianGroup group;
  std::vector<GroupElement> x, y, z;
};

SymbolCoordinates coordinates_from_master(const MasterEmbedding& me);

// One step N -> N/p. Throws PreconditionError starting with "not reducible:"
// and naming the failed condition.
TargetEmbedding reduce_embedding_N(const TargetEmbedding& te, std::int64_t p,
                                   const SymbolCoordinates& coords);

}  // namespace xorrep
