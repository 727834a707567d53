// Distribution surgeries: path tricks, symbol merging, restriction splits,
// saturation of the master embedding, the relaxed base case pipeline and
// projection onto the master group.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xorrep/analytic.hpp"
#include "xorrep/embed.hpp"
#include "xorrep/game.hpp"

namespace xorrep {

using TargetMap = std::map<Triple, std::int64_t>;

// Payload carried through a transformation: a target (with its modulus) or
// a complex tensor aligned with the support, or both.
struct Payload {
  std::int64_t modulus = 0;  // 0 when no target is carried
  std::optional<TargetMap> target;
  std::optional<PhaseTensor> tensor;
};

// The two axes other than `a`, in increasing order.
std::pair<Axis, Axis> other_axes(Axis a);

struct PathTrickResult {
  TripartiteDistribution dist;
  Axis axis = Axis::X;
  int r = 1;
  // decode[s] lists the original symbols (a_1, a_1', a_2, ..., a_K) of s.
  std::vector<std::vector<std::size_t>> decode;
  std::vector<std::size_t> diagonal;  // new index of (a, ..., a) per original symbol
  Payload payload;

  std::size_t segments() const { return std::size_t{1} << (r - 1); }
  XorGame game() const;
};

constexpr std::uint64_t kWalkStateBudget = 2000000;

// Exact law of the walk: start b_1 ~ mu_B, then alternately resample
// (a_i, c_i) given b_i and (a_i', b_{i+1}) given c_i, ending with (a_K, c_K)
// for K = 2^(r-1). Output is ((a_1, a_1', ..., a_K), b_1, c_K) with B, C the
// other two axes. Throws PreconditionError("t+ ambiguous ...") when the
// carried target is not a function of the output triple.
PathTrickResult path_trick(const TripartiteDistribution& dist, Axis axis, int r,
                           const Payload& payload = {},
                           std::uint64_t state_budget = kWalkStateBudget);
PathTrickResult path_trick(const XorGame& game, Axis axis, int r);

// Alternating sum on the tricked axis; the other maps are unchanged.
Embedding transport_embedding(const Embedding& e, const PathTrickResult& ptr);
MasterEmbedding transport_master(const MasterEmbedding& me, const PathTrickResult& ptr);

// Smallest r with 2^(r-1) >= min of the other two alphabet sizes.
int full_support_threshold(const TripartiteDistribution& dist, Axis axis);
bool pair_support_full(const TripartiteDistribution& dist, Axis a, Axis b);

struct MergeResult {
  Axis axis = Axis::X;
  std::vector<std::size_t> rep;              // original symbol -> merged index
  std::vector<std::size_t> representatives;  // merged index -> original symbol (minimal)
  TripartiteDistribution dist;               // pushforward under rep
  Payload payload;
  std::vector<Triple> conflicts;  // original triples whose payload disagreed after merging
};

MergeResult merge_symbols(const TripartiteDistribution& dist, Axis axis,
                          const Payload& payload = {});
MergeResult merge_symbols(const XorGame& game, Axis axis);
MasterEmbedding transport_master(const MasterEmbedding& me, const MergeResult& mr);

struct RestrictionSplit {
  Rational delta;
  TripartiteDistribution restricted;       // mu'
  std::optional<TripartiteDistribution> rest;  // nu, absent when delta = 1
};

// mu = delta mu' + (1 - delta) nu. mu' is mu conditioned on `atoms`, or
// uniform on them when `uniform` is set.
RestrictionSplit restriction_split(const TripartiteDistribution& dist,
                                   const std::vector<Triple>& atoms, bool uniform = false);

struct SaturationRound {
  std::string step;  // "initial", "z-trick r=2", ...
  std::size_t sizes[3] = {0, 0, 0};
  std::size_t images[3] = {0, 0, 0};
};

struct SaturationResult {
  TripartiteDistribution dist;
  Payload payload;
  MasterEmbedding master;
  std::vector<SaturationRound> trace;
  int rounds = 0;
};

constexpr int kSaturationRoundCap = 32;

// Image of the master tuples on one axis, as a sorted set.
std::vector<GroupElement> master_image(const MasterEmbedding& me, Axis a);
bool is_saturated(const TripartiteDistribution& dist, const MasterEmbedding& me);

SaturationResult saturate(const TripartiteDistribution& dist, const Payload& payload = {},
                          int round_cap = kSaturationRoundCap,
                          std::uint64_t state_budget = kWalkStateBudget);

enum class RelaxedMode { Effective, Master };

struct RelaxedBaseCase {
  TripartiteDistribution dist;
  std::vector<bool> designated;  // Sigma' on the x alphabet
  Payload payload;
  Rational delta;
  std::optional<MasterEmbedding> master;
  std::vector<std::string> trace;
  bool yz_product = false;
  bool yz_determines_x = false;
};

// y path trick, x path trick, merge, uniform restriction on (y, z) and the
// designated diagonal set. r = 0 picks the threshold per step; an explicit r
// that leaves a pair support incomplete is rejected with the required value.
RelaxedBaseCase build_relaxed_base_case(const TripartiteDistribution& dist,
                                        const Payload& payload, RelaxedMode mode, int r = 0,
                                        std::uint64_t state_budget = kWalkStateBudget);

struct MasterProjection {
  TripartiteDistribution dist;          // over A x Gamma x Phi
  std::vector<GroupElement> elements;   // x symbol -> canonical coordinates in A
  FiniteAbelianGroup group;             // canonical form of A
};

// Law of (-beta_master(y) - gamma_master(z), y, z) for (y, z) ~ mu_yz.
MasterProjection project_to_master(const TripartiteDistribution& dist, const MasterEmbedding& me);

}  // namespace xorrep
