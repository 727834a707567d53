// Exhaustive checkers for Freiman homomorphisms and affine structure of
// functions on small finite abelian groups.

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "xorrep/abelian.hpp"

namespace xorrep {

// A function A' -> Z_q on an explicit subset A' of a small group.
struct FunctionOnGroupBox {
  FiniteAbelianGroup group;
  std::vector<GroupElement> domain;
  std::vector<std::int64_t> values;
  std::int64_t modulus = 2;

  void validate() const;
};

struct FreimanResult {
  bool holds = true;
  // Two multisets (indices into the domain) with equal element sums but
  // different image sums.
  std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> witness;
  std::uint64_t multisets = 0;
};

// Order-s Freiman property: equal s-term sums imply equal s-term image sums.
FreimanResult freiman_check(const FunctionOnGroupBox& f, int s, std::uint64_t budget = 100000000);

struct AffineForm {
  std::int64_t constant = 0;
  std::vector<std::int64_t> coeffs;
  bool operator==(const AffineForm&) const = default;
};

// Coordinates are read as integers in [0, q_i).
std::int64_t evaluate(const AffineForm& form, const GroupElement& x, std::int64_t p);

// Solves value(x) = c + sum c_i x_i (mod p) over the listed points. Returns
// the lexicographically smallest (c, c_1..c_L), or nothing. Coefficients whose
// index is set in `forced_zero` are constrained to vanish.
std::optional<AffineForm> affine_form_extract(
    const FiniteAbelianGroup& group, const std::vector<std::pair<GroupElement, std::int64_t>>& points,
    std::int64_t p, const std::vector<bool>& forced_zero = {});

// Convenience overload for a total function on the group, indexed like
// `all_elements(group)`.
std::optional<AffineForm> affine_form_extract(const FiniteAbelianGroup& group,
                                              const std::vector<std::int64_t>& values,
                                              std::int64_t p);

// Components that must carry a zero coefficient: p_i != p, or p_i = p with
// k_i < k + j. Every factor of the group must be a prime power.
std::vector<bool> vanishing_coefficients(const FiniteAbelianGroup& group, std::int64_t p, int k,
                                         int j);

// True iff the constants sum to 0 mod p and the linear coefficients agree mod p.
bool coefficient_matching_check(const AffineForm& a, const AffineForm& b, const AffineForm& c,
                                std::int64_t p);

// Elements of the group in lexicographic order.
std::vector<GroupElement> all_elements(const FiniteAbelianGroup& group,
                                       std::uint64_t limit = 10000000);

}  // namespace xorrep
