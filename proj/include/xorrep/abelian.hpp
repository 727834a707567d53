// Exact integer / modular linear algebra and finite abelian group arithmetic.
//
// Everything here is exact: matrix entries are GMP integers, so Smith forms
// and kernels never round. Small group moduli are int64.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "xorrep/errors.hpp"

namespace xorrep {

using Int = mpz_class;
using IntVector = std::vector<Int>;

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntegerMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntegerMatrix operator*(const IntegerMatrix& other) const;
  IntVector operator*(const IntVector& v) const;
  bool operator==(const IntegerMatrix& other) const = default;

  IntegerMatrix transpose() const;
  IntVector row(std::size_t r) const;
  IntVector col(std::size_t c) const;
  bool is_zero() const;

  // Exact determinant by fraction-free elimination (square matrices only).
  Int determinant() const;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

// U * M * V == S with U, V unimodular and S diagonal, d1 | d2 | ... , d_i >= 0.
struct SmithForm {
  IntegerMatrix U;
  IntegerMatrix S;
  IntegerMatrix V;
  std::size_t rank = 0;

  Int diagonal(std::size_t i) const { return S(i, i); }
};

// Pivot rule: nonzero entry of minimal absolute value in the active block,
// ties broken in row-major order. When `track_left` is false U is left empty
// (the left transform of a tall constraint system can be very large).
SmithForm smith_normal_form(const IntegerMatrix& m, bool track_left = true);

// Lattice basis of {v in Z^cols : M v = 0}, Hermite-reduced and sorted
// lexicographically. Size is cols - rank(M).
std::vector<IntVector> integer_kernel(const IntegerMatrix& m);

// Row-style Hermite normal form of the lattice spanned by `basis`: echelon,
// positive pivots, entries above each pivot reduced into [0, pivot). Zero
// vectors are dropped.
std::vector<IntVector> hermite_reduce(std::vector<IntVector> basis, std::size_t dim);

// The solution set {v in (Z_q)^cols : M v == b (mod q)}. Built from one Smith
// decomposition; `solutions()` enumerates, `count()` is exact.
class ModularSolutionSet {
 public:
  ModularSolutionSet(const SmithForm& snf, const IntVector& b, std::int64_t q);

  bool consistent() const { return consistent_; }
  Int count() const;
  std::int64_t modulus() const { return q_; }

  // Sorted lexicographically. Throws CapacityError when count() > limit.
  std::vector<std::vector<std::int64_t>> solutions(std::uint64_t limit = 1000000) const;

  // Lexicographically smallest solution. Throws PreconditionError when the
  // set is empty and CapacityError when count() > limit.
  std::vector<std::int64_t> first(std::uint64_t limit = 1000000) const;

  // A deterministic solution obtained without enumeration.
  std::vector<std::int64_t> particular() const;

 private:
  void for_each(const std::function<void(const std::vector<std::int64_t>&)>& fn) const;

  std::int64_t q_;
  bool consistent_ = false;
  IntegerMatrix V_;
  // For each transformed coordinate: offset and step; the coordinate ranges
  // over offset + j*step (mod q) for j < choices.
  std::vector<std::int64_t> offset_, step_, choices_;
};

ModularSolutionSet solve_mod_q(const IntegerMatrix& m, const IntVector& b, std::int64_t q);

// A system whose Smith form is computed once and re-used across moduli.
class LinearSystem {
 public:
  explicit LinearSystem(IntegerMatrix m, bool track_left = true);
  const IntegerMatrix& matrix() const { return m_; }
  const SmithForm& smith() const { return snf_; }
  ModularSolutionSet solve_mod(const IntVector& b, std::int64_t q) const;
  ModularSolutionSet solve_homogeneous_mod(std::int64_t q) const;

 private:
  IntegerMatrix m_;
  SmithForm snf_;
};

struct CyclicGroup {
  std::int64_t modulus = 1;
};

using GroupElement = std::vector<std::int64_t>;

class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<std::int64_t> factors);
  static FiniteAbelianGroup cyclic(std::int64_t q);

  const std::vector<std::int64_t>& factors() const { return factors_; }
  std::size_t arity() const { return factors_.size(); }
  Int order() const;

  GroupElement zero() const { return GroupElement(factors_.size(), 0); }
  GroupElement reduce(GroupElement e) const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement negate(const GroupElement& a) const;
  GroupElement sub(const GroupElement& a, const GroupElement& b) const;
  bool contains(const GroupElement& e) const;
  void check_element(const GroupElement& e) const;

  std::string describe() const;
  bool operator==(const FiniteAbelianGroup&) const = default;

 private:
  std::vector<std::int64_t> factors_;
};

std::string element_to_string(const GroupElement& e);

// The subgroup generated by a list of elements, with its invariant-factor
// description and an explicit isomorphism onto prod Z_{d_i}.
struct Subgroup {
  FiniteAbelianGroup ambient;
  std::vector<GroupElement> generators;
  std::vector<GroupElement> elements;  // sorted
  std::vector<Int> invariant_factors;  // d1 | d2 | ..., all > 1
  Int order;

  bool contains(const GroupElement& e) const;
  FiniteAbelianGroup canonical_group() const;
  // Coordinates of an element in prod Z_{d_i}; throws if not a member.
  GroupElement canonical_coordinates(const GroupElement& e) const;
  std::string describe() const;

  std::map<GroupElement, GroupElement> coordinates;
};

// Throws CapacityError when the subgroup has more than `element_budget`
// elements; invariant factors are computed regardless via `subgroup_structure`.
Subgroup subgroup_generated(const FiniteAbelianGroup& g, const std::vector<GroupElement>& gens,
                            std::uint64_t element_budget = 1000000);

// Invariant factors of <gens> without enumerating elements.
std::vector<Int> subgroup_structure(const FiniteAbelianGroup& g,
                                    const std::vector<GroupElement>& gens);

// Number theory helpers shared by the other modules.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);
bool is_prime_power(std::int64_t q, std::int64_t* prime = nullptr, int* exponent = nullptr);
std::vector<std::int64_t> prime_powers_up_to(std::int64_t bound);
std::int64_t mod_floor(std::int64_t a, std::int64_t m);
std::int64_t checked_pow(std::int64_t base, int exp);
std::int64_t to_int64(const Int& v);

}  // namespace xorrep
