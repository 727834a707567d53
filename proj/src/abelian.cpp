#include "xorrep/abelian.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace xorrep {

namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

std::int64_t mod_of(const Int& v, std::int64_t q) {
  Int r;
  Int qq(static_cast<long>(q));
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), qq.get_mpz_t());
  return r.get_si();
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  Int inv;
  Int aa(static_cast<long>(a)), mm(static_cast<long>(m));
  if (mpz_invert(inv.get_mpz_t(), aa.get_mpz_t(), mm.get_mpz_t()) == 0) {
    throw PreconditionError("modular inverse does not exist");
  }
  return inv.get_si();
}

void swap_rows(IntegerMatrix& a, std::size_t r1, std::size_t r2) {
  if (r1 == r2) return;
  for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(r1, c), a(r2, c));
}

void swap_cols(IntegerMatrix& a, std::size_t c1, std::size_t c2) {
  if (c1 == c2) return;
  for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, c1), a(r, c2));
}

// row[dst] += k * row[src]
void add_row(IntegerMatrix& a, std::size_t dst, std::size_t src, const Int& k) {
  for (std::size_t c = 0; c < a.cols(); ++c) {
    if (a(src, c) != 0) a(dst, c) += k * a(src, c);
  }
}

void add_col(IntegerMatrix& a, std::size_t dst, std::size_t src, const Int& k) {
  for (std::size_t r = 0; r < a.rows(); ++r) {
    if (a(r, src) != 0) a(r, dst) += k * a(r, src);
  }
}

}  // namespace

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& other) const {
  if (cols_ != other.rows_) throw InputError("matrix dimension mismatch in product");
  IntegerMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(k, j);
    }
  }
  return out;
}

IntVector IntegerMatrix::operator*(const IntVector& v) const {
  if (cols_ != v.size()) throw InputError("matrix-vector dimension mismatch");
  IntVector out(rows_, Int(0));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  }
  return out;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntVector IntegerMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

IntVector IntegerMatrix::col(std::size_t c) const {
  IntVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

bool IntegerMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Int& v) { return v == 0; });
}

Int IntegerMatrix::determinant() const {
  if (rows_ != cols_) throw InputError("determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntegerMatrix a = *this;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      swap_rows(a, k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::string IntegerMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

SmithForm smith_normal_form(const IntegerMatrix& m, bool track_left) {
  const std::size_t R = m.rows(), C = m.cols();
  SmithForm f;
  f.S = m;
  if (track_left) f.U = IntegerMatrix::identity(R);
  f.V = IntegerMatrix::identity(C);
  IntegerMatrix& A = f.S;

  auto row_swap = [&](std::size_t a, std::size_t b) {
    swap_rows(A, a, b);
    if (track_left) swap_rows(f.U, a, b);
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    swap_cols(A, a, b);
    swap_cols(f.V, a, b);
  };
  auto row_add = [&](std::size_t dst, std::size_t src, const Int& k) {
    add_row(A, dst, src, k);
    if (track_left) add_row(f.U, dst, src, k);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Int& k) {
    add_col(A, dst, src, k);
    add_col(f.V, dst, src, k);
  };

  std::size_t t = 0;
  for (; t < std::min(R, C); ++t) {
    // Pivot: minimal |entry| in the active block, row-major tie-break.
    std::size_t pr = R, pc = C;
    for (std::size_t i = t; i < R; ++i) {
      for (std::size_t j = t; j < C; ++j) {
        if (A(i, j) == 0) continue;
        if (pr == R || abs(A(i, j)) < abs(A(pr, pc))) {
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == R) break;
    row_swap(t, pr);
    col_swap(t, pc);

    for (;;) {
      bool residue = false;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (A(i, t) == 0) continue;
        Int q = floor_div(A(i, t), A(t, t));
        row_add(i, t, -q);
        if (A(i, t) != 0) residue = true;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (A(t, j) == 0) continue;
        Int q = floor_div(A(t, j), A(t, t));
        col_add(j, t, -q);
        if (A(t, j) != 0) residue = true;
      }
      if (residue) {
        std::size_t br = t, bc = t;
        for (std::size_t i = t + 1; i < R; ++i)
          if (A(i, t) != 0 && abs(A(i, t)) < abs(A(br, bc))) br = i, bc = t;
        for (std::size_t j = t + 1; j < C; ++j)
          if (A(t, j) != 0 && abs(A(t, j)) < abs(A(br, bc))) br = t, bc = j;
        row_swap(t, br);
        col_swap(t, bc);
        continue;
      }
      std::size_t bad = R;
      for (std::size_t i = t + 1; i < R && bad == R; ++i) {
        for (std::size_t j = t + 1; j < C; ++j) {
          if (!mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
        }
      }
      if (bad == R) break;
      row_add(t, bad, 1);
    }
    if (A(t, t) < 0) {
      for (std::size_t j = 0; j < C; ++j) A(t, j) = -A(t, j);
      if (track_left)
        for (std::size_t j = 0; j < R; ++j) f.U(t, j) = -f.U(t, j);
    }
  }
  f.rank = t;
  return f;
}

std::vector<IntVector> hermite_reduce(std::vector<IntVector> basis, std::size_t dim) {
  std::vector<IntVector> pivot_row(dim);
  std::vector<bool> has(dim, false);
  for (auto& v : basis) {
    if (v.size() != dim) throw InputError("hermite_reduce: vector length mismatch");
    for (;;) {
      std::size_t c = 0;
      while (c < dim && v[c] == 0) ++c;
      if (c == dim) break;
      if (!has[c]) {
        pivot_row[c] = std::move(v);
        has[c] = true;
        break;
      }
      IntVector& r = pivot_row[c];
      Int g, s, u;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), r[c].get_mpz_t(), v[c].get_mpz_t());
      Int ra = r[c] / g, vb = v[c] / g;
      IntVector nr(dim), nv(dim);
      for (std::size_t j = 0; j < dim; ++j) {
        nr[j] = s * r[j] + u * v[j];
        nv[j] = ra * v[j] - vb * r[j];
      }
      r = std::move(nr);
      v = std::move(nv);
    }
  }
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < dim; ++c) {
    if (!has[c]) continue;
    if (pivot_row[c][c] < 0)
      for (auto& e : pivot_row[c]) e = -e;
    pivots.push_back(c);
  }
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const std::size_t c = pivots[i];
    const IntVector& p = pivot_row[c];
    for (std::size_t k = 0; k < i; ++k) {
      IntVector& row = pivot_row[pivots[k]];
      if (row[c] == 0) continue;
      Int q = floor_div(row[c], p[c]);
      for (std::size_t j = c; j < dim; ++j) row[j] -= q * p[j];
    }
  }
  std::vector<IntVector> out;
  out.reserve(pivots.size());
  for (std::size_t c : pivots) out.push_back(std::move(pivot_row[c]));
  return out;
}

std::vector<IntVector> integer_kernel(const IntegerMatrix& m) {
  const std::size_t C = m.cols();
  std::vector<IntVector> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  std::vector<IntVector> h = hermite_reduce(std::move(rows), C);

  std::vector<IntVector> kernel;
  if (h.empty()) {
    for (std::size_t i = 0; i < C; ++i) {
      IntVector e(C, Int(0));
      e[i] = 1;
      kernel.push_back(std::move(e));
    }
  } else {
    IntegerMatrix reduced(h.size(), C);
    for (std::size_t i = 0; i < h.size(); ++i)
      for (std::size_t j = 0; j < C; ++j) reduced(i, j) = h[i][j];
    SmithForm f = smith_normal_form(reduced, false);
    for (std::size_t i = f.rank; i < C; ++i) kernel.push_back(f.V.col(i));
  }
  kernel = hermite_reduce(std::move(kernel), C);
  std::sort(kernel.begin(), kernel.end());
  return kernel;
}

ModularSolutionSet::ModularSolutionSet(const SmithForm& snf, const IntVector& b, std::int64_t q)
    : q_(q), V_(snf.V) {
  const std::size_t R = snf.S.rows(), C = snf.S.cols();
  if (q < 1) throw InputError("modulus must be positive");
  if (b.size() != R) throw InputError("right-hand side length does not match the matrix rows");
  bool homogeneous = std::all_of(b.begin(), b.end(), [](const Int& v) { return v == 0; });
  IntVector ub(R, Int(0));
  if (!homogeneous) {
    if (snf.U.rows() != R) throw PreconditionError("inhomogeneous solve needs the left transform");
    ub = snf.U * b;
  }
  consistent_ = true;
  for (std::size_t i = snf.rank; i < R; ++i) {
    if (mod_of(ub[i], q) != 0) consistent_ = false;
  }
  offset_.assign(C, 0);
  step_.assign(C, 1);
  choices_.assign(C, q);
  for (std::size_t i = 0; i < snf.rank && consistent_; ++i) {
    const std::int64_t d = mod_of(snf.S(i, i), q);
    const std::int64_t c = mod_of(ub[i], q);
    const std::int64_t g = std::gcd(d, q);
    if (c % g != 0) {
      consistent_ = false;
      break;
    }
    const std::int64_t qg = q / g;
    std::int64_t w0 = 0;
    if (qg > 1) {
      const std::int64_t inv = inverse_mod((d / g) % qg, qg);
      Int prod = Int(static_cast<long>(c / g)) * Int(static_cast<long>(inv));
      w0 = mod_of(prod, qg);
    }
    offset_[i] = w0;
    step_[i] = qg;
    choices_[i] = g;
  }
}

Int ModularSolutionSet::count() const {
  if (!consistent_) return 0;
  Int n = 1;
  for (std::int64_t c : choices_) n *= static_cast<long>(c);
  return n;
}

void ModularSolutionSet::for_each(
    const std::function<void(const std::vector<std::int64_t>&)>& fn) const {
  if (!consistent_) return;
  const std::size_t C = choices_.size();
  std::vector<std::int64_t> idx(C, 0), w(C), v(C);
  std::vector<std::vector<std::int64_t>> vmod(C, std::vector<std::int64_t>(C));
  for (std::size_t i = 0; i < C; ++i)
    for (std::size_t j = 0; j < C; ++j) vmod[i][j] = mod_of(V_(i, j), q_);
  for (;;) {
    for (std::size_t i = 0; i < C; ++i) w[i] = (offset_[i] + idx[i] * step_[i]) % q_;
    for (std::size_t i = 0; i < C; ++i) {
      __int128 acc = 0;
      for (std::size_t j = 0; j < C; ++j) acc += static_cast<__int128>(vmod[i][j]) * w[j];
      v[i] = static_cast<std::int64_t>(acc % q_);
    }
    fn(v);
    std::size_t k = 0;
    while (k < C && ++idx[k] == choices_[k]) idx[k++] = 0;
    if (k == C) break;
  }
}

std::vector<std::vector<std::int64_t>> ModularSolutionSet::solutions(std::uint64_t limit) const {
  if (count() > Int(static_cast<unsigned long>(limit)))
    throw CapacityError("solution set has " + count().get_str() + " elements, over the limit");
  std::vector<std::vector<std::int64_t>> out;
  for_each([&](const std::vector<std::int64_t>& v) { out.push_back(v); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::int64_t> ModularSolutionSet::first(std::uint64_t limit) const {
  if (!consistent_) throw PreconditionError("empty solution set");
  if (count() > Int(static_cast<unsigned long>(limit)))
    throw CapacityError("solution set too large to scan for its minimum");
  std::vector<std::int64_t> best;
  for_each([&](const std::vector<std::int64_t>& v) {
    if (best.empty() || v < best) best = v;
  });
  return best;
}

std::vector<std::int64_t> ModularSolutionSet::particular() const {
  if (!consistent_) throw PreconditionError("empty solution set");
  const std::size_t C = choices_.size();
  std::vector<std::int64_t> v(C, 0);
  for (std::size_t i = 0; i < C; ++i) {
    Int acc = 0;
    for (std::size_t j = 0; j < C; ++j) acc += V_(i, j) * Int(static_cast<long>(offset_[j]));
    v[i] = mod_of(acc, q_);
  }
  return v;
}

ModularSolutionSet solve_mod_q(const IntegerMatrix& m, const IntVector& b, std::int64_t q) {
  if (b.size() != m.rows()) throw InputError("right-hand side length does not match the matrix rows");
  return ModularSolutionSet(smith_normal_form(m), b, q);
}

LinearSystem::LinearSystem(IntegerMatrix m, bool track_left)
    : m_(std::move(m)), snf_(smith_normal_form(m_, track_left)) {}

ModularSolutionSet LinearSystem::solve_mod(const IntVector& b, std::int64_t q) const {
  return ModularSolutionSet(snf_, b, q);
}

ModularSolutionSet LinearSystem::solve_homogeneous_mod(std::int64_t q) const {
  return ModularSolutionSet(snf_, IntVector(m_.rows(), Int(0)), q);
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> factors)
    : factors_(std::move(factors)) {
  for (auto q : factors_)
    if (q < 2) throw InputError("group factors must be at least 2");
}

FiniteAbelianGroup FiniteAbelianGroup::cyclic(std::int64_t q) {
  if (q < 1) throw InputError("cyclic group order must be positive");
  return q == 1 ? FiniteAbelianGroup() : FiniteAbelianGroup({q});
}

Int FiniteAbelianGroup::order() const {
  Int n = 1;
  for (auto q : factors_) n *= static_cast<long>(q);
  return n;
}

void FiniteAbelianGroup::check_element(const GroupElement& e) const {
  if (e.size() != factors_.size())
    throw InputError("element arity " + std::to_string(e.size()) + " does not match group " +
                     describe());
}

GroupElement FiniteAbelianGroup::reduce(GroupElement e) const {
  check_element(e);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = mod_floor(e[i], factors_[i]);
  return e;
}

GroupElement FiniteAbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  check_element(a);
  check_element(b);
  GroupElement out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mod_floor(a[i] + b[i], factors_[i]);
  return out;
}

GroupElement FiniteAbelianGroup::negate(const GroupElement& a) const {
  check_element(a);
  GroupElement out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mod_floor(-a[i], factors_[i]);
  return out;
}

GroupElement FiniteAbelianGroup::sub(const GroupElement& a, const GroupElement& b) const {
  return add(a, negate(b));
}

bool FiniteAbelianGroup::contains(const GroupElement& e) const {
  if (e.size() != factors_.size()) return false;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] < 0 || e[i] >= factors_[i]) return false;
  return true;
}

std::string FiniteAbelianGroup::describe() const {
  if (factors_.empty()) return "trivial";
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    s += (i ? " x Z" : "Z") + std::to_string(factors_[i]);
  return s;
}

std::string element_to_string(const GroupElement& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + ")";
}

namespace {

// Basis of {c in Z^k : sum c_j g_j = 0 in G}, and the Smith data of that
// relation lattice.
struct RelationData {
  std::vector<Int> factors;  // all diagonal entries, including units
  IntegerMatrix V;
};

RelationData relation_lattice(const FiniteAbelianGroup& g, const std::vector<GroupElement>& gens) {
  const std::size_t k = gens.size(), L = g.arity();
  RelationData out;
  if (k == 0) return out;
  IntegerMatrix sys(L, k + L);
  for (std::size_t l = 0; l < L; ++l) {
    for (std::size_t j = 0; j < k; ++j) sys(l, j) = static_cast<long>(gens[j][l]);
    sys(l, k + l) = static_cast<long>(g.factors()[l]);
  }
  std::vector<IntVector> ker = integer_kernel(sys);
  std::vector<IntVector> rel;
  for (auto& v : ker) rel.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
  rel = hermite_reduce(std::move(rel), k);
  IntegerMatrix B(rel.size(), k);
  for (std::size_t i = 0; i < rel.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) B(i, j) = rel[i][j];
  SmithForm f = smith_normal_form(B, false);
  if (f.rank != k) throw PreconditionError("relation lattice is not of full rank");
  for (std::size_t i = 0; i < k; ++i) out.factors.push_back(f.S(i, i));
  out.V = f.V;
  return out;
}

}  // namespace

std::vector<Int> subgroup_structure(const FiniteAbelianGroup& g,
                                    const std::vector<GroupElement>& gens) {
  for (const auto& e : gens)
    if (!g.contains(e)) throw InputError("generator " + element_to_string(e) + " not in " + g.describe());
  std::vector<Int> out;
  for (auto& d : relation_lattice(g, gens).factors)
    if (d > 1) out.push_back(d);
  return out;
}

Subgroup subgroup_generated(const FiniteAbelianGroup& g, const std::vector<GroupElement>& gens,
                            std::uint64_t element_budget) {
  for (const auto& e : gens)
    if (!g.contains(e)) throw InputError("generator " + element_to_string(e) + " not in " + g.describe());
  Subgroup s;
  s.ambient = g;
  s.generators = gens;
  RelationData rel = relation_lattice(g, gens);
  s.order = 1;
  for (auto& d : rel.factors) {
    if (d > 1) s.invariant_factors.push_back(d);
    s.order *= d;
  }
  if (s.order > Int(static_cast<unsigned long>(element_budget)))
    throw CapacityError("subgroup of order " + s.order.get_str() + " exceeds the element budget");

  const std::size_t k = gens.size();
  std::map<GroupElement, std::vector<std::int64_t>> combo;
  std::deque<GroupElement> queue;
  combo[g.zero()] = std::vector<std::int64_t>(k, 0);
  queue.push_back(g.zero());
  while (!queue.empty()) {
    GroupElement e = queue.front();
    queue.pop_front();
    const std::vector<std::int64_t> c = combo[e];
    for (std::size_t j = 0; j < k; ++j) {
      GroupElement n = g.add(e, gens[j]);
      if (combo.count(n)) continue;
      std::vector<std::int64_t> nc = c;
      ++nc[j];
      combo.emplace(n, std::move(nc));
      queue.push_back(std::move(n));
    }
  }
  for (const auto& [e, c] : combo) {
    s.elements.push_back(e);
    GroupElement coords;
    for (std::size_t i = 0; i < rel.factors.size(); ++i) {
      if (rel.factors[i] <= 1) continue;
      Int acc = 0;
      for (std::size_t j = 0; j < k; ++j) acc += Int(static_cast<long>(c[j])) * rel.V(j, i);
      coords.push_back(mod_of(acc, to_int64(rel.factors[i])));
    }
    s.coordinates.emplace(e, std::move(coords));
  }
  return s;
}

bool Subgroup::contains(const GroupElement& e) const {
  return std::binary_search(elements.begin(), elements.end(), e);
}

FiniteAbelianGroup Subgroup::canonical_group() const {
  std::vector<std::int64_t> f;
  for (auto& d : invariant_factors) f.push_back(to_int64(d));
  return FiniteAbelianGroup(f);
}

GroupElement Subgroup::canonical_coordinates(const GroupElement& e) const {
  auto it = coordinates.find(e);
  if (it == coordinates.end())
    throw InputError("element " + element_to_string(e) + " is not in the subgroup");
  return it->second;
}

std::string Subgroup::describe() const {
  if (invariant_factors.empty()) return "trivial";
  std::string s;
  for (std::size_t i = 0; i < invariant_factors.size(); ++i)
    s += (i ? " x Z" : "Z") + invariant_factors[i].get_str();
  return s;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  if (n < 1) throw InputError("factorize needs a positive integer");
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_prime_power(std::int64_t q, std::int64_t* prime, int* exponent) {
  if (q < 2) return false;
  auto f = factorize(q);
  if (f.size() != 1) return false;
  if (prime) *prime = f[0].first;
  if (exponent) *exponent = f[0].second;
  return true;
}

std::vector<std::int64_t> prime_powers_up_to(std::int64_t bound) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = 2; q <= bound; ++q)
    if (is_prime_power(q)) out.push_back(q);
  return out;
}

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t checked_pow(std::int64_t base, int exp) {
  __int128 r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > INT64_MAX) throw CapacityError("integer power overflows 64 bits");
  }
  return static_cast<std::int64_t>(r);
}

std::int64_t to_int64(const Int& v) {
  if (!v.fits_slong_p()) throw CapacityError("integer " + v.get_str() + " does not fit in 64 bits");
  return v.get_si();
}

}  // namespace xorrep
