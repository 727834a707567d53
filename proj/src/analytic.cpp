#include "xorrep/analytic.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <numbers>

#include "xorrep/errors.hpp"

namespace xorrep {

namespace {

std::size_t table_size(std::size_t alphabet, int n, std::uint64_t budget = kTableBudget) {
  if (n < 0) throw InputError("dimension must be non-negative");
  const std::uint64_t s = checked_power(alphabet, n);
  if (s > budget) throw CapacityError("table of " + std::to_string(s) + " entries exceeds budget");
  return static_cast<std::size_t>(s);
}

cplx root_of_unity(std::int64_t m, std::int64_t k) {
  const double angle = 2 * std::numbers::pi * static_cast<double>(mod_floor(k, m)) /
                       static_cast<double>(m);
  return {std::cos(angle), std::sin(angle)};
}

std::vector<double> product_weights(const std::vector<double>& mu, int n) {
  const std::size_t M = mu.size();
  std::vector<double> w(table_size(M, n), 1.0);
  for (std::size_t idx = 0; idx < w.size(); ++idx) {
    std::size_t rest = idx;
    double p = 1.0;
    for (int i = 0; i < n; ++i) {
      p *= mu[rest % M];
      rest /= M;
    }
    w[idx] = p;
  }
  return w;
}

// Applies a square matrix along one axis: out(.., a, ..) = sum_b A[a][b] in(.., b, ..).
template <class Matrix>
std::vector<cplx> axis_apply(const std::vector<cplx>& in, std::size_t M, int n, int axis,
                             const Matrix& A) {
  std::size_t stride = 1;
  for (int i = axis + 1; i < n; ++i) stride *= M;
  std::vector<cplx> out(in.size(), 0.0);
  const std::size_t block = stride * M;
  std::vector<cplx> col(M);
  for (std::size_t base = 0; base < in.size(); base += block)
    for (std::size_t off = 0; off < stride; ++off) {
      for (std::size_t b = 0; b < M; ++b) col[b] = in[base + off + b * stride];
      for (std::size_t a = 0; a < M; ++a) {
        cplx acc = 0.0;
        for (std::size_t b = 0; b < M; ++b) acc += A[a][b] * col[b];
        out[base + off + a * stride] = acc;
      }
    }
  return out;
}

void check_table(const ComplexTable& F, std::size_t M) {
  if (F.alphabet != M) throw InputError("table alphabet does not match the distribution");
  if (F.values.size() != checked_power(M, F.n)) throw InputError("malformed table");
}

void check_mu(const std::vector<double>& mu) {
  if (mu.empty()) throw InputError("empty alphabet");
  double s = 0;
  for (double p : mu) {
    if (!(p > 0)) throw InputError("marginal weights must be positive");
    s += p;
  }
  if (std::fabs(s - 1) > 1e-9) throw InputError("marginal weights must sum to 1");
}

std::size_t degree_of(std::size_t idx, const DecompositionBasis& basis, int n) {
  const std::size_t M = basis.alphabet();
  std::size_t d = 0;
  for (int i = 0; i < n; ++i) {
    d += basis.high(idx % M);
    idx /= M;
  }
  return d;
}

}  // namespace

ComplexTable::ComplexTable(std::size_t alphabet_, int n_, cplx fill)
    : alphabet(alphabet_), n(n_), values(table_size(alphabet_, n_), fill) {}

ComplexTable ComplexTable::from_function(
    std::size_t alphabet, int n, const std::function<cplx(const std::vector<std::size_t>&)>& fn) {
  ComplexTable t(alphabet, n);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = fn(index_tuple(i, alphabet, n));
  return t;
}

double ComplexTable::max_abs() const {
  double m = 0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> marginal_weights(const TripartiteDistribution& dist, Axis a) {
  std::vector<double> out;
  for (const auto& p : dist.marginal(a)) out.push_back(p.get_d());
  return out;
}

PhaseTensor arithmetization_tensor(const XorGame& game) {
  PhaseTensor T;
  for (const auto& atom : game.dist.support) T.push_back(root_of_unity(game.modulus, -game.t(atom.q)));
  return T;
}

cplx arithmetize_win_probability(const XorGame& game, const Strategy& s, std::uint64_t budget) {
  validate(game);
  const int n = s.n;
  const std::int64_t m = game.modulus;
  const auto& supp = game.dist.support;
  const std::uint64_t events = checked_power(supp.size(), n);
  const std::uint64_t shifts = checked_power(static_cast<std::uint64_t>(m), n);
  const bool full = events <= budget && shifts <= budget / std::max<std::uint64_t>(events, 1);
  if (events > budget) throw CapacityError("arithmetization exceeds the event budget");

  std::vector<double> p;
  for (const auto& a : supp) p.push_back(a.p.get_d());
  const std::size_t ns = game.dist.sigma.size(), ng = game.dist.gamma.size(),
                    nf = game.dist.phi.size();

  cplx total = 0.0;
  std::vector<std::size_t> atom(n, 0);
  for (std::uint64_t e = 0; e < events; ++e) {
    std::vector<std::size_t> xs(n), ys(n), zs(n);
    double w = 1.0;
    std::vector<std::int64_t> t(n);
    for (int i = 0; i < n; ++i) {
      const auto& q = supp[atom[i]].q;
      xs[i] = q.x;
      ys[i] = q.y;
      zs[i] = q.z;
      w *= p[atom[i]];
      t[i] = game.t(q);
    }
    const auto& a = s.f[tuple_index(xs, ns)];
    const auto& b = s.g[tuple_index(ys, ng)];
    const auto& c = s.h[tuple_index(zs, nf)];
    cplx avg = 0.0;
    if (full) {
      // E_S of F_S G_S H_S T_S, with S running over Z_m^n.
      std::vector<std::int64_t> S(n, 0);
      for (std::uint64_t k = 0; k < shifts; ++k) {
        std::int64_t expo = 0;
        for (int i = 0; i < n; ++i) expo += S[i] * (a[i] + b[i] + c[i] - t[i]);
        avg += root_of_unity(m, expo % m);
        for (int i = n - 1; i >= 0; --i) {
          if (++S[i] < m) break;
          S[i] = 0;
        }
      }
      avg /= static_cast<double>(shifts);
    } else {
      avg = 1.0;
      for (int i = 0; i < n; ++i) {
        cplx inner = 0.0;
        for (std::int64_t si = 0; si < m; ++si)
          inner += root_of_unity(m, si * ((a[i] + b[i] + c[i] - t[i]) % m));
        avg *= inner / static_cast<double>(m);
      }
    }
    total += w * avg;
    for (int i = n - 1; i >= 0; --i) {
      if (++atom[i] < supp.size()) break;
      atom[i] = 0;
    }
  }
  return total;
}

cplx correlation(const ComplexTable& F, const ComplexTable& G, const ComplexTable& H,
                 const PhaseTensor& T, const TripartiteDistribution& dist, int n,
                 std::uint64_t budget) {
  const auto& supp = dist.support;
  if (T.size() != supp.size()) throw InputError("phase tensor does not match the support");
  check_table(F, dist.sigma.size());
  check_table(G, dist.gamma.size());
  check_table(H, dist.phi.size());
  if (F.n != n || G.n != n || H.n != n) throw InputError("table dimensions differ");
  const std::uint64_t events = checked_power(supp.size(), n);
  if (events > budget) throw CapacityError("correlation exceeds the event budget");
  std::vector<double> p;
  for (const auto& a : supp) p.push_back(a.p.get_d());
  cplx total = 0.0;
  std::vector<std::size_t> atom(n, 0);
  for (std::uint64_t e = 0; e < events; ++e) {
    std::size_t xi = 0, yi = 0, zi = 0;
    cplx w = 1.0;
    for (int i = 0; i < n; ++i) {
      const auto& q = supp[atom[i]].q;
      xi = xi * dist.sigma.size() + q.x;
      yi = yi * dist.gamma.size() + q.y;
      zi = zi * dist.phi.size() + q.z;
      w *= p[atom[i]] * T[atom[i]];
    }
    total += w * F[xi] * G[yi] * H[zi];
    for (int i = n - 1; i >= 0; --i) {
      if (++atom[i] < supp.size()) break;
      atom[i] = 0;
    }
  }
  return total;
}

cplx correlation_product(const std::vector<ComplexTable>& F, const std::vector<ComplexTable>& G,
                         const std::vector<ComplexTable>& H, const PhaseTensor& T,
                         const TripartiteDistribution& dist) {
  if (F.size() != G.size() || F.size() != H.size()) throw InputError("factor counts differ");
  cplx total = 1.0;
  for (std::size_t i = 0; i < F.size(); ++i) total *= correlation(F[i], G[i], H[i], T, dist, 1);
  return total;
}

namespace {

void check_two_player(const TwoPlayerInstance& inst) {
  if (inst.mu.empty() || inst.mu.size() != inst.T.size())
    throw InputError("malformed two-player instance");
  const std::size_t cols = inst.mu[0].size();
  double s = 0;
  for (std::size_t x = 0; x < inst.mu.size(); ++x) {
    if (inst.mu[x].size() != cols || inst.T[x].size() != cols)
      throw InputError("malformed two-player instance");
    for (double p : inst.mu[x]) {
      if (p < 0) throw InputError("negative probability");
      s += p;
    }
  }
  if (std::fabs(s - 1) > 1e-9) throw InputError("two-player weights must sum to 1");
}

}  // namespace

double two_player_spectral_norm(const TwoPlayerInstance& inst) {
  check_two_player(inst);
  const std::size_t rows = inst.mu.size(), cols = inst.mu[0].size();
  std::vector<double> mx(rows, 0), my(cols, 0);
  for (std::size_t x = 0; x < rows; ++x)
    for (std::size_t y = 0; y < cols; ++y) {
      mx[x] += inst.mu[x][y];
      my[y] += inst.mu[x][y];
    }
  Eigen::MatrixXcd A(rows, cols);
  for (std::size_t x = 0; x < rows; ++x)
    for (std::size_t y = 0; y < cols; ++y) {
      const double den = std::sqrt(mx[x] * my[y]);
      A(x, y) = den > 0 ? inst.mu[x][y] * inst.T[x][y] / den : cplx(0.0);
    }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  return svd.singularValues()(0);
}

cplx two_player_correlation(const TwoPlayerInstance& inst, const ComplexTable& F,
                            const ComplexTable& G, int n) {
  check_two_player(inst);
  const std::size_t rows = inst.mu.size(), cols = inst.mu[0].size();
  check_table(F, rows);
  check_table(G, cols);
  if (F.n != n || G.n != n) throw InputError("table dimensions differ");
  // Pairs with positive weight, then their n-fold products.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < rows; ++x)
    for (std::size_t y = 0; y < cols; ++y)
      if (inst.mu[x][y] > 0) pairs.emplace_back(x, y);
  const std::uint64_t events = checked_power(pairs.size(), n);
  if (events > kTableBudget) throw CapacityError("correlation exceeds the event budget");
  cplx total = 0.0;
  std::vector<std::size_t> k(n, 0);
  for (std::uint64_t e = 0; e < events; ++e) {
    std::size_t xi = 0, yi = 0;
    cplx w = 1.0;
    for (int i = 0; i < n; ++i) {
      const auto [x, y] = pairs[k[i]];
      xi = xi * rows + x;
      yi = yi * cols + y;
      w *= inst.mu[x][y] * inst.T[x][y];
    }
    total += w * F[xi] * G[yi];
    for (int i = n - 1; i >= 0; --i) {
      if (++k[i] < pairs.size()) break;
      k[i] = 0;
    }
  }
  return total;
}

std::size_t DecompositionBasis::high_count() const {
  std::size_t c = 0;
  for (int o : owner) c += o >= 0;
  return c;
}

double DecompositionBasis::orthonormality_error() const {
  double err = 0;
  for (std::size_t a = 0; a < vectors.size(); ++a)
    for (std::size_t b = 0; b < vectors.size(); ++b) {
      double s = 0;
      for (std::size_t x = 0; x < mu.size(); ++x) s += mu[x] * vectors[a][x] * vectors[b][x];
      err = std::max(err, std::fabs(s - (a == b ? 1.0 : 0.0)));
    }
  return err;
}

DecompositionBasis build_decomposition_basis(const std::vector<double>& mu,
                                             const std::vector<bool>& designated, BasisMode mode,
                                             const std::vector<int>& class_labels) {
  check_mu(mu);
  const std::size_t M = mu.size();
  if (designated.size() != M) throw InputError("designated mask length mismatch");
  if (mode == BasisMode::Modest && class_labels.size() != M)
    throw InputError("modest mode needs one class label per symbol");

  DecompositionBasis B;
  B.mode = mode;
  B.mu = mu;
  B.designated = designated;
  B.cls.assign(M, -1);
  std::map<int, int> ids;
  for (std::size_t x = 0; x < M; ++x) {
    if (!designated[x]) continue;
    const int label = mode == BasisMode::Effective ? 0 : class_labels[x];
    auto [it, fresh] = ids.try_emplace(label, static_cast<int>(ids.size()));
    B.cls[x] = it->second;
  }
  const int classes = static_cast<int>(ids.size());

  auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t x = 0; x < M; ++x) s += mu[x] * a[x] * b[x];
    return s;
  };
  // Gram-Schmidt against `against`, appending survivors with the given owner.
  auto push = [&](std::vector<double> v, const std::vector<std::vector<double>>& against,
                  int owner) {
    for (const auto& u : against) {
      const double c = dot(v, u);
      for (std::size_t x = 0; x < M; ++x) v[x] -= c * u[x];
    }
    for (std::size_t k = 0; k < B.vectors.size(); ++k) {
      if (B.owner[k] != owner) continue;
      const double c = dot(v, B.vectors[k]);
      for (std::size_t x = 0; x < M; ++x) v[x] -= c * B.vectors[k][x];
    }
    const double norm = std::sqrt(dot(v, v));
    if (norm < 1e-9) return;
    for (double& e : v) e /= norm;
    for (double e : v)
      if (std::fabs(e) > 1e-12) {
        if (e < 0)
          for (double& f : v) f = -f;
        break;
      }
    B.vectors.push_back(std::move(v));
    B.owner.push_back(owner);
  };

  push(std::vector<double>(M, 1.0), {}, -1);
  std::vector<std::vector<double>> class_ind(classes, std::vector<double>(M, 0.0));
  for (std::size_t x = 0; x < M; ++x)
    if (B.cls[x] >= 0) class_ind[B.cls[x]][x] = 1.0;
  for (const auto& v : class_ind) push(v, {}, -1);
  for (std::size_t x = 0; x < M; ++x)
    if (B.cls[x] < 0) {
      std::vector<double> e(M, 0.0);
      e[x] = 1.0;
      push(e, {}, -1);
    }
  for (int c = 0; c < classes; ++c) {
    std::vector<double> unit = class_ind[c];
    const double n = std::sqrt(dot(unit, unit));
    for (double& e : unit) e /= n;
    for (std::size_t x = 0; x < M; ++x)
      if (B.cls[x] == c) {
        std::vector<double> e(M, 0.0);
        e[x] = 1.0;
        push(e, {unit}, c);
      }
  }
  if (B.vectors.size() != M) throw PreconditionError("basis construction lost rank");
  return B;
}

DecompositionBasis build_decomposition_basis(const std::vector<double>& mu,
                                             const std::vector<bool>& designated,
                                             const MasterEmbedding& me) {
  if (me.alpha.size() != mu.size()) throw InputError("master embedding alphabet mismatch");
  std::map<GroupElement, int> labels;
  std::vector<int> cls;
  for (const auto& t : me.alpha) {
    auto [it, fresh] = labels.try_emplace(t, static_cast<int>(labels.size()));
    cls.push_back(it->second);
  }
  return build_decomposition_basis(mu, designated, BasisMode::Modest, cls);
}

double l2_norm_squared(const ComplexTable& F, const std::vector<double>& mu) {
  return inner_product(F, F, mu).real();
}

cplx inner_product(const ComplexTable& F, const ComplexTable& G, const std::vector<double>& mu) {
  check_table(F, mu.size());
  check_table(G, mu.size());
  if (F.n != G.n) throw InputError("table dimensions differ");
  const auto w = product_weights(mu, F.n);
  cplx s = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) s += w[i] * F[i] * std::conj(G[i]);
  return s;
}

Decomposition decompose(const ComplexTable& F, const DecompositionBasis& basis) {
  const std::size_t M = basis.alphabet();
  check_table(F, M);
  const int n = F.n;
  std::vector<std::vector<double>> fwd(M, std::vector<double>(M)), inv(M, std::vector<double>(M));
  for (std::size_t b = 0; b < M; ++b)
    for (std::size_t x = 0; x < M; ++x) {
      fwd[b][x] = basis.mu[x] * basis.vectors[b][x];
      inv[x][b] = basis.vectors[b][x];
    }
  std::vector<cplx> coeff = F.values;
  for (int i = 0; i < n; ++i) coeff = axis_apply(coeff, M, n, i, fwd);

  Decomposition D;
  D.coefficients = coeff;
  D.influence.assign(n, 0.0);
  std::vector<std::vector<cplx>> by_degree(n + 1, std::vector<cplx>(coeff.size(), 0.0));
  for (std::size_t idx = 0; idx < coeff.size(); ++idx) {
    const std::size_t d = degree_of(idx, basis, n);
    by_degree[d][idx] = coeff[idx];
    const double mass = std::norm(coeff[idx]);
    D.total_influence += static_cast<double>(d) * mass;
    std::size_t rest = idx;
    for (int i = n - 1; i >= 0; --i) {
      if (basis.high(rest % M)) D.influence[i] += mass;
      rest /= M;
    }
  }
  for (int d = 0; d <= n; ++d) {
    std::vector<cplx> v = std::move(by_degree[d]);
    for (int i = 0; i < n; ++i) v = axis_apply(v, M, n, i, inv);
    ComplexTable part;
    part.alphabet = M;
    part.n = n;
    part.values = std::move(v);
    D.parts.push_back(std::move(part));
  }
  return D;
}

double influence_by_resampling(const ComplexTable& F, const DecompositionBasis& basis, int i) {
  const std::size_t M = basis.alphabet();
  check_table(F, M);
  if (i < 0 || i >= F.n) throw InputError("coordinate out of range");
  std::vector<double> class_mass(M, 0.0);
  for (std::size_t x = 0; x < M; ++x)
    if (basis.cls[x] >= 0) class_mass[basis.cls[x]] += basis.mu[x];
  const auto w = product_weights(basis.mu, F.n);
  std::size_t stride = 1;
  for (int k = i + 1; k < F.n; ++k) stride *= M;
  double total = 0;
  for (std::size_t idx = 0; idx < F.size(); ++idx) {
    const std::size_t xi = (idx / stride) % M;
    if (basis.cls[xi] < 0) continue;
    const std::size_t base = idx - xi * stride;
    for (std::size_t y = 0; y < M; ++y) {
      if (basis.cls[y] != basis.cls[xi]) continue;
      const double py = basis.mu[y] / class_mass[basis.cls[xi]];
      total += w[idx] * py * std::norm(F[idx] - F[base + y * stride]);
    }
  }
  return total / 2;
}

ComplexTable apply_noise(const ComplexTable& F, const DecompositionBasis& basis, double rho) {
  if (rho < 0 || rho > 1) throw InputError("noise rate must lie in [0, 1]");
  const auto D = decompose(F, basis);
  ComplexTable out(F.alphabet, F.n);
  for (std::size_t d = 0; d < D.parts.size(); ++d) {
    const double scale = std::pow(1 - rho, static_cast<double>(d));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += scale * D.parts[d][i];
  }
  return out;
}

ComplexTable apply_noise_direct(const ComplexTable& F, const DecompositionBasis& basis,
                                double rho) {
  if (rho < 0 || rho > 1) throw InputError("noise rate must lie in [0, 1]");
  const std::size_t M = basis.alphabet();
  check_table(F, M);
  std::vector<double> class_mass(M, 0.0);
  for (std::size_t x = 0; x < M; ++x)
    if (basis.cls[x] >= 0) class_mass[basis.cls[x]] += basis.mu[x];
  std::vector<std::vector<double>> K(M, std::vector<double>(M, 0.0));
  for (std::size_t x = 0; x < M; ++x) {
    if (basis.cls[x] < 0) {
      K[x][x] = 1.0;
      continue;
    }
    K[x][x] = 1 - rho;
    for (std::size_t y = 0; y < M; ++y)
      if (basis.cls[y] == basis.cls[x]) K[x][y] += rho * basis.mu[y] / class_mass[basis.cls[x]];
  }
  std::vector<cplx> v = F.values;
  for (int i = 0; i < F.n; ++i) v = axis_apply(v, M, F.n, i, K);
  ComplexTable out;
  out.alphabet = M;
  out.n = F.n;
  out.values = std::move(v);
  return out;
}

SvdTriple svd_decompose(const ComplexTable& F, const std::vector<double>& mu) {
  check_mu(mu);
  const std::size_t M = mu.size();
  check_table(F, M);
  if (F.n < 1) throw InputError("SVD needs at least one coordinate");
  const std::size_t rows = F.size() / M;
  const auto w = product_weights(mu, F.n - 1);
  Eigen::MatrixXcd A(rows, M);
  for (std::size_t u = 0; u < rows; ++u)
    for (std::size_t v = 0; v < M; ++v)
      A(u, v) = std::sqrt(w[u]) * F[u * M + v] * std::sqrt(mu[v]);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const std::size_t terms = std::min(rows, M);
  SvdTriple out;
  for (std::size_t r = 0; r < terms; ++r) {
    out.singular.push_back(svd.singularValues()(r));
    ComplexTable left(M, F.n - 1), right(M, 1);
    for (std::size_t u = 0; u < rows; ++u) left[u] = svd.matrixU()(u, r) / std::sqrt(w[u]);
    for (std::size_t v = 0; v < M; ++v) right[v] = std::conj(svd.matrixV()(v, r)) / std::sqrt(mu[v]);
    out.left.push_back(std::move(left));
    out.right.push_back(std::move(right));
  }
  return out;
}

ComplexTable svd_reconstruct(const SvdTriple& svd, int n) {
  if (svd.right.empty()) throw InputError("empty decomposition");
  const std::size_t M = svd.right[0].alphabet;
  ComplexTable out(M, n);
  const std::size_t rows = out.size() / M;
  for (std::size_t r = 0; r < svd.singular.size(); ++r)
    for (std::size_t u = 0; u < rows; ++u)
      for (std::size_t v = 0; v < M; ++v)
        out[u * M + v] += svd.singular[r] * svd.left[r][u] * svd.right[r][v];
  return out;
}

}  // namespace xorrep
