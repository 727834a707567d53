// Fourier-analytic toolkit: arithmetized win probability, correlation
// tensors, the two-player spectral bound, Efron-Stein style decompositions
// relative to a designated symbol subset, noise operators and function SVD.

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "xorrep/embed.hpp"
#include "xorrep/game.hpp"

namespace xorrep {

using cplx = std::complex<double>;

constexpr double kTolerance = 1e-9;
constexpr std::uint64_t kTableBudget = 10000000;

// Values on Sigma^n, mixed radix with coordinate 0 most significant.
struct ComplexTable {
  std::size_t alphabet = 1;
  int n = 1;
  std::vector<cplx> values;

  ComplexTable() = default;
  ComplexTable(std::size_t alphabet, int n, cplx fill = 0.0);
  static ComplexTable from_function(std::size_t alphabet, int n,
                                    const std::function<cplx(const std::vector<std::size_t>&)>& fn);

  std::size_t size() const { return values.size(); }
  cplx& operator[](std::size_t i) { return values[i]; }
  const cplx& operator[](std::size_t i) const { return values[i]; }
  double max_abs() const;
};

std::vector<double> marginal_weights(const TripartiteDistribution& dist, Axis a);

// Phase values aligned with dist.support.
using PhaseTensor = std::vector<cplx>;

PhaseTensor arithmetization_tensor(const XorGame& game);  // omega^{-t}

// E_S E[ F_S G_S H_S T_S ], S uniform on Z_m^n. Uses full enumeration of S
// while m^n * |supp|^n fits the budget, and the coordinate-factored form
// of the S-average otherwise.
cplx arithmetize_win_probability(const XorGame& game, const Strategy& s,
                                 std::uint64_t budget = kTableBudget);

// E_{mu^n}[F(x) G(y) H(z) prod_i T(x_i, y_i, z_i)].
cplx correlation(const ComplexTable& F, const ComplexTable& G, const ComplexTable& H,
                 const PhaseTensor& T, const TripartiteDistribution& dist, int n,
                 std::uint64_t budget = kTableBudget);

// Product-form inputs: one single-coordinate table per coordinate.
cplx correlation_product(const std::vector<ComplexTable>& F, const std::vector<ComplexTable>& G,
                         const std::vector<ComplexTable>& H, const PhaseTensor& T,
                         const TripartiteDistribution& dist);

// Two-player instance: weights mu(x, y) and phases T(x, y).
struct TwoPlayerInstance {
  std::vector<std::vector<double>> mu;
  std::vector<std::vector<cplx>> T;
};

double two_player_spectral_norm(const TwoPlayerInstance& inst);
cplx two_player_correlation(const TwoPlayerInstance& inst, const ComplexTable& F,
                            const ComplexTable& G, int n);

enum class BasisMode { Effective, Modest };

// Orthonormal basis of L2(Sigma, mu) split into a low part (functions
// constant on every class) and high parts (functions supported on one class
// and orthogonal to constants). Effective mode uses the whole designated
// subset as one class; modest mode splits it by master-embedding value.
struct DecompositionBasis {
  BasisMode mode = BasisMode::Effective;
  std::vector<double> mu;
  std::vector<bool> designated;
  std::vector<int> cls;                      // class per symbol, -1 outside the subset
  std::vector<std::vector<double>> vectors;  // basis functions
  std::vector<int> owner;                    // -1 for low functions, class id otherwise

  std::size_t alphabet() const { return mu.size(); }
  bool high(std::size_t b) const { return owner[b] >= 0; }
  std::size_t high_count() const;
  // Gram matrix deviation from the identity.
  double orthonormality_error() const;
};

DecompositionBasis build_decomposition_basis(const std::vector<double>& mu,
                                             const std::vector<bool>& designated, BasisMode mode,
                                             const std::vector<int>& class_labels = {});

DecompositionBasis build_decomposition_basis(const std::vector<double>& mu,
                                             const std::vector<bool>& designated,
                                             const MasterEmbedding& me);

struct Decomposition {
  std::vector<ComplexTable> parts;  // parts[d] has degree d
  std::vector<double> influence;    // per coordinate, spectral
  double total_influence = 0;       // sum_d d * |F^{=d}|^2
  std::vector<cplx> coefficients;   // indexed by basis tuples
};

double l2_norm_squared(const ComplexTable& F, const std::vector<double>& mu);
cplx inner_product(const ComplexTable& F, const ComplexTable& G, const std::vector<double>& mu);

Decomposition decompose(const ComplexTable& F, const DecompositionBasis& basis);

// 1/2 E|F(x) - F(y)|^2 where y resamples coordinate i within the class of x_i.
double influence_by_resampling(const ComplexTable& F, const DecompositionBasis& basis, int i);

// sum_d (1-rho)^d F^{=d}
ComplexTable apply_noise(const ComplexTable& F, const DecompositionBasis& basis, double rho);
// E_{y ~ N(x)} F(y) through the per-coordinate Markov kernel.
ComplexTable apply_noise_direct(const ComplexTable& F, const DecompositionBasis& basis,
                                double rho);

struct SvdTriple {
  std::vector<double> singular;     // non-increasing
  std::vector<ComplexTable> left;   // on Sigma^{n-1}
  std::vector<ComplexTable> right;  // on Sigma
};

// F(x) = sum_r s_r left_r(x_1..x_{n-1}) right_r(x_n), with both families
// orthonormal under mu and sum s_r^2 = |F|^2.
SvdTriple svd_decompose(const ComplexTable& F, const std::vector<double>& mu);

ComplexTable svd_reconstruct(const SvdTriple& svd, int n);

}  // namespace xorrep
