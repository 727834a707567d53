// Analysis reports and decay tables for the command-line front end.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "xorrep/game.hpp"

namespace xorrep {

struct AnalyzeOptions {
  std::int64_t r = 0;  // master-embedding order bound, 0 for the default
  int j_max = 6;
  std::vector<int> n_list{1};
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t seed = 1;
  std::uint64_t iterations = 20000;
};

nlohmann::ordered_json analyze(const XorGame& game, const AnalyzeOptions& opts);

enum class DecayMode { Exact, Search, Both };

struct DecayOptions {
  int n_max = 3;
  DecayMode mode = DecayMode::Both;
  std::uint64_t seed = 1;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t iterations = 20000;
};

// Base of the spectral reference: (1 + sum_{s=1}^{m-1} sigma_s) / m, where
// sigma_s is the spectral norm of x against (y, z) with phases omega^{-s t}.
double spectral_reference_base(const XorGame& game);

// Header "n,exact_value,search_value,spectral_reference"; absent values are
// empty fields.
std::string decay_csv(const XorGame& game, const DecayOptions& opts);

std::string format_double(double v);

}  // namespace xorrep
