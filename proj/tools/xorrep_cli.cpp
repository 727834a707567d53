// Command-line front end: analyze, decay, cheby and selftest.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "xorrep/cheby.hpp"
#include "xorrep/embed.hpp"
#include "xorrep/errors.hpp"
#include "xorrep/gamefile.hpp"
#include "xorrep/report.hpp"
#include "xorrep/selftest.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSelftest = 1;
constexpr int kExitInput = 2;

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw xorrep::InputError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"XOR game repetition toolkit"};
  app.require_subcommand(1);

  std::string path, out_path;
  std::int64_t r = 0;
  int jmax = xorrep::kDefaultJMax;
  std::vector<int> n_list{1};
  std::uint64_t budget = xorrep::kDefaultBudget, seed = 1, iterations = 20000;

  auto* analyze = app.add_subcommand("analyze", "structural report for a game file");
  analyze->add_option("game", path, "game file (JSON)")->required();
  analyze->add_option("--r", r, "master-embedding order bound (0 = default)");
  analyze->add_option("--jmax", jmax, "largest exponent j tried for N = p^j");
  analyze->add_option("--n", n_list, "repetition counts for the value section");
  analyze->add_option("--budget", budget, "event budget")->envname("XORREP_BUDGET");
  analyze->add_option("--seed", seed, "search seed");
  analyze->add_option("--iterations", iterations, "search iterations");
  analyze->add_option("--out", out_path, "write the report here instead of stdout");

  int n_max = 3;
  std::string mode = "both";
  auto* decay = app.add_subcommand("decay", "value table for n = 1..n_max as CSV");
  decay->add_option("game", path, "game file (JSON)")->required();
  decay->add_option("--n", n_max, "largest n");
  decay->add_option("--mode", mode, "exact, search or both")
      ->check(CLI::IsMember({"exact", "search", "both"}));
  decay->add_option("--seed", seed, "search seed");
  decay->add_option("--iterations", iterations, "search iterations");
  decay->add_option("--budget", budget, "event budget")->envname("XORREP_BUDGET");
  decay->add_option("--out", out_path, "write the CSV here instead of stdout");

  int degree = 4;
  double eps = 0.25;
  auto* cheby = app.add_subcommand("cheby", "noise-mixing nodes, weights and audit");
  cheby->add_option("--d", degree, "degree")->check(CLI::Range(0, 200));
  cheby->add_option("--eps", eps, "epsilon in (0, 1/2)");
  cheby->add_option("--out", out_path, "write the table here instead of stdout");

  std::vector<std::string> scopes;
  std::string fault;
  auto* selftest = app.add_subcommand("selftest", "run the built-in invariant suite");
  selftest->add_option("--scope", scopes, "restrict to these scopes");
  selftest->add_option("--inject-fault", fault, "deliberately corrupt a check input")
      ->check(CLI::IsMember({"cheby-weight"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*analyze) {
      xorrep::AnalyzeOptions opts;
      opts.r = r;
      opts.j_max = jmax;
      opts.n_list = n_list;
      opts.budget = budget;
      opts.seed = seed;
      opts.iterations = iterations;
      const auto game = xorrep::read_game_file(path);
      emit(xorrep::analyze(game, opts).dump(2) + "\n", out_path);
    } else if (*decay) {
      xorrep::DecayOptions opts;
      opts.n_max = n_max;
      opts.mode = mode == "exact"    ? xorrep::DecayMode::Exact
                  : mode == "search" ? xorrep::DecayMode::Search
                                     : xorrep::DecayMode::Both;
      opts.seed = seed;
      opts.budget = budget;
      opts.iterations = iterations;
      const auto game = xorrep::read_game_file(path);
      emit(xorrep::decay_csv(game, opts), out_path);
    } else if (*cheby) {
      const auto nm = xorrep::noise_mix_coefficients(degree, eps);
      const auto audit = xorrep::audit_noise_mix(nm);
      std::string text = "j,rho,c\n";
      for (std::size_t j = 0; j < nm.rho.size(); ++j)
        text += std::to_string(j) + "," + xorrep::format_double(static_cast<double>(nm.rho[j])) +
                "," + xorrep::format_double(static_cast<double>(nm.c[j])) + "\n";
      text += "# abs_sum " + xorrep::format_double(static_cast<double>(audit.abs_sum)) +
              " chebyshev " + xorrep::format_double(static_cast<double>(audit.chebyshev_value)) +
              (audit.ok() ? " audit ok\n" : " audit failed: " + audit.failures() + "\n");
      emit(text, out_path);
      if (!audit.ok()) return kExitSelftest;
    } else if (*selftest) {
      xorrep::SelftestOptions opts;
      opts.scopes.insert(scopes.begin(), scopes.end());
      opts.corrupt_cheby_weight = fault == "cheby-weight";
      return xorrep::run_selftest(opts, std::cout) == 0 ? kExitOk : kExitSelftest;
    }
  } catch (const xorrep::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
