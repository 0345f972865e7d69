// dqspectra: spectral decompositions of dual quaternion matrices.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

std::vector<double> parse_h_list(const std::string& text) {
  std::vector<double> hs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double h = std::stod(item, &used);
    if (used != item.size() || !(h > 0.0)) throw CLI::ValidationError("--h", "expected positive numbers");
    hs.push_back(h);
  }
  if (hs.empty()) throw CLI::ValidationError("--h", "empty list");
  return hs;
}

}  // namespace

int main(int argc, char** argv) {
  using dqspectra::cli::RunConfig;

  CLI::App app{"Eigenvalues, square roots, SVD and ranks of dual quaternion matrices"};
  // --h is the oracle step list, so help is long-form only
  app.set_help_flag("--help", "print this help and exit");
  RunConfig cfg;
  std::string command;
  std::string h_list;
  std::size_t k = 0;

  app.add_option("command", command, "eig | svd | rank | sqrt | gen | oracle | verify")
      ->required()
      ->check(CLI::IsMember({"eig", "svd", "rank", "sqrt", "gen", "oracle", "verify"}));
  app.add_option("--in", cfg.in, "input DQMAT file (default: stdin)");
  app.add_option("--out", cfg.out, "output DQMAT file (factor, root, approximation or generated matrix)");
  app.add_option("--factor", cfg.factor, "verify: eigenvector factor U to check");
  app.add_option("--tol", cfg.tol.residual_tol, "residual tolerance")->check(CLI::PositiveNumber);
  app.add_option("--zero-tol", cfg.tol.zero_tol, "relative zero threshold")->check(CLI::PositiveNumber);
  app.add_option("--gap-tol", cfg.tol.gap_tol, "simple-spectrum gap")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "generator seed");
  app.add_option("--h", h_list, "oracle step sizes, comma separated (default 1e-4,1e-5)");
  app.add_option("--kind", cfg.kind, "gen: hermitian | general | psd | pose")
      ->check(CLI::IsMember({"hermitian", "general", "psd", "pose"}));
  app.add_option("--rows", cfg.rows, "gen: rows");
  app.add_option("--cols", cfg.cols, "gen: columns");
  auto* k_opt = app.add_option("--k", k, "svd: rank of the truncated approximation written to --out");

  try {
    app.parse(argc, argv);
    if (!h_list.empty()) cfg.hs = parse_h_list(h_list);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return dqspectra::cli::kRejected;
  }
  if (k_opt->count() > 0) cfg.k = k;

  if (const char* sweeps = std::getenv("DQSPECTRA_MAX_SWEEPS")) {
    try {
      cfg.tol.max_sweeps = std::stoi(sweeps);
    } catch (const std::exception&) {
      std::cerr << "error: DQSPECTRA_MAX_SWEEPS must be an integer\n";
      return dqspectra::cli::kRejected;
    }
  }

  return dqspectra::cli::run(command, cfg, std::cin, std::cout, std::cerr);
}
