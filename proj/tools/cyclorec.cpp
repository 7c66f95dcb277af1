// Command line front end: cyclorec <command> --config job.json --out dir [overrides]

#include <CLI11.hpp>
#include <iostream>

#include "cyclorec/config.hpp"
#include "cyclorec/errors.hpp"
#include "cyclorec/run.hpp"

namespace {

constexpr int kUsage = 1;

std::string joined_commands() {
  std::string s;
  for (const auto& n : cyclorec::command_names()) s += (s.empty() ? "" : " | ") + n;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Values of parametric recurrences at roots of unity: terms, factorizations, bounds, S-unit sums"};
  std::string command, config_path, out_dir = "out";
  std::optional<unsigned> workers;
  std::optional<long> precision, budget_ms;
  std::optional<unsigned long> n_max;

  app.add_option("command", command, joined_commands())->required()->check(CLI::IsMember(cyclorec::command_names()));
  app.add_option("--config", config_path, "JSON job configuration")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory for CSV/JSON artifacts");
  app.add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--precision", precision, "Working precision in bits")->check(CLI::Range(32, 1 << 16));
  app.add_option("--n-max", n_max, "Upper end of the n range");
  app.add_option("--budget-ms", budget_ms, "Factorization budget in milliseconds")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    cyclorec::JobConfig cfg = cyclorec::parse_config(config_path);
    if (workers) cfg.workers = *workers;
    if (precision) cfg.precision = *precision;
    if (budget_ms) cfg.budget_ms = *budget_ms;
    if (n_max) {
      const unsigned long lo = cfg.n_range ? cfg.n_range->lo : 0;
      if (*n_max < lo) throw cyclorec::ValidationError("--n-max is below the start of job.n_range");
      cfg.n_range = cyclorec::NRange{lo, *n_max};
    }
    const auto result = cyclorec::run(*cyclorec::parse_command(command), cfg, out_dir);
    for (const auto& a : result.artifacts) std::cout << a.string() << '\n';
    if (result.exit_code != 0) std::cerr << "cyclorec " << command << ": " << result.message << '\n';
    return result.exit_code;
  } catch (const cyclorec::Error& e) {
    std::cerr << "cyclorec: " << e.what() << '\n';
    return static_cast<int>(e.error_class());
  }
}
