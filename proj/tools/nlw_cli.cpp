// nlw: runs one experiment from a JSON config and writes report.csv and
// report.json. Exit status: 0 all verdicts pass, 2 a verdict failed, 1 error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nlw/cli/run.hpp"

namespace {

struct Options {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool force = false;
  bool verbose = false;
};

int run(const std::string& sub, const Options& opt, std::optional<std::uint64_t> seed) {
  const nlohmann::json cfg = opt.config.empty() ? nlohmann::json::object() : nlw::load_json_file(opt.config);
  // fail before a long run if the output cannot be written
  nlw::require(opt.force || !std::filesystem::exists(opt.out), nlw::errc::io_error,
               "output directory '" + opt.out + "' exists (use --force to replace it)");
  const nlw::ExperimentReport rep = nlw::run_subcommand(sub, cfg, seed, opt.threads);
  nlw::write_report_dir(rep, opt.out, opt.force);
  for (const auto& v : rep.verdicts)
    std::cout << (v.pass ? "PASS " : "FAIL ") << v.criterion << ' ' << v.name << " (value " << nlw::format_number(v.value)
              << ", threshold " << nlw::format_number(v.threshold) << ")\n";
  if (opt.verbose)
    std::cerr << rep.name << ": seed " << rep.seed << ", " << rep.rows.size() << " rows, " << rep.wall_seconds << " s -> " << opt.out
              << '\n';
  return rep.passed() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral NLW simulator and statistical experiments"};
  app.require_subcommand(1);
  Options opt;
  for (const auto& name : nlw::subcommands()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", opt.config, "JSON config file (defaults when omitted)")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "output directory")->required();
    sub->add_option("--seed", opt.seed, "master seed (overrides the config)");
    sub->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--force", opt.force, "replace an existing output directory");
    sub->add_flag("--verbose", opt.verbose, "progress on stderr");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  const CLI::App* chosen = app.get_subcommands().front();
  try {
    std::optional<std::uint64_t> seed;
    if (chosen->count("--seed") > 0) seed = opt.seed;
    return run(chosen->get_name(), opt, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
