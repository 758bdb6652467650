#ifndef NLW_CLI_RUN_HPP
#define NLW_CLI_RUN_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "nlw/io/config.hpp"

namespace nlw {

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"simulate",         "inflate",       "prob-strichartz",         "remainder",
                                              "gibbs-invariance", "quasi-moments", "regularized-convergence", "picard"};
  return names;
}

/// Master seed: the explicit override, else the config's "seed", else 0.
inline std::uint64_t resolve_seed(const nlohmann::json& cfg, std::optional<std::uint64_t> override_seed) {
  if (override_seed) return *override_seed;
  if (!cfg.is_object() || !cfg.contains("seed")) return 0;
  const auto& j = cfg["seed"];
  require(j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0), errc::type_error, "config key 'seed' must be a non-negative integer");
  return j.get<std::uint64_t>();
}

namespace detail {

template <class Config, class Runner>
ExperimentReport run_with(const std::string& sub, const nlohmann::json& obj, std::uint64_t seed, Runner&& runner,
                          const std::optional<unsigned>& threads) {
  Config c = read_config<Config>(obj, sub);
  if constexpr (requires { c.threads; })
    if (threads) c.threads = *threads;
  ExperimentReport rep = runner(c, seed);
  rep.config = config_echo(c);
  return rep;
}

}  // namespace detail

/// Parses, validates and runs one experiment. Thread count never changes results.
inline ExperimentReport run_subcommand(const std::string& sub, const nlohmann::json& obj, std::optional<std::uint64_t> seed_override = {},
                                       std::optional<unsigned> threads = {}) {
  require(obj.is_object(), errc::type_error, sub + ": config must be a JSON object");
  if (obj.contains("experiment"))
    require(obj["experiment"].is_string() && obj["experiment"] == sub, errc::constraint_violation,
            sub + ": config declares experiment " + obj["experiment"].dump());
  const std::uint64_t seed = resolve_seed(obj, seed_override);
  if (sub == "simulate") return detail::run_with<SimulateConfig>(sub, obj, seed, run_simulate, threads);
  if (sub == "picard") return detail::run_with<PicardConfig>(sub, obj, seed, run_picard, threads);
  if (sub == "inflate")
    return detail::run_with<InflationConfig>(sub, obj, seed, [](const InflationConfig& c, std::uint64_t) { return run_inflation(c); },
                                             threads);
  if (sub == "prob-strichartz") return detail::run_with<ProbStrichartzConfig>(sub, obj, seed, run_prob_strichartz, threads);
  if (sub == "remainder") return detail::run_with<RemainderConfig>(sub, obj, seed, run_remainder_growth, threads);
  if (sub == "gibbs-invariance") return detail::run_with<GibbsInvarianceConfig>(sub, obj, seed, run_gibbs_invariance, threads);
  if (sub == "quasi-moments") return detail::run_with<QuasiMomentsConfig>(sub, obj, seed, run_quasi_moments, threads);
  if (sub == "regularized-convergence") return detail::run_with<RegularizedConfig>(sub, obj, seed, run_regularized_convergence, threads);
  fail(errc::invalid_argument, "unknown subcommand '" + sub + "'");
}

/// Writes report.csv, report.json and attachments into a fresh directory,
/// then renames it into place. An existing `out` is replaced only with force.
inline void write_report_dir(const ExperimentReport& rep, const std::filesystem::path& out, bool force) {
  namespace fs = std::filesystem;
  std::error_code ec;
  require(force || !fs::exists(out), errc::io_error, "output directory '" + out.string() + "' exists (use --force to replace it)");
  const fs::path parent = out.has_parent_path() ? out.parent_path() : fs::path(".");
  fs::create_directories(parent, ec);
  require(!ec, errc::io_error, "cannot create '" + parent.string() + "': " + ec.message());
  const fs::path tmp = parent / ("." + out.filename().string() + ".partial");
  fs::remove_all(tmp, ec);
  fs::create_directory(tmp, ec);
  require(!ec, errc::io_error, "cannot create '" + tmp.string() + "': " + ec.message());
  const auto put = [&](const std::string& name, const std::string& bytes) {
    std::ofstream os(tmp / name, std::ios::binary);
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    require(static_cast<bool>(os), errc::io_error, "cannot write '" + (tmp / name).string() + "'");
  };
  put("report.csv", rep.rows.str());
  put("report.json", rep.to_json().dump(2) + "\n");
  for (const auto& [name, bytes] : rep.files) put(name, bytes);
  if (fs::exists(out)) fs::remove_all(out, ec);
  require(!ec, errc::io_error, "cannot remove '" + out.string() + "': " + ec.message());
  fs::rename(tmp, out, ec);
  require(!ec, errc::io_error, "cannot move report into '" + out.string() + "': " + ec.message());
}

}  // namespace nlw

#endif
