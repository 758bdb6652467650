#ifndef NLW_EXPERIMENTS_REPORT_HPP
#define NLW_EXPERIMENTS_REPORT_HPP

#include <chrono>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "nlw/io/report.hpp"

namespace nlw {

inline constexpr const char* library_version = "1.0.0";

/// One pass/fail decision against a declared tolerance.
struct Verdict {
  std::string criterion;  // acceptance criterion id, e.g. "C7"
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ExperimentReport {
  std::string name;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::uint64_t seed = 0;
  CsvTable rows{{}};
  std::vector<Verdict> verdicts;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
  double wall_seconds = 0.0;
  // Extra output files (name, bytes) written next to the report.
  std::vector<std::pair<std::string, std::string>> files;

  bool passed() const {
    for (const auto& v : verdicts)
      if (!v.pass) return false;
    return true;
  }

  void add_verdict(std::string criterion, std::string name, bool pass, double value, double threshold,
                   std::string detail = {}) {
    verdicts.push_back({std::move(criterion), std::move(name), pass, value, threshold, std::move(detail)});
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["experiment"] = name;
    j["version"] = library_version;
    j["seed"] = seed;
    j["config"] = config;
    j["passed"] = passed();
    auto& vs = j["verdicts"] = nlohmann::ordered_json::array();
    for (const auto& v : verdicts)
      vs.push_back({{"criterion", v.criterion}, {"name", v.name}, {"pass", v.pass}, {"value", v.value},
                    {"threshold", v.threshold}, {"detail", v.detail}});
    j["results"] = extra;
    j["rows"] = rows.size();
    j["wall_seconds"] = wall_seconds;
    return j;
  }
};

/// Measures wall-clock time of a scope into a report.
class WallClock {
 public:
  explicit WallClock(ExperimentReport& r) : report_(r), start_(std::chrono::steady_clock::now()) {}
  ~WallClock() {
    report_.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  ExperimentReport& report_;
  std::chrono::steady_clock::time_point start_;
};

/// True when every step of xs is strictly decreasing.
inline bool strictly_decreasing(const std::vector<double>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] < xs[i - 1])) return false;
  return true;
}

inline bool strictly_increasing(const std::vector<double>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1])) return false;
  return true;
}

/// Least-squares slope of y against x.
inline double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double k = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = k * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (k * sxy - sx * sy) / den;
}

}  // namespace nlw

#endif
