#ifndef NLW_IO_CONFIG_HPP
#define NLW_IO_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <set>
#include <string>
#include <type_traits>
#include <vector>

#include <nlohmann/json.hpp>

#include "nlw/core/error.hpp"
#include "nlw/experiments/gibbs.hpp"
#include "nlw/experiments/inflation.hpp"
#include "nlw/experiments/prob_strichartz.hpp"
#include "nlw/experiments/quasi_moments.hpp"
#include "nlw/experiments/regularized.hpp"
#include "nlw/experiments/remainder.hpp"
#include "nlw/experiments/simulate.hpp"

namespace nlw {

// A config file is one JSON object of experiment parameters. Every key is
// optional and has a default; "experiment" (must match the subcommand) and
// "seed" are also accepted. Any other key is an UnknownKey error.

/// Marks a double whose JSON form may be the string "auto" (stored as NaN).
struct AutoDouble {
  double& value;
};

namespace detail {

template <class T>
constexpr const char* json_type_name() {
  if constexpr (std::is_same_v<T, bool>) return "boolean";
  else if constexpr (std::is_integral_v<T>) return "integer";
  else if constexpr (std::is_floating_point_v<T>) return "number";
  else return "string";
}

template <class T>
bool json_holds(const nlohmann::json& j) {
  if constexpr (std::is_same_v<T, bool>) return j.is_boolean();
  else if constexpr (std::is_unsigned_v<T>) return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0);
  else if constexpr (std::is_integral_v<T>) return j.is_number_integer();
  else if constexpr (std::is_floating_point_v<T>) return j.is_number();
  else return j.is_string();
}

}  // namespace detail

/// Strict reader: typed fields, and unknown keys reported by finish().
class ConfigReader {
 public:
  ConfigReader(const nlohmann::json& obj, std::string context) : obj_(obj), context_(std::move(context)) {
    require(obj_.is_object(), errc::type_error, context_ + ": config must be a JSON object");
  }

  template <class T>
  void operator()(const char* key, T& field) {
    const nlohmann::json* j = take(key);
    if (!j) return;
    field = convert<T>(*j, key);
  }

  template <class T>
  void operator()(const char* key, std::vector<T>& field) {
    const nlohmann::json* j = take(key);
    if (!j) return;
    require(j->is_array(), errc::type_error, where(key) + " must be an array of " + detail::json_type_name<T>() + "s");
    std::vector<T> out;
    for (const auto& e : *j) out.push_back(convert<T>(e, key));
    field = std::move(out);
  }

  void operator()(const char* key, AutoDouble field) {
    const nlohmann::json* j = take(key);
    if (!j) return;
    if (j->is_string() && *j == "auto")
      field.value = std::numeric_limits<double>::quiet_NaN();
    else
      field.value = convert<double>(*j, key);
  }

  /// Throws UnknownKey naming the first key nobody read.
  void finish(const std::set<std::string>& reserved = {}) const {
    for (const auto& [k, _] : obj_.items())
      require(used_.count(k) || reserved.count(k), errc::unknown_key, context_ + ": unknown config key '" + k + "'");
  }

 private:
  const nlohmann::json* take(const char* key) {
    used_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  std::string where(const char* key) const { return context_ + ": key '" + std::string(key) + "'"; }

  template <class T>
  T convert(const nlohmann::json& j, const char* key) const {
    require(detail::json_holds<T>(j), errc::type_error, where(key) + " must be " + detail::json_type_name<T>() + ", got " + j.type_name());
    return j.get<T>();
  }

  const nlohmann::json& obj_;
  std::string context_;
  std::set<std::string> used_;
};

/// Echo of a filled config, in field order.
class ConfigWriter {
 public:
  template <class T>
  void operator()(const char* key, const T& field) {
    out[key] = field;
  }
  void operator()(const char* key, AutoDouble field) {
    if (std::isnan(field.value))
      out[key] = "auto";
    else
      out[key] = field.value;
  }

  nlohmann::ordered_json out = nlohmann::ordered_json::object();
};

template <class V>
void visit_fields(DataConfig& c, V&& v) {
  v("dim", c.dim);
  v("modes", c.modes);
  v("dealias", c.dealias);
  v("data", c.data);
  v("snapshot_path", c.snapshot_path);
  v("s", c.s);
  v("eps", c.eps);
  v("distribution", c.distribution);
  v("amplitude", c.amplitude);
}

template <class V>
void visit_fields(SimulateConfig& c, V&& v) {
  visit_fields(c.data, v);
  v("T", c.T);
  v("dt", c.dt);
  v("nonlinear", c.nonlinear);
  v("truncation", c.truncation);
  v("observe_every", c.observe_every);
  v("sobolev", c.sobolev);
  v("snapshot_every", c.snapshot_every);
  v("drift_tolerance", c.drift_tolerance);
}

template <class V>
void visit_fields(PicardConfig& c, V&& v) {
  visit_fields(c.data, v);
  v("iterations", c.iterations);
  v("window", c.window);
  v("panels", c.panels);
  v("quad_points", c.quad_points);
  v("split_substeps", c.split_substeps);
  v("agreement_tolerance", c.agreement_tolerance);
  v("split_tolerance", c.split_tolerance);
}

template <class V>
void visit_fields(InflationConfig& c, V&& v) {
  v("dim", c.dim);
  v("s", c.s);
  v("delta1", c.delta1);
  v("delta2", c.delta2);
  v("n_list", c.n_list);
  v("bump_rho0", c.bump.rho0);
  v("xi_max", c.xi_max);
  v("pde", c.pde);
  v("pde_modes", c.pde_modes);
  v("pde_dealias", c.pde_dealias);
  v("pde_n", c.pde_n);
  v("pde_steps", c.pde_steps);
  v("pde_samples", c.pde_samples);
}

template <class V>
void visit_fields(ProbStrichartzConfig& c, V&& v) {
  v("dim", c.dim);
  v("modes", c.modes);
  v("s", c.s);
  v("eps", c.eps);
  v("distributions", c.distributions);
  v("p_list", c.p_list);
  v("p1", c.p1);
  v("p2", c.p2);
  v("delta", c.delta);
  v("t_max", c.t_max);
  v("nodes_per_unit_time", c.nodes_per_unit_time);
  v("samples", c.samples);
  v("slope_max", c.slope_max);
  v("tail_shape_min", c.tail_shape_min);
}

template <class V>
void visit_fields(RemainderConfig& c, V&& v) {
  v("dim", c.dim);
  v("modes", c.modes);
  v("s", c.s);
  v("eps", c.eps);
  v("distribution", c.distribution);
  v("samples", c.samples);
  v("T", c.T);
  v("dt", c.dt);
  v("observe_every", c.observe_every);
  v("sigma", c.sigma);
  v("q", c.q);
}

template <class V>
void visit_fields(GibbsInvarianceConfig& c, V&& v) {
  v("alpha", c.alpha);
  v("modes", c.modes);
  v("truncation", c.truncation);
  v("points", c.points);
  v("t", c.t);
  v("dt", c.dt);
  v("samples", c.samples);
  v("measure", c.measure);
  v("nonlinear", c.nonlinear);
  v("se_factor", c.se_factor);
  v("max_proposals", c.max_proposals);
}

template <class V>
void visit_fields(QuasiMomentsConfig& c, V&& v) {
  v("s", c.s);
  v("modes", c.modes);
  v("n_list", c.n_list);
  v("r", AutoDouble{c.r});
  v("pilot_quantile", c.pilot_quantile);
  v("pilot_samples", c.pilot_samples);
  v("p_list", c.p_list);
  v("samples", c.samples);
  v("fd_steps", c.fd_steps);
  v("fd_n", c.fd_n);
  v("fd_samples", c.fd_samples);
  v("fd_substeps", c.fd_substeps);
  v("fd_order_min", c.fd_order_min);
  v("moment_factor", c.moment_factor);
  v("n_stability", c.n_stability);
  v("sigma_n_pair", c.sigma_n_pair);
  v("sigma_tolerance", c.sigma_tolerance);
  v("max_proposals", c.max_proposals);
}

template <class V>
void visit_fields(RegularizedConfig& c, V&& v) {
  v("dim", c.dim);
  v("modes", c.modes);
  v("s", c.s);
  v("eps", c.eps);
  v("distribution", c.distribution);
  v("mollifiers", c.mollifiers);
  v("n_list", c.n_list);
  v("T", c.T);
  v("dt", c.dt);
  v("commutation_tolerance", c.commutation_tolerance);
}

/// Defaults overwritten by the keys of obj, then validated.
template <class Config>
Config read_config(const nlohmann::json& obj, const std::string& context) {
  Config c;
  ConfigReader r(obj, context);
  visit_fields(c, r);
  r.finish({"experiment", "seed"});
  c.validate();
  return c;
}

template <class Config>
nlohmann::ordered_json config_echo(Config c) {
  ConfigWriter w;
  visit_fields(c, w);
  return w.out;
}

/// Parses a JSON file; malformed JSON is a TypeError, a missing file an IoError.
inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream is(path);
  require(static_cast<bool>(is), errc::io_error, "cannot open config '" + path + "'");
  try {
    return nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    fail(errc::type_error, "config '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace nlw

#endif
