#ifndef NLW_RANDOMIZE_MANIFEST_HPP
#define NLW_RANDOMIZE_MANIFEST_HPP

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace nlw {

/// Record of how an ensemble was drawn.
struct EnsembleManifest {
  std::string sampler;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::uint64_t master_seed = 0;
  std::string stream_id;
  std::uint64_t samples = 0;
  std::uint64_t proposals = 0;

  double acceptance_rate() const { return proposals ? static_cast<double>(samples) / proposals : 0.0; }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["sampler"] = sampler;
    j["parameters"] = parameters;
    j["master_seed"] = master_seed;
    j["stream_id"] = stream_id;
    j["sample_count"] = samples;
    j["proposals"] = proposals;
    j["acceptance_rate"] = acceptance_rate();
    return j;
  }
};

}  // namespace nlw

#endif
