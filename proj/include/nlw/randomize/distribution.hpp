#ifndef NLW_RANDOMIZE_DISTRIBUTION_HPP
#define NLW_RANDOMIZE_DISTRIBUTION_HPP

#include <cmath>
#include <string>
#include <string_view>

#include "nlw/core/error.hpp"
#include "nlw/core/rng.hpp"

namespace nlw {

/// Law of the randomization coefficients. Every family has mean 0, variance 1
/// and E exp(g X) <= exp(c g^2) with c = 1/2:
///   gaussian   E e^{gX} = e^{g^2/2}
///   bernoulli  cosh g <= e^{g^2/2}
///   uniform    on (-sqrt3, sqrt3): sinh(sqrt3 g)/(sqrt3 g) <= e^{g^2/2}
struct CoefficientDistribution {
  enum class Family { gaussian, bernoulli, uniform };
  Family family = Family::gaussian;

  static constexpr double mgf_constant = 0.5;

  /// Exponent a in P(|sum c_n X_n| > lambda) <= 2 exp(-a lambda^2 / sum c_n^2),
  /// from the Chernoff bound with the mgf constant: a = 1/(4c).
  static constexpr double tail_constant = 1.0 / (4.0 * mgf_constant);

  double draw(const CounterRng& rng, std::uint64_t counter) const {
    switch (family) {
      case Family::gaussian: return rng.gaussian(counter);
      case Family::bernoulli: return rng.rademacher(counter);
      case Family::uniform: return std::sqrt(3.0) * (2.0 * rng.uniform(counter) - 1.0);
    }
    return 0.0;
  }

  /// log E exp(g X)
  double log_mgf(double g) const {
    if (g == 0.0) return 0.0;
    switch (family) {
      case Family::gaussian: return 0.5 * g * g;
      case Family::bernoulli: return std::log(std::cosh(g));
      case Family::uniform: {
        const double a = std::sqrt(3.0) * std::abs(g);
        return a + std::log1p(-std::exp(-2 * a)) - std::log(2 * a);
      }
    }
    return 0.0;
  }

  std::string name() const {
    switch (family) {
      case Family::gaussian: return "gaussian";
      case Family::bernoulli: return "bernoulli";
      case Family::uniform: return "uniform";
    }
    return "?";
  }

  static CoefficientDistribution parse(std::string_view s) {
    if (s == "gaussian") return {Family::gaussian};
    if (s == "bernoulli") return {Family::bernoulli};
    if (s == "uniform") return {Family::uniform};
    fail(errc::invalid_argument, "unknown coefficient distribution '" + std::string(s) + "'");
  }
};

}  // namespace nlw

#endif
