#ifndef NLW_RANDOMIZE_REJECTION_HPP
#define NLW_RANDOMIZE_REJECTION_HPP

#include <cmath>
#include <cstdint>
#include <limits>

#include "nlw/randomize/samplers.hpp"
#include "nlw/solver/radial.hpp"

namespace nlw {

/// Proposal generator j of a rejection loop keyed by `rng`: proposal 0 uses
/// `rng` itself, so a constraint that accepts everything reproduces the base
/// sampler's stream.
inline CounterRng proposal_rng(const CounterRng& rng, std::uint64_t j) { return j == 0 ? rng : rng.child(j); }

/// Separate stream for acceptance uniforms.
inline CounterRng acceptance_rng(const CounterRng& rng) { return rng.child(0xacce97ULL); }

struct GibbsSpec {
  double alpha = 2.0;
  int truncation = 32;  // N
  int modes = 64;       // M of the free-measure proposal
  int points = 0;       // radial grid, 0 -> 2M
  std::uint64_t max_proposals = 1u << 20;

  void validate() const {
    require(alpha > 0.0 && alpha < 4.0, errc::alpha_out_of_range, "Gibbs measure needs 0 < alpha < 4");
    require(truncation >= 1 && truncation <= modes, errc::invalid_argument, "Gibbs measure needs 1 <= N <= M");
  }
};

/// exp(-potential), the density of rho_N with respect to the free measure.
inline double gibbs_weight(const RadialState& u, double alpha, int n_trunc) {
  require(alpha > 0.0 && alpha < 4.0, errc::alpha_out_of_range, "Gibbs weight needs 0 < alpha < 4");
  return std::exp(-radial_potential(u, alpha, n_trunc));
}

template <class State>
struct Accepted {
  State state;
  std::uint64_t proposals = 0;  // including the accepted one
};

/// Exact rejection sampler for rho_N: propose from the free measure, accept
/// with probability gibbs_weight (<= 1).
inline Accepted<RadialState> sample_gibbs(const GibbsSpec& spec, const CounterRng& rng) {
  spec.validate();
  const CounterRng acc = acceptance_rng(rng);
  for (std::uint64_t j = 0; j < spec.max_proposals; ++j) {
    RadialState x = sample_radial_free(spec.modes, proposal_rng(rng, j), spec.points);
    if (acc.uniform(j) < gibbs_weight(x, spec.alpha, spec.truncation)) return {std::move(x), j + 1};
  }
  fail(errc::zero_acceptance, "sample_gibbs: no proposal accepted within the budget");
}

/// Rejection sampler for base restricted to {functional <= r}.
/// `base(rng)` draws one proposal; r = +inf accepts the first proposal.
template <class Base, class Functional>
auto sample_restricted(Base&& base, Functional&& functional, double r, const CounterRng& rng,
                       std::uint64_t max_proposals = 1u << 16) {
  using State = std::invoke_result_t<Base&, const CounterRng&>;
  for (std::uint64_t j = 0; j < max_proposals; ++j) {
    State x = base(proposal_rng(rng, j));
    if (r == std::numeric_limits<double>::infinity() || functional(x) <= r) return Accepted<State>{std::move(x), j + 1};
  }
  fail(errc::zero_acceptance, "sample_restricted: no proposal satisfied the constraint within the budget");
}

}  // namespace nlw

#endif
