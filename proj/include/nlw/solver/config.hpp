#ifndef NLW_SOLVER_CONFIG_HPP
#define NLW_SOLVER_CONFIG_HPP

#include <functional>

#include "nlw/spectral/field.hpp"

namespace nlw {

struct SolveConfig {
  double dt = 1e-3;
  bool nonlinear = true;
  // local (Picard) solver
  int max_picard_iters = 80;
  double tolerance = 1e-13;
  int panels = 8;
  int quad_points = 4;
};

/// Called with (t, state) after every `observe_every`-th step and at the end.
using StepObserver = std::function<void(double, const StatePair&)>;

}  // namespace nlw

#endif
