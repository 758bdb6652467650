#ifndef NLW_SOLVER_HPP
#define NLW_SOLVER_HPP

#include "nlw/solver/config.hpp"
#include "nlw/solver/local.hpp"
#include "nlw/solver/ode_v.hpp"
#include "nlw/solver/radial.hpp"
#include "nlw/solver/split.hpp"

#endif
