#ifndef NLW_PROPAGATOR_HPP
#define NLW_PROPAGATOR_HPP

#include "nlw/propagator/duhamel.hpp"
#include "nlw/propagator/free.hpp"
#include "nlw/propagator/picard.hpp"
#include "nlw/propagator/time_grid.hpp"

#endif
