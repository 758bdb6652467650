#ifndef NLW_RANDOMIZE_HPP
#define NLW_RANDOMIZE_HPP

#include "nlw/randomize/distribution.hpp"
#include "nlw/randomize/manifest.hpp"
#include "nlw/randomize/rejection.hpp"
#include "nlw/randomize/samplers.hpp"

#endif
