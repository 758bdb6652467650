#ifndef NLW_SPECTRAL_HPP
#define NLW_SPECTRAL_HPP

#include "nlw/spectral/bump.hpp"
#include "nlw/spectral/field.hpp"
#include "nlw/spectral/grid.hpp"
#include "nlw/spectral/norms.hpp"
#include "nlw/spectral/symbol.hpp"
#include "nlw/spectral/transform.hpp"

#endif
