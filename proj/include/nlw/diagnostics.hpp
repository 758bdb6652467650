#ifndef NLW_DIAGNOSTICS_HPP
#define NLW_DIAGNOSTICS_HPP

#include "nlw/diagnostics/energy.hpp"
#include "nlw/diagnostics/modified.hpp"
#include "nlw/diagnostics/statistics.hpp"
#include "nlw/diagnostics/strichartz.hpp"
#include "nlw/io/report.hpp"

#endif
