#ifndef NLW_EXPERIMENTS_HPP
#define NLW_EXPERIMENTS_HPP

#include "nlw/experiments/common.hpp"
#include "nlw/experiments/gibbs.hpp"
#include "nlw/experiments/inflation.hpp"
#include "nlw/experiments/prob_strichartz.hpp"
#include "nlw/experiments/quasi_moments.hpp"
#include "nlw/experiments/regularized.hpp"
#include "nlw/experiments/remainder.hpp"
#include "nlw/experiments/report.hpp"
#include "nlw/experiments/simulate.hpp"

#endif
