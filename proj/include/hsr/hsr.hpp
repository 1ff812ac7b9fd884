#pragma once

// Umbrella header: variance-regularized risk minimization over finite
// hypothesis spaces with empirical hypothesis space reduction, plus the
// bound calculators, Monte Carlo harness, and output plumbing.

#include "hsr/algorithm.hpp"
#include "hsr/bounds.hpp"
#include "hsr/config.hpp"
#include "hsr/core_model.hpp"
#include "hsr/csv.hpp"
#include "hsr/experiment.hpp"
#include "hsr/rng.hpp"
#include "hsr/svg.hpp"
#include "hsr/validate.hpp"
#include "hsr/variance_reg.hpp"
