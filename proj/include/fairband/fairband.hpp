#ifndef FAIRBAND_FAIRBAND_HPP
#define FAIRBAND_FAIRBAND_HPP

#include "fairband/adversary.hpp"
#include "fairband/audit.hpp"
#include "fairband/chaining.hpp"
#include "fairband/config.hpp"
#include "fairband/core.hpp"
#include "fairband/environments.hpp"
#include "fairband/estimators.hpp"
#include "fairband/grid_epochs.hpp"
#include "fairband/harness.hpp"
#include "fairband/linear_policies.hpp"
#include "fairband/simulation.hpp"
#include "fairband/smooth_policies.hpp"
#include "fairband/wine.hpp"

#endif
