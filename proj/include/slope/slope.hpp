#pragma once

#include "slope/bench.hpp"
#include "slope/cd_kernel.hpp"
#include "slope/clusters.hpp"
#include "slope/data.hpp"
#include "slope/rng.hpp"
#include "slope/solvers.hpp"
#include "slope/sorted_l1.hpp"
#include "slope/state.hpp"
#include "slope/types.hpp"
