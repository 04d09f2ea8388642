#pragma once

#include "topsim/cluster.hpp"
#include "topsim/controller.hpp"
#include "topsim/csv.hpp"
#include "topsim/error.hpp"
#include "topsim/fuzzy.hpp"
#include "topsim/scenario.hpp"
#include "topsim/simulator.hpp"
#include "topsim/topsis.hpp"
