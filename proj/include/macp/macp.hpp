#pragma once

#include "macp/error.hpp"
#include "macp/experiment.hpp"
#include "macp/io.hpp"
#include "macp/model.hpp"
#include "macp/objective.hpp"
#include "macp/random.hpp"
#include "macp/reduction.hpp"
#include "macp/scenario.hpp"
#include "macp/simulator.hpp"
#include "macp/solvers.hpp"
