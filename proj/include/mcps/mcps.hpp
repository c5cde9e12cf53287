#pragma once

#include "mcps/annealing.hpp"
#include "mcps/benchmark.hpp"
#include "mcps/core.hpp"
#include "mcps/error.hpp"
#include "mcps/exact.hpp"
#include "mcps/heuristics.hpp"
#include "mcps/instance_io.hpp"
#include "mcps/ising.hpp"
#include "mcps/model_io.hpp"
#include "mcps/repair.hpp"
#include "mcps/report.hpp"
#include "mcps/rng.hpp"
#include "mcps/solve.hpp"
#include "mcps/tabu.hpp"
