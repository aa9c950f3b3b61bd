#pragma once

// Fuzzy time-optimal control of the controlled pendulum: crisp closed-form
// minimum-time solves, alpha-cut reduction of fuzzy endpoint states, and the
// membership curve of the fuzzy optimal transfer time.

#include "ftoc/dynamics.hpp"
#include "ftoc/emit.hpp"
#include "ftoc/fuzzy.hpp"
#include "ftoc/fuzzy_time.hpp"
#include "ftoc/geometry.hpp"
#include "ftoc/oracle.hpp"
#include "ftoc/run_config.hpp"
#include "ftoc/solver.hpp"
