#pragma once

// Experiment runner: JSON config, CSV tables, worker pool, suites, verify.
// Needs nlohmann/json on the include path.

#include "qwalk/experiments/config.hpp"
#include "qwalk/experiments/suites.hpp"
#include "qwalk/experiments/table.hpp"
#include "qwalk/experiments/verify.hpp"
#include "qwalk/experiments/workers.hpp"
