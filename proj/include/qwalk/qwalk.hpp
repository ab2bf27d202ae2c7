#pragma once

#include "qwalk/calibration.hpp"
#include "qwalk/classical.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/continuous_walk.hpp"
#include "qwalk/lattice.hpp"
#include "qwalk/measured_walk.hpp"
#include "qwalk/routing.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/step.hpp"
#include "qwalk/walk_state.hpp"
