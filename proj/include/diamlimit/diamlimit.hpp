#pragma once

#include "diamlimit/constants.hpp"
#include "diamlimit/diameter.hpp"
#include "diamlimit/distributions.hpp"
#include "diamlimit/errors.hpp"
#include "diamlimit/experiments.hpp"
#include "diamlimit/geometry.hpp"
#include "diamlimit/limitlaw.hpp"
#include "diamlimit/rng.hpp"
#include "diamlimit/sampling.hpp"
