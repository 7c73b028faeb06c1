#pragma once

#include "lgi/errors.hpp"
#include "lgi/pol_core.hpp"
#include "lgi/elements.hpp"
#include "lgi/lgi_engine.hpp"
#include "lgi/rng.hpp"
#include "lgi/noise_lab.hpp"
#include "lgi/sweep.hpp"
