#pragma once

// Umbrella header.

#include "wdwave/fft.hpp"
#include "wdwave/harness.hpp"
#include "wdwave/multiplier.hpp"
#include "wdwave/solver.hpp"
#include "wdwave/specfun.hpp"
#include "wdwave/zones.hpp"
