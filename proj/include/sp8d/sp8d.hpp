#pragma once

// Set-partitioned 8D modulation formats over PDM-QPSK and the coherent
// WDM transmission Monte Carlo chain that evaluates them.

#include "sp8d/bits.hpp"
#include "sp8d/config.hpp"
#include "sp8d/constellation.hpp"
#include "sp8d/equalizer.hpp"
#include "sp8d/fft.hpp"
#include "sp8d/fiber.hpp"
#include "sp8d/field.hpp"
#include "sp8d/formats.hpp"
#include "sp8d/jones.hpp"
#include "sp8d/labeling.hpp"
#include "sp8d/montecarlo.hpp"
#include "sp8d/parallel.hpp"
#include "sp8d/qfactor.hpp"
#include "sp8d/rng.hpp"
#include "sp8d/rrc.hpp"
#include "sp8d/svg.hpp"
#include "sp8d/symbol.hpp"
#include "sp8d/wdm.hpp"

namespace sp8d {
inline constexpr const char* kVersion = "1.0.0";
}
