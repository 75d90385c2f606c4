#pragma once

#include "lmprng/errors.hpp"
#include "lmprng/ewma_filter.hpp"
#include "lmprng/fixed_map.hpp"
#include "lmprng/prng_pipeline.hpp"
#include "lmprng/reference_models.hpp"
#include "lmprng/stats_analyzer.hpp"
#include "lmprng/wire_codec.hpp"

namespace lmprng {
inline constexpr const char* kVersion = "0.1.0";
}
