#pragma once

// Umbrella header for the FBM link-prediction library.

#include "fbm/baselines.hpp"    // IWYU pragma: export
#include "fbm/datasets.hpp"     // IWYU pragma: export
#include "fbm/estimator.hpp"    // IWYU pragma: export
#include "fbm/evaluation.hpp"   // IWYU pragma: export
#include "fbm/graph.hpp"        // IWYU pragma: export
#include "fbm/io.hpp"           // IWYU pragma: export
#include "fbm/logspace.hpp"     // IWYU pragma: export
#include "fbm/parallel.hpp"     // IWYU pragma: export
#include "fbm/partition.hpp"    // IWYU pragma: export
#include "fbm/random.hpp"       // IWYU pragma: export
