#pragma once

// Random dilated shapelet transform: convenience header pulling in the whole
// library.

#include "rdst/archive.hpp"
#include "rdst/bench.hpp"
#include "rdst/dataset_io.hpp"
#include "rdst/distance.hpp"
#include "rdst/errors.hpp"
#include "rdst/evaluate.hpp"
#include "rdst/fileio.hpp"
#include "rdst/interpret.hpp"
#include "rdst/parallel.hpp"
#include "rdst/ridge.hpp"
#include "rdst/rng.hpp"
#include "rdst/sampler.hpp"
#include "rdst/stats.hpp"
#include "rdst/transform.hpp"
#include "rdst/types.hpp"
