#pragma once

// Multiple component matching for person re-identification.

#include "mcm/config.hpp"
#include "mcm/descriptor.hpp"
#include "mcm/error.hpp"
#include "mcm/evaluation.hpp"
#include "mcm/histogram.hpp"
#include "mcm/image_io.hpp"
#include "mcm/imaging.hpp"
#include "mcm/matching.hpp"
#include "mcm/partition.hpp"
#include "mcm/random.hpp"
#include "mcm/serialization.hpp"
