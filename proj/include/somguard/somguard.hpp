#pragma once

#include "somguard/anomaly.hpp"
#include "somguard/dataset.hpp"
#include "somguard/grid.hpp"
#include "somguard/map_io.hpp"
#include "somguard/normalize.hpp"
#include "somguard/schedule.hpp"
#include "somguard/som_map.hpp"
#include "somguard/split.hpp"
#include "somguard/training.hpp"
#include "somguard/umatrix.hpp"
