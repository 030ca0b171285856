#pragma once

#include "stargale/rational.hpp"
#include "stargale/matrix.hpp"
#include "stargale/lp.hpp"
#include "stargale/complexes.hpp"
#include "stargale/gale.hpp"
#include "stargale/geometry.hpp"
#include "stargale/bosio.hpp"
#include "stargale/io.hpp"
#include "stargale/svg.hpp"
