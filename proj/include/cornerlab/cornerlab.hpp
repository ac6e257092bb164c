#pragma once

#include "cornerlab/baseline.hpp"
#include "cornerlab/commands.hpp"
#include "cornerlab/construction.hpp"
#include "cornerlab/grid_set.hpp"
#include "cornerlab/parallel.hpp"
#include "cornerlab/radius.hpp"
#include "cornerlab/rng.hpp"
#include "cornerlab/set_file.hpp"
#include "cornerlab/sweep.hpp"
#include "cornerlab/torus.hpp"
#include "cornerlab/verify.hpp"
