#pragma once

#include "sg/banded.hpp"
#include "sg/convergence.hpp"
#include "sg/errors.hpp"
#include "sg/grid.hpp"
#include "sg/harness.hpp"
#include "sg/integrate.hpp"
#include "sg/io.hpp"
#include "sg/model.hpp"
#include "sg/ops.hpp"
#include "sg/presets.hpp"
#include "sg/solver.hpp"
