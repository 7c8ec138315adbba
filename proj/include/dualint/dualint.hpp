#pragma once

#include "dualint/errors.hpp"
#include "dualint/rational.hpp"
#include "dualint/matrix.hpp"
#include "dualint/lspec.hpp"
#include "dualint/normal_form.hpp"
#include "dualint/lattice.hpp"
#include "dualint/linear_system.hpp"
#include "dualint/lp.hpp"
#include "dualint/polyhedron.hpp"
#include "dualint/duality.hpp"
#include "dualint/integer_points.hpp"
#include "dualint/generating_sets.hpp"
#include "dualint/tilt.hpp"
#include "dualint/analyzer.hpp"
#include "dualint/clutter.hpp"
