#pragma once

#include "carriers/behavior.hpp"
#include "carriers/boolfun.hpp"
#include "carriers/errors.hpp"
#include "carriers/games.hpp"
#include "carriers/interference_lp.hpp"
#include "carriers/membership.hpp"
#include "carriers/optimize.hpp"
#include "carriers/polytope.hpp"
#include "carriers/quantum.hpp"
#include "carriers/rational.hpp"
#include "carriers/serialization.hpp"
#include "carriers/simplex.hpp"
#include "carriers/symmetry.hpp"
