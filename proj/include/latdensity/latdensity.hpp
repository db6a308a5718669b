#pragma once

#include "latdensity/closed_forms.hpp"
#include "latdensity/density.hpp"
#include "latdensity/ehrhart.hpp"
#include "latdensity/errors.hpp"
#include "latdensity/int_types.hpp"
#include "latdensity/io.hpp"
#include "latdensity/lattice.hpp"
#include "latdensity/linalg.hpp"
#include "latdensity/matrix.hpp"
#include "latdensity/rng.hpp"
#include "latdensity/solvability.hpp"
#include "latdensity/version.hpp"
