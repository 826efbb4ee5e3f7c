// SPDX-License-Identifier: Apache-2.0
//
// Umbrella header for the bellgen library.
#pragma once

#include "bellgen/algebra.hpp"
#include "bellgen/classical.hpp"
#include "bellgen/correlation.hpp"
#include "bellgen/cv.hpp"
#include "bellgen/generators.hpp"
#include "bellgen/locality.hpp"
#include "bellgen/measurement.hpp"
#include "bellgen/montecarlo.hpp"
#include "bellgen/numeric.hpp"
#include "bellgen/random.hpp"
#include "bellgen/source.hpp"
#include "bellgen/version.hpp"
