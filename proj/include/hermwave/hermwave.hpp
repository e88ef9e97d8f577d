// SPDX-License-Identifier: Apache-2.0

#ifndef HERMWAVE_HERMWAVE_HPP
#define HERMWAVE_HERMWAVE_HPP

#include "hermwave/chaos.hpp"
#include "hermwave/farima.hpp"
#include "hermwave/io.hpp"
#include "hermwave/meyer.hpp"
#include "hermwave/parallel.hpp"
#include "hermwave/process.hpp"
#include "hermwave/quadrature.hpp"
#include "hermwave/random.hpp"
#include "hermwave/series.hpp"
#include "hermwave/stats.hpp"
#include "hermwave/suites.hpp"
#include "hermwave/validation.hpp"

#endif
