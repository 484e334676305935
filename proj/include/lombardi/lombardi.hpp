#pragma once

// Umbrella header for the lombardi layout library.

#include "lombardi/engine.hpp"
#include "lombardi/geometry.hpp"
#include "lombardi/graph.hpp"
#include "lombardi/io.hpp"
#include "lombardi/layout_init.hpp"
#include "lombardi/metrics.hpp"
#include "lombardi/nelder_mead.hpp"
#include "lombardi/tangent_fan.hpp"
