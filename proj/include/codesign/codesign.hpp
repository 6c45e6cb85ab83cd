#pragma once

#include "codesign/catalog.hpp"
#include "codesign/errors.hpp"
#include "codesign/evaluator.hpp"
#include "codesign/executor.hpp"
#include "codesign/fleet.hpp"
#include "codesign/geometry.hpp"
#include "codesign/indicators.hpp"
#include "codesign/mdpi.hpp"
#include "codesign/order.hpp"
#include "codesign/pipeline.hpp"
#include "codesign/planners.hpp"
#include "codesign/reeds_shepp.hpp"
#include "codesign/scenario.hpp"
#include "codesign/tsp.hpp"
