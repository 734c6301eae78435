#pragma once

#include "altproj/catalog.hpp"
#include "altproj/config.hpp"
#include "altproj/diagnostics.hpp"
#include "altproj/distance.hpp"
#include "altproj/errors.hpp"
#include "altproj/functions.hpp"
#include "altproj/iterate.hpp"
#include "altproj/point.hpp"
#include "altproj/scenario.hpp"
#include "altproj/sets.hpp"
#include "altproj/trace_io.hpp"
#include "altproj/verify.hpp"
