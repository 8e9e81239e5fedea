#pragma once

/// Umbrella header: the exact-arithmetic workbench for the graded operator
/// complex on rectangular matrix space.

#include "scalar.hpp"
#include "matrix.hpp"
#include "partitions.hpp"
#include "clifford.hpp"
#include "liealg.hpp"
#include "polydiff.hpp"
#include "dirac.hpp"
#include "syzygy.hpp"
#include "report.hpp"
#include "cache.hpp"
