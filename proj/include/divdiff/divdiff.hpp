#pragma once

#include "scalar.hpp"
#include "op_counts.hpp"
#include "sample_set.hpp"
#include "core_tables.hpp"
#include "interpolation.hpp"
#include "differentiation.hpp"
#include "quadrature.hpp"
#include "oracle.hpp"
