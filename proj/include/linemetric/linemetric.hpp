#pragma once

#include "linemetric/error.hpp"
#include "linemetric/scalar.hpp"
#include "linemetric/metric_space.hpp"
#include "linemetric/matrix_io.hpp"
#include "linemetric/line_embedding.hpp"
#include "linemetric/lattice.hpp"
#include "linemetric/additive_map.hpp"
#include "linemetric/symbolic.hpp"
#include "linemetric/involution.hpp"
#include "linemetric/groupsets.hpp"
#include "linemetric/report.hpp"
