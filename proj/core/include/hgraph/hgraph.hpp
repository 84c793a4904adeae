#pragma once

// Umbrella header for the minimal intrinsic graph laboratory.

#include "hgraph/calibration.hpp"
#include "hgraph/eigensolve.hpp"
#include "hgraph/field.hpp"
#include "hgraph/foliation.hpp"
#include "hgraph/grid.hpp"
#include "hgraph/holder.hpp"
#include "hgraph/io.hpp"
#include "hgraph/manifest.hpp"
#include "hgraph/maxprinciple.hpp"
#include "hgraph/metric.hpp"
#include "hgraph/oracle.hpp"
#include "hgraph/polynomial.hpp"
#include "hgraph/random_field.hpp"
#include "hgraph/solver.hpp"
#include "hgraph/stability.hpp"
#include "hgraph/stencil.hpp"
#include "hgraph/variational.hpp"
#include "hgraph/version.hpp"
