#pragma once

#include "relgraph/error.hpp"
#include "relgraph/rational.hpp"
#include "relgraph/graph.hpp"
#include "relgraph/reachability.hpp"
#include "relgraph/algebra.hpp"
#include "relgraph/norms.hpp"
#include "relgraph/lattice.hpp"
#include "relgraph/rep.hpp"
#include "relgraph/expr.hpp"
#include "relgraph/io.hpp"
