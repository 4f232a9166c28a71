#pragma once

#include "classgraph/error.hpp"
#include "classgraph/number_theory.hpp"
#include "classgraph/dirichlet.hpp"
#include "classgraph/spectrum.hpp"
#include "classgraph/permutation.hpp"
#include "classgraph/perm_group.hpp"
#include "classgraph/metabelian.hpp"
#include "classgraph/group_expr.hpp"
#include "classgraph/prime_graph.hpp"
#include "classgraph/block_square.hpp"
#include "classgraph/structure_analysis.hpp"
#include "classgraph/constructor.hpp"
#include "classgraph/spec_io.hpp"
#include "classgraph/report.hpp"
