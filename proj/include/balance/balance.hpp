#pragma once

#include "balance/edge_list.hpp"
#include "balance/error.hpp"
#include "balance/experiments.hpp"
#include "balance/gaussian.hpp"
#include "balance/generators.hpp"
#include "balance/mc_test.hpp"
#include "balance/normal.hpp"
#include "balance/null_models.hpp"
#include "balance/rng.hpp"
#include "balance/serialize.hpp"
#include "balance/signed_graph.hpp"
#include "balance/summary.hpp"
#include "balance/triangles.hpp"
