#pragma once

#include "fcs/artifacts.hpp"
#include "fcs/bench.hpp"
#include "fcs/error.hpp"
#include "fcs/expander.hpp"
#include "fcs/generators.hpp"
#include "fcs/gomory_hu.hpp"
#include "fcs/graph.hpp"
#include "fcs/io.hpp"
#include "fcs/isolating.hpp"
#include "fcs/maxflow.hpp"
#include "fcs/oracle.hpp"
#include "fcs/parallel.hpp"
#include "fcs/rational.hpp"
#include "fcs/single_source.hpp"
#include "fcs/sparsifier.hpp"
