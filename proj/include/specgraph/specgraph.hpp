#pragma once

#include "specgraph/diffusion.hpp"
#include "specgraph/eigen.hpp"
#include "specgraph/errors.hpp"
#include "specgraph/generators.hpp"
#include "specgraph/graph.hpp"
#include "specgraph/io.hpp"
#include "specgraph/local.hpp"
#include "specgraph/resistance.hpp"
#include "specgraph/sbm.hpp"
#include "specgraph/solver.hpp"
#include "specgraph/sparsify.hpp"
#include "specgraph/spectra.hpp"
