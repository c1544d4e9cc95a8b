#pragma once

#include "pwgraph/error.hpp"
#include "pwgraph/graph.hpp"
#include "pwgraph/linalg.hpp"
#include "pwgraph/reconstruct.hpp"
#include "pwgraph/sampling.hpp"
#include "pwgraph/spectral.hpp"
#include "pwgraph/spline.hpp"
