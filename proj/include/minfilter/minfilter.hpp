#pragma once

#include "minfilter/circle_metrics.hpp"
#include "minfilter/csv.hpp"
#include "minfilter/data_cloud.hpp"
#include "minfilter/errors.hpp"
#include "minfilter/errorsim.hpp"
#include "minfilter/filter.hpp"
#include "minfilter/graph.hpp"
#include "minfilter/markov.hpp"
#include "minfilter/matrix.hpp"
#include "minfilter/rng.hpp"
#include "minfilter/spectral.hpp"
#include "minfilter/svg.hpp"
