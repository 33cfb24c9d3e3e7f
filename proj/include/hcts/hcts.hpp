#pragma once

#include "hcts/catalog.hpp"
#include "hcts/classify.hpp"
#include "hcts/cluster.hpp"
#include "hcts/correlation.hpp"
#include "hcts/dataset.hpp"
#include "hcts/entropy.hpp"
#include "hcts/error.hpp"
#include "hcts/everest.hpp"
#include "hcts/fdr.hpp"
#include "hcts/feature_matrix.hpp"
#include "hcts/feature_value.hpp"
#include "hcts/features.hpp"
#include "hcts/fit.hpp"
#include "hcts/geometry.hpp"
#include "hcts/selection.hpp"
#include "hcts/symbolic.hpp"
#include "hcts/time_series.hpp"
