// Umbrella header.

#pragma once

#include "fscore/calibration.hpp"
#include "fscore/csv.hpp"
#include "fscore/dates.hpp"
#include "fscore/labeling.hpp"
#include "fscore/logit.hpp"
#include "fscore/metrics.hpp"
#include "fscore/model_file.hpp"
#include "fscore/ratios.hpp"
#include "fscore/rng.hpp"
#include "fscore/scoring.hpp"
#include "fscore/statement.hpp"
#include "fscore/synthetic.hpp"
