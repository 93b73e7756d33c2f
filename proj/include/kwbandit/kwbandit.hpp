#pragma once

#include "kwbandit/error.hpp"
#include "kwbandit/random.hpp"
#include "kwbandit/domain.hpp"
#include "kwbandit/objective.hpp"
#include "kwbandit/noise.hpp"
#include "kwbandit/schedule.hpp"
#include "kwbandit/conditions.hpp"
#include "kwbandit/gradient.hpp"
#include "kwbandit/tuning.hpp"
#include "kwbandit/algorithms.hpp"
#include "kwbandit/trajectory.hpp"
#include "kwbandit/monte_carlo.hpp"
#include "kwbandit/bounds.hpp"
#include "kwbandit/scaling.hpp"
#include "kwbandit/analysis.hpp"
#include "kwbandit/csv.hpp"
#include "kwbandit/config.hpp"
#include "kwbandit/experiment.hpp"
