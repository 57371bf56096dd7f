#pragma once

#include "epps/alternatives.hpp"
#include "epps/bahadur.hpp"
#include "epps/error.hpp"
#include "epps/io.hpp"
#include "epps/normal.hpp"
#include "epps/null_distribution.hpp"
#include "epps/quadrature.hpp"
#include "epps/random.hpp"
#include "epps/sample.hpp"
#include "epps/spectral.hpp"
#include "epps/statistic.hpp"
#include "epps/summation.hpp"
#include "epps/tuning.hpp"
