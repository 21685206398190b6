#pragma once

#include "rbm/analysis.hpp"
#include "rbm/bott_matrix.hpp"
#include "rbm/census.hpp"
#include "rbm/cohomology.hpp"
#include "rbm/errors.hpp"
#include "rbm/f2linalg.hpp"
