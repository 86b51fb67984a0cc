#pragma once

#include "fracbessel/specfun/bessel.hpp"
#include "fracbessel/specfun/fox_wright.hpp"
#include "fracbessel/specfun/gamma.hpp"
#include "fracbessel/specfun/hypergeometric.hpp"
