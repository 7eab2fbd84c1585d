#pragma once

#include "common.hpp"
#include "dynsys.hpp"
#include "function.hpp"
#include "genpoly.hpp"
#include "laurent.hpp"
#include "reps.hpp"
#include "norm.hpp"
#include "commutant.hpp"
#include "circle_set.hpp"
#include "random.hpp"
#include "ideals.hpp"
