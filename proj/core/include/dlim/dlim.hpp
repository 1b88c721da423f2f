#pragma once

#include "dlim/abelian.hpp"
#include "dlim/constructions.hpp"
#include "dlim/error.hpp"
#include "dlim/filtration.hpp"
#include "dlim/integer_matrix.hpp"
#include "dlim/io.hpp"
#include "dlim/ordinal.hpp"
#include "dlim/tower.hpp"
#include "dlim/walker.hpp"
