#pragma once

#include "assignment.hpp"
#include "convert.hpp"
#include "error.hpp"
#include "generator.hpp"
#include "house_allocation.hpp"
#include "io.hpp"
#include "market.hpp"
#include "oracle.hpp"
#include "permutation.hpp"
#include "preferences.hpp"
#include "two_sided.hpp"
