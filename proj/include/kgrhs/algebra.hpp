#pragma once

#include "kgrhs/errors.hpp"
#include "kgrhs/four_vector.hpp"
#include "kgrhs/quaternion.hpp"
#include "kgrhs/units.hpp"
