#pragma once

#include "revfid/divergences.hpp"
#include "revfid/errors.hpp"
#include "revfid/geometry.hpp"
#include "revfid/hermitian.hpp"
#include "revfid/random.hpp"
#include "revfid/reverse_tests.hpp"
#include "revfid/states.hpp"
#include "revfid/tolerances.hpp"
