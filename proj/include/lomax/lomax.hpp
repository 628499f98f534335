#pragma once

#include "lomax/diagnostics.hpp"
#include "lomax/distribution.hpp"
#include "lomax/errors.hpp"
#include "lomax/io.hpp"
#include "lomax/priors.hpp"
#include "lomax/random.hpp"
#include "lomax/sampler.hpp"
#include "lomax/simulation.hpp"
