#pragma once

#include "framelab/errors.hpp"
#include "framelab/frame.hpp"
#include "framelab/gabor.hpp"
#include "framelab/io.hpp"
#include "framelab/numerics.hpp"
#include "framelab/perturb.hpp"
#include "framelab/projection.hpp"
#include "framelab/random.hpp"
#include "framelab/suite.hpp"
#include "framelab/translates.hpp"
#include "framelab/zak.hpp"
