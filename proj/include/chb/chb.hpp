#pragma once

#include "chb/errors.hpp"
#include "chb/types.hpp"
#include "chb/hermitian.hpp"
#include "chb/random.hpp"
#include "chb/parallel.hpp"
#include "chb/isometry.hpp"
#include "chb/bidisk.hpp"
#include "chb/equidistant.hpp"
#include "chb/optimize.hpp"
#include "chb/dirichlet.hpp"
#include "chb/io.hpp"
