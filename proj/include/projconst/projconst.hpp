#pragma once

// Lower bounds for relative projection constants via eigenvalue sums of
// two-graphs: spectra, switching classes, weight-simplex optimization,
// closed-form upper bounds, and recomputable certificates.

#include "projconst/bounds.hpp"
#include "projconst/core_spectra.hpp"
#include "projconst/errors.hpp"
#include "projconst/families.hpp"
#include "projconst/io.hpp"
#include "projconst/objective.hpp"
#include "projconst/search.hpp"
#include "projconst/twograph.hpp"
#include "projconst/verify.hpp"
