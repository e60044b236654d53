#pragma once

// Umbrella header.

#include "opcontrast/blocks.hpp"
#include "opcontrast/contrast.hpp"
#include "opcontrast/errors.hpp"
#include "opcontrast/linalg.hpp"
#include "opcontrast/matrix_io.hpp"
#include "opcontrast/pnm.hpp"
#include "opcontrast/random.hpp"
#include "opcontrast/report.hpp"
#include "opcontrast/verify.hpp"
